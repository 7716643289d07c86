#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plab/expr_io.hpp"
#include "plab/holomorphy.hpp"

using namespace plab;

TEST_CASE("pullback examples") {
    const auto& d6 = build_system(SystemId::D6);
    auto h2 = pullback_hamiltonian(d6, chart(SystemId::D6, "r2"), std::nullopt);
    CHECK(state_denominators(h2).empty());

    auto h0 = pullback_hamiltonian(d6, chart(SystemId::D6, "r0"), d6.sym("y"));
    CHECK(state_denominators(h0).empty());
    auto raw = pullback_hamiltonian(d6, chart(SystemId::D6, "r0"), std::nullopt);
    auto bad = state_denominators(raw);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == parse_poly(d6.table, "y"));
}

TEST_CASE("check_chart examples") {
    const auto& d6 = build_system(SystemId::D6);
    CHECK(check_chart(d6, chart(SystemId::D6, "r3"), ChartMode::HAMILTONIAN).passed());
    CHECK(check_chart(d6, chart(SystemId::D6, "x8"), ChartMode::VECTOR_FIELD).passed());
    CHECK(chart(SystemId::D6, "x8").label == "r0r4");

    Chart bad = shift_chart_parameter(chart(SystemId::D6, "r4"), "b2", 1);
    auto cert = check_chart(d6, bad, ChartMode::HAMILTONIAN);
    CHECK_FALSE(cert.passed());
    CHECK_FALSE(cert.offending.empty());
    CHECK_FALSE(check_chart(d6, bad, ChartMode::VECTOR_FIELD).passed());

    // r0 needs its correction; the certificate records it
    auto c0 = check_chart(d6, chart(SystemId::D6, "r0"), ChartMode::HAMILTONIAN);
    CHECK(c0.passed());
    REQUIRE(c0.correction);
    CHECK(rat_equal(*c0.correction, d6.sym("y")));
    CHECK_FALSE(check_chart_with(d6, chart(SystemId::D6, "r0"), std::nullopt).passed());
    CHECK_FALSE(check_chart(d6, shift_chart_parameter(chart(SystemId::D6, "r0"), "a0", 1), ChartMode::HAMILTONIAN)
                    .passed());
}

TEST_CASE("single charts pass in Hamiltonian mode") {
    struct Expect {
        SystemId id;
        std::size_t n;
    };
    for (auto [id, n] : {Expect{SystemId::D6, 7}, Expect{SystemId::D6AUTO, 7}, Expect{SystemId::A5, 6},
                         Expect{SystemId::A4, 5}, Expect{SystemId::P51, 2}, Expect{SystemId::P53, 4}}) {
        const auto& sys = build_system(id);
        std::size_t seen = 0;
        for (const auto& name : chart_names(id)) {
            const auto& c = chart(id, name);
            if (c.composite) continue;
            ++seen;
            CAPTURE(system_name(id));
            CAPTURE(c.label);
            auto cert = check_chart(sys, c, ChartMode::HAMILTONIAN);
            CHECK(cert.passed());
            // only the r0 charts of non-autonomous systems need the y correction
            bool corrected = cert.correction.has_value();
            CHECK(corrected == (c.label == "r0" && !sys.autonomous));
        }
        CHECK(seen == n);
    }
}

TEST_CASE("composite charts pass at field level") {
    const auto& d6 = build_system(SystemId::D6);
    std::size_t pairs = 0, triples = 0;
    for (const auto& name : chart_names(SystemId::D6)) {
        const auto& c = chart(SystemId::D6, name);
        if (!c.composite) continue;
        (c.label.find('(') == std::string::npos ? pairs : triples)++;
        CAPTURE(c.label);
        CHECK(check_chart(d6, c, ChartMode::VECTOR_FIELD).passed());
    }
    CHECK(pairs == 12);
    CHECK(triples == 6);
}

TEST_CASE("polynomiality does not depend on the parameter elimination") {
    const auto& d6 = build_system(SystemId::D6);
    auto S = [&](const char* n) { return RationalExpr::symbol(d6.table, n); };
    RationalExpr h = scalar_hamiltonian(ScalarKind::VI, d6.table, "x", "y", "t",
                                        {S("a0"), S("a1"), S("a2"), S("a3"), S("a4")}) +
                     scalar_hamiltonian(ScalarKind::VI, d6.table, "z", "w", "t",
                                        {S("b0"), S("b1"), S("b2"), S("b3"), S("b4")}) +
                     parse_expr(d6.table, "2*(x-t)*y*z*((z-1)*w+b2)/(t*(t-1))");
    const auto& c = chart(SystemId::D6, "r2");
    Bindings b = Bindings::by_name(d6.table, d6.table);
    for (std::size_t i = 0; i < 4; ++i) b.set(d6.state[i], c.inverse[i]);
    RationalExpr before = substitute(h, b);
    RationalExpr after = pullback_hamiltonian(d6, c, std::nullopt);
    CHECK(state_denominators(after).empty());
    CHECK(state_denominators(d6.reduce(before)).empty());
    CHECK(rat_equal(d6.reduce(before), after));
    // the pole at x = infinity cancels only through the relation a0+a1+2a2+a3+a4 = 1
    CHECK_FALSE(state_denominators(before).empty());
    // the unreduced H differs from the catalog one by parameter terms only
    CHECK(rat_equal(d6.reduce(h), d6.H));
}

TEST_CASE("certificate report line") {
    const auto& d6 = build_system(SystemId::D6);
    auto line = to_json_line(to_report(check_chart(d6, chart(SystemId::D6, "r0"), ChartMode::HAMILTONIAN)));
    CHECK(line.find("\"status\":\"PASS\"") != std::string::npos);
    CHECK(line.find("correction y") != std::string::npos);
    auto bad = to_report(check_chart_with(d6, chart(SystemId::D6, "r0"), std::nullopt));
    CHECK_FALSE(bad.passed());
    CHECK(bad.witness.has_value());
}
