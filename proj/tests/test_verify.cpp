#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plab/expr_io.hpp"
#include "plab/verify.hpp"

using namespace plab;

namespace {

const HamiltonianSystem& D6() { return build_system(SystemId::D6); }

BirationalMap d6_map(const std::array<std::string, 4>& images, const std::string& tau = "t") {
    const auto& s = D6();
    std::array<RationalExpr, 4> img;
    for (std::size_t i = 0; i < 4; ++i) img[i] = s.parse(images[i]);
    std::vector<std::pair<std::string, RationalExpr>> ps;
    for (const auto& n : s.params.basis) ps.emplace_back(n, s.sym(n));
    return make_map("adhoc", s.table, s.table, img, s.parse(tau), ps);
}

}  // namespace

TEST_CASE("check_symplectic examples") {
    CHECK(check_symplectic(generator(SystemId::D6, "s4")).passed());
    CHECK(check_symplectic(d6_map({"x", "y", "z", "w"})).passed());
    auto r = check_symplectic(d6_map({"2*x", "y", "z", "w"}));
    REQUIRE_FALSE(r.passed());
    CHECK(rat_equal(*r.witness, RationalExpr(D6().table, 1)));
    CHECK(r.note == "slot (0,1)");
    // a swap of the two pairs keeps the form; a swap inside a pair flips it
    CHECK(check_symplectic(d6_map({"z", "w", "x", "y"})).passed());
    CHECK_FALSE(check_symplectic(d6_map({"y", "x", "z", "w"})).passed());
}

TEST_CASE("check_backlund examples") {
    CHECK(check_backlund(generator(SystemId::D6, "s3")).passed());
    CHECK(check_backlund(generator(SystemId::D6, "pi3")).passed());
    auto r = check_backlund(mutate(generator(SystemId::D6, "s3"), "drop-alpha2-shift"));
    CHECK_FALSE(r.passed());
    REQUIRE(r.witness);
    CHECK_FALSE(r.witness->is_zero());
    // s1 moves only parameters
    CHECK(check_backlund(generator(SystemId::D6, "s1")).passed());
    CHECK_FALSE(check_backlund(mutate(generator(SystemId::D6, "s1"), "drop-alpha1-shift")).passed());
}

TEST_CASE("every generator is symplectic and a Backlund transformation") {
    for (auto id : all_systems())
        for (const auto& n : generator_names(id)) {
            CAPTURE(system_name(id));
            CAPTURE(n);
            const auto& g = generator(id, n);
            CHECK(check_symplectic(g).passed());
            CHECK(check_backlund(g).passed());
        }
}

TEST_CASE("s1 read in chart r2") {
    CHECK(check_chart_form(SystemId::D6, "s1", "r2", {"x", "y-a1/x", "z", "w"}).passed());
    CHECK_FALSE(check_chart_form(SystemId::D6, "s1", "r2", {"x", "y+a1/x", "z", "w"}).passed());
}

TEST_CASE("coxeter") {
    const auto& d = [](const char* n) -> const BirationalMap& { return generator(SystemId::D6, n); };
    CHECK(pair_order(d("s3"), d("s4")) == 3);
    CHECK(pair_order(d("s0"), d("s1")) == 2);
    CHECK(pair_order(generator(SystemId::B6A, "S0"), generator(SystemId::B6A, "S1")) == 4);
    CHECK(pair_order(generator(SystemId::P51, "u1"), generator(SystemId::P51, "u2")) == 3);
    for (auto id : coxeter_systems()) {
        CAPTURE(system_name(id));
        CHECK(check_coxeter(id).passed());
    }
}

TEST_CASE("automorphism relations") {
    CHECK(check_word_equal(SystemId::D6, {"pi2", "pi3", "pi2"}, {"pi4"}, "pi4").passed());
    CHECK_FALSE(check_word_equal(SystemId::D6, {"pi2", "pi3"}, {"pi4"}, "pi4").passed());
    CHECK(check_identity_word(SystemId::D6, {"pi3", "pi3"}, "pi3^2").passed());
    CHECK(check_identity_word(SystemId::B6A, {"phi", "phi"}, "phi^2").passed());
    CHECK(check_identity_word(SystemId::D72, {"phi", "phi"}, "phi^2").passed());
    CHECK(check_identity_word(SystemId::B6B, {"psi", "psi"}, "psi^2").passed());
    CHECK_FALSE(check_identity_word(SystemId::D6, {"pi3", "s0"}, "pi3 s0").passed());
}

TEST_CASE("translations") {
    for (const auto& t : translations()) {
        CAPTURE(t.name);
        CHECK(check_translation(t.word, t.shift, t.name).passed());
    }
    CHECK(check_translation({}, std::vector<BigRational>(7, 0)).passed());
    auto bad = check_translation(translations()[0].word, translations()[1].shift, "T1");
    CHECK_FALSE(bad.passed());
    CHECK_THROWS_AS(check_translation({}, {0, 0}), ArityError);
    const auto& ts = translations();
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            CAPTURE(ts[i].name);
            CAPTURE(ts[j].name);
            CHECK(check_translations_commute(ts[i], ts[j]).passed());
        }
    // s0 and s2 do not commute
    Translation a{"s0", {"s0"}, {}}, b{"s2", {"s2"}, {}};
    CHECK_FALSE(check_translations_commute(a, b).passed());
}

TEST_CASE("invariant divisors") {
    for (const auto& d : d6_divisors()) {
        CAPTURE(d.name);
        CHECK(check_invariant_divisor(d).passed());
        DivisorSpec free = d;
        free.condition.clear();
        CHECK_FALSE(check_invariant_divisor(free).passed());
    }
    DivisorSpec f2 = d6_divisor("f2");
    f2.condition = {{"a2", "1"}};
    auto r = check_invariant_divisor(f2);
    REQUIRE_FALSE(r.passed());
    // -a2 (a1 + a2) at a2 = 1
    CHECK(rat_equal(*r.witness, D6().parse("-a1-1")));
    CHECK_THROWS_AS(d6_divisor("f7"), UnknownDivisor);
}

TEST_CASE("first integral") {
    CHECK(check_first_integral(SystemId::D6AUTO).passed());
    CHECK_THROWS_AS(check_first_integral(SystemId::D6), NotAutonomous);
    const auto& au = build_system(SystemId::D6AUTO);
    CHECK(check_first_integral(SystemId::D6AUTO, au.H * au.H).passed());
    auto bad = check_first_integral(SystemId::D6AUTO, au.H + au.parse("x"));
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.witness);
    CHECK(rat_equal(*bad.witness, vector_field(au).v[0]));
}

TEST_CASE("poisson series") {
    const auto& s2 = generator(SystemId::D6, "s2");
    auto P = [&](const char* t) { return parse_poly(D6().table, t); };
    CHECK(rat_equal(poisson_series(s2, P("x")), D6().parse("x+a2/y")));
    CHECK(rat_equal(poisson_series(s2, P("y")), D6().parse("y")));
    CHECK(rat_equal(poisson_series(s2, P("x^2")), D6().parse("(x+a2/y)^2")));
    CHECK(rat_equal(poisson_bracket(P("y"), P("x")), RationalExpr(D6().table, 1)));
    CHECK(rat_equal(poisson_bracket(P("w"), P("z")), RationalExpr(D6().table, 1)));
    CHECK(poisson_bracket(P("x"), P("z")).is_zero());

    int applicable = 0;
    for (auto id : coxeter_systems())
        for (const auto& n : generator_names(id)) {
            const auto& g = generator(id, n);
            if (!g.poisson_series_applicable()) {
                CHECK_THROWS_AS(poisson_series(g, parse_poly(g.source, "x")), NotApplicable);
                continue;
            }
            ++applicable;
            for (const auto& p : poisson_probes()) {
                CAPTURE(system_name(id));
                CAPTURE(n);
                CAPTURE(p);
                CHECK(check_poisson_series(g, parse_poly(g.source, p)).passed());
            }
        }
    // D6 7, D6AUTO 7, B6A 6, B6B 6, D72 5
    CHECK(applicable == 31);
    CHECK_FALSE(check_poisson_series(mutate(s2, "scale-x"), P("x")).passed());
}

TEST_CASE("mutations and report lines") {
    CHECK(split_mutation("s3:drop-alpha2-shift") == std::pair<std::string, std::string>("s3", "drop-alpha2-shift"));
    CHECK_THROWS(split_mutation("s3"));
    CHECK_THROWS(mutate(generator(SystemId::D6, "s3"), "drop-alpha9-shift"));
    CHECK_THROWS(mutate(generator(SystemId::D6, "s3"), "twist"));
    auto m = mutate(generator(SystemId::D6, "s3"), "drop-gamma1-shift");
    CHECK(rat_equal(*m.param("g1"), D6().sym("g1")));

    auto line = to_json_line(check_backlund(mutate(generator(SystemId::D6, "s3"), "drop-alpha2-shift")));
    CHECK(line.find("\"status\":\"FAIL\"") != std::string::npos);
    CHECK(line.find("\"witness\"") != std::string::npos);
    auto ok = to_json_line(check_backlund(generator(SystemId::D6, "s3")));
    CHECK(ok.find("\"witness\"") == std::string::npos);
    CHECK(ok.find("\"system\":\"D6\"") != std::string::npos);
}
