#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "plab/expr_io.hpp"
#include "plab/numeric.hpp"
#include "plab/verify.hpp"

using namespace plab;

namespace {

BigRational R(long a, long b) {
    BigRational q(a, b);
    q.canonicalize();
    return q;
}

std::map<std::string, BigRational> auto_params() {
    return {{"eta", 2},        {"a0", R(1, 7)},  {"a1", R(1, 9)},  {"a2", R(1, 11)},
            {"a3", R(1, 13)},  {"a4", R(1, 17)}, {"a5", R(1, 19)}};
}

const std::array<double, 4> kInit{1.0 / 2, 1.0 / 3, 1.0 / 5, 1.0 / 7};

// seeded small rationals for every basis symbol
std::map<std::string, BigRational> draw(const HamiltonianSystem& s, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 3), den(7, 29);
    std::map<std::string, BigRational> out;
    for (const auto& n : s.params.basis) out[n] = n == "eta" ? BigRational(2) : R(num(rng), den(rng));
    return out;
}

}  // namespace

TEST_CASE("integrate D6AUTO testcase") {
    auto ns = numeric_system(build_system(SystemId::D6AUTO), auto_params());
    auto tr = integrate(ns, kInit, 0, 1, 1e-3);
    CHECK(tr.size() == 1001);
    CHECK(tr.back().t == doctest::Approx(1.0));
    for (double v : tr.back().u) CHECK(std::isfinite(v));
    double fine = hamiltonian_drift(tr, ns);
    CHECK(fine < 1e-9);
    double coarse = hamiltonian_drift(integrate(ns, kInit, 0, 1, 1e-2), ns);
    // order 4: ten times the step, about 10^4 times the drift
    CHECK(coarse / fine > 1e3);
    CHECK(coarse / fine < 1e5);
    double ratio = step_halving_ratio(ns, kInit, 0, 1, 0.05);
    CHECK(ratio > 12);
    CHECK(ratio < 20);

    std::ostringstream csv;
    write_csv(csv, Trajectory(tr.begin(), tr.begin() + 3), ns);
    std::string text = csv.str();
    CHECK(text.rfind("t,x,y,z,w,H\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("zero field gives a constant trajectory") {
    const auto& au = build_system(SystemId::D6AUTO);
    NumericSystem ns;
    ns.sys = &au;
    Bindings b = Bindings::by_name(au.table, au.table);
    for (const auto& n : au.params.symbols) b.set(n, RationalExpr(au.table, n == "eta" ? 2 : 0));
    auto v = vector_field(au).v;
    for (std::size_t i = 0; i < 4; ++i) ns.field[i] = substitute(v[i], b);
    ns.H = substitute(au.H, b);
    std::array<double, 4> fixed{0.3, 0, 0.6, 0};
    auto tr = integrate(ns, fixed, 0, 1, 1e-2);
    for (const auto& s : tr)
        for (std::size_t i = 0; i < 4; ++i) CHECK(s.u[i] == fixed[i]);
    CHECK(hamiltonian_drift(tr, ns) == 0);
}

TEST_CASE("guards and errors") {
    const auto& d6 = build_system(SystemId::D6);
    auto ns = numeric_system(d6, {{"a0", R(1, 7)}, {"a1", R(1, 9)}, {"a2", R(1, 11)}, {"b2", R(1, 13)},
                                  {"b3", R(1, 17)}, {"b4", R(1, 19)}});
    // t - 1 is a pole of the D6 field
    CHECK_THROWS_AS(integrate(ns, kInit, 1.0005, 1.2, 1e-3), SingularityApproached);
    CHECK_THROWS_AS(integrate(ns, kInit, 0.5, 1.5, 1e-2), SingularityApproached);
    CHECK_THROWS_AS(hamiltonian_drift(integrate(ns, kInit, 2, 2.1, 1e-2), ns), NotAutonomous);
    auto au = numeric_system(build_system(SystemId::D6AUTO), auto_params());
    CHECK_THROWS_AS(integrate(au, {1e200, 1e200, 1, 1}, 0, 1, 1e-2), NonFinite);
    CHECK_THROWS_AS(integrate(au, kInit, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("order 4 on every cataloged system") {
    std::mt19937 rng(7);
    for (auto id : all_systems()) {
        CAPTURE(system_name(id));
        const auto& s = build_system(id);
        auto ns = numeric_system(s, draw(s, rng));
        double t0 = s.autonomous ? 0 : 2, t1 = t0 + 0.5;
        double ratio = step_halving_ratio(ns, kInit, t0, t1, 0.05);
        CHECK(ratio > 12);
        CHECK(ratio < 20);
    }
}

TEST_CASE("drift across parameter draws") {
    // draws at the testcase scale: +-1/d with d in 7..29
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> sign(0, 1), den(7, 29);
    const auto& au = build_system(SystemId::D6AUTO);
    for (int k = 0; k < 10; ++k) {
        std::map<std::string, BigRational> p;
        for (const auto& n : au.params.basis) p[n] = n == "eta" ? BigRational(2) : R(sign(rng) ? 1 : -1, den(rng));
        auto ns = numeric_system(au, p);
        // the eliminated a6 satisfies the relation exactly
        BigRational sum = ns.params.at("a0") + ns.params.at("a1") + 2 * ns.params.at("a2") + 2 * ns.params.at("a3") +
                          2 * ns.params.at("a4") + ns.params.at("a5") + ns.params.at("a6");
        CHECK(sum == 0);
        CHECK(hamiltonian_drift(integrate(ns, kInit, 0, 1, 1e-3), ns) < 1e-9);
    }
}

TEST_CASE("numeric Backlund check") {
    const auto& d6 = build_system(SystemId::D6);
    auto ns = numeric_system(d6, {{"a0", R(1, 7)}, {"a1", R(1, 9)}, {"a2", R(1, 11)}, {"b2", R(1, 13)},
                                  {"b3", R(1, 17)}, {"b4", R(1, 19)}});
    CHECK(numeric_backlund_check(ns, generator(SystemId::D6, "s2"), kInit, 2, 2.5, 1e-3).max_deviation < 1e-8);
    auto id = identity_map(d6.table, d6.params.basis);
    CHECK(numeric_backlund_check(ns, id, kInit, 2, 2.5, 1e-3).max_deviation == 0);
    auto bad = mutate(generator(SystemId::D6, "s2"), "drop-alpha2-shift");
    CHECK(numeric_backlund_check(ns, bad, kInit, 2, 2.5, 1e-3).max_deviation > 1e-2);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int k = 0; k < 7; ++k) {
        std::string g = "s" + std::to_string(k);
        for (int j = 0; j < 3; ++j) {
            std::array<double, 4> init{u(rng), u(rng), u(rng), u(rng)};
            CAPTURE(g);
            CHECK(numeric_backlund_check(ns, generator(SystemId::D6, g), init, 2, 2.5, 1e-3).max_deviation < 1e-6);
        }
    }
    // time reversal and inversion: pi maps
    for (const std::string g : {"pi1", "pi2", "pi3", "pi4"}) {
        CAPTURE(g);
        CHECK(numeric_backlund_check(ns, generator(SystemId::D6, g), kInit, 2, 2.5, 1e-3).max_deviation < 1e-6);
    }
}

TEST_CASE("finite differences") {
    std::mt19937 rng(5);
    for (auto id : {SystemId::D6, SystemId::A5}) {
        const auto& s = build_system(id);
        auto ns = numeric_system(s, draw(s, rng));
        CHECK(fd_check(ns, NumericState{2.3, {0.41, 0.27, 0.63, 0.18}}) < 1e-6);
    }
    // centered differences are exact on quadratics up to rounding
    const auto& d6 = build_system(SystemId::D6);
    auto q = parse_expr(d6.table, "x^2 + 3*x*y - y^2/2 + z*w + 5*w^2");
    std::vector<double> p(d6.table->size(), 0.0);
    p[0] = 0.3;
    p[1] = -1.2;
    p[2] = 2.5;
    p[3] = 0.7;
    CHECK(fd_check(q, p) < 1e-9);
    // a wrong field is caught
    auto ns = numeric_system(d6, {{"a0", R(1, 7)}, {"a1", R(1, 9)}, {"a2", R(1, 11)}, {"b2", R(1, 13)},
                                  {"b3", R(1, 17)}, {"b4", R(1, 19)}});
    ns.field[0] = ns.field[0] + RationalExpr(d6.table, BigRational(1, 100));
    CHECK(fd_check(ns, NumericState{2.3, {0.41, 0.27, 0.63, 0.18}}) > 1e-3);
}
