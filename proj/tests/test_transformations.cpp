#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plab/catalog.hpp"
#include "plab/expr_io.hpp"

using namespace plab;

namespace {

const std::vector<std::string> kD6Tuple{"a0", "a1", "a2", "g1", "b2", "b3", "b4"};

// eliminated parameters follow from the basis, so only the basis is compared
bool is_identity(const BirationalMap& m) {
    std::vector<std::string> basis;
    for (auto id : all_contexts())
        if (build_system(id).table == m.source) basis = build_system(id).params.basis;
    return !identity_residual(m, basis).has_value();
}

// parameter shift of m on the tuple, or nullopt when some entry is not a pure shift
template <class M>
std::optional<std::vector<BigRational>> shift_of(const M& m, const HamiltonianSystem& s,
                                                 const std::vector<std::string>& tuple) {
    std::vector<BigRational> out;
    for (const auto& n : tuple) {
        const RationalExpr* e = m.param(n);
        REQUIRE(e != nullptr);
        RationalExpr d = *e - s.sym(n);
        if (!d.is_constant()) return std::nullopt;
        out.push_back(d.is_zero() ? BigRational(0) : d.num().constant_value());
    }
    return out;
}

std::vector<BigRational> shift(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

ParameterAction word(SystemId id, const std::vector<std::string>& names) { return word_action(id, names); }

}  // namespace

TEST_CASE("generator examples") {
    const auto& d6 = build_system(SystemId::D6);
    const auto& s0 = generator(SystemId::D6, "s0");
    CHECK(rat_equal(s0.images[0], d6.parse("x")));
    CHECK(rat_equal(s0.images[1], d6.parse("y-a0/(x-t)")));
    CHECK(rat_equal(s0.tau, d6.parse("t")));
    CHECK(rat_equal(*s0.param("a0"), d6.parse("-a0")));
    CHECK(rat_equal(*s0.param("a2"), d6.parse("a2+a0")));
    CHECK(rat_equal(*s0.param("g1"), d6.parse("g1")));

    const auto& p3 = generator(SystemId::D6, "pi3");
    CHECK(rat_equal(p3.images[0], d6.parse("1-x")));
    CHECK(rat_equal(p3.images[3], d6.parse("-w")));
    CHECK(rat_equal(p3.tau, d6.parse("1-t")));
    CHECK(rat_equal(p3.dtau, d6.parse("-1")));
    CHECK(rat_equal(*p3.param("b3"), d6.parse("b4")));
    CHECK(rat_equal(*p3.param("b4"), d6.parse("b3")));

    const auto& a4 = build_system(SystemId::A4);
    const auto& t0 = generator(SystemId::A4, "s0");
    RationalExpr f = a4.parse("a0/(x+y+w-t)");
    CHECK(rat_equal(t0.images[0] - a4.sym("x"), -f));
    CHECK(rat_equal(t0.images[1] - a4.sym("y"), f));
    CHECK(rat_equal(t0.images[2] - a4.sym("z"), -f));
    CHECK(rat_equal(t0.images[3], a4.sym("w")));

    CHECK_THROWS_AS(generator(SystemId::D6, "s9"), UnknownGenerator);
    CHECK_THROWS_AS(generator(SystemId::A4, "pi1"), UnknownGenerator);
}

TEST_CASE("poisson series applicability") {
    CHECK_FALSE(generator(SystemId::B6A, "S0").poisson_series_applicable());
    CHECK_FALSE(generator(SystemId::D72, "u0").poisson_series_applicable());
    CHECK_FALSE(generator(SystemId::D72, "u6").poisson_series_applicable());
    CHECK_FALSE(generator(SystemId::D6, "pi1").poisson_series_applicable());
    CHECK(generator(SystemId::D72, "u5").poisson_series_applicable());
    CHECK(generator(SystemId::B6B, "w5").poisson_series_applicable());
}

TEST_CASE("reflections are involutions") {
    for (auto id : coxeter_systems()) {
        const auto& gs = generator_set(id);
        for (const auto& n : gs.nodes) {
            CAPTURE(system_name(id));
            CAPTURE(n);
            const auto& s = generator(id, n);
            CHECK(is_identity(compose(s, s)));
        }
        for (const auto& n : gs.automorphisms)
            if (n != "pi1" && n != "pi2" && n != "pi4") {
                CAPTURE(n);
                const auto& s = generator(id, n);
                CHECK(is_identity(compose(s, s)));
            }
    }
}

TEST_CASE("parameter actions preserve the relations") {
    for (auto id : coxeter_systems()) {
        const auto& s = build_system(id);
        for (const auto& n : generator_names(id)) {
            const auto& g = generator(id, n);
            CAPTURE(system_name(id));
            CAPTURE(n);
            for (const auto& [name, e] : g.declared) CHECK(rat_equal(e, *g.param(name)));
            for (const auto& rel : s.params.relations) {
                RationalExpr lhs(s.table, 0);
                for (const auto& [sym, c] : rel.coeffs) lhs += g.param(sym)->scaled(c);
                CHECK(rat_equal(lhs, RationalExpr(s.table, rel.rhs)));
            }
        }
    }
}

TEST_CASE("coxeter matrices are well formed") {
    for (auto id : coxeter_systems()) {
        const auto& m = generator_set(id).coxeter;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) {
                CHECK(m[i][j] == m[j][i]);
                if (i == j)
                    CHECK(m[i][j] == 1);
                else
                    CHECK((m[i][j] >= 2 && m[i][j] <= 4));
            }
    }
    CHECK(generator_set(SystemId::B6A).coxeter[0][1] == 4);
    CHECK(generator_set(SystemId::D6).coxeter[0][1] == 2);
    CHECK(generator_set(SystemId::D6).coxeter[3][4] == 3);
}

TEST_CASE("compose") {
    const auto& d6 = build_system(SystemId::D6);
    BirationalMap p = compose_word(resolve_word(SystemId::D6, {"pi2", "pi3", "pi2"}));
    const auto& p4 = generator(SystemId::D6, "pi4");
    for (std::size_t i = 0; i < 4; ++i) CHECK(rat_equal(p.images[i], p4.images[i]));
    CHECK(rat_equal(p.tau, p4.tau));
    for (const auto& n : kD6Tuple) CHECK(rat_equal(*p.param(n), *p4.param(n)));

    // s2 after s3: x picks up the shifted a2
    BirationalMap c = compose(generator(SystemId::D6, "s2"), generator(SystemId::D6, "s3"));
    CHECK(rat_equal(*c.param("a2"), d6.parse("-a2-g1")));

    const auto& a4 = build_system(SystemId::A4);
    CHECK_THROWS_AS(compose(generator(SystemId::D6, "s0"), generator(SystemId::A4, "s0")), TableMismatch);
    (void)a4;
}

TEST_CASE("translations") {
    const auto& d6 = build_system(SystemId::D6);
    const std::vector<std::string> t1{"pi1", "s5", "s4", "s3", "s2", "s1", "s0", "s2", "s3", "s4", "s5"};
    CHECK(shift_of(word(SystemId::D6, t1), d6, kD6Tuple) == shift({0, 0, 0, 0, 0, -1, 1}));
    CHECK(rat_equal(word(SystemId::D6, t1).tau, d6.sym("t")));
    // composed as point maps with the rightmost acting first, the same letters give the inverse
    auto inv = compose_parameter_action(resolve_word(SystemId::D6, t1));
    CHECK(shift_of(inv, d6, kD6Tuple) == shift({0, 0, 0, 0, 0, 1, -1}));
    CHECK(shift_of(word(SystemId::D6, {}), d6, kD6Tuple) == shift({0, 0, 0, 0, 0, 0, 0}));

    auto conj = [&](std::vector<std::string> outer, const std::vector<std::string>& inner) {
        std::vector<std::string> w = outer;
        w.insert(w.end(), inner.begin(), inner.end());
        w.insert(w.end(), outer.rbegin(), outer.rend());
        return w;
    };
    std::vector<std::string> t2 = conj({"s4", "s6"}, t1), t3 = conj({"s6"}, t1);
    CHECK(shift_of(word(SystemId::D6, t2), d6, kD6Tuple) == shift({0, 0, 0, 1, -1, 0, 0}));
    CHECK(shift_of(word(SystemId::D6, t3), d6, kD6Tuple) == shift({0, 0, 0, 0, 1, -1, -1}));
    CHECK(shift_of(word(SystemId::D6, conj({"pi2"}, t1)), d6, kD6Tuple) == shift({-1, 1, 0, 0, 0, 0, 0}));
    CHECK(shift_of(word(SystemId::D6, conj({"pi2"}, t2)), d6, kD6Tuple) == shift({0, 0, -1, 1, 0, 0, 0}));
    CHECK(shift_of(word(SystemId::D6, conj({"pi2"}, t3)), d6, kD6Tuple) == shift({-1, -1, 1, 0, 0, 0, 0}));
}

TEST_CASE("translations commute on sample points") {
    const auto& d6 = build_system(SystemId::D6);
    const std::vector<std::string> t1{"pi1", "s5", "s4", "s3", "s2", "s1", "s0", "s2", "s3", "s4", "s5"};
    std::vector<std::string> t2{"s4", "s6"};
    t2.insert(t2.end(), t1.begin(), t1.end());
    t2.insert(t2.end(), {"s6", "s4"});
    std::vector<BigRational> pt(d6.table->size(), 0);
    const char* names[] = {"x", "y", "z", "w", "t", "a0", "a1", "a2", "b2", "b3", "b4"};
    const int num[] = {3, -2, 5, 7, 11, 1, 2, -3, 5, 7, -1};
    for (std::size_t i = 0; i < 11; ++i) pt[d6.table->index(names[i])] = BigRational(num[i], 13 + static_cast<int>(i));
    std::vector<std::string> a = t1, b = t2;
    a.insert(a.end(), t2.begin(), t2.end());
    b.insert(b.end(), t1.begin(), t1.end());
    auto pa = word_apply(SystemId::D6, a, pt);
    auto pb = word_apply(SystemId::D6, b, pt);
    for (std::size_t i = 0; i < 5; ++i) CHECK(pa[i] == pb[i]);
    // s2 then s3 is not s3 then s2
    auto qa = apply_word(resolve_word(SystemId::D6, {"s2", "s3"}), pt);
    auto qb = apply_word(resolve_word(SystemId::D6, {"s3", "s2"}), pt);
    CHECK(qa != qb);
}

TEST_CASE("charts") {
    const auto& d6 = build_system(SystemId::D6);
    const auto& r4 = chart(SystemId::D6, "r4");
    CHECK(r4.name == "x4");
    CHECK(rat_equal(r4.forward[2], d6.parse("1/z")));
    CHECK(rat_equal(r4.forward[3], d6.parse("-z*(z*w+b2)")));
    CHECK(rat_equal(chart(SystemId::D6, "x2").inverse[1], d6.parse("-x^2*y-a2*x")));
    CHECK(chart(SystemId::D6, "r0").correction.has_value());

    const auto& a4 = build_system(SystemId::A4);
    const auto& c0 = chart(SystemId::A4, "r0");
    CHECK(rat_equal(c0.forward[0], a4.parse("-((x+y+w-t)*y+a0)*y")));
    CHECK(rat_equal(c0.forward[2], a4.parse("z+y")));

    CHECK_THROWS_AS(chart(SystemId::D6, "r9"), UnknownChart);
    CHECK(chart_names(SystemId::D6).size() == 25);

    for (auto id : all_contexts())
        for (const auto& n : chart_names(id)) {
            CAPTURE(system_name(id));
            CAPTURE(n);
            const auto& c = chart(id, n);
            BirationalMap f = chart_forward_map(c), g = chart_inverse_map(c);
            CHECK(is_identity(compose(f, g)));
            CHECK(is_identity(compose(g, f)));
        }
}

TEST_CASE("equivalence maps") {
    const auto& d6 = build_system(SystemId::D6);
    const auto& m = equivalence_map(EquivalenceId::D6_TO_D72);
    CHECK(rat_equal(m.images[0], d6.parse("1/x")));
    CHECK(rat_equal(m.images[1], d6.parse("-(x*y+a2)*x")));
    CHECK(rat_equal(m.images[2], d6.parse("1/z")));
    CHECK(rat_equal(m.images[3], d6.parse("-(z*w+b2)*z")));

    const auto& b = equivalence_map(EquivalenceId::D6_TO_B6B);
    CHECK(rat_equal(*b.param("a6"), d6.parse("(b3-b4)/2")));

    // the target relations hold for the transported parameters
    for (auto id : all_equivalences()) {
        const auto& e = equivalence_map(id);
        const auto& t = build_system(equivalence_target(id));
        CAPTURE(equivalence_name(id));
        for (const auto& rel : t.params.relations) {
            RationalExpr lhs(d6.table, 0);
            for (const auto& [sym, c] : rel.coeffs) lhs += e.param(sym)->scaled(c);
            CHECK(rat_equal(lhs, RationalExpr(d6.table, rel.rhs)));
        }
        for (const auto& [name, e2] : e.declared) CHECK(rat_equal(e2, *e.param(name)));
    }
    const auto& d = equivalence_map(EquivalenceId::D6_TO_D72);
    RationalExpr sum(d6.table, 0);
    for (const auto& n : build_system(SystemId::D72).params.symbols) sum += *d.param(n);
    CHECK(rat_equal(sum.scaled(2), RationalExpr(d6.table, 1)));
    CHECK(parse_equivalence("d6-to-b6a") == EquivalenceId::D6_TO_B6A);
    CHECK_THROWS(parse_equivalence("d6-to-a5"));
}

TEST_CASE("pushforward of trivial maps") {
    const auto& d6 = build_system(SystemId::D6);
    auto v = vector_field(d6).v;
    auto id = identity_map(d6.table, d6.params.basis);
    auto p = pushforward_field(id, v);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rat_equal(p[i], v[i]));
    auto rev = id;
    rev.tau = d6.parse("1-t");
    rev.dtau = d6.parse("-1");
    p = pushforward_field(rev, v);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rat_equal(p[i], -v[i]));
}
