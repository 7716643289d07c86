#include "plab/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "plab/expr_io.hpp"

namespace plab {

BirationalMap make_generator(const HamiltonianSystem& source, const HamiltonianSystem& target, const std::string& name,
                             const std::array<std::string, 4>& images, const std::string& tau,
                             const std::vector<std::string>& action) {
    const auto& tuple = target.params.action_tuple;
    if (action.size() != tuple.size()) throw ArityError("parameter action of " + name + " has wrong length");
    std::array<RationalExpr, 4> img;
    for (std::size_t i = 0; i < 4; ++i) img[i] = source.parse(images[i]);

    std::vector<std::pair<std::string, RationalExpr>> declared;
    for (std::size_t k = 0; k < tuple.size(); ++k) declared.emplace_back(tuple[k], source.parse(action[k]));

    std::vector<std::pair<std::string, RationalExpr>> params;
    Bindings basis_images(target.table, source.table);
    for (const auto& b : target.params.basis) {
        auto it = std::find(tuple.begin(), tuple.end(), b);
        RationalExpr e = it != tuple.end() ? declared[static_cast<std::size_t>(it - tuple.begin())].second
                                           : source.parse(b);
        basis_images.set(b, e);
        params.emplace_back(b, e);
    }
    for (const auto& [n, e] : target.params.elimination) params.emplace_back(n, substitute(e, basis_images));

    BirationalMap m = make_map(name, source.table, target.table, img, source.parse(tau), std::move(params));
    m.declared = std::move(declared);
    return m;
}

namespace {

struct GenSpec {
    const char* name;
    std::array<std::string, 4> images;
    const char* tau;
    std::vector<std::string> action;
    const char* poisson_f = nullptr;
    const char* poisson_alpha = nullptr;
};

using Catalog = std::map<std::string, BirationalMap>;

Catalog build(SystemId id, const std::vector<GenSpec>& specs) {
    const auto& sys = build_system(id);
    Catalog c;
    for (const auto& g : specs) {
        BirationalMap m = make_generator(sys, sys, g.name, g.images, g.tau, g.action);
        if (g.poisson_f)
            m.poisson = PoissonData{parse_poly(sys.table, g.poisson_f), sys.parse(g.poisson_alpha)};
        c.emplace(g.name, std::move(m));
    }
    return c;
}

std::vector<GenSpec> d6_specs() {
    return {
        {"s0", {"x", "y-a0/(x-t)", "z", "w"}, "t", {"-a0", "a1", "a2+a0", "g1", "b2", "b3", "b4"}, "x-t", "a0"},
        {"s1", {"x", "y", "z", "w"}, "t", {"a0", "-a1", "a2+a1", "g1", "b2", "b3", "b4"}, "1", "a1"},
        {"s2", {"x+a2/y", "y", "z", "w"}, "t", {"a0+a2", "a1+a2", "-a2", "g1+a2", "b2", "b3", "b4"}, "y", "a2"},
        {"s3",
         {"x", "y-g1/(x-z)", "z", "w+g1/(x-z)"},
         "t",
         {"a0", "a1", "a2+g1", "-g1", "b2+g1", "b3", "b4"},
         "x-z",
         "g1"},
        {"s4", {"x", "y", "z+b2/w", "w"}, "t", {"a0", "a1", "a2", "g1+b2", "-b2", "b3+b2", "b4+b2"}, "w", "b2"},
        {"s5", {"x", "y", "z", "w-b3/(z-1)"}, "t", {"a0", "a1", "a2", "g1", "b2+b3", "-b3", "b4"}, "z-1", "b3"},
        {"s6", {"x", "y", "z", "w-b4/z"}, "t", {"a0", "a1", "a2", "g1", "b2+b4", "b3", "-b4"}, "z", "b4"},
        {"pi1",
         {"(t*(t-1)+t*(x-t))/(x-t)", "-(x-t)*((x-t)*y+a2)/(t*(t-1))", "(t*(t-1)+t*(z-t))/(z-t)",
          "-(z-t)*((z-t)*w+b2)/(t*(t-1))"},
         "t",
         {"a1", "a0", "a2", "g1", "b2", "b4", "b3"}},
        {"pi2",
         {"t/z", "-z*(z*w+b2)/t", "t/x", "-x*(x*y+a2)/t"},
         "t",
         {"b3", "b4", "b2", "g1", "a2", "a0", "a1"}},
        {"pi3", {"1-x", "-y", "1-z", "-w"}, "1-t", {"a0", "a1", "a2", "g1", "b2", "b4", "b3"}},
        {"pi4",
         {"(t-1)*x/(t-x)", "(t-x)*(t*y-x*y-a2)/(t*(t-1))", "(t-1)*z/(t-z)", "(t-z)*(t*w-z*w-b2)/(t*(t-1))"},
         "1-t",
         {"a1", "a0", "a2", "g1", "b2", "b3", "b4"}},
    };
}

std::vector<GenSpec> b6a_specs() {
    return {
        {"S0",
         {"(t*x-1)/(t-1)", "(t-1)*y/t", "(t-1)*z/(t-z)", "(t-z)*(t*w-z*w-a4)/(t*(t-1))"},
         "1-t",
         {"-a0", "a1+2*a0", "a2", "a3", "a4", "a5", "a6"}},
        {"S1", {"x", "y-a1/x", "z", "w"}, "t", {"a0+a1", "-a1", "a2+a1", "a3", "a4", "a5", "a6"}, "x", "a1"},
        {"S2", {"x+a2/y", "y", "z", "w"}, "t", {"a0", "a1+a2", "-a2", "a3+a2", "a4", "a5", "a6"}, "y", "a2"},
        {"S3",
         {"x", "y-a3*z/(x*z-1)", "z", "w-a3*x/(x*z-1)"},
         "t",
         {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5", "a6"},
         "x*z-1",
         "a3"},
        {"S4", {"x", "y", "z+a4/w", "w"}, "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4", "a6+a4"}, "w", "a4"},
        {"S5", {"x", "y", "z", "w-a5/(z-1)"}, "t", {"a0", "a1", "a2", "a3", "a4+a5", "-a5", "a6"}, "z-1", "a5"},
        {"S6", {"x", "y", "z", "w-a6/z"}, "t", {"a0", "a1", "a2", "a3", "a4+a6", "a5", "-a6"}, "z", "a6"},
        {"phi",
         {"x/(x-1)", "-(x-1)*((x-1)*y+a2)", "1-z", "-w"},
         "1-t",
         {"a0", "a1", "a2", "a3", "a4", "a6", "a5"}},
    };
}

std::vector<GenSpec> b6b_specs() {
    return {
        {"w0", {"x", "y-a0/(x-t)", "z", "w"}, "t", {"-a0", "a1", "a2+a0", "a3", "a4", "a5", "a6"}, "x-t", "a0"},
        {"w1", {"x", "y", "z", "w"}, "t", {"a0", "-a1", "a2+a1", "a3", "a4", "a5", "a6"}, "1", "a1"},
        {"w2", {"x+a2/y", "y", "z", "w"}, "t", {"a0+a2", "a1+a2", "-a2", "a3+a2", "a4", "a5", "a6"}, "y", "a2"},
        {"w3",
         {"x", "y-a3*z/(x*z-1)", "z", "w-a3*x/(x*z-1)"},
         "t",
         {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5", "a6"},
         "x*z-1",
         "a3"},
        {"w4", {"x", "y", "z+a4/w", "w"}, "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4", "a6"}, "w", "a4"},
        {"w5", {"x", "y", "z", "w"}, "t", {"a0", "a1", "a2", "a3", "a4+a5", "-a5", "a6+a5"}, "1", "a5"},
        {"w6",
         {"1-x", "-y", "z/(z-1)", "-(z-1)*((z-1)*w+a4)"},
         "1-t",
         {"a0", "a1", "a2", "a3", "a4", "a5+2*a6", "-a6"}},
        {"psi",
         {"(t-1)*x/(t-x)", "(t-x)*((t-x)*y-a2)/(t*(t-1))", "(t*z-1)/(t-1)", "(t-1)*w/t"},
         "1-t",
         {"a1", "a0", "a2", "a3", "a4", "a5", "a6"}},
    };
}

std::vector<GenSpec> d72_specs() {
    return {
        {"u0",
         {"(t*x-1)/(t-1)", "(t-1)*y/t", "(t*z-1)/(t-1)", "(t-1)*w/t"},
         "1-t",
         {"-a0", "a1+2*a0", "a2", "a3", "a4", "a5", "a6"}},
        {"u1", {"x", "y-a1/x", "z", "w"}, "t", {"a0+a1", "-a1", "a2+a1", "a3", "a4", "a5", "a6"}, "x", "a1"},
        {"u2", {"x+a2/y", "y", "z", "w"}, "t", {"a0", "a1+a2", "-a2", "a3+a2", "a4", "a5", "a6"}, "y", "a2"},
        {"u3",
         {"x", "y-a3/(x-z)", "z", "w+a3/(x-z)"},
         "t",
         {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5", "a6"},
         "x-z",
         "a3"},
        {"u4", {"x", "y", "z+a4/w", "w"}, "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4", "a6"}, "w", "a4"},
        {"u5", {"x", "y", "z", "w"}, "t", {"a0", "a1", "a2", "a3", "a4+a5", "-a5", "a6+a5"}, "1", "a5"},
        {"u6",
         {"x/(x-1)", "-(x-1)*((x-1)*y+a2)", "z/(z-1)", "-(z-1)*((z-1)*w+a4)"},
         "1-t",
         {"a0", "a1", "a2", "a3", "a4", "a5+2*a6", "-a6"}},
        {"phi",
         {"1/(t*z)", "-t*z*(z*w+a4)", "1/(t*x)", "-t*x*(x*y+a2)"},
         "t",
         {"a6", "a5", "a4", "a3", "a2", "a1", "a0"}},
    };
}

std::vector<GenSpec> auto_specs() {
    return {
        {"s0", {"x", "y-a0/(x-eta)", "z", "w"}, "t", {"-a0", "a1", "a2+a0", "a3", "a4", "a5", "a6"}, "x-eta", "a0"},
        {"s1", {"x", "y", "z", "w"}, "t", {"a0", "-a1", "a2+a1", "a3", "a4", "a5", "a6"}, "1", "a1"},
        {"s2", {"x+a2/y", "y", "z", "w"}, "t", {"a0+a2", "a1+a2", "-a2", "a3+a2", "a4", "a5", "a6"}, "y", "a2"},
        {"s3",
         {"x", "y-a3/(x-z)", "z", "w+a3/(x-z)"},
         "t",
         {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5", "a6"},
         "x-z",
         "a3"},
        {"s4", {"x", "y", "z+a4/w", "w"}, "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4", "a6+a4"}, "w", "a4"},
        {"s5", {"x", "y", "z", "w-a5/(z-1)"}, "t", {"a0", "a1", "a2", "a3", "a4+a5", "-a5", "a6"}, "z-1", "a5"},
        {"s6", {"x", "y", "z", "w-a6/z"}, "t", {"a0", "a1", "a2", "a3", "a4+a6", "a5", "-a6"}, "z", "a6"},
    };
}

std::vector<GenSpec> a5_specs() {
    return {
        {"s0", {"x", "y-a0/(x-t)", "z", "w"}, "t", {"-a0", "a1+a0", "a2", "a3", "a4", "a5+a0"}},
        {"s1", {"x+a1/y", "y", "z", "w"}, "t", {"a0+a1", "-a1", "a2+a1", "a3", "a4", "a5"}},
        {"s2", {"x", "y-a2/(x-z)", "z", "w+a2/(x-z)"}, "t", {"a0", "a1+a2", "-a2", "a3+a2", "a4", "a5"}},
        {"s3", {"x", "y", "z+a3/w", "w"}, "t", {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5"}},
        {"s4", {"x", "y", "z", "w-a4/z"}, "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4"}},
        {"s5",
         {"x+a5/(y+w-1)", "y", "z+a5/(y+w-1)", "w"},
         "t",
         {"a0+a5", "a1", "a2", "a3", "a4+a5", "-a5"}},
    };
}

// Root parameters enter the coordinate images with the sign that makes the
// cataloged Hamiltonian invariant; the parameter actions are unchanged.
std::vector<GenSpec> a4_specs() {
    const std::string f = "(x+y+w-t)";
    return {
        {"s0", {"x-a0/" + f, "y+a0/" + f, "z-a0/" + f, "w"}, "t", {"-a0", "a1+a0", "a2", "a3", "a4+a0"}},
        {"s1", {"x-a1/y", "y", "z", "w"}, "t", {"a0+a1", "-a1", "a2+a1", "a3", "a4"}},
        {"s2", {"x", "y+a2/(x-z)", "z", "w-a2/(x-z)"}, "t", {"a0", "a1+a2", "-a2", "a3+a2", "a4"}},
        {"s3", {"x", "y", "z-a3/w", "w"}, "t", {"a0", "a1", "a2+a3", "-a3", "a4+a3"}},
        {"s4", {"x", "y", "z", "w+a4/z"}, "t", {"a0+a4", "a1", "a2", "a3+a4", "-a4"}},
    };
}

std::vector<GenSpec> p53_specs() {
    return {
        {"g1", {"x", "y", "z+a1/w", "w"}, "t", {"-a1", "a2+a1", "a3", "a4+a1"}},
        {"g2", {"x", "y", "z", "w-a2/z"}, "t", {"a1+a2", "-a2", "a3", "a4"}},
        {"g3", {"x+a3/y", "y", "z", "w"}, "t", {"a1", "a2", "-a3", "a4+a3"}},
        {"g4", {"x", "y-a4/(x-z)", "z", "w+a4/(x-z)"}, "t", {"a1+a4", "a2", "a3+a4", "-a4"}},
    };
}

std::vector<GenSpec> p51_specs() {
    return {
        {"u1", {"x+g1/y", "y", "z", "w"}, "t", {"-g1", "g2+g1"}},
        {"u2", {"x", "y-g2/x", "z", "w"}, "t", {"g1+g2", "-g2"}},
    };
}

const Catalog& catalog(SystemId id) {
    static const std::map<SystemId, Catalog> all = [] {
        std::map<SystemId, Catalog> m;
        m.emplace(SystemId::D6, build(SystemId::D6, d6_specs()));
        m.emplace(SystemId::B6A, build(SystemId::B6A, b6a_specs()));
        m.emplace(SystemId::B6B, build(SystemId::B6B, b6b_specs()));
        m.emplace(SystemId::D72, build(SystemId::D72, d72_specs()));
        m.emplace(SystemId::D6AUTO, build(SystemId::D6AUTO, auto_specs()));
        m.emplace(SystemId::A5, build(SystemId::A5, a5_specs()));
        m.emplace(SystemId::A4, build(SystemId::A4, a4_specs()));
        m.emplace(SystemId::P53, build(SystemId::P53, p53_specs()));
        m.emplace(SystemId::P51, build(SystemId::P51, p51_specs()));
        return m;
    }();
    return all.at(id);
}

std::vector<std::vector<int>> coxeter_from_edges(std::size_t n, const std::vector<std::array<int, 3>>& edges) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    for (const auto& [i, j, k] : edges) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
        m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = k;
    }
    return m;
}

std::vector<std::array<int, 3>> cycle(int n) {
    std::vector<std::array<int, 3>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 3});
    return e;
}

}  // namespace

const BirationalMap& generator(SystemId id, const std::string& name) {
    const auto& c = catalog(id);
    auto it = c.find(name);
    if (it == c.end()) throw UnknownGenerator(system_name(id) + ":" + name);
    return it->second;
}

const std::vector<std::string>& generator_names(SystemId id) {
    static const std::map<SystemId, std::vector<std::string>> names = [] {
        std::map<SystemId, std::vector<std::string>> m;
        auto take = [&](SystemId s, const std::vector<GenSpec>& specs) {
            for (const auto& g : specs) m[s].push_back(g.name);
        };
        take(SystemId::D6, d6_specs());
        take(SystemId::B6A, b6a_specs());
        take(SystemId::B6B, b6b_specs());
        take(SystemId::D72, d72_specs());
        take(SystemId::D6AUTO, auto_specs());
        take(SystemId::A5, a5_specs());
        take(SystemId::A4, a4_specs());
        take(SystemId::P53, p53_specs());
        take(SystemId::P51, p51_specs());
        return m;
    }();
    return names.at(id);
}

const std::vector<SystemId>& coxeter_systems() {
    static const std::vector<SystemId> ids{SystemId::D6,     SystemId::B6A, SystemId::B6B, SystemId::D72,
                                           SystemId::D6AUTO, SystemId::A5,  SystemId::A4,  SystemId::P53,
                                           SystemId::P51};
    return ids;
}

const GeneratorSet& generator_set(SystemId id) {
    static const std::map<SystemId, GeneratorSet> sets = [] {
        std::vector<std::array<int, 3>> d6_edges{{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}};
        std::map<SystemId, GeneratorSet> m;
        m[SystemId::D6] = {SystemId::D6,
                           {"s0", "s1", "s2", "s3", "s4", "s5", "s6"},
                           coxeter_from_edges(7, d6_edges),
                           {"pi1", "pi2", "pi3", "pi4"}};
        m[SystemId::D6AUTO] = {SystemId::D6AUTO,
                               {"s0", "s1", "s2", "s3", "s4", "s5", "s6"},
                               coxeter_from_edges(7, d6_edges),
                               {}};
        m[SystemId::B6A] = {SystemId::B6A,
                            {"S0", "S1", "S2", "S3", "S4", "S5", "S6"},
                            coxeter_from_edges(7, {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}}),
                            {"phi"}};
        m[SystemId::B6B] = {SystemId::B6B,
                            {"w0", "w1", "w2", "w3", "w4", "w5", "w6"},
                            coxeter_from_edges(7, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 4}}),
                            {"psi"}};
        m[SystemId::D72] = {SystemId::D72,
                            {"u0", "u1", "u2", "u3", "u4", "u5", "u6"},
                            coxeter_from_edges(7, {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 4}}),
                            {"phi"}};
        m[SystemId::A5] = {SystemId::A5, {"s0", "s1", "s2", "s3", "s4", "s5"}, coxeter_from_edges(6, cycle(6)), {}};
        m[SystemId::A4] = {SystemId::A4, {"s0", "s1", "s2", "s3", "s4"}, coxeter_from_edges(5, cycle(5)), {}};
        // classical A4 chain g2 - g1 - g4 - g3
        m[SystemId::P53] = {SystemId::P53,
                            {"g1", "g2", "g3", "g4"},
                            coxeter_from_edges(4, {{1, 0, 3}, {0, 3, 3}, {3, 2, 3}}),
                            {}};
        m[SystemId::P51] = {SystemId::P51, {"u1", "u2"}, coxeter_from_edges(2, {{0, 1, 3}}), {}};
        return m;
    }();
    auto it = sets.find(id);
    if (it == sets.end()) throw std::invalid_argument("no generator set for " + system_name(id));
    return it->second;
}

std::vector<const BirationalMap*> resolve_word(SystemId id, const std::vector<std::string>& names) {
    std::vector<const BirationalMap*> out;
    for (const auto& n : names) out.push_back(&generator(id, n));
    return out;
}

namespace {
std::vector<const BirationalMap*> reversed(SystemId id, const std::vector<std::string>& word) {
    auto w = resolve_word(id, word);
    std::reverse(w.begin(), w.end());
    return w;
}
}  // namespace

BirationalMap word_map(SystemId id, const std::vector<std::string>& word) {
    if (word.empty()) {
        const auto& s = build_system(id);
        BirationalMap m = identity_map(s.table, s.params.basis);
        for (const auto& [n, e] : s.params.elimination) m.params.emplace_back(n, e);
        return m;
    }
    return compose_word(reversed(id, word));
}

ParameterAction word_action(SystemId id, const std::vector<std::string>& word) {
    if (word.empty()) {
        auto m = word_map(id, word);
        return {m.tau, m.params};
    }
    return compose_parameter_action(reversed(id, word));
}

std::vector<BigRational> word_apply(SystemId id, const std::vector<std::string>& word,
                                    const std::vector<BigRational>& point) {
    return apply_word(reversed(id, word), point);
}

// ---------------------------------------------------------------- charts

namespace {

struct ChartBuilder {
    const HamiltonianSystem& sys;
    RationalExpr E(const std::string& s) const { return sys.parse(s); }
    RationalExpr S(const char* n) const { return sys.sym(n); }

    Chart make(const std::string& name, const std::string& label, const std::array<std::string, 4>& fwd,
               const std::array<RationalExpr, 4>& inv, const char* correction = nullptr, bool composite = false) const {
        Chart c;
        c.name = name;
        c.label = label;
        c.system = sys.id;
        for (std::size_t i = 0; i < 4; ++i) c.forward[i] = E(fwd[i]);
        c.inverse = inv;
        if (correction) c.correction = E(correction);
        c.composite = composite;
        return c;
    }
    std::array<RationalExpr, 4> inv(const std::array<std::string, 4>& s) const {
        return {E(s[0]), E(s[1]), E(s[2]), E(s[3])};
    }
};

using ChartList = std::vector<Chart>;

// canonical charts r0..r6; the parameters are those of the D6 table or the D6AUTO table.
ChartList d6_like_charts(const HamiltonianSystem& sys, const std::string& pt, const std::string& p3,
                         const std::string& p4, const std::string& p5, const std::string& p6) {
    ChartBuilder b{sys};
    const std::string a0 = "a0", a12 = "(a1+a2)", a2 = "a2";
    ChartList out;
    out.push_back(b.make("x0", "r0", {"-((x-" + pt + ")*y-a0)*y", "1/y", "z", "w"},
                         b.inv({pt + "+a0*y-x*y^2", "1/y", "z", "w"}), "y"));
    out.push_back(b.make("x1", "r1", {"1/x", "-x*(x*y+a1+a2)", "z", "w"},
                         b.inv({"1/x", "-x^2*y-" + a12 + "*x", "z", "w"})));
    out.push_back(
        b.make("x2", "r2", {"1/x", "-x*(x*y+a2)", "z", "w"}, b.inv({"1/x", "-x^2*y-" + a2 + "*x", "z", "w"})));
    out.push_back(b.make("x3", "r3", {"-((x-z)*y-" + p3 + ")*y", "1/y", "z", "y+w"},
                         b.inv({"z+" + p3 + "*y-x*y^2", "1/y", "z", "w-1/y"})));
    out.push_back(b.make("x4", "r4", {"x", "y", "1/z", "-z*(z*w+" + p4 + ")"},
                         b.inv({"x", "y", "1/z", "-z^2*w-" + p4 + "*z"})));
    out.push_back(b.make("x5", "r5", {"x", "y", "-((z-1)*w-" + p5 + ")*w", "1/w"},
                         b.inv({"x", "y", "1+" + p5 + "*w-z*w^2", "1/w"})));
    out.push_back(b.make("x6", "r6", {"x", "y", "-w*(z*w-" + p6 + ")", "1/w"},
                         b.inv({"x", "y", p6 + "*w-z*w^2", "1/w"})));
    (void)a0;
    return out;
}

ChartList d6_composites(const HamiltonianSystem& sys) {
    ChartBuilder b{sys};
    ChartList out;
    const std::string r0f0 = "-((x-t)*y-a0)*y", r0i = "t+a0*y-x*y^2";
    struct Half {
        std::string f0, f1, i0, i1;
    };
    // single-pair pieces: (x,y) from r0, r1, r2 and (z,w) from r4, r5, r6
    std::map<std::string, Half> xy{{"r0", {r0f0, "1/y", r0i, "1/y"}},
                                   {"r1", {"1/x", "-(x*y+a1+a2)*x", "1/x", "-x^2*y-(a1+a2)*x"}},
                                   {"r2", {"1/x", "-x*(x*y+a2)", "1/x", "-x^2*y-a2*x"}}};
    std::map<std::string, Half> zw{{"r4", {"1/z", "-z*(z*w+b2)", "1/z", "-z^2*w-b2*z"}},
                                   {"r5", {"-((z-1)*w-b3)*w", "1/w", "1+b3*w-z*w^2", "1/w"}},
                                   {"r6", {"-(z*w-b4)*w", "1/w", "b4*w-z*w^2", "1/w"}}};

    out.push_back(b.make("x7", "r0r3",
                         {"-(y+w)*((x-t)*(y+w)-a0)", "1/(y+w)", "-((z-x)*w-(a4-b4))*w", "1/w"},
                         b.inv({r0i, "1/y-1/w", r0i + "+g1*w-z*w^2", "1/w"}), nullptr, true));
    int idx = 8;
    for (const char* p : {"r0", "r1", "r2"})
        for (const char* q : {"r4", "r5", "r6"}) {
            const auto& h1 = xy.at(p);
            const auto& h2 = zw.at(q);
            out.push_back(b.make("x" + std::to_string(idx++), std::string(p) + q, {h1.f0, h1.f1, h2.f0, h2.f1},
                                 b.inv({h1.i0, h1.i1, h2.i0, h2.i1}), nullptr, true));
        }
    out.push_back(b.make("x17", "r3r5",
                         {"-((x-z)*y-(a4-b4))*y", "1/y", "-((z-1)*(y+w)-b3)*(y+w)", "1/(y+w)"},
                         b.inv({"1+b3*w-z*w^2+g1*y-x*y^2", "1/y", "1+b3*w-z*w^2", "1/w-1/y"}), nullptr, true));
    out.push_back(b.make("x18", "r3r6", {"-((x-z)*y-(a4-b4))*y", "1/y", "-(z*(y+w)-b4)*(y+w)", "1/(y+w)"},
                         b.inv({"b4*w-z*w^2+g1*y-x*y^2", "1/y", "b4*w-z*w^2", "1/w-1/y"}), nullptr, true));

    // triple charts: inverses are solved step by step in the new coordinates
    RationalExpr X = b.S("x"), Y = b.S("y"), Z = b.S("z"), W = b.S("w"), one(sys.table, 1);
    auto r3r4r = [&](const std::string& name, const std::string& label, const std::string& shift) {
        RationalExpr u = W * Z - X / W - b.S("g1");
        RationalExpr z = -(W * u).inverse();
        RationalExpr w = (u - b.S("b2")) / z;
        RationalExpr y = X * X * (W.inverse() - Y) - b.E(shift) * X;
        return b.make(name, label,
                      {"1/x", "-x^2*y-z^2*w-" + shift + "*x-b2*z",
                       "z*(z*w+b2)*(-x*z*w+z^2*w-a4*x-b2*x+b2*z+b4*x)/x", "-1/(z*(z*w+b2))"},
                      {X.inverse(), y, z, w}, nullptr, true);
    };
    auto r4r3 = [&](const std::string& name, const std::string& label, const char* zshift, bool five,
                    const std::array<std::string, 4>& fwd) {
        RationalExpr y = Y.inverse();
        RationalExpr v = -Z.inverse();
        RationalExpr c = -W * y / v - b.S("b2") * y;
        RationalExpr w = c * y / (v - c);
        RationalExpr s = y + w;
        RationalExpr z = (v / s + b.S(zshift)) / s;
        if (five) z = z + one;
        RationalExpr x = z - (X + v - b.S("g1") * y) / (y * y);
        return b.make(name, label, fwd, {x, y, z, w}, nullptr, true);
    };
    auto r0r3r = [&](const std::string& name, const std::string& label, const std::string& shift,
                     const std::array<std::string, 4>& fwd) {
        RationalExpr w = W.inverse();
        RationalExpr m = X.inverse();
        RationalExpr c = w * (Y / m + b.E(shift)) / m;
        RationalExpr y = c * w / (one - c);
        RationalExpr s = y + w;
        RationalExpr x = b.S("t") - (m / s - b.S("a0")) / s;
        RationalExpr z = x + (m + b.S("g1") * w - Z) / (w * w);
        return b.make(name, label, fwd, {x, y, z, w}, nullptr, true);
    };
    out.push_back(r3r4r("x19", "r3(r4r2)", "a2"));
    out.push_back(r4r3("x20", "r4(r5r3)", "b3", true,
                       {"w^2+2*y*w+y^2-x*y^2-z*w^2-2*y*z*w+a4*y+b3*(y+w)-b4*y", "1/y",
                        "-1/((y+w)*(-y-w+z*w+y*z-b3))",
                        "-((y+w)*(-y-w+z*w+y*z-b3)*((y+w)*(z*w-w)+b2*y-b3*w))/y"}));
    out.push_back(r4r3("x21", "r4(r6r3)", "b4", false,
                       {"-x*y^2-z*w^2-2*y*z*w+a4*y+b4*w", "1/y", "-1/((y+w)*(z*w+y*z-b4))",
                        "-(y+w)*(z*w+y*z-b4)*(z*w^2+y*z*w+b2*y-b4*w)/y"}));
    out.push_back(r0r3r("x22", "r2(r0r3)", "a2",
                        {"1/((y+w)*(t*w-x*w+t*y-x*y+a0))",
                         "(y+w)*(t*w-x*w+t*y-x*y+a0)*(t*y*w-x*y*w+t*y^2-x*y^2+a0*y-a2*w)/w",
                         "t*w^2+2*(t-x)*y*w+t*y^2-x*y^2-z*w^2+a0*(y+w)+(a4-b4)*w", "1/w"}));
    out.push_back(r3r4r("x23", "r3(r4r1)", "(a1+a2)"));
    out.push_back(r0r3r("x24", "r1(r0r3)", "(a1+a2)",
                        {"1/((y+w)*(t*w-x*w+t*y-x*y+a0))",
                         "(y+w)*((t-x)*(y+w)+a0)*(t*y*w-x*y*w+t*y^2-x*y^2+a0*y-(a1+a2)*w)/w",
                         "t*w^2+2*(t-x)*y*w+t*y^2-x*y^2-z*w^2+a0*(y+w)+(a4-b4)*w", "1/w"}));
    return out;
}

ChartList a5_charts(const HamiltonianSystem& sys) {
    ChartBuilder b{sys};
    return {
        b.make("x0", "r0", {"-((x-t)*y-a0)*y", "1/y", "z", "w"}, b.inv({"t+a0*y-x*y^2", "1/y", "z", "w"}), "y"),
        b.make("x1", "r1", {"1/x", "-(x*y+a1)*x", "z", "w"}, b.inv({"1/x", "-x^2*y-a1*x", "z", "w"})),
        b.make("x2", "r2", {"-((x-z)*y-a2)*y", "1/y", "z", "w+y"}, b.inv({"z+a2*y-x*y^2", "1/y", "z", "w-1/y"})),
        b.make("x3", "r3", {"x", "y", "1/z", "-(z*w+a3)*z"}, b.inv({"x", "y", "1/z", "-z^2*w-a3*z"})),
        b.make("x4", "r4", {"x", "y", "-(z*w-a4)*w", "1/w"}, b.inv({"x", "y", "a4*w-z*w^2", "1/w"})),
        // the y-image carries x, not y, inside the bracket
        b.make("x5", "r5", {"1/x", "-((y+w-1)*x+a5)*x", "z-x", "w"},
               b.inv({"1/x", "1-w-x^2*y-a5*x", "z+1/x", "w"})),
    };
}

ChartList a4_charts(const HamiltonianSystem& sys) {
    ChartBuilder b{sys};
    return {
        b.make("x0", "r0", {"-((x+y+w-t)*y+a0)*y", "1/y", "z+y", "w"},
               b.inv({"t-1/y-w-a0*y-x*y^2", "1/y", "z-1/y", "w"}), "y"),
        b.make("x1", "r1", {"1/x", "-(x*y-a1)*x", "z", "w"}, b.inv({"1/x", "-x^2*y+a1*x", "z", "w"})),
        b.make("x2", "r2", {"-((x-z)*y+a2)*y", "1/y", "z", "w+y"}, b.inv({"z-a2*y-x*y^2", "1/y", "z", "w-1/y"})),
        b.make("x3", "r3", {"x", "y", "1/z", "-(z*w-a3)*z"}, b.inv({"x", "y", "1/z", "-z^2*w+a3*z"})),
        b.make("x4", "r4", {"x", "y", "-(z*w+a4)*w", "1/w"}, b.inv({"x", "y", "-a4*w-z*w^2", "1/w"})),
    };
}

ChartList p51_charts(const HamiltonianSystem& sys) {
    ChartBuilder b{sys};
    return {
        b.make("c1", "(x1,y1)", {"1/x", "-(x*y+g1)*x", "z", "w"}, b.inv({"1/x", "-x^2*y-g1*x", "z", "w"})),
        b.make("c2", "(x2,y2)", {"-(x*y-g2)*y", "1/y", "z", "w"}, b.inv({"g2*y-x*y^2", "1/y", "z", "w"})),
    };
}

ChartList p53_charts(const HamiltonianSystem& sys) {
    ChartBuilder b{sys};
    return {
        b.make("g1", "g1", {"x", "y", "1/z", "-z*(z*w+a1)"}, b.inv({"x", "y", "1/z", "-z^2*w-a1*z"})),
        b.make("g2", "g2", {"x", "y", "-w*(z*w-a2)", "1/w"}, b.inv({"x", "y", "a2*w-z*w^2", "1/w"})),
        b.make("g3", "g3", {"1/x", "-x*(x*y+a3)", "z", "w"}, b.inv({"1/x", "-x^2*y-a3*x", "z", "w"})),
        b.make("g4", "g4", {"-((x-z)*y-a4)*y", "1/y", "z", "y+w"}, b.inv({"z+a4*y-x*y^2", "1/y", "z", "w-1/y"})),
    };
}

const std::map<SystemId, ChartList>& chart_catalog() {
    static const std::map<SystemId, ChartList> all = [] {
        std::map<SystemId, ChartList> m;
        const auto& d6 = build_system(SystemId::D6);
        m[SystemId::D6] = d6_like_charts(d6, "t", "g1", "b2", "b3", "b4");
        for (auto& c : d6_composites(d6)) m[SystemId::D6].push_back(std::move(c));
        const auto& au = build_system(SystemId::D6AUTO);
        m[SystemId::D6AUTO] = d6_like_charts(au, "eta", "a3", "a4", "a5", "a6");
        for (auto& c : m[SystemId::D6AUTO]) c.correction.reset();
        m[SystemId::A5] = a5_charts(build_system(SystemId::A5));
        m[SystemId::A4] = a4_charts(build_system(SystemId::A4));
        m[SystemId::P51] = p51_charts(build_system(SystemId::P51));
        m[SystemId::P53] = p53_charts(build_system(SystemId::P53));
        return m;
    }();
    return all;
}

}  // namespace

const Chart& chart(SystemId id, const std::string& name) {
    const auto& all = chart_catalog();
    auto it = all.find(id);
    if (it != all.end())
        for (const auto& c : it->second)
            if (c.name == name || c.label == name) return c;
    throw UnknownChart(system_name(id) + ":" + name);
}

const std::vector<std::string>& chart_names(SystemId id) {
    static const std::map<SystemId, std::vector<std::string>> names = [] {
        std::map<SystemId, std::vector<std::string>> m;
        for (const auto& [sid, list] : chart_catalog())
            for (const auto& c : list) m[sid].push_back(c.name);
        return m;
    }();
    static const std::vector<std::string> none;
    auto it = names.find(id);
    return it == names.end() ? none : it->second;
}

BirationalMap chart_forward_map(const Chart& c) {
    const auto& sys = build_system(c.system);
    std::vector<std::pair<std::string, RationalExpr>> ps;
    for (const auto& n : sys.params.basis) ps.emplace_back(n, sys.sym(n));
    return make_map(c.label, sys.table, sys.table, c.forward, sys.sym("t"), ps);
}

BirationalMap chart_inverse_map(const Chart& c) {
    const auto& sys = build_system(c.system);
    std::vector<std::pair<std::string, RationalExpr>> ps;
    for (const auto& n : sys.params.basis) ps.emplace_back(n, sys.sym(n));
    return make_map(c.label + "^-1", sys.table, sys.table, c.inverse, sys.sym("t"), ps);
}

// ------------------------------------------------------------ equivalences

const std::vector<EquivalenceId>& all_equivalences() {
    static const std::vector<EquivalenceId> ids{EquivalenceId::D6_TO_B6A, EquivalenceId::D6_TO_B6B,
                                                EquivalenceId::D6_TO_D72};
    return ids;
}

std::string equivalence_name(EquivalenceId id) {
    switch (id) {
        case EquivalenceId::D6_TO_B6A: return "D6_TO_B6A";
        case EquivalenceId::D6_TO_B6B: return "D6_TO_B6B";
        case EquivalenceId::D6_TO_D72: return "D6_TO_D72";
    }
    return "?";
}

EquivalenceId parse_equivalence(const std::string& name) {
    std::string up;
    for (char c : name) up += static_cast<char>(c == '-' ? '_' : std::toupper(static_cast<unsigned char>(c)));
    for (auto id : all_equivalences())
        if (equivalence_name(id) == up) return id;
    throw std::invalid_argument("unknown equivalence: " + name);
}

SystemId equivalence_target(EquivalenceId id) {
    switch (id) {
        case EquivalenceId::D6_TO_B6A: return SystemId::B6A;
        case EquivalenceId::D6_TO_B6B: return SystemId::B6B;
        case EquivalenceId::D6_TO_D72: return SystemId::D72;
    }
    return SystemId::D6;
}

const BirationalMap& equivalence_map(EquivalenceId id) {
    static const std::map<EquivalenceId, BirationalMap> maps = [] {
        const auto& d6 = build_system(SystemId::D6);
        std::map<EquivalenceId, BirationalMap> m;
        m.emplace(EquivalenceId::D6_TO_B6A,
                  make_generator(d6, build_system(SystemId::B6A), "D6_TO_B6A", {"1/x", "-(x*y+a2)*x", "z", "w"}, "t",
                                 {"(a0-a1)/2", "a1", "a2", "g1", "b2", "b3", "b4"}));
        m.emplace(EquivalenceId::D6_TO_B6B,
                  make_generator(d6, build_system(SystemId::B6B), "D6_TO_B6B", {"x", "y", "1/z", "-(z*w+b2)*z"}, "t",
                                 {"a0", "a1", "a2", "g1", "b2", "b4", "(b3-b4)/2"}));
        m.emplace(EquivalenceId::D6_TO_D72,
                  make_generator(d6, build_system(SystemId::D72), "D6_TO_D72",
                                 {"1/x", "-(x*y+a2)*x", "1/z", "-(z*w+b2)*z"}, "t",
                                 {"(a0-a1)/2", "a1", "a2", "g1", "b2", "b4", "(b3-b4)/2"}));
        return m;
    }();
    return maps.at(id);
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& equivalence_dictionary(EquivalenceId id) {
    using Dict = std::vector<std::pair<std::string, std::vector<std::string>>>;
    static const std::map<EquivalenceId, Dict> dicts{
        {EquivalenceId::D6_TO_B6A,
         {{"S0", {"pi4"}},
          {"S1", {"s1"}},
          {"S2", {"s2"}},
          {"S3", {"s3"}},
          {"S4", {"s4"}},
          {"S5", {"s5"}},
          {"S6", {"s6"}},
          {"phi", {"pi3"}}}},
        {EquivalenceId::D6_TO_B6B,
         {{"w0", {"s0"}},
          {"w1", {"s1"}},
          {"w2", {"s2"}},
          {"w3", {"s3"}},
          {"w4", {"s4"}},
          {"w5", {"s6"}},
          {"w6", {"pi3"}},
          {"psi", {"pi4"}}}},
        {EquivalenceId::D6_TO_D72,
         {{"u0", {"pi4"}},
          {"u1", {"s1"}},
          {"u2", {"s2"}},
          {"u3", {"s3"}},
          {"u4", {"s4"}},
          {"u5", {"s6"}},
          {"u6", {"pi3"}},
          {"phi", {"pi2"}}}},
    };
    return dicts.at(id);
}

}  // namespace plab
