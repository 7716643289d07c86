#include "plab/systems.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "plab/expr_io.hpp"

namespace plab {

const std::vector<SystemId>& all_systems() {
    static const std::vector<SystemId> ids{SystemId::D6,     SystemId::B6A, SystemId::B6B, SystemId::D72,
                                           SystemId::D6AUTO, SystemId::A5,  SystemId::A4};
    return ids;
}

std::string system_name(SystemId id) {
    switch (id) {
        case SystemId::D6: return "D6";
        case SystemId::B6A: return "B6A";
        case SystemId::B6B: return "B6B";
        case SystemId::D72: return "D72";
        case SystemId::D6AUTO: return "D6AUTO";
        case SystemId::A5: return "A5";
        case SystemId::A4: return "A4";
        case SystemId::P51: return "P51";
        case SystemId::P53: return "P53";
    }
    return "?";
}

const std::vector<SystemId>& all_contexts() {
    static const std::vector<SystemId> ids = [] {
        auto v = all_systems();
        v.push_back(SystemId::P51);
        v.push_back(SystemId::P53);
        return v;
    }();
    return ids;
}

SystemId parse_system_id(const std::string& name) {
    std::string up;
    for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (auto id : all_contexts())
        if (system_name(id) == up) return id;
    throw std::invalid_argument("unknown system id: " + name);
}

const RationalExpr* ParameterSpace::eliminated(const std::string& name) const {
    for (const auto& [n, e] : elimination)
        if (n == name) return &e;
    return nullptr;
}

std::size_t ParameterSpace::independent_relations() const {
    std::vector<std::vector<BigRational>> rows;
    for (const auto& rel : relations) {
        std::vector<BigRational> row(symbols.size(), 0);
        for (const auto& [n, c] : rel.coeffs) {
            auto it = std::find(symbols.begin(), symbols.end(), n);
            if (it == symbols.end()) throw UnknownSymbol(n);
            row[static_cast<std::size_t>(it - symbols.begin())] += c;
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < symbols.size() && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sgn(rows[r][col]) == 0) continue;
            BigRational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = 0; c < symbols.size(); ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

Bindings HamiltonianSystem::elimination_bindings() const {
    Bindings b = Bindings::by_name(table, table);
    for (const auto& [n, e] : params.elimination) b.set(n, e);
    return b;
}

RationalExpr HamiltonianSystem::reduce(const RationalExpr& e) const { return substitute(e, elimination_bindings()); }

RationalExpr HamiltonianSystem::parse(const std::string& text) const { return reduce(parse_expr(table, text)); }

RationalExpr HamiltonianSystem::sym(const std::string& name) const { return reduce(RationalExpr::symbol(table, name)); }

std::vector<std::size_t> HamiltonianSystem::basis_indices() const {
    std::vector<std::size_t> out;
    for (const auto& n : params.basis) out.push_back(table->index(n));
    return out;
}

RationalExpr scalar_hamiltonian(ScalarKind kind, const TablePtr& table, const std::string& qn, const std::string& pn,
                                const std::string& tn, const std::vector<RationalExpr>& c) {
    const std::size_t want = (kind == ScalarKind::V) ? 3 : (kind == ScalarKind::IV) ? 2 : 5;
    if (c.size() != want)
        throw ArityError("scalar Hamiltonian expects " + std::to_string(want) + " parameters, got " +
                         std::to_string(c.size()));
    RationalExpr q = RationalExpr::symbol(table, qn), p = RationalExpr::symbol(table, pn),
                 t = RationalExpr::symbol(table, tn);
    RationalExpr one(table, 1), two(table, 2);
    switch (kind) {
        case ScalarKind::VI: {
            RationalExpr num = p * p * (q - t) * (q - one) * q -
                               ((c[0] - one) * (q - one) * q + c[3] * (q - t) * q + c[4] * (q - t) * (q - one)) * p +
                               c[2] * (c[1] + c[2]) * q;
            return num / (t * (t - one));
        }
        case ScalarKind::VI_TILDE: {
            RationalExpr num =
                p * p * (t * q - one) * (q - one) * q -
                ((c[0] - one) * t * (q - one) * q + c[1] * (q - one) * (t * q - one) + c[3] * q * (t * q - one)) * p +
                c[2] * (c[2] + c[4]) * t * q;
            return num / (t * (t - one));
        }
        case ScalarKind::V:
            return (q * q * p * p - q * q * p) / t - q * p * p + (one + c[2] / t) * q * p + c[1] * p - c[0] * q / t;
        case ScalarKind::IV:
            return q * q * p + q * p * p - t * q * p - c[0] * q + c[1] * p;
        case ScalarKind::AUTO: {
            const RationalExpr& eta = t;
            return q * (q - one) * (q - eta) * p * p -
                   (c[0] * q * (q - one) + c[4] * (q - one) * (q - eta) + c[3] * q * (q - eta)) * p +
                   c[2] * (c[1] + c[2]) * q;
        }
    }
    return RationalExpr(table, 0);
}

namespace {

std::vector<SymbolTable::Entry> state_entries() {
    return {{"x", SymbolRole::State}, {"y", SymbolRole::State}, {"z", SymbolRole::State},
            {"w", SymbolRole::State}, {"t", SymbolRole::Time}};
}

AffineRelation relation(std::vector<std::pair<std::string, BigRational>> coeffs, BigRational rhs) {
    return AffineRelation{std::move(coeffs), std::move(rhs)};
}

HamiltonianSystem skeleton(SystemId id, const std::vector<std::string>& param_names,
                           const std::vector<std::string>& extra_first = {}) {
    auto entries = state_entries();
    for (const auto& n : extra_first) entries.push_back({n, SymbolRole::Parameter});
    for (const auto& n : param_names) entries.push_back({n, SymbolRole::Parameter});
    HamiltonianSystem s;
    s.id = id;
    s.table = make_table(entries);
    s.state = {0, 1, 2, 3};
    s.time = 4;
    for (const auto& n : extra_first) s.params.symbols.push_back(n);
    for (const auto& n : param_names) s.params.symbols.push_back(n);
    return s;
}

std::vector<RationalExpr> P(const HamiltonianSystem& s, std::initializer_list<const char*> texts) {
    std::vector<RationalExpr> out;
    for (auto t : texts) out.push_back(parse_expr(s.table, t));
    return out;
}

// Single relation sum c_i a_i = rhs over a0..an; eliminates the last symbol.
void single_relation(HamiltonianSystem& s, const std::vector<std::pair<std::string, BigRational>>& coeffs,
                     const BigRational& rhs) {
    s.params.relations.push_back(relation(coeffs, rhs));
    const auto& [last, lc] = coeffs.back();
    RationalExpr e(s.table, rhs);
    for (std::size_t k = 0; k + 1 < coeffs.size(); ++k)
        e -= RationalExpr::symbol(s.table, coeffs[k].first).scaled(coeffs[k].second);
    s.params.elimination.push_back({last, e.scaled(BigRational(1) / lc)});
    for (const auto& n : s.params.symbols)
        if (n != last) s.params.basis.push_back(n);
}

HamiltonianSystem make_d6() {
    HamiltonianSystem s = skeleton(SystemId::D6, {"a0", "a1", "a2", "a3", "a4", "b0", "b1", "b2", "b3", "b4", "g1"});
    auto& ps = s.params;
    ps.relations = {
        relation({{"a0", 1}, {"a1", 1}, {"a2", 2}, {"g1", 2}, {"b2", 2}, {"b3", 1}, {"b4", 1}}, 1),
        relation({{"g1", 1}, {"a4", -1}, {"b4", 1}}, 0),
        relation({{"a3", 1}, {"g1", -1}, {"b2", -2}, {"b3", -1}}, 0),
        relation({{"b0", 1}, {"a0", -1}, {"g1", -1}}, 0),
        relation({{"b1", 1}, {"a1", -1}, {"a2", -2}, {"g1", -1}}, 0),
    };
    ps.basis = {"a0", "a1", "a2", "b2", "b3", "b4"};
    ps.action_tuple = {"a0", "a1", "a2", "g1", "b2", "b3", "b4"};
    RationalExpr g1 = parse_expr(s.table, "(1 - a0 - a1 - 2*a2 - 2*b2 - b3 - b4)/2");
    auto S = [&](const char* n) { return RationalExpr::symbol(s.table, n); };
    ps.elimination = {
        {"g1", g1},
        {"a3", g1 + S("b2").scaled(2) + S("b3")},
        {"a4", g1 + S("b4")},
        {"b0", S("a0") + g1},
        {"b1", S("a1") + S("a2").scaled(2) + g1},
    };
    RationalExpr H = scalar_hamiltonian(ScalarKind::VI, s.table, "x", "y", "t", P(s, {"a0", "a1", "a2", "a3", "a4"})) +
                     scalar_hamiltonian(ScalarKind::VI, s.table, "z", "w", "t", P(s, {"b0", "b1", "b2", "b3", "b4"})) +
                     parse_expr(s.table, "2*(x-t)*y*z*((z-1)*w+b2)/(t*(t-1))");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_b6a() {
    HamiltonianSystem s = skeleton(SystemId::B6A, {"a0", "a1", "a2", "a3", "a4", "a5", "a6"});
    s.params.action_tuple = s.params.symbols;
    single_relation(s, {{"a0", 2}, {"a1", 2}, {"a2", 2}, {"a3", 2}, {"a4", 2}, {"a5", 1}, {"a6", 1}}, 1);
    RationalExpr H =
        scalar_hamiltonian(ScalarKind::VI_TILDE, s.table, "x", "y", "t",
                           P(s, {"2*a0+a1", "a1", "a2", "a3+2*a4+a5", "a3+a6"})) +
        scalar_hamiltonian(ScalarKind::VI, s.table, "z", "w", "t", P(s, {"2*a0+a1+2*a2+a3", "a1+a3", "a4", "a5", "a6"})) +
        parse_expr(s.table, "2*x*z*((t*x-1)*y+t*a2)*((z-1)*w+a4)/(t*(t-1))");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_b6b() {
    HamiltonianSystem s = skeleton(SystemId::B6B, {"a0", "a1", "a2", "a3", "a4", "a5", "a6"});
    s.params.action_tuple = s.params.symbols;
    single_relation(s, {{"a0", 1}, {"a1", 1}, {"a2", 2}, {"a3", 2}, {"a4", 2}, {"a5", 2}, {"a6", 2}}, 1);
    RationalExpr H = scalar_hamiltonian(ScalarKind::VI, s.table, "x", "y", "t",
                                        P(s, {"a0", "a1", "a2", "a3+a5+2*a6", "a3+2*a4+a5"})) +
                     scalar_hamiltonian(ScalarKind::VI_TILDE, s.table, "z", "w", "t",
                                        P(s, {"a0+a3", "a1+2*a2+a3", "a4", "a5+2*a6", "a5"})) +
                     parse_expr(s.table, "2*(x-t)*y*(z-1)*w/(t*(t-1))");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_d72() {
    HamiltonianSystem s = skeleton(SystemId::D72, {"a0", "a1", "a2", "a3", "a4", "a5", "a6"});
    s.params.action_tuple = s.params.symbols;
    single_relation(s, {{"a0", 1}, {"a1", 1}, {"a2", 1}, {"a3", 1}, {"a4", 1}, {"a5", 1}, {"a6", 1}},
                    BigRational(1, 2));
    RationalExpr H = scalar_hamiltonian(ScalarKind::VI_TILDE, s.table, "x", "y", "t",
                                        P(s, {"2*a0+a1", "a1", "a2", "a3+a5+2*a6", "a3+2*a4+a5"})) +
                     scalar_hamiltonian(ScalarKind::VI_TILDE, s.table, "z", "w", "t",
                                        P(s, {"2*a0+a1+2*a2+a3", "a1+a3", "a4", "a5+2*a6", "a5"})) +
                     parse_expr(s.table, "2*x*((t*x-1)*y+t*a2)*(z-1)*w/(t*(t-1))");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_auto() {
    HamiltonianSystem s = skeleton(SystemId::D6AUTO, {"a0", "a1", "a2", "a3", "a4", "a5", "a6"}, {"eta"});
    s.params.action_tuple = {"a0", "a1", "a2", "a3", "a4", "a5", "a6"};
    single_relation(s, {{"a0", 1}, {"a1", 1}, {"a2", 2}, {"a3", 2}, {"a4", 2}, {"a5", 1}, {"a6", 1}}, 0);
    s.autonomous = true;
    RationalExpr H = scalar_hamiltonian(ScalarKind::AUTO, s.table, "x", "y", "eta",
                                        P(s, {"a0", "a1", "a2", "a3+2*a4+a5", "a3+a6"})) +
                     scalar_hamiltonian(ScalarKind::AUTO, s.table, "z", "w", "eta",
                                        P(s, {"a0+a3", "a1+2*a2+a3", "a4", "a5", "a6"})) +
                     parse_expr(s.table, "2*(x-eta)*y*z*((z-1)*w+a4)");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_a5() {
    HamiltonianSystem s = skeleton(SystemId::A5, {"a0", "a1", "a2", "a3", "a4", "a5"});
    s.params.action_tuple = s.params.symbols;
    single_relation(s, {{"a0", 1}, {"a1", 1}, {"a2", 1}, {"a3", 1}, {"a4", 1}, {"a5", 1}}, 1);
    RationalExpr H =
        scalar_hamiltonian(ScalarKind::V, s.table, "x", "y", "t", P(s, {"a1", "a2+a4", "a1+a3+a5"})) +
        scalar_hamiltonian(ScalarKind::V, s.table, "z", "w", "t", P(s, {"a3", "a4", "a1+a3+a5"})) +
        parse_expr(s.table, "-2*y*z*w + 2*x*y*z*w/t");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_a4() {
    HamiltonianSystem s = skeleton(SystemId::A4, {"a0", "a1", "a2", "a3", "a4"});
    s.params.action_tuple = s.params.symbols;
    single_relation(s, {{"a0", 1}, {"a1", 1}, {"a2", 1}, {"a3", 1}, {"a4", 1}}, 1);
    RationalExpr H = scalar_hamiltonian(ScalarKind::IV, s.table, "x", "y", "t", P(s, {"a1", "a2+a4"})) +
                     scalar_hamiltonian(ScalarKind::IV, s.table, "z", "w", "t", P(s, {"a3", "a4"})) +
                     parse_expr(s.table, "2*y*z*w");
    s.H = s.reduce(H);
    return s;
}

HamiltonianSystem make_family(SystemId id, const std::vector<std::string>& roots, const std::vector<std::string>& coeffs,
                              const std::string& h) {
    HamiltonianSystem s = skeleton(id, coeffs, roots);
    s.params.basis = s.params.symbols;
    s.params.action_tuple = roots;
    s.H = parse_expr(s.table, h);
    return s;
}

HamiltonianSystem make_p51() {
    return make_family(SystemId::P51, {"g1", "g2"}, {"k1", "k2", "k3", "k4", "k5", "k6"},
                       "k1*x^3*y^2 + k2*x^2*y^3 + k3*x^2*y^2 + k4*x^2*y + k5*x*y^2 + k6*x*y"
                       " - (g2*k5 + g2^2*k2)*y + (g1*k4 - g1^2*k1)*x");
}

// x^2*y^3 carries (b7-b4)/2, matching the z^2*w^3 term
HamiltonianSystem make_p53() {
    return make_family(
        SystemId::P53, {"a1", "a2", "a3", "a4"}, {"b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9"},
        "(b5+b9)/2*x^3*y^2 + (b7-b4)/2*x^2*y^3 + (b1+b3)/2*x^2*y^2 + b8*x^2*y + b6*x*y^2 + b2*x*y"
        " + ((3*a1*a2+a2^2+2*a2*a4+a4^2)*b4 + 2*(-a2-a4)*b6 + (-a1*a2-a2^2-2*a2*a4-a4^2)*b7)/2*y"
        " - (a3*b5-2*b8+a3*b9)*a3/2*x + (b5+b9)/2*z^3*w^2 + (b7-b4)/2*z^2*w^3 + (b1+b3)/2*z^2*w^2"
        " + ((-3*a1-4*a4)*b4 + 2*b6 + (a1+2*a4)*b7)/2*z*w^2 + ((a1+a4)*b1+b2)*z*w"
        " + ((2*a1+a4)*b5 + 2*b8 + (-a4-2*a3)*b9)/2*z^2*w"
        " + (a1*(a1+a4)*b5 + 2*a1*b8 + a1*(-a1-2*a3-a4)*b9)/2*z"
        " + (a2*(3*a1+a2+4*a4)*b4 - 2*a2*b6 + a2*(-a1-a2-2*a4)*b7)/2*w + b9*(x^2*y*z*w+a3*x*z*w)"
        " + b1*(y*z^2*w+a1*y*z) + b3*x*y*z*w + b5*(x*y*z^2*w+a1*x*y*z) + 2*b6*y*z*w"
        " + b4*(x*y*z*w^2 - 5/2*y*z^2*w^2 - 3/2*y^2*z^2*w - 3*a1*y*z*w - 3/2*a1*y^2*z - a2*(x-z)*y*w - 2*a4*y*z*w)"
        " + b7*(x*y^2*z*w + 3/2*y*z^2*w^2 + 1/2*y^2*z^2*w + a1*y*z*w + 1/2*a1*y^2*z + a4*y*z*w)");
}

}  // namespace

const HamiltonianSystem& system_of(const TablePtr& table) {
    for (auto id : all_contexts())
        if (build_system(id).table == table) return build_system(id);
    throw std::invalid_argument("table belongs to no cataloged system");
}

const HamiltonianSystem& build_system(SystemId id) {
    static const std::map<SystemId, HamiltonianSystem> catalog = [] {
        std::map<SystemId, HamiltonianSystem> m;
        m.emplace(SystemId::D6, make_d6());
        m.emplace(SystemId::B6A, make_b6a());
        m.emplace(SystemId::B6B, make_b6b());
        m.emplace(SystemId::D72, make_d72());
        m.emplace(SystemId::D6AUTO, make_auto());
        m.emplace(SystemId::A5, make_a5());
        m.emplace(SystemId::A4, make_a4());
        m.emplace(SystemId::P51, make_p51());
        m.emplace(SystemId::P53, make_p53());
        return m;
    }();
    return catalog.at(id);
}

VectorField vector_field_of(const HamiltonianSystem& sys, const RationalExpr& H) {
    const auto& s = sys.state;
    return VectorField{{H.derivative(s[1]), -H.derivative(s[0]), H.derivative(s[3]), -H.derivative(s[2])}};
}

VectorField vector_field(const HamiltonianSystem& sys) {
    static std::mutex mu;
    static std::map<SystemId, VectorField> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(sys.id);
        if (it != cache.end() && &build_system(sys.id) == &sys) return it->second;
    }
    VectorField v = vector_field_of(sys, sys.H);
    if (&build_system(sys.id) == &sys) {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(sys.id, v);
    }
    return v;
}

RationalExpr divergence(const HamiltonianSystem& sys, const VectorField& v) {
    RationalExpr d(sys.table, 0);
    for (std::size_t k = 0; k < 4; ++k) d += v.v[k].derivative(sys.state[k]);
    return d;
}

unsigned state_degree(const HamiltonianSystem& sys) {
    unsigned best = 0;
    for (const auto& term : sys.H.num().terms()) {
        unsigned d = 0;
        for (auto i : sys.state) d += term.m[i];
        best = std::max(best, d);
    }
    return best;
}

std::map<std::string, BigRational> resolve_parameters(const ParameterSpace& space,
                                                      const std::map<std::string, BigRational>& assignment) {
    for (const auto& n : space.basis)
        if (!assignment.count(n)) throw std::invalid_argument("basis symbol not assigned: " + n);
    for (const auto& [n, v] : assignment)
        if (std::find(space.basis.begin(), space.basis.end(), n) == space.basis.end())
            throw std::invalid_argument("not a basis symbol: " + n);
    std::map<std::string, BigRational> out = assignment;
    for (const auto& [n, e] : space.elimination) {
        const TablePtr& tab = e.table();
        std::vector<BigRational> point(tab->size(), 0);
        for (const auto& [bn, bv] : assignment)
            if (auto i = tab->find(bn)) point[*i] = bv;
        out[n] = e.evaluate(point);
    }
    return out;
}

}  // namespace plab
