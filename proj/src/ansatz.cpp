#include "plab/ansatz.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "plab/catalog.hpp"
#include "plab/parallel.hpp"

namespace plab {

namespace {

double since(std::chrono::steady_clock::time_point s) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s).count();
}

void enumerate(const TablePtr& table, const std::vector<std::size_t>& state, unsigned degree, std::size_t pos,
               Monomial cur, unsigned left, std::vector<Monomial>& out) {
    if (pos == state.size()) {
        out.push_back(cur);
        return;
    }
    for (unsigned k = 0; k <= left; ++k)
        enumerate(table, state, degree, pos + 1, cur * monomial_var(state[pos], k), left - k, out);
}

using RowKey = std::vector<int>;

// coefficients of the negative powers, keyed by the signed state exponents
void negative_part(const RationalExpr& img, std::size_t column,
                   std::map<RowKey, SparseRow>& rows) {
    if (img.is_zero()) return;
    Polynomial den = img.den();
    if (!den.is_monomial()) throw std::invalid_argument("ansatz chart with a non-monomial denominator: " + den.str());
    const Monomial& dm = den.leading().m;
    BigRational dc = den.leading().c;
    std::vector<std::size_t> all_state{0, 1, 2, 3};
    for (auto& [sm, coef] : img.num().collect(all_state)) {
        RowKey key;
        bool negative = false;
        for (std::size_t i : all_state) {
            int e = int(sm[i]) - int(dm[i]);
            key.push_back(e);
            negative = negative || e < 0;
        }
        if (!negative) continue;
        // the non-state part of the denominator stays with the coefficient
        Monomial rest = dm;
        for (std::size_t i : all_state) rest.e[i] = 0;
        rest.deg = 0;
        for (auto v : rest.e) rest.deg += v;
        if (!rest.is_one()) throw std::invalid_argument("ansatz chart with a parameter denominator");
        auto& entry = rows[key][column];
        if (entry.table() == nullptr) entry = Polynomial(coef.table());
        entry += coef.scaled(1 / dc);
    }
}

bool better_pivot(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() != b.is_constant()) return a.is_constant();
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.size() < b.size();
}

void strip_content(SparseRow& r) {
    if (r.empty()) return;
    BigRational c = r.begin()->second.content();
    for (auto& [k, e] : r) e = e.scaled(1 / c);
}

// common polynomial factor shared with a pivot that divides every entry
void strip_factor(SparseRow& r, const Polynomial& f) {
    if (f.is_constant() || r.empty()) return;
    for (;;) {
        SparseRow q;
        for (auto& [k, e] : r) {
            auto d = e.exact_divide(f);
            if (!d) return;
            q.emplace(k, std::move(*d));
        }
        r = std::move(q);
    }
}

RationalExpr parse_in(const HamiltonianSystem& sys, const std::string& s) { return sys.parse(s); }

}  // namespace

std::size_t AnsatzFamily::constant_column() const {
    for (std::size_t i = 0; i < monomials.size(); ++i)
        if (monomials[i].is_constant()) return i;
    throw std::logic_error("ansatz without a constant monomial");
}

AnsatzFamily build_ansatz(SystemId context, const std::vector<std::size_t>& state, unsigned degree) {
    const auto& sys = build_system(context);
    AnsatzFamily f{context, sys.table, state, degree};
    std::vector<Monomial> ms;
    enumerate(sys.table, state, degree, 0, Monomial{}, degree, ms);
    std::sort(ms.begin(), ms.end());
    for (const auto& m : ms) f.monomials.push_back(Polynomial::from_terms(sys.table, {Term{m, 1}}));
    return f;
}

void impose_holomorphy(AnsatzFamily& family, const std::vector<const Chart*>& charts) {
    const auto& sys = build_system(family.context);
    bool corr = family.correction_column;
    for (const Chart* c : charts) corr = corr || c->correction.has_value();
    family.correction_column = corr;
    std::size_t ccol = family.monomials.size();
    auto per_chart = parallel_map<std::vector<SparseRow>>(charts.size(), [&](std::size_t i) {
        const Chart* c = charts[i];
        std::map<RowKey, SparseRow> rows;
        for (std::size_t j = 0; j < family.monomials.size(); ++j)
            negative_part(pullback_expr(sys, *c, RationalExpr(family.monomials[j])), j, rows);
        if (c->correction) negative_part(pullback_expr(sys, *c, -*c->correction), ccol, rows);
        std::vector<SparseRow> out;
        for (auto& [k, r] : rows) {
            std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
            if (!r.empty()) out.push_back(std::move(r));
        }
        return out;
    });
    for (auto& rows : per_chart)
        for (auto& r : rows) family.constraints.push_back(std::move(r));
}

SolvedFamily solve_family(const AnsatzFamily& family) {
    std::vector<SparseRow> rows = family.constraints;
    std::size_t n = family.columns();
    SolvedFamily out;
    std::vector<std::size_t> pivot_row_of(n, SIZE_MAX);
    std::vector<bool> used(rows.size(), false);
    // highest degree first: those columns carry most constraints
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t col = n - 1 - step;
        std::size_t best = SIZE_MAX;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i]) continue;
            auto it = rows[i].find(col);
            if (it == rows[i].end()) continue;
            if (best == SIZE_MAX || better_pivot(it->second, rows[best].at(col))) best = i;
        }
        if (best == SIZE_MAX) continue;
        used[best] = true;
        pivot_row_of[col] = best;
        const SparseRow& p = rows[best];
        Polynomial P = p.at(col);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == best) continue;
            auto it = rows[i].find(col);
            if (it == rows[i].end()) continue;
            Polynomial R = it->second;
            SparseRow& r = rows[i];
            if (P.is_constant()) {
                Polynomial s = R.scaled(1 / P.constant_value());
                for (const auto& [k, e] : p) {
                    auto& t = r[k];
                    if (t.table() == nullptr) t = Polynomial(e.table());
                    t -= s * e;
                }
            } else {
                for (auto& [k, e] : r) e = P * e;
                for (const auto& [k, e] : p) {
                    auto& t = r[k];
                    if (t.table() == nullptr) t = Polynomial(e.table());
                    t -= R * e;
                }
            }
            std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
            if (!P.is_constant()) strip_factor(r, P);
            strip_content(r);
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (pivot_row_of[c] == SIZE_MAX) out.free_columns.push_back(c);
        else out.pivots.push_back(c);
    }
    out.rank = out.pivots.size();
    const auto& table = family.table;
    for (std::size_t f : out.free_columns) {
        std::vector<RationalExpr> v(n, RationalExpr(table, 0));
        v[f] = RationalExpr(table, 1);
        for (std::size_t c : out.pivots) {
            const SparseRow& r = rows[pivot_row_of[c]];
            auto it = r.find(f);
            if (it == r.end()) continue;
            v[c] = -RationalExpr::quotient(it->second, r.at(c));
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

RationalExpr hamiltonian_of(const AnsatzFamily& family, const std::vector<RationalExpr>& v) {
    RationalExpr h(family.table, 0);
    for (std::size_t j = 0; j < family.monomials.size(); ++j)
        if (!v[j].is_zero()) h += v[j] * RationalExpr(family.monomials[j]);
    return h;
}

std::vector<RationalExpr> coordinates_of(const AnsatzFamily& family, const RationalExpr& h) {
    std::vector<RationalExpr> v(family.columns(), RationalExpr(family.table, 0));
    std::vector<std::size_t> all_state{0, 1, 2, 3};
    if (!h.denominator_free_of(all_state)) throw std::invalid_argument("not polynomial in the state: " + h.str());
    Polynomial den = h.den();
    for (auto& [sm, coef] : h.num().collect(all_state)) {
        auto it = std::find_if(family.monomials.begin(), family.monomials.end(),
                               [&](const Polynomial& m) { return m.leading().m == sm || (m.is_constant() && sm.is_one()); });
        if (it == family.monomials.end()) throw std::invalid_argument("monomial outside the ansatz");
        v[std::size_t(it - family.monomials.begin())] = RationalExpr::quotient(coef, den);
    }
    return v;
}

bool in_span(const AnsatzFamily& family, const SolvedFamily& sol, const std::vector<RationalExpr>& v) {
    std::size_t cc = family.constant_column();
    std::size_t corr = family.correction_column ? family.monomials.size() : SIZE_MAX;
    RationalExpr zero(family.table, 0);
    std::vector<RationalExpr> acc(family.columns(), zero);
    for (std::size_t b = 0; b < sol.basis.size(); ++b) {
        std::size_t f = sol.free_columns[b];
        if (f == cc || f == corr || v[f].is_zero()) continue;
        for (std::size_t j = 0; j < acc.size(); ++j)
            if (!sol.basis[b][j].is_zero()) acc[j] += v[f] * sol.basis[b][j];
    }
    for (std::size_t j = 0; j < family.monomials.size(); ++j) {
        if (j == cc) continue;
        if (!rat_equal(acc[j], v[j])) return false;
    }
    return true;
}

const std::vector<AnsatzTarget>& ansatz_targets() {
    static const std::vector<AnsatzTarget> targets{
        {"d6", SystemId::D6, 5, {"x", "y", "z", "w"}, {"r0", "r1", "r2", "r3", "r4", "r5", "r6"}, 1, "x^3*y^2",
         "1/(t*(t-1))", ""},
        {"d6auto", SystemId::D6AUTO, 5, {"x", "y", "z", "w"}, {"r0", "r1", "r2", "r3", "r4", "r5", "r6"}, 1,
         "x^3*y^2", "1", ""},
        {"a5", SystemId::A5, 4, {"x", "y", "z", "w"}, {"r0", "r1", "r2", "r3", "r4", "r5"}, 1, "x^2*y^2", "1/t", ""},
        {"a4", SystemId::A4, 3, {"x", "y", "z", "w"}, {"r0", "r1", "r2", "r3", "r4"}, 1, "x^2*y", "1", ""},
        {"p51", SystemId::P51, 5, {"x", "y"}, {"c1", "c2"}, 6, "", "", "k"},
        {"p53", SystemId::P53, 5, {"x", "y", "z", "w"}, {"g1", "g2", "g3", "g4"}, 9, "", "", "b"},
    };
    return targets;
}

const AnsatzTarget& ansatz_target(const std::string& name) {
    for (const auto& t : ansatz_targets())
        if (t.name == name) return t;
    throw std::invalid_argument("unknown ansatz target: " + name);
}

namespace {

// exact rank of coordinate vectors at a rational parameter point
std::size_t rank_at(const std::vector<std::vector<RationalExpr>>& vs, const std::vector<BigRational>& point) {
    std::vector<std::vector<BigRational>> m;
    for (const auto& v : vs) {
        std::vector<BigRational> row;
        for (const auto& e : v) row.push_back(e.evaluate(point));
        m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    if (m.empty()) return 0;
    for (std::size_t c = 0; c < m[0].size() && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            BigRational s = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= s * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

AnsatzResult derive(const AnsatzTarget& target) {
    std::vector<const Chart*> charts;
    for (const auto& c : target.charts) charts.push_back(&chart(target.system, c));
    return derive(target, charts);
}

AnsatzResult derive(const AnsatzTarget& target, const std::vector<const Chart*>& charts) {
    auto start = std::chrono::steady_clock::now();
    const auto& sys = build_system(target.system);
    std::vector<std::size_t> state;
    for (const auto& s : target.state) state.push_back(sys.table->index(s));
    AnsatzFamily fam = build_ansatz(target.system, state, target.degree);
    impose_holomorphy(fam, charts);
    SolvedFamily sol = solve_family(fam);

    AnsatzResult r{target.name, fam.columns(), fam.constraints.size(), sol.rank, sol.dimension_mod_constants()};
    r.dimension_ok = r.dimension == target.expected_dimension;
    std::size_t cc = fam.constant_column();
    std::size_t corr = fam.correction_column ? fam.monomials.size() : SIZE_MAX;

    // every non-constant solution stays polynomial in every chart
    r.charts_ok = true;
    for (std::size_t b = 0; b < sol.basis.size(); ++b) {
        if (sol.free_columns[b] == cc) continue;
        RationalExpr h = hamiltonian_of(fam, sol.basis[b]);
        for (const Chart* c : charts) {
            RationalExpr e = h;
            if (c->correction) e -= sol.basis[b][corr] * *c->correction;
            if (!state_denominators(pullback_expr(sys, *c, e)).empty()) r.charts_ok = false;
        }
    }

    if (!target.normalize_monomial.empty()) {
        r.matches_catalog = false;
        for (std::size_t b = 0; b < sol.basis.size() && r.dimension_ok; ++b) {
            if (sol.free_columns[b] == cc) continue;
            RationalExpr m = sys.parse(target.normalize_monomial);
            auto it = std::find_if(fam.monomials.begin(), fam.monomials.end(),
                                   [&](const Polynomial& p) { return p == m.num(); });
            if (it == fam.monomials.end()) break;
            const RationalExpr& at = sol.basis[b][std::size_t(it - fam.monomials.begin())];
            if (at.is_zero()) break;
            RationalExpr scale = parse_in(sys, target.normalize_value) / at;
            RationalExpr h = hamiltonian_of(fam, sol.basis[b]) * scale;
            RationalExpr diff = h - sys.H;
            bool ok = true;
            for (std::size_t i : state) ok = ok && rat_equal(diff.derivative(i), RationalExpr(sys.table, 0));
            r.matches_catalog = ok;
            r.representative = h;
            if (!ok) r.difference = diff;
        }
    } else {
        std::vector<std::vector<RationalExpr>> phis;
        bool all_in = true;
        for (const auto& name : sys.params.basis) {
            if (name.rfind(target.family_prefix, 0) != 0) continue;
            RationalExpr phi = sys.H.derivative(sys.table->index(name));
            auto v = coordinates_of(fam, phi);
            v[cc] = RationalExpr(sys.table, 0);
            all_in = all_in && in_span(fam, sol, v);
            phis.push_back(std::move(v));
        }
        // generic rational point for the independence count
        std::vector<BigRational> point(sys.table->size());
        for (std::size_t i = 0; i < point.size(); ++i) point[i] = BigRational(int(2 * i + 3), int(7 + i * i));
        r.matches_catalog = all_in && phis.size() == target.expected_dimension &&
                          rank_at(phis, point) == target.expected_dimension;
    }
    r.millis = since(start);
    return r;
}

VerificationReport to_report(const AnsatzResult& r) {
    VerificationReport rep;
    rep.check = "ansatz";
    rep.system = ansatz_target(r.target).system;
    rep.subject = r.target;
    rep.status = r.passed() ? Status::PASS : Status::FAIL;
    if (!r.passed())
        rep.witness = r.difference ? *r.difference
                                   : RationalExpr(build_system(rep.system).table, BigRational(long(r.dimension)));
    rep.note = "columns " + std::to_string(r.columns) + ", rows " + std::to_string(r.rows) + ", rank " +
               std::to_string(r.rank) + ", dimension mod constants " + std::to_string(r.dimension);
    if (r.dimension_ok && !r.matches_catalog) rep.note += "; differs from the cataloged Hamiltonian";
    if (!r.charts_ok) rep.note += "; a solution fails a chart";
    rep.millis = r.millis;
    return rep;
}

}  // namespace plab
