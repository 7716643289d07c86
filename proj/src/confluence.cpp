#include "plab/confluence.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "plab/expr_io.hpp"

namespace plab {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point s) { return std::chrono::duration<double, std::milli>(Clock::now() - s).count(); }

VerificationReport report(std::string check, SystemId id, std::string subject, std::optional<RationalExpr> witness,
                          Clock::time_point start, std::string note = {}) {
    VerificationReport r;
    r.check = std::move(check);
    r.system = id;
    r.subject = std::move(subject);
    r.status = witness ? Status::FAIL : Status::PASS;
    r.witness = std::move(witness);
    r.note = std::move(note);
    r.millis = since(start);
    return r;
}

std::optional<RationalExpr> residual(const RationalExpr& a, const RationalExpr& b) {
    Polynomial r = rat_residual(a, b);
    if (r.is_zero()) return std::nullopt;
    return RationalExpr(r);
}

TablePtr eps_table(unsigned n_params) {
    std::vector<SymbolTable::Entry> e{{"x", SymbolRole::State},
                                      {"y", SymbolRole::State},
                                      {"z", SymbolRole::State},
                                      {"w", SymbolRole::State},
                                      {"t", SymbolRole::Time}};
    for (unsigned i = 0; i < n_params; ++i) e.push_back({"A" + std::to_string(i), SymbolRole::Parameter});
    e.push_back({"eps", SymbolRole::Deformation});
    return make_table(e);
}

std::array<RationalExpr, 4> hamiltonian_field(const RationalExpr& H) {
    return {H.derivative(kState[1]), -H.derivative(kState[0]), H.derivative(kState[3]), -H.derivative(kState[2])};
}

Bindings eps_zero(const TablePtr& table, std::size_t eps) {
    Bindings b = Bindings::by_name(table, table);
    b.set(eps, RationalExpr(table, 0));
    return b;
}

const std::vector<std::string>& eps_params(const Degeneration& d) {
    static std::map<const Degeneration*, std::vector<std::string>> cache;
    auto& v = cache[&d];
    if (v.empty())
        for (std::size_t i = 5; i < d.table->size(); ++i) v.push_back(d.table->name(i));
    return v;
}

Degeneration make_d6() {
    const auto& d6 = build_system(SystemId::D6);
    Degeneration d;
    d.name = "d6-to-a5";
    d.old_table = d6.table;
    d.table = eps_table(6);
    d.eps = d.table->index("eps");
    auto N = [&](const std::string& s) { return d.parse(s); };
    d.substitution = make_map("confluence", d.table, d6.table,
                              {N("x/(x-t)"), N("-(x-t)*((x-t)*y+A1)/t"), N("z/(z-t)"), N("-(z-t)*((z-t)*w+A3)/t")},
                              N("1-eps*t"),
                              {{"a0", N("1/eps")},
                               {"a1", N("A0")},
                               {"a2", N("A1")},
                               {"b2", N("A3")},
                               {"b3", N("-1/eps-(A1+A2+A3-A5)")},
                               {"b4", N("A4")}});
    d.substitution.declared = {{"g1", N("A2")}};
    auto O = [&](const std::string& s) { return d6.parse(s); };
    // T = a0 (1 - t); X - T = T/(x - 1)
    d.forward = make_map("confluence inverse", d6.table, d.table,
                         {O("x*a0*(1-t)/(x-1)"), O("(-y*(x-1)-a2)*(x-1)/(a0*(1-t))"), O("z*a0*(1-t)/(z-1)"),
                          O("(-w*(z-1)-b2)*(z-1)/(a0*(1-t))")},
                         O("a0*(1-t)"),
                         {{"A0", O("a1")},
                          {"A1", O("a2")},
                          {"A2", O("g1")},
                          {"A3", O("b2")},
                          {"A4", O("b4")},
                          {"A5", O("1-a1-a2-g1-b2-b4")},
                          {"eps", O("1/a0")}});
    d.old_field = vector_field(d6).v;
    return d;
}

TablePtr p6_table() {
    static const TablePtr t = [] {
        std::vector<SymbolTable::Entry> e{{"x", SymbolRole::State},
                                          {"y", SymbolRole::State},
                                          {"z", SymbolRole::State},
                                          {"w", SymbolRole::State},
                                          {"t", SymbolRole::Time}};
        for (int i = 0; i < 5; ++i) e.push_back({"a" + std::to_string(i), SymbolRole::Parameter});
        return make_table(e);
    }();
    return t;
}

Degeneration make_p6() {
    Degeneration d;
    d.name = "p6-to-p5";
    d.old_table = p6_table();
    d.table = eps_table(4);
    d.dimension = 2;
    d.eps = d.table->index("eps");
    auto N = [&](const std::string& s) { return d.parse(s); };
    d.substitution = make_map("p6 degeneration", d.table, d.old_table,
                              {N("x/(x-1)"), N("-(x-1)*(A2+(x-1)*y)"), N("z"), N("w")}, N("1+eps*t"),
                              {{"a0", N("1/eps")}, {"a1", N("A3")}, {"a3", N("A0-A2-1/eps")}, {"a4", N("A1")}});
    d.substitution.declared = {{"a2", N("A2")}};
    // a2 through a0 + a1 + 2 a2 + a3 + a4 = 1
    const std::string a2 = "(1-a0-a1-a3-a4)/2";
    auto O = [&](std::string s) {
        for (std::size_t p; (p = s.find("a2")) != std::string::npos;) s.replace(p, 2, a2);
        return parse_expr(d.old_table, s);
    };
    d.forward = make_map("p6 degeneration inverse", d.old_table, d.table,
                         {O("x/(x-1)"), O("(-a2-(x-1)*y)*(x-1)"), O("z"), O("w")}, O("(t-1)*a0"),
                         {{"A0", O("a3+a2+a0")}, {"A1", O("a4")}, {"A2", O("a2")}, {"A3", O("a1")},
                          {"eps", O("1/a0")}});
    std::vector<RationalExpr> c{O("a0"), O("a1"), O("a2"), O("a3"), O("a4")};
    RationalExpr H = scalar_hamiltonian(ScalarKind::VI, d.old_table, "x", "y", "t", c);
    auto v = hamiltonian_field(H);
    v[2] = RationalExpr(d.old_table, 0);
    v[3] = RationalExpr(d.old_table, 0);
    d.old_field = v;
    return d;
}


// num/den in lowest terms for expressions in a single symbol
Polynomial univariate_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a.divide(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.leading().c);
}

RationalExpr normalize_univariate(const RationalExpr& e) {
    if (e.is_polynomial()) return e;
    Polynomial n = e.num(), d = e.den();
    Polynomial g = univariate_gcd(n, d);
    if (!g.is_constant()) {
        n = *n.exact_divide(g);
        d = *d.exact_divide(g);
    }
    return RationalExpr::quotient(n, d);
}

// values of every symbol of `table` as univariate expressions in eps
using PointValues = std::vector<std::optional<RationalExpr>>;

Bindings bind_values(const TablePtr& source, const TablePtr& target, const PointValues& v) {
    Bindings b(source, target);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) b.set(i, *v[i]);
    return b;
}

PointValues apply_at(const BirationalMap& m, const PointValues& v, const TablePtr& values_table) {
    Bindings b = bind_values(m.source, values_table, v);
    PointValues out(m.target->size());
    if (m.source == m.target) out = v;  // parameters a map leaves out stay put
    for (std::size_t i = 0; i < 4; ++i) out[kState[i]] = normalize_univariate(substitute(m.images[i], b));
    out[kTime] = normalize_univariate(substitute(m.tau, b));
    for (const auto& [n, e] : m.params)
        if (auto k = m.target->find(n)) out[*k] = normalize_univariate(substitute(e, b));
    return out;
}

bool maps_agree(const BirationalMap& a, const BirationalMap& b, const std::vector<std::string>& params,
                std::optional<RationalExpr>& witness, std::string& where,
                const std::function<RationalExpr(const RationalExpr&)>& norm) {
    static const char* names[] = {"x", "y", "z", "w"};
    for (std::size_t i = 0; i < 4; ++i)
        if ((witness = residual(norm(a.images[i]), norm(b.images[i])))) {
            where = names[i];
            return false;
        }
    if ((witness = residual(norm(a.tau), norm(b.tau)))) {
        where = "t";
        return false;
    }
    for (const auto& p : params) {
        const RationalExpr* pa = a.param(p);
        const RationalExpr* pb = b.param(p);
        RationalExpr ea = pa ? *pa : RationalExpr::symbol(a.source, p);
        RationalExpr eb = pb ? *pb : RationalExpr::symbol(b.source, p);
        if ((witness = residual(norm(ea), norm(eb)))) {
            where = p;
            return false;
        }
    }
    return true;
}

// Exact in eps at rational values of every other symbol. The coordinate images
// swell symbolically for long words, the univariate ones do not.
std::optional<RationalExpr> sampled_limit_residual(const Degeneration& d, const std::vector<const BirationalMap*>& word,
                                                   const BirationalMap& limit, unsigned samples, std::string& note) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    const auto& a5 = build_system(SystemId::A5);
    static const char* coords[] = {"X", "Y", "Z", "W", "T"};
    for (unsigned k = 0; k < samples; ++k) {
        std::vector<BigRational> point(d.table->size(), 0);
        PointValues v(d.table->size());
        for (std::size_t i = 0; i < d.table->size(); ++i) {
            if (i == d.eps) {
                v[i] = RationalExpr::symbol(d.table, "eps");
                continue;
            }
            BigRational q(num(rng), den(rng));
            q.canonicalize();
            if (i == kTime && q == 0) q = 1;
            point[i] = q;
            v[i] = RationalExpr(d.table, q);
        }
        std::size_t last = d.table->size() - 2;  // A5 through the relation
        point[last] = 1;
        for (std::size_t i = 5; i < last; ++i) point[last] -= point[i];
        v[last] = RationalExpr(d.table, point[last]);
        try {
            PointValues cur = apply_at(d.substitution, v, d.table);
            for (auto it = word.rbegin(); it != word.rend(); ++it) cur = apply_at(**it, cur, d.table);
            cur = apply_at(d.forward, cur, d.table);
            std::vector<BigRational> ap(a5.table->size(), 0);
            for (std::size_t i = 0; i < 5; ++i) ap[i] = point[i];
            for (int i = 0; i < 6; ++i) ap[a5.table->index("a" + std::to_string(i))] = point[d.table->index("A" + std::to_string(i))];
            for (std::size_t i = 0; i < 5; ++i) {
                const RationalExpr& e = *cur[i];
                if (!regular_at_zero(e, d.eps)) {
                    note = std::string("pole at eps = 0 in ") + coords[i];
                    return e;
                }
                std::vector<BigRational> at0 = point;
                at0[d.eps] = 0;
                BigRational got = e.evaluate(at0);
                BigRational want = i < 4 ? limit.images[i].evaluate(ap) : limit.tau.evaluate(ap);
                if (got != want) {
                    note = std::string("coordinate ") + coords[i] + " at sample " + std::to_string(k);
                    return RationalExpr(d.table, got - want);
                }
            }
        } catch (const std::domain_error&) {
            --k;  // the sample hit a pole of some letter; draw another
        }
    }
    note = std::to_string(samples) + " samples, eps symbolic";
    return std::nullopt;
}

}  // namespace

RationalExpr Degeneration::reduce(const RationalExpr& e) const {
    std::size_t n = table->size() - 7;  // index of the last A among A0..An
    std::string last = "A" + std::to_string(n);
    Bindings b = Bindings::by_name(table, table);
    RationalExpr rest(table, 1);
    for (std::size_t i = 0; i < n; ++i) rest -= RationalExpr::symbol(table, "A" + std::to_string(i));
    b.set(last, rest);
    return substitute(e, b);
}

RationalExpr Degeneration::parse(const std::string& text) const { return reduce(parse_expr(table, text)); }

const Degeneration& confluence_substitution() {
    static const Degeneration d = make_d6();
    return d;
}

const Degeneration& p6_degeneration() {
    static const Degeneration d = make_p6();
    return d;
}

bool regular_at_zero(const RationalExpr& e, std::size_t eps) {
    RationalExpr c = e;
    c.cancel();
    for (const auto& f : c.den_factors())
        if (f.f.evaluate_partial(eps, 0).is_zero()) return false;
    return true;
}

EpsilonFamily rewrite_confluence(const Degeneration& d) {
    auto pushed = pushforward_field(d.forward, d.old_field);
    Bindings b = d.substitution.bindings();
    EpsilonFamily f{&d};
    static const char* names[] = {"X", "Y", "Z", "W"};
    for (std::size_t i = 0; i < 4; ++i) {
        RationalExpr e = d.reduce(substitute(pushed[i], b));
        e.cancel();
        if (!regular_at_zero(e, d.eps))
            throw DegenerationSingular(std::string("pole at eps = 0 in d") + names[i] + "/dT", e);
        f.field[i] = e;
    }
    return f;
}

VerificationReport check_regularity(const Degeneration& d) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.check = "confluence-regular";
    r.system = SystemId::D6;
    r.subject = d.name;
    try {
        rewrite_confluence(d);
    } catch (const DegenerationSingular& e) {
        r.status = Status::FAIL;
        r.witness = e.component;
        r.note = e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

RationalExpr epsilon_coefficient(const RationalExpr& e, std::size_t eps, unsigned k) {
    RationalExpr d = e;
    BigRational fact = 1;
    for (unsigned j = 1; j <= k; ++j) {
        d = d.derivative(eps);
        fact *= j;
    }
    d.cancel();
    return substitute(d, eps_zero(e.table(), eps)).scaled(1 / fact);
}

std::array<RationalExpr, 4> epsilon_limit(const EpsilonFamily& f) {
    std::array<RationalExpr, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = epsilon_coefficient(f.field[i], f.source->eps, 0);
    return out;
}

VerificationReport check_limit_a5() {
    auto start = Clock::now();
    const auto& d = confluence_substitution();
    const auto& a5 = build_system(SystemId::A5);
    std::optional<RationalExpr> w;
    std::string note;
    try {
        auto lim = epsilon_limit(rewrite_confluence(d));
        Bindings b = Bindings::by_name(a5.table, d.table);
        for (int i = 0; i < 6; ++i) b.set("a" + std::to_string(i), RationalExpr::symbol(d.table, "A" + std::to_string(i)));
        auto target = vector_field(a5).v;
        static const char* names[] = {"X", "Y", "Z", "W"};
        for (std::size_t i = 0; i < 4 && !w; ++i) {
            w = residual(lim[i], d.reduce(substitute(target[i], b)));
            if (w) note = std::string("component d") + names[i] + "/dT";
        }
    } catch (const DegenerationSingular& e) {
        w = RationalExpr(d.table, 0);
        note = e.what();
    }
    return report("confluence-limit", SystemId::D6, d.name, w, start, note);
}

std::array<RationalExpr, 4> p5_target_field() {
    const auto& d = p6_degeneration();
    auto v = hamiltonian_field(
        scalar_hamiltonian(ScalarKind::V, d.table, "x", "y", "t", {d.parse("A2"), d.parse("A1"), d.parse("A0+A2")}));
    v[2] = RationalExpr(d.table, 0);
    v[3] = RationalExpr(d.table, 0);
    return v;
}

VerificationReport check_limit_p5() {
    auto start = Clock::now();
    const auto& d = p6_degeneration();
    std::optional<RationalExpr> w;
    std::string note;
    try {
        auto lim = epsilon_limit(rewrite_confluence(d));
        auto N = [&](const std::string& s) { return d.parse(s); };
        std::vector<std::pair<std::string, RationalExpr>> ids;
        for (const auto& p : eps_params(d)) ids.emplace_back(p, RationalExpr::symbol(d.table, p));
        BirationalMap scale = make_map("p5 scaling", d.table, d.table, {N("-t*x"), N("-y/t"), N("z"), N("w")},
                                       N("-t"), ids);
        auto lhs = pushforward_field(scale, lim);
        auto rhs = p5_target_field();
        Bindings b = scale.bindings();
        for (std::size_t i = 0; i < 2 && !w; ++i) {
            w = residual(lhs[i], substitute(rhs[i], b));
            if (w) note = i == 0 ? "component dq/dtau" : "component dp/dtau";
        }
    } catch (const DegenerationSingular& e) {
        w = RationalExpr(d.table, 0);
        note = e.what();
    }
    return report("confluence-limit", SystemId::D6, d.name, w, start, note);
}

const std::vector<ConfluenceGenerator>& confluence_generators() {
    static const std::vector<ConfluenceGenerator> gs{
        {"S0", {"s1"}, "s0", {"-A0", "A1+A0", "A2", "A3", "A4", "A5+A0", "eps"}},
        {"S1", {"s2"}, "s1", {"A0+A1", "-A1", "A2+A1", "A3", "A4", "A5", "eps/(1+eps*A1)"}},
        {"S2", {"s3"}, "s2", {"A0", "A1+A2", "-A2", "A3+A2", "A4", "A5", "eps"}},
        {"S3", {"s4"}, "s3", {"A0", "A1", "A2+A3", "-A3", "A4+A3", "A5", "eps"}},
        {"S4", {"s6"}, "s4", {"A0", "A1", "A2", "A3+A4", "-A4", "A5+A4", "eps"}},
        {"S5",
         {"s5", "s4", "s3", "s2", "s0", "s2", "s3", "s4", "s5"},
         "s5",
         {"A0+A5", "A1", "A2", "A3", "A4+A5", "-A5", "eps/(1-eps*A5)"}},
    };
    return gs;
}

const ConfluenceGenerator& confluence_generator(const std::string& name) {
    for (const auto& g : confluence_generators())
        if (g.name == name) return g;
    throw std::invalid_argument("unknown confluence generator: " + name);
}

BirationalMap conjugated(const ConfluenceGenerator& g) {
    const auto& d = confluence_substitution();
    BirationalMap w = compose_word(resolve_word(SystemId::D6, g.d6_word));
    BirationalMap m = compose(d.forward, compose(w, d.substitution));
    for (auto& e : m.images) e = d.reduce(e);
    m.tau = d.reduce(m.tau);
    for (auto& [n, e] : m.params) e = d.reduce(e);
    m.name = g.name;
    return m;
}

ParameterAction conjugated_action(const std::vector<std::string>& word) {
    const auto& d = confluence_substitution();
    std::vector<std::string> d6;
    for (const auto& s : word) {
        const auto& g = confluence_generator(s);
        d6.insert(d6.end(), g.d6_word.begin(), g.d6_word.end());
    }
    ParameterAction inner = compose_parameter_action(resolve_word(SystemId::D6, d6));
    // forward o inner o substitution on parameters and time
    Bindings sb = d.substitution.bindings();
    Bindings ib = Bindings::by_name(d.old_table, d.old_table);
    ib.set(kTime, inner.tau);
    for (const auto& [n, e] : inner.params) ib.set(n, e);
    ParameterAction out;
    out.tau = d.reduce(substitute(substitute(d.forward.tau, ib), sb));
    for (const auto& [n, e] : d.forward.params)
        out.params.emplace_back(n, d.reduce(substitute(substitute(e, ib), sb)));
    return out;
}

ParameterAction table_action(const std::vector<std::string>& word) {
    const auto& d = confluence_substitution();
    const auto& names = eps_params(d);
    ParameterAction acc;
    acc.tau = RationalExpr::symbol(d.table, "t");
    for (const auto& n : names) acc.params.emplace_back(n, d.parse(n));
    // rightmost first: acc = g o acc
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const auto& g = confluence_generator(*it);
        Bindings b = Bindings::by_name(d.table, d.table);
        for (const auto& [n, e] : acc.params) b.set(n, e);
        ParameterAction next;
        next.tau = acc.tau;
        for (std::size_t k = 0; k < names.size(); ++k)
            next.params.emplace_back(names[k], d.reduce(substitute(d.parse(g.action[k]), b)));
        acc = std::move(next);
    }
    return acc;
}

std::vector<VerificationReport> subgroup_convergence_reports() {
    const auto& d = confluence_substitution();
    const auto& names = eps_params(d);
    std::vector<VerificationReport> out;
    for (const auto& g : confluence_generators()) {
        auto start = Clock::now();
        ParameterAction act = conjugated_action({g.name});
        std::optional<RationalExpr> w;
        std::string note;
        for (std::size_t k = 0; k < names.size() && !w; ++k) {
            w = residual(*act.param(names[k]), d.parse(g.action[k]));
            if (w) note = "parameter " + names[k];
        }
        out.push_back(report("subgroup-action", SystemId::D6, g.name, w, start, note));

        start = Clock::now();
        w.reset();
        note.clear();
        const BirationalMap& s = generator(SystemId::A5, g.a5_generator);
        if (g.d6_word.size() > 1) {
            w = sampled_limit_residual(d, resolve_word(SystemId::D6, g.d6_word), s, 5, note);
        } else {
            BirationalMap m = conjugated(g);
            const auto& a5 = build_system(SystemId::A5);
            Bindings b = Bindings::by_name(a5.table, d.table);
            for (int i = 0; i < 6; ++i)
                b.set("a" + std::to_string(i), RationalExpr::symbol(d.table, "A" + std::to_string(i)));
            static const char* coords[] = {"X", "Y", "Z", "W", "T"};
            for (std::size_t i = 0; i < 5 && !w; ++i) {
                const RationalExpr& e = i < 4 ? m.images[i] : m.tau;
                if (!regular_at_zero(e, d.eps)) {
                    w = e;
                    note = std::string("pole at eps = 0 in ") + coords[i];
                    break;
                }
                RationalExpr want = i < 4 ? d.reduce(substitute(s.images[i], b)) : RationalExpr::symbol(d.table, "t");
                w = residual(epsilon_coefficient(e, d.eps, 0), want);
                if (w) note = std::string("coordinate ") + coords[i];
            }
        }
        out.push_back(report("subgroup-limit", SystemId::D6, g.name + " -> " + g.a5_generator, w, start, note));
    }
    return out;
}

VerificationReport check_subgroup_convergence() {
    auto start = Clock::now();
    for (auto& r : subgroup_convergence_reports())
        if (!r.passed()) {
            r.check = "subgroup-convergence";
            r.subject = r.subject + " (" + r.note + ")";
            return r;
        }
    return report("subgroup-convergence", SystemId::D6, "S0..S5", std::nullopt, start);
}

VerificationReport check_action_words(unsigned max_length) {
    auto start = Clock::now();
    std::vector<std::string> letters;
    for (const auto& g : confluence_generators()) letters.push_back(g.name);
    std::vector<std::vector<std::string>> words{{}};
    std::size_t checked = 0;
    for (unsigned len = 1; len <= max_length; ++len) {
        std::vector<std::vector<std::string>> next;
        for (const auto& w : words)
            for (const auto& l : letters) {
                auto u = w;
                u.push_back(l);
                next.push_back(u);
            }
        words = std::move(next);
        for (const auto& u : words) {
            ParameterAction a = conjugated_action(u), b = table_action(u);
            // the table lists (A, eps) only; T picks up eps-dependent factors
            std::optional<RationalExpr> w;
            for (std::size_t k = 0; k < a.params.size() && !w; ++k) w = residual(a.params[k].second, *b.param(a.params[k].first));
            ++checked;
            if (w) {
                std::string name;
                for (const auto& s : u) name += s;
                return report("action-words", SystemId::D6, name, w, start);
            }
        }
    }
    return report("action-words", SystemId::D6, "words up to length " + std::to_string(max_length), std::nullopt,
                  start, std::to_string(checked) + " words");
}

VerificationReport check_dictionary_entry(EquivalenceId id, const std::string& gen,
                                          const std::vector<std::string>& word) {
    auto start = Clock::now();
    const BirationalMap& e = equivalence_map(id);
    SystemId target = equivalence_target(id);
    BirationalMap lhs = compose(e, compose_word(resolve_word(SystemId::D6, word)));
    BirationalMap rhs = compose(generator(target, gen), e);
    std::optional<RationalExpr> w;
    std::string where;
    auto same = [](const RationalExpr& x) { return x; };
    maps_agree(lhs, rhs, build_system(target).params.basis, w, where, same);
    std::string subject = equivalence_name(id) + " " + gen + " := ";
    for (const auto& s : word) subject += s;
    return report("equivalence-dictionary", target, subject, w, start, w ? "differs in " + where : "");
}

std::vector<VerificationReport> equivalence_reports(EquivalenceId id) {
    std::vector<VerificationReport> out;
    auto field = check_backlund(equivalence_map(id));
    field.check = "equivalence-field";
    field.subject = equivalence_name(id);
    out.push_back(field);
    for (const auto& [gen, word] : equivalence_dictionary(id)) out.push_back(check_dictionary_entry(id, gen, word));
    return out;
}

VerificationReport check_equivalence(EquivalenceId id) {
    auto start = Clock::now();
    auto rs = equivalence_reports(id);
    for (auto& r : rs)
        if (!r.passed()) {
            r.check = "equivalence";
            return r;
        }
    return report("equivalence", equivalence_target(id), equivalence_name(id), std::nullopt, start,
                  std::to_string(rs.size() - 1) + " dictionary entries");
}

}  // namespace plab
