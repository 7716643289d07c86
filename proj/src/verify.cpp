#include "plab/verify.hpp"

#include <chrono>
#include <regex>

#include "json.hpp"
#include "plab/expr_io.hpp"

namespace plab {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double ms() const { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }
};

VerificationReport make_report(std::string check, SystemId id, std::string subject,
                               const std::optional<RationalExpr>& witness, const Timer& timer, std::string note = {}) {
    VerificationReport r;
    r.check = std::move(check);
    r.system = id;
    r.subject = std::move(subject);
    r.status = witness ? Status::FAIL : Status::PASS;
    r.witness = witness;
    r.note = std::move(note);
    r.millis = timer.ms();
    return r;
}

std::optional<RationalExpr> residual(const RationalExpr& a, const RationalExpr& b) {
    Polynomial r = rat_residual(a, b);
    if (r.is_zero()) return std::nullopt;
    return RationalExpr(r);
}

std::optional<RationalExpr> identity_witness(const BirationalMap& m) {
    return identity_residual(m, system_of(m.source).params.basis);
}

RationalExpr constant(const TablePtr& t, const BigRational& c) { return RationalExpr(t, c); }

}  // namespace

std::string to_json_line(const VerificationReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["system"] = system_name(r.system);
    j["subject"] = r.subject;
    j["status"] = r.passed() ? "PASS" : "FAIL";
    if (r.witness) j["witness"] = r.witness->str();
    if (!r.note.empty()) j["note"] = r.note;
    j["millis"] = r.millis;
    return j.dump();
}

VerificationReport check_symplectic(const BirationalMap& m) {
    Timer timer;
    const auto& sys = system_of(m.source);
    std::array<std::array<RationalExpr, 4>, 4> J;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) J[i][j] = m.images[i].derivative(kState[j]);
    auto omega = [](std::size_t i, std::size_t j) {
        if ((i == 0 && j == 1) || (i == 2 && j == 3)) return 1;
        if ((i == 1 && j == 0) || (i == 3 && j == 2)) return -1;
        return 0;
    };
    std::optional<RationalExpr> witness;
    std::string slot;
    for (std::size_t a = 0; a < 4 && !witness; ++a)
        for (std::size_t b = a + 1; b < 4 && !witness; ++b) {
            // (J^T Omega J)_{ab} = sum over the two blocks of dX/du_a dY/du_b - dX/du_b dY/du_a
            RationalExpr e(sys.table, 0);
            for (std::size_t k : {0u, 2u}) e += J[k][a] * J[k + 1][b] - J[k + 1][a] * J[k][b];
            witness = residual(e, constant(sys.table, omega(a, b)));
            if (witness) slot = "slot (" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    return make_report("symplectic", sys.id, m.name, witness, timer, slot);
}

VerificationReport check_backlund(const BirationalMap& m) {
    Timer timer;
    const auto& src = system_of(m.source);
    const auto& dst = system_of(m.target);
    auto lhs = pushforward_field(m, vector_field(src).v);
    auto rhs = vector_field(dst).v;
    Bindings b = m.bindings();
    static const char* names[] = {"x", "y", "z", "w"};
    for (std::size_t i = 0; i < 4; ++i) {
        if (auto w = residual(lhs[i], substitute(rhs[i], b)))
            return make_report("backlund", src.id, m.name, w, timer, std::string("component d") + names[i] + "/dt");
    }
    return make_report("backlund", src.id, m.name, std::nullopt, timer);
}

std::optional<int> pair_order(const BirationalMap& a, const BirationalMap& b, int max_order) {
    BirationalMap ab = compose(a, b);
    BirationalMap p = ab;
    for (int k = 1; k <= max_order; ++k) {
        if (!identity_witness(p)) return k;
        if (k < max_order) p = compose(ab, p);
    }
    return std::nullopt;
}

VerificationReport check_coxeter(SystemId id) {
    Timer timer;
    const auto& gs = generator_set(id);
    const auto& sys = build_system(id);
    for (std::size_t i = 0; i < gs.nodes.size(); ++i)
        for (std::size_t j = i; j < gs.nodes.size(); ++j) {
            const auto& a = generator(id, gs.nodes[i]);
            const auto& b = generator(id, gs.nodes[j]);
            int m = gs.coxeter[i][j];
            // i == j: (s s)^1 is the identity
            auto order = pair_order(a, b, m);
            if (order != m) {
                std::string subject = "(" + gs.nodes[i] + " " + gs.nodes[j] + ")^" + std::to_string(m);
                BirationalMap ab = compose(a, b), p = ab;
                for (int k = 1; k < m; ++k) p = compose(ab, p);
                auto w = identity_witness(p);
                std::string note = order ? "order " + std::to_string(*order) + " below " + std::to_string(m)
                                         : "not the identity";
                return make_report("coxeter", id, subject, w ? w : std::optional(constant(sys.table, *order)),
                                   timer, note);
            }
        }
    return make_report("coxeter", id, "all pairs", std::nullopt, timer);
}

VerificationReport check_identity_word(SystemId id, const std::vector<std::string>& word,
                                       const std::string& subject) {
    Timer timer;
    return make_report("identity", id, subject, identity_witness(word_map(id, word)), timer);
}

VerificationReport check_word_equal(SystemId id, const std::vector<std::string>& lhs,
                                    const std::vector<std::string>& rhs, const std::string& subject) {
    Timer timer;
    BirationalMap a = word_map(id, lhs), b = word_map(id, rhs);
    std::optional<RationalExpr> w;
    for (std::size_t i = 0; i < 4 && !w; ++i) w = residual(a.images[i], b.images[i]);
    if (!w) w = residual(a.tau, b.tau);
    for (const auto& n : build_system(id).params.action_tuple)
        if (!w) w = residual(*a.param(n), *b.param(n));
    return make_report("relation", id, subject, w, timer);
}

VerificationReport check_translation(const std::vector<std::string>& word, const std::vector<BigRational>& shift,
                                     const std::string& subject) {
    Timer timer;
    const auto& d6 = build_system(SystemId::D6);
    const auto& tuple = d6.params.action_tuple;
    if (shift.size() != tuple.size()) throw ArityError("translation shift needs 7 entries");
    ParameterAction act = word_action(SystemId::D6, word);
    std::optional<RationalExpr> w = residual(act.tau, d6.sym("t"));
    for (std::size_t k = 0; k < tuple.size() && !w; ++k)
        w = residual(*act.param(tuple[k]), d6.sym(tuple[k]) + constant(d6.table, shift[k]));
    std::string name = subject;
    if (name.empty())
        for (const auto& n : word) name += n;
    if (name.empty()) name = "empty word";
    return make_report("translation", SystemId::D6, name, w, timer);
}

const std::vector<Translation>& translations() {
    static const std::vector<Translation> ts = [] {
        std::vector<std::string> t1{"pi1", "s5", "s4", "s3", "s2", "s1", "s0", "s2", "s3", "s4", "s5"};
        auto conj = [](const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
            std::vector<std::string> w = outer;
            w.insert(w.end(), inner.begin(), inner.end());
            w.insert(w.end(), outer.rbegin(), outer.rend());
            return w;
        };
        auto t2 = conj({"s4", "s6"}, t1), t3 = conj({"s6"}, t1);
        auto v = [](std::initializer_list<int> l) { return std::vector<BigRational>(l.begin(), l.end()); };
        return std::vector<Translation>{
            {"T1", t1, v({0, 0, 0, 0, 0, -1, 1})},
            {"T2", t2, v({0, 0, 0, 1, -1, 0, 0})},
            {"T3", t3, v({0, 0, 0, 0, 1, -1, -1})},
            {"T4", conj({"pi2"}, t1), v({-1, 1, 0, 0, 0, 0, 0})},
            {"T5", conj({"pi2"}, t2), v({0, 0, -1, 1, 0, 0, 0})},
            {"T6", conj({"pi2"}, t3), v({-1, -1, 1, 0, 0, 0, 0})},
        };
    }();
    return ts;
}

VerificationReport check_translations_commute(const Translation& a, const Translation& b) {
    Timer timer;
    const auto& d6 = build_system(SystemId::D6);
    std::vector<std::string> ab = a.word, ba = b.word;
    ab.insert(ab.end(), b.word.begin(), b.word.end());
    ba.insert(ba.end(), a.word.begin(), a.word.end());
    ParameterAction pa = word_action(SystemId::D6, ab), pb = word_action(SystemId::D6, ba);
    std::optional<RationalExpr> w = residual(pa.tau, pb.tau);
    for (const auto& n : d6.params.action_tuple)
        if (!w) w = residual(*pa.param(n), *pb.param(n));
    std::string note;
    if (!w) {
        std::vector<BigRational> pt(d6.table->size(), 0);
        const char* names[] = {"x", "y", "z", "w", "t", "a0", "a1", "a2", "b2", "b3", "b4"};
        const int num[] = {3, -2, 5, 7, 11, 1, 2, -3, 5, 7, -1};
        for (std::size_t i = 0; i < 11; ++i)
            pt[d6.table->index(names[i])] = BigRational(num[i], 13 + static_cast<int>(i));
        auto qa = word_apply(SystemId::D6, ab, pt), qb = word_apply(SystemId::D6, ba, pt);
        for (std::size_t i = 0; i < 5 && !w; ++i)
            if (qa[i] != qb[i]) {
                w = constant(d6.table, qa[i] - qb[i]);
                note = "coordinate " + d6.table->name(i) + " at the sample point";
            }
    }
    return make_report("translation-commute", SystemId::D6, a.name + "," + b.name, w, timer, note);
}

// ------------------------------------------------------------ divisors

const std::vector<DivisorSpec>& d6_divisors() {
    static const std::vector<DivisorSpec> ds{
        {"f0", "x-t", "", {{"a0", "0"}}},
        {"f1", "x", "r2", {{"a1", "0"}}},
        {"f2", "y", "", {{"a2", "0"}}},
        // a4 = b4, that is g1 = 0, solved for a0
        {"f3", "x", "x3", {{"a0", "1-a1-2*a2-2*b2-b3-b4"}}},
        {"f4", "w", "", {{"b2", "0"}}},
        {"f5", "z-1", "", {{"b3", "0"}}},
        {"f6", "z", "", {{"b4", "0"}}},
    };
    return ds;
}

const DivisorSpec& d6_divisor(const std::string& name) {
    for (const auto& d : d6_divisors())
        if (d.name == name) return d;
    throw UnknownDivisor(name);
}

VerificationReport check_invariant_divisor(const DivisorSpec& spec) {
    Timer timer;
    const auto& d6 = build_system(SystemId::D6);
    const auto& v = vector_field(d6).v;
    std::array<RationalExpr, 4> fwd, inv;
    if (spec.chart.empty()) {
        for (std::size_t i = 0; i < 4; ++i) fwd[i] = inv[i] = RationalExpr(Polynomial::variable(d6.table, kState[i]));
    } else if (spec.chart == "x3") {
        fwd = {d6.parse("x-z"), d6.parse("y"), d6.parse("z"), d6.parse("w+y")};
        inv = {d6.parse("x+z"), d6.parse("y"), d6.parse("z"), d6.parse("w-y")};
    } else {
        const Chart& c = chart(SystemId::D6, spec.chart);
        fwd = c.forward;
        inv = c.inverse;
    }
    // flow of the new coordinates, written in the new coordinates
    Bindings to_new = Bindings::by_name(d6.table, d6.table);
    for (std::size_t i = 0; i < 4; ++i) to_new.set(kState[i], inv[i]);
    std::array<RationalExpr, 4> flow;
    for (std::size_t i = 0; i < 4; ++i) {
        RationalExpr acc = fwd[i].derivative(kTime);
        for (std::size_t j = 0; j < 4; ++j) acc += fwd[i].derivative(kState[j]) * v[j];
        flow[i] = substitute(acc, to_new);
    }
    Polynomial f = parse_poly(d6.table, spec.f);
    RationalExpr lf = RationalExpr(f.derivative(kTime));
    for (std::size_t i = 0; i < 4; ++i) lf += RationalExpr(f.derivative(kState[i])) * flow[i];
    Bindings cond = Bindings::by_name(d6.table, d6.table);
    for (const auto& [n, val] : spec.condition) cond.set(n, d6.parse(val));
    lf = substitute(lf, cond);

    std::optional<RationalExpr> w;
    std::string note;
    auto [q, r] = lf.num().divide(f);
    if (!r.is_zero()) {
        w = RationalExpr(r);
        note = "remainder of the numerator";
    } else {
        for (const auto& fac : lf.den_factors())
            if (fac.f.exact_divide(f)) {
                w = RationalExpr(fac.f);
                note = "divisor occurs in the denominator";
                break;
            }
    }
    std::string subject = spec.name + " = " + spec.f + (spec.chart.empty() ? "" : " in " + spec.chart);
    return make_report("invariant-divisor", SystemId::D6, subject, w, timer, note);
}

VerificationReport check_first_integral(SystemId id) { return check_first_integral(id, build_system(id).H); }

VerificationReport check_first_integral(SystemId id, const RationalExpr& f) {
    Timer timer;
    const auto& sys = build_system(id);
    if (!sys.autonomous) throw NotAutonomous();
    const auto& v = vector_field(sys).v;
    RationalExpr df(sys.table, 0);
    for (std::size_t i = 0; i < 4; ++i) df += f.derivative(kState[i]) * v[i];
    return make_report("first-integral", id, rat_equal(f, sys.H) ? "H" : f.str(), residual(df, constant(sys.table, 0)),
                       timer);
}

VerificationReport check_chart_form(SystemId id, const std::string& gen, const std::string& chart_name,
                                    const std::array<std::string, 4>& images) {
    Timer timer;
    const auto& sys = build_system(id);
    const auto& g = generator(id, gen);
    const Chart& c = chart(id, chart_name);
    Bindings on_chart = Bindings::by_name(sys.table, sys.table);
    for (std::size_t i = 0; i < 4; ++i) on_chart.set(kState[i], c.forward[i]);
    Bindings b = g.bindings();
    std::optional<RationalExpr> w;
    for (std::size_t i = 0; i < 4 && !w; ++i)
        w = residual(substitute(c.forward[i], b), substitute(sys.parse(images[i]), on_chart));
    return make_report("chart-form", id, gen + " in " + chart_name, w, timer);
}

// ------------------------------------------------------------ poisson series

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
    auto d = [](const Polynomial& p, std::size_t i) { return p.derivative(kState[i]); };
    return d(f, 1) * d(g, 0) - d(f, 0) * d(g, 1) + d(f, 3) * d(g, 2) - d(f, 2) * d(g, 3);
}

RationalExpr poisson_series(const BirationalMap& gen, const Polynomial& g) {
    if (!gen.poisson) throw NotApplicable(gen.name);
    const auto& [f, alpha] = *gen.poisson;
    RationalExpr ratio = alpha / RationalExpr(f);
    RationalExpr sum(g), power(g.table(), 1);
    Polynomial term = g;
    BigRational factorial = 1;
    for (int k = 1;; ++k) {
        term = poisson_bracket(f, term);
        if (term.is_zero()) break;
        if (k > 64) throw std::runtime_error("poisson series does not terminate");
        factorial *= k;
        power *= ratio;
        sum += (power * RationalExpr(term)).scaled(1 / factorial);
    }
    return sum;
}

VerificationReport check_poisson_series(const BirationalMap& gen, const Polynomial& g) {
    Timer timer;
    RationalExpr series = poisson_series(gen, g);
    RationalExpr direct = substitute(RationalExpr(g), gen.bindings());
    return make_report("poisson-series", system_of(gen.source).id, gen.name + " on " + g.str(),
                       residual(series, direct), timer);
}

const std::vector<std::string>& poisson_probes() {
    static const std::vector<std::string> probes{"x", "y", "z", "w", "x*y", "z*w", "x^2*z"};
    return probes;
}

// ------------------------------------------------------------ mutations

namespace {
std::string plain_name(const std::string& n) {
    static const std::regex alpha("alpha(\\d+)"), beta("beta(\\d+)"), gamma("gamma(\\d+)");
    std::smatch m;
    if (std::regex_match(n, m, alpha)) return "a" + m[1].str();
    if (std::regex_match(n, m, beta)) return "b" + m[1].str();
    if (std::regex_match(n, m, gamma)) return "g" + m[1].str();
    return n;
}
}  // namespace

BirationalMap mutate(const BirationalMap& m, const std::string& mutation) {
    static const std::regex drop("drop-(\\w+)-shift"), scale("scale-([xyzw])");
    std::smatch sm;
    BirationalMap out = m;
    out.name = m.name + "[" + mutation + "]";
    if (std::regex_match(mutation, sm, drop)) {
        std::string p = plain_name(sm[1].str());
        const auto& sys = system_of(m.source);
        for (auto& [n, e] : out.params)
            if (n == p) {
                e = sys.sym(p);
                return out;
            }
        throw std::invalid_argument("mutation names no parameter of " + m.name + ": " + p);
    }
    if (std::regex_match(mutation, sm, scale)) {
        std::size_t i = std::string("xyzw").find(sm[1].str()[0]);
        out.images[i] = out.images[i].scaled(2);
        return out;
    }
    throw std::invalid_argument("unknown mutation: " + mutation);
}

std::pair<std::string, std::string> split_mutation(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
        throw std::invalid_argument("mutation must read generator:kind, got " + spec);
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace plab
