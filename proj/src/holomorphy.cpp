#include "plab/holomorphy.hpp"

#include <chrono>

namespace plab {

namespace {

Bindings inverse_bindings(const HamiltonianSystem& sys, const Chart& c) {
    Bindings b = Bindings::by_name(sys.table, sys.table);
    for (std::size_t i = 0; i < 4; ++i) {
        b.set(sys.state[i], c.inverse[i]);
        for (const auto& f : c.inverse[i].den_factors()) b.add_prime(f.f);
    }
    return b;
}

double since(std::chrono::steady_clock::time_point s) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s).count();
}

}  // namespace

std::string mode_name(ChartMode m) { return m == ChartMode::HAMILTONIAN ? "HAMILTONIAN" : "VECTOR_FIELD"; }

RationalExpr pullback_hamiltonian(const HamiltonianSystem& sys, const Chart& c,
                                  const std::optional<RationalExpr>& correction) {
    RationalExpr h = correction ? sys.H - *correction : sys.H;
    return substitute(h, inverse_bindings(sys, c));
}

RationalExpr pullback_expr(const HamiltonianSystem& sys, const Chart& c, const RationalExpr& e) {
    return substitute(e, inverse_bindings(sys, c));
}

std::array<RationalExpr, 4> pullback_field(const HamiltonianSystem& sys, const Chart& c) {
    const auto& v = vector_field(sys).v;
    Bindings b = inverse_bindings(sys, c);
    std::array<RationalExpr, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        RationalExpr acc = c.forward[i].derivative(sys.time);
        for (std::size_t j = 0; j < 4; ++j) {
            RationalExpr d = c.forward[i].derivative(sys.state[j]);
            if (!d.is_zero()) acc += d * v[j];
        }
        out[i] = substitute(acc, b);
    }
    return out;
}

std::vector<Polynomial> state_denominators(const RationalExpr& e) {
    std::vector<Polynomial> out;
    const std::vector<std::size_t> state{0, 1, 2, 3};
    for (const auto& f : e.den_factors())
        if (f.f.depends_on_any(state)) out.push_back(f.f);
    return out;
}

PolynomialityCertificate check_chart_with(const HamiltonianSystem& sys, const Chart& c,
                                          const std::optional<RationalExpr>& correction) {
    auto start = std::chrono::steady_clock::now();
    PolynomialityCertificate cert{c.label, sys.id, ChartMode::HAMILTONIAN, correction};
    cert.offending = state_denominators(pullback_hamiltonian(sys, c, correction));
    cert.status = cert.offending.empty() ? Status::PASS : Status::FAIL;
    cert.millis = since(start);
    return cert;
}

PolynomialityCertificate check_chart(const HamiltonianSystem& sys, const Chart& c, ChartMode mode) {
    auto start = std::chrono::steady_clock::now();
    if (mode == ChartMode::VECTOR_FIELD) {
        PolynomialityCertificate cert{c.label, sys.id, mode};
        for (const auto& comp : pullback_field(sys, c))
            for (auto& f : state_denominators(comp)) cert.offending.push_back(std::move(f));
        cert.status = cert.offending.empty() ? Status::PASS : Status::FAIL;
        cert.hamiltonian_also = check_chart_with(sys, c, std::nullopt).passed();
        cert.millis = since(start);
        return cert;
    }
    std::vector<std::optional<RationalExpr>> tries{std::nullopt};
    if (c.correction) tries.push_back(c.correction);
    RationalExpr y = sys.sym("y");
    if (!c.correction || !rat_equal(*c.correction, y)) tries.push_back(y);
    PolynomialityCertificate first;
    for (std::size_t k = 0; k < tries.size(); ++k) {
        auto cert = check_chart_with(sys, c, tries[k]);
        if (cert.passed()) {
            cert.millis = since(start);
            return cert;
        }
        if (k == 0) first = std::move(cert);
    }
    first.millis = since(start);
    return first;
}

ChartMode default_mode(const Chart& c) { return c.composite ? ChartMode::VECTOR_FIELD : ChartMode::HAMILTONIAN; }

VerificationReport to_report(const PolynomialityCertificate& c) {
    VerificationReport r;
    r.check = "holomorphy";
    r.system = c.system;
    r.subject = c.chart + " " + mode_name(c.mode);
    r.status = c.status;
    if (!c.passed()) r.witness = RationalExpr(c.offending.front());
    if (c.correction) r.note = "correction " + c.correction->str();
    if (c.hamiltonian_also) r.note += (r.note.empty() ? "" : "; ") + std::string("H pullback polynomial too");
    r.millis = c.millis;
    return r;
}

Chart shift_chart_parameter(const Chart& c, const std::string& param, const BigRational& delta) {
    const auto& sys = build_system(c.system);
    Bindings b = Bindings::by_name(sys.table, sys.table);
    b.set(param, sys.sym(param) + RationalExpr(sys.table, delta));
    Chart out = c;
    out.label = c.label + "[" + param + "+" + delta.get_str() + "]";
    for (std::size_t i = 0; i < 4; ++i) {
        out.forward[i] = substitute(c.forward[i], b);
        out.inverse[i] = substitute(c.inverse[i], b);
    }
    return out;
}

}  // namespace plab
