#include "plab/numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "plab/verify.hpp"

namespace plab {

namespace {

using Vec = Eigen::Vector4d;

Bindings parameter_bindings(const TablePtr& table, const std::map<std::string, BigRational>& params) {
    Bindings b = Bindings::by_name(table, table);
    for (const auto& [n, v] : params)
        if (auto i = table->find(n)) b.set(*i, RationalExpr(table, v));
    return b;
}

std::vector<double> point_of(const NumericSystem& ns, const NumericState& s) {
    std::vector<double> p(ns.sys->table->size(), 0.0);
    for (std::size_t i = 0; i < 4; ++i) p[ns.sys->state[i]] = s.u[i];
    p[ns.sys->time] = s.t;
    return p;
}

void add_guards(std::vector<Polynomial>& guards, const RationalExpr& e) {
    for (const auto& f : e.den_factors()) {
        if (f.f.is_constant()) continue;
        bool seen = std::any_of(guards.begin(), guards.end(), [&](const Polynomial& g) { return g == f.f; });
        if (!seen) guards.push_back(f.f);
    }
}

Vec to_vec(const std::array<double, 4>& a) { return Vec(a[0], a[1], a[2], a[3]); }
std::array<double, 4> to_arr(const Vec& v) { return {v[0], v[1], v[2], v[3]}; }

void check_state(const NumericSystem& ns, const NumericState& s) {
    for (double v : s.u)
        if (!std::isfinite(v)) throw NonFinite("non-finite state at t = " + std::to_string(s.t));
    if (const Polynomial* g = ns.breached(s))
        throw SingularityApproached("|" + g->str() + "| below " + std::to_string(ns.delta) + " at t = " +
                                    std::to_string(s.t));
}

}  // namespace

std::array<double, 4> NumericSystem::eval_field(const NumericState& s) const {
    auto p = point_of(*this, s);
    return {field[0].evaluate(p), field[1].evaluate(p), field[2].evaluate(p), field[3].evaluate(p)};
}

double NumericSystem::eval_H(const NumericState& s) const { return H.evaluate(point_of(*this, s)); }

const Polynomial* NumericSystem::breached(const NumericState& s) const {
    auto p = point_of(*this, s);
    for (const auto& g : guards)
        if (std::abs(g.evaluate(p)) <= delta) return &g;
    return nullptr;
}

NumericSystem numeric_system(const HamiltonianSystem& sys, const std::map<std::string, BigRational>& assignment,
                             double delta) {
    NumericSystem ns;
    ns.sys = &sys;
    ns.params = resolve_parameters(sys.params, assignment);
    ns.delta = delta;
    Bindings b = parameter_bindings(sys.table, ns.params);
    auto v = vector_field(sys).v;
    for (std::size_t i = 0; i < 4; ++i) {
        ns.field[i] = substitute(v[i], b);
        add_guards(ns.guards, ns.field[i]);
    }
    ns.H = substitute(sys.H, b);
    return ns;
}

Trajectory integrate_grid(const NumericSystem& ns, const std::array<double, 4>& init, const std::vector<double>& times) {
    Trajectory tr;
    if (times.empty()) return tr;
    NumericState s{times.front(), init};
    check_state(ns, s);
    tr.push_back(s);
    auto f = [&](double t, const Vec& u) {
        NumericState stage{t, to_arr(u)};
        check_state(ns, stage);
        return to_vec(ns.eval_field(stage));
    };
    for (std::size_t k = 1; k < times.size(); ++k) {
        double t = times[k - 1], h = times[k] - t;
        Vec u = to_vec(s.u);
        Vec k1 = f(t, u);
        Vec k2 = f(t + h / 2, u + h / 2 * k1);
        Vec k3 = f(t + h / 2, u + h / 2 * k2);
        Vec k4 = f(t + h, u + h * k3);
        u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        s = NumericState{times[k], to_arr(u)};
        check_state(ns, s);
        tr.push_back(s);
    }
    return tr;
}

Trajectory integrate(const NumericSystem& ns, const std::array<double, 4>& init, double t0, double t1, double h) {
    if (h <= 0) throw std::invalid_argument("step must be positive");
    auto n = static_cast<std::size_t>(std::llround(std::abs(t1 - t0) / h));
    n = std::max<std::size_t>(n, 1);
    std::vector<double> times(n + 1);
    for (std::size_t k = 0; k <= n; ++k) times[k] = t0 + (t1 - t0) * double(k) / double(n);
    return integrate_grid(ns, init, times);
}

double hamiltonian_drift(const Trajectory& tr, const NumericSystem& ns) {
    if (!ns.sys->autonomous) throw NotAutonomous();
    if (tr.empty()) return 0;
    double h0 = ns.eval_H(tr.front()), worst = 0;
    for (const auto& s : tr) worst = std::max(worst, std::abs(ns.eval_H(s) - h0));
    return worst / std::max(1.0, std::abs(h0));
}

double step_halving_ratio(const NumericSystem& ns, const std::array<double, 4>& init, double t0, double t1, double h) {
    auto end = [&](double step) { return to_vec(integrate(ns, init, t0, t1, step).back().u); };
    Vec ref = end(h / 8), a = end(h), b = end(h / 2);
    return (a - ref).norm() / (b - ref).norm();
}

BacklundDeviation numeric_backlund_check(const NumericSystem& ns, const BirationalMap& gen,
                                         const std::array<double, 4>& init, double t0, double t1, double h) {
    const auto& src = *ns.sys;
    const auto& dst = system_of(gen.target);
    // gen(p) exactly
    std::vector<BigRational> exact(src.table->size(), 0);
    for (const auto& [n, v] : ns.params)
        if (auto i = src.table->find(n)) exact[*i] = v;
    std::map<std::string, BigRational> image;
    for (const auto& n : dst.params.basis) {
        const RationalExpr* e = gen.param(n);
        image[n] = e ? e->evaluate(exact) : BigRational(exact[src.table->index(n)]);
    }
    NumericSystem target = numeric_system(dst, image, ns.delta);

    // the map with the source parameters fixed, and its poles as extra guards
    Bindings b = parameter_bindings(src.table, ns.params);
    std::array<RationalExpr, 4> img;
    NumericSystem guarded = ns;
    for (std::size_t i = 0; i < 4; ++i) {
        img[i] = substitute(gen.images[i], b);
        add_guards(guarded.guards, img[i]);
    }
    RationalExpr tau = substitute(gen.tau, b);
    add_guards(guarded.guards, tau);

    Trajectory one = integrate(guarded, init, t0, t1, h);
    std::vector<double> times;
    std::vector<std::array<double, 4>> mapped;
    for (const auto& s : one) {
        auto p = point_of(ns, s);
        times.push_back(tau.evaluate(p));
        mapped.push_back({img[0].evaluate(p), img[1].evaluate(p), img[2].evaluate(p), img[3].evaluate(p)});
    }
    Trajectory two = integrate_grid(target, mapped.front(), times);
    BacklundDeviation d;
    for (std::size_t k = 0; k < two.size(); ++k) {
        double dev = (to_vec(two[k].u) - to_vec(mapped[k])).lpNorm<Eigen::Infinity>();
        d.max_deviation = std::max(d.max_deviation, dev);
        ++d.samples;
    }
    return d;
}

double fd_check(const RationalExpr& H, const std::vector<double>& point, double step) {
    // (x, y), (z, w) conjugate pairs: dx/dt = H_y, dy/dt = -H_x, ...
    double worst = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t partner = i ^ 1;
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        double sym = sign * H.derivative(kState[partner]).evaluate(point);
        auto hi = point, lo = point;
        hi[kState[partner]] += step;
        lo[kState[partner]] -= step;
        double fd = sign * (H.evaluate(hi) - H.evaluate(lo)) / (2 * step);
        worst = std::max(worst, std::abs(sym - fd) / std::max(1.0, std::abs(sym)));
    }
    return worst;
}

double fd_check(const NumericSystem& ns, const NumericState& at, double step) {
    if (const Polynomial* g = ns.breached(at)) throw SingularityApproached("fd_check point near " + g->str());
    auto p = point_of(ns, at);
    auto f = ns.eval_field(at);
    double worst = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t partner = i ^ 1;
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        auto hi = p, lo = p;
        hi[ns.sys->state[partner]] += step;
        lo[ns.sys->state[partner]] -= step;
        double fd = sign * (ns.H.evaluate(hi) - ns.H.evaluate(lo)) / (2 * step);
        worst = std::max(worst, std::abs(f[i] - fd) / std::max(1.0, std::abs(f[i])));
    }
    return worst;
}

void write_csv(std::ostream& out, const Trajectory& tr, const NumericSystem& ns) {
    out << "t,x,y,z,w,H\n";
    out.precision(17);
    for (const auto& s : tr)
        out << s.t << ',' << s.u[0] << ',' << s.u[1] << ',' << s.u[2] << ',' << s.u[3] << ',' << ns.eval_H(s) << '\n';
}

}  // namespace plab
