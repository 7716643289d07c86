#pragma once

#include <array>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "plab/catalog.hpp"

namespace plab {

struct SingularityApproached : std::runtime_error {
    explicit SingularityApproached(const std::string& w) : std::runtime_error(w) {}
};
struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& w) : std::runtime_error(w) {}
};

inline constexpr double kDefaultGuard = 1e-3;

struct NumericState {
    double t = 0;
    std::array<double, 4> u{};  // x, y, z, w
};
using Trajectory = std::vector<NumericState>;

// A system with its parameters fixed: field and H carry rational constants only.
struct NumericSystem {
    const HamiltonianSystem* sys = nullptr;
    std::map<std::string, BigRational> params;  // every parameter symbol
    std::array<RationalExpr, 4> field;
    RationalExpr H;
    std::vector<Polynomial> guards;  // |g| > delta along the flow
    double delta = kDefaultGuard;

    std::array<double, 4> eval_field(const NumericState& s) const;
    double eval_H(const NumericState& s) const;
    // first guard polynomial within delta, if any
    const Polynomial* breached(const NumericState& s) const;
};

// assignment covers the basis; the eliminated parameters are derived
NumericSystem numeric_system(const HamiltonianSystem& sys, const std::map<std::string, BigRational>& assignment,
                             double delta = kDefaultGuard);

// classical RK4 through the given times (need not be uniform)
Trajectory integrate_grid(const NumericSystem& ns, const std::array<double, 4>& init, const std::vector<double>& times);
// fixed step h from t0 to t1 (the last step lands on t1)
Trajectory integrate(const NumericSystem& ns, const std::array<double, 4>& init, double t0, double t1, double h);

// max |H(s) - H(s0)| / max(1, |H(s0)|); throws NotAutonomous for non-autonomous systems
double hamiltonian_drift(const Trajectory& tr, const NumericSystem& ns);

// |end(h) - end(h/8)| / |end(h/2) - end(h/8)|, 16 for an order-4 method
double step_halving_ratio(const NumericSystem& ns, const std::array<double, 4>& init, double t0, double t1, double h);

struct BacklundDeviation {
    double max_deviation = 0;
    std::size_t samples = 0;
};
// integrate from init and from gen(init) with gen(params); compare gen(traj1(t)) with traj2(tau(t))
BacklundDeviation numeric_backlund_check(const NumericSystem& ns, const BirationalMap& gen,
                                         const std::array<double, 4>& init, double t0, double t1, double h);

// symbolic field against centered differences of H, relative error
double fd_check(const NumericSystem& ns, const NumericState& at, double step = 1e-6);
// same for an arbitrary H on a table whose first five symbols are x, y, z, w, t
double fd_check(const RationalExpr& H, const std::vector<double>& point, double step = 1e-6);

// t,x,y,z,w,H
void write_csv(std::ostream& out, const Trajectory& tr, const NumericSystem& ns);

}  // namespace plab
