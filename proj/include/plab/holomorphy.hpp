#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plab/verify.hpp"

namespace plab {

enum class ChartMode { HAMILTONIAN, VECTOR_FIELD };
std::string mode_name(ChartMode m);

struct PolynomialityCertificate {
    std::string chart;  // label, e.g. r0 or r0r4
    SystemId system;
    ChartMode mode;
    std::optional<RationalExpr> correction;  // subtracted from H before the pullback
    bool hamiltonian_also = false;           // VECTOR_FIELD charts whose H pullback is polynomial too
    Status status = Status::PASS;
    std::vector<Polynomial> offending;  // state-dependent denominator factors left over
    double millis = 0;

    bool passed() const { return status == Status::PASS; }
};

// H - correction written in the chart coordinates (named x, y, z, w)
RationalExpr pullback_hamiltonian(const HamiltonianSystem& sys, const Chart& c,
                                  const std::optional<RationalExpr>& correction);
// any expression on the system's table written in the chart coordinates
RationalExpr pullback_expr(const HamiltonianSystem& sys, const Chart& c, const RationalExpr& e);
// d(new coordinate)/dt along the flow, in the chart coordinates
std::array<RationalExpr, 4> pullback_field(const HamiltonianSystem& sys, const Chart& c);

// denominator factors that involve a state variable
std::vector<Polynomial> state_denominators(const RationalExpr& e);

// HAMILTONIAN mode tries no correction first, then the chart's declared one,
// then y.
PolynomialityCertificate check_chart(const HamiltonianSystem& sys, const Chart& c, ChartMode mode);
// single attempt with a fixed correction
PolynomialityCertificate check_chart_with(const HamiltonianSystem& sys, const Chart& c,
                                          const std::optional<RationalExpr>& correction);
// the mode used for the catalog chart: composite charts at field level
ChartMode default_mode(const Chart& c);

VerificationReport to_report(const PolynomialityCertificate& c);

// chart with every occurrence of a parameter replaced by parameter + delta
Chart shift_chart_parameter(const Chart& c, const std::string& param, const BigRational& delta);

}  // namespace plab
