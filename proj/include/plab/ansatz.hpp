#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plab/holomorphy.hpp"

namespace plab {

// sparse row over Q[parameters, t]; column -> entry
using SparseRow = std::map<std::size_t, Polynomial>;

struct AnsatzFamily {
    SystemId context;
    TablePtr table;
    std::vector<std::size_t> state;      // the ansatz variables (2 or 4 of x, y, z, w)
    unsigned degree = 0;
    std::vector<Polynomial> monomials;   // one unknown each
    bool correction_column = false;      // extra unknown c for charts with an H - c*y correction
    std::vector<SparseRow> constraints;

    std::size_t columns() const { return monomials.size() + (correction_column ? 1 : 0); }
    std::size_t constant_column() const;  // the monomial 1
};

AnsatzFamily build_ansatz(SystemId context, const std::vector<std::size_t>& state, unsigned degree);

// appends, per chart, the coefficients of the negative powers of the pullback of
// sum c_m m - c * correction
void impose_holomorphy(AnsatzFamily& family, const std::vector<const Chart*>& charts);

struct SolvedFamily {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots, free_columns;
    // one vector per free column: 1 there, 0 at the other free columns
    std::vector<std::vector<RationalExpr>> basis;
    std::size_t dimension() const { return basis.size(); }
    // dimension with the constant solution removed
    std::size_t dimension_mod_constants() const { return basis.empty() ? 0 : basis.size() - 1; }
};

SolvedFamily solve_family(const AnsatzFamily& family);

// sum over monomials; the correction weight is not part of the Hamiltonian
RationalExpr hamiltonian_of(const AnsatzFamily& family, const std::vector<RationalExpr>& v);
// coordinates of a polynomial Hamiltonian in the monomial basis (correction weight 0)
std::vector<RationalExpr> coordinates_of(const AnsatzFamily& family, const RationalExpr& h);
// v in the span of the basis, ignoring the constant column and the correction weight
bool in_span(const AnsatzFamily& family, const SolvedFamily& sol, const std::vector<RationalExpr>& v);

struct AnsatzTarget {
    std::string name;         // d6, d6auto, a5, a4, p51, p53
    SystemId system;
    unsigned degree;
    std::vector<std::string> state;
    std::vector<std::string> charts;  // chart names in the system's catalog
    std::size_t expected_dimension;   // modulo constants
    std::string normalize_monomial;   // empty for the families
    std::string normalize_value;
    std::string family_prefix;        // coefficient symbols of a family (k, b)
};
const std::vector<AnsatzTarget>& ansatz_targets();
const AnsatzTarget& ansatz_target(const std::string& name);

struct AnsatzResult {
    std::string target;
    std::size_t columns = 0, rows = 0, rank = 0, dimension = 0;
    bool dimension_ok = false, matches_catalog = false, charts_ok = false;
    std::optional<RationalExpr> representative;  // normalized, for single systems
    std::optional<RationalExpr> difference;      // representative - H when they differ
    double millis = 0;
    bool passed() const { return dimension_ok && matches_catalog && charts_ok; }
};

// builds, constrains, solves and compares with the cataloged Hamiltonian (or
// the family's span)
AnsatzResult derive(const AnsatzTarget& target);
// same with the given charts in place of the target's
AnsatzResult derive(const AnsatzTarget& target, const std::vector<const Chart*>& charts);
VerificationReport to_report(const AnsatzResult& r);

}  // namespace plab
