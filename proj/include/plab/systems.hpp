#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "plab/rational_expr.hpp"

namespace plab {

// P51 and P53 are the undetermined families of the 2D and 4D holomorphy
// propositions; they carry the W(A2) and W(A4) subgroup generators.
enum class SystemId { D6, B6A, B6B, D72, D6AUTO, A5, A4, P51, P53 };

const std::vector<SystemId>& all_systems();  // the seven Hamiltonian systems
const std::vector<SystemId>& all_contexts();  // systems plus the two families
std::string system_name(SystemId id);
// accepts the canonical names case-insensitively ("d6", "b6a", "d6auto", ...)
SystemId parse_system_id(const std::string& name);

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// sum coeffs[k] * symbol[k] = rhs
struct AffineRelation {
    std::vector<std::pair<std::string, BigRational>> coeffs;
    BigRational rhs;
};

struct ParameterSpace {
    std::vector<std::string> symbols;
    std::vector<AffineRelation> relations;
    std::vector<std::string> basis;
    // eliminated symbol -> affine expression in the basis
    std::vector<std::pair<std::string, RationalExpr>> elimination;
    // the tuple the generators act on, e.g. (a0, a1, a2, g1, b2, b3, b4) for D6
    std::vector<std::string> action_tuple;

    const RationalExpr* eliminated(const std::string& name) const;
    std::size_t independent_relations() const;
};

struct HamiltonianSystem {
    SystemId id;
    TablePtr table;
    std::array<std::size_t, 4> state;  // x, y, z, w
    std::size_t time;
    ParameterSpace params;
    RationalExpr H;  // elimination map already applied
    bool autonomous = false;

    // identity on the table except eliminated parameters, which map to their basis expressions
    Bindings elimination_bindings() const;
    RationalExpr reduce(const RationalExpr& e) const;
    RationalExpr parse(const std::string& text) const;  // parse then reduce
    RationalExpr sym(const std::string& name) const;
    std::vector<std::size_t> basis_indices() const;
};

struct VectorField {
    std::array<RationalExpr, 4> v;
};

enum class ScalarKind { VI, VI_TILDE, V, IV, AUTO };

// q, p, t: symbol names in the table; for AUTO the name passed as t is the
// singular point symbol (eta).
RationalExpr scalar_hamiltonian(ScalarKind kind, const TablePtr& table, const std::string& q, const std::string& p,
                                const std::string& t, const std::vector<RationalExpr>& params);

const HamiltonianSystem& build_system(SystemId id);
// the cataloged system owning the table; throws std::invalid_argument otherwise
const HamiltonianSystem& system_of(const TablePtr& table);
VectorField vector_field(const HamiltonianSystem& sys);
VectorField vector_field_of(const HamiltonianSystem& sys, const RationalExpr& H);
RationalExpr divergence(const HamiltonianSystem& sys, const VectorField& v);
// total degree of H's numerator in (x, y, z, w)
unsigned state_degree(const HamiltonianSystem& sys);

// values for every parameter symbol; assignment must cover exactly the basis
std::map<std::string, BigRational> resolve_parameters(const ParameterSpace& space,
                                                      const std::map<std::string, BigRational>& assignment);

}  // namespace plab
