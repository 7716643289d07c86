#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plab/rational_expr.hpp"

namespace plab {

// Every table used with maps starts with x, y, z, w, t.
inline constexpr std::array<std::size_t, 4> kState{0, 1, 2, 3};
inline constexpr std::size_t kTime = 4;

struct PoissonData {
    Polynomial f;
    RationalExpr alpha;
};

// A point map from the source table to the target table. images/tau/params give
// the target coordinates, time and parameters in terms of the source ones.
struct BirationalMap {
    std::string name;
    TablePtr source, target;
    std::array<RationalExpr, 4> images;
    RationalExpr tau;
    RationalExpr dtau;  // d(tau)/dt
    std::vector<std::pair<std::string, RationalExpr>> params;
    std::optional<PoissonData> poisson;
    // parameter images as given, including symbols the target eliminates
    std::vector<std::pair<std::string, RationalExpr>> declared;

    // target symbol -> source expression
    Bindings bindings() const;
    const RationalExpr* param(const std::string& name) const;
    bool poisson_series_applicable() const { return poisson.has_value(); }
};

BirationalMap make_map(std::string name, TablePtr source, TablePtr target, std::array<RationalExpr, 4> images,
                       RationalExpr tau, std::vector<std::pair<std::string, RationalExpr>> params);

// Identity on x, y, z, w, t and on every listed parameter.
BirationalMap identity_map(const TablePtr& table, const std::vector<std::string>& params);

// a after b (b acts first on points); requires a.source == b.target.
BirationalMap compose(const BirationalMap& a, const BirationalMap& b);
BirationalMap compose_word(const std::vector<const BirationalMap*>& word);

// Parameter and time part of a word, composed without the coordinate images.
// Long words swell in the coordinates; their parameter action stays affine.
struct ParameterAction {
    RationalExpr tau;
    std::vector<std::pair<std::string, RationalExpr>> params;
    const RationalExpr* param(const std::string& name) const;
};
ParameterAction compose_parameter_action(const std::vector<const BirationalMap*>& word);

// Exact image of a point (values indexed by the source table) under the word,
// rightmost map first. Throws std::domain_error on a pole.
std::vector<BigRational> apply_word(const std::vector<const BirationalMap*>& word, std::vector<BigRational> point);

// First nonzero residual against the identity, if any. Parameters are compared
// on the listed symbols (those of the source table when empty).
std::optional<RationalExpr> identity_residual(const BirationalMap& m, const std::vector<std::string>& params = {});

// (sum_j dX_i/du_j v_j + dX_i/dt) / (d tau/dt), in source coordinates
std::array<RationalExpr, 4> pushforward_field(const BirationalMap& m, const std::array<RationalExpr, 4>& v);

// Affine part of the parameter action: image of each target parameter as
// constant offset plus coefficients on the given source parameters.
struct AffineAction {
    std::vector<std::string> rows, cols;
    std::vector<std::vector<BigRational>> matrix;
    std::vector<BigRational> offset;
};
std::optional<AffineAction> affine_action(const BirationalMap& m, const std::vector<std::string>& rows,
                                          const std::vector<std::string>& cols);

}  // namespace plab
