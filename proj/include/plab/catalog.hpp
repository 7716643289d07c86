#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plab/maps.hpp"
#include "plab/systems.hpp"

namespace plab {

struct UnknownGenerator : std::invalid_argument {
    explicit UnknownGenerator(const std::string& n) : std::invalid_argument("unknown generator: " + n) {}
};
struct UnknownChart : std::invalid_argument {
    explicit UnknownChart(const std::string& n) : std::invalid_argument("unknown chart: " + n) {}
};

// Builds a map between two catalog systems from tabulated data. Images and the
// time image are read in the source table; action lists the images of the
// target's action tuple. Basis symbols outside the tuple map to themselves.
BirationalMap make_generator(const HamiltonianSystem& source, const HamiltonianSystem& target, const std::string& name,
                             const std::array<std::string, 4>& images, const std::string& tau,
                             const std::vector<std::string>& action);

const BirationalMap& generator(SystemId id, const std::string& name);
const std::vector<std::string>& generator_names(SystemId id);

struct GeneratorSet {
    SystemId id;
    std::vector<std::string> nodes;
    std::vector<std::vector<int>> coxeter;
    std::vector<std::string> automorphisms;
};
// Systems with a Dynkin diagram: the seven systems plus P53 (g1..g4) and P51 (u1, u2).
const std::vector<SystemId>& coxeter_systems();
const GeneratorSet& generator_set(SystemId id);

struct Chart {
    std::string name;   // x0 .. x24 style coordinate index, or g1.. / c1..
    std::string label;  // r0, r0r3, r3(r4r2), ...
    SystemId system;
    std::array<RationalExpr, 4> forward;  // new coordinates in old ones
    std::array<RationalExpr, 4> inverse;  // old coordinates in new ones
    std::optional<RationalExpr> correction;
    bool composite = false;
};

const Chart& chart(SystemId id, const std::string& name_or_label);
const std::vector<std::string>& chart_names(SystemId id);
BirationalMap chart_forward_map(const Chart& c);
BirationalMap chart_inverse_map(const Chart& c);

enum class EquivalenceId { D6_TO_B6A, D6_TO_B6B, D6_TO_D72 };
const std::vector<EquivalenceId>& all_equivalences();
std::string equivalence_name(EquivalenceId id);
EquivalenceId parse_equivalence(const std::string& name);
SystemId equivalence_target(EquivalenceId id);
const BirationalMap& equivalence_map(EquivalenceId id);
// target generator -> word in the D6 generators (leftmost acts last)
const std::vector<std::pair<std::string, std::vector<std::string>>>& equivalence_dictionary(EquivalenceId id);

// Maps in the order given, ready for compose_word (rightmost acts first on points).
std::vector<const BirationalMap*> resolve_word(SystemId id, const std::vector<std::string>& names);

// Words as written for translations and dictionaries act on functions: the
// leftmost letter acts first on points. These read such words.
BirationalMap word_map(SystemId id, const std::vector<std::string>& word);
ParameterAction word_action(SystemId id, const std::vector<std::string>& word);
std::vector<BigRational> word_apply(SystemId id, const std::vector<std::string>& word,
                                    const std::vector<BigRational>& point);

}  // namespace plab
