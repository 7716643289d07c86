#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plab/catalog.hpp"
#include "plab/verify.hpp"

namespace plab {

struct DegenerationSingular : std::runtime_error {
    explicit DegenerationSingular(const std::string& what, std::optional<RationalExpr> component = std::nullopt)
        : std::runtime_error(what), component(std::move(component)) {}
    std::optional<RationalExpr> component;  // the rewritten component with the pole
};

// New variables are stored as x, y, z, w, t (standing for X, Y, Z, W, T) in a
// table with A0..An and eps. The last A is eliminated through sum A = 1.
struct Degeneration {
    std::string name;           // d6-to-a5, p6-to-p5
    TablePtr old_table, table;  // old: D6 (or the scalar P6 table); new: the eps table
    std::size_t eps = 0;
    std::size_t dimension = 4;
    BirationalMap substitution;  // new -> old: old coordinates, time, parameters in the new ones
    BirationalMap forward;       // old -> new
    std::array<RationalExpr, 4> old_field;  // the field being degenerated, in the old table

    // sum A_i = 1 applied
    RationalExpr reduce(const RationalExpr& e) const;
    RationalExpr parse(const std::string& text) const;
};

// t = 1 - eps T, x = X/(X-T), ... from D6 to the eps table of A0..A5
const Degeneration& confluence_substitution();
// the scalar P6 -> P5 degeneration (z, w carried along unchanged)
const Degeneration& p6_degeneration();

// dX/dT, dY/dT, ... written in the new variables, eps symbolic
struct EpsilonFamily {
    const Degeneration* source = nullptr;
    std::array<RationalExpr, 4> field;
};
// throws DegenerationSingular when a component has a pole at eps = 0
EpsilonFamily rewrite_confluence(const Degeneration& d);
bool regular_at_zero(const RationalExpr& e, std::size_t eps);
// rewrite_confluence as a report; the singular component is the witness
VerificationReport check_regularity(const Degeneration& d);
// coefficient of eps^k in the expansion at eps = 0 (e regular there)
RationalExpr epsilon_coefficient(const RationalExpr& e, std::size_t eps, unsigned k);
std::array<RationalExpr, 4> epsilon_limit(const EpsilonFamily& f);

// limit field against the A5 catalog field (names A_i -> a_i)
VerificationReport check_limit_a5();
// limit against H_V(q, p, tau; A2, A1, A0 + A2) with (q, p, tau) = (-T Q, -P/T, -T)
VerificationReport check_limit_p5();
std::array<RationalExpr, 4> p5_target_field();  // in the eps table

struct ConfluenceGenerator {
    std::string name;                  // S0 .. S5
    std::vector<std::string> d6_word;  // palindromic, so either reading order
    std::string a5_generator;          // s0 .. s5
    std::vector<std::string> action;   // images of (A0, .., A5, eps)
};
const std::vector<ConfluenceGenerator>& confluence_generators();
const ConfluenceGenerator& confluence_generator(const std::string& name);

// forward o word o substitution: a map of the eps table to itself
BirationalMap conjugated(const ConfluenceGenerator& g);
// parameter and time part only, for words in S0..S5 (rightmost acts first)
ParameterAction conjugated_action(const std::vector<std::string>& word);
// the stated action table composed as substitutions, same reading
ParameterAction table_action(const std::vector<std::string>& word);

// per generator: parameter action, then eps -> 0 coordinate action vs the A5 catalog
std::vector<VerificationReport> subgroup_convergence_reports();
VerificationReport check_subgroup_convergence();
// conjugated and table actions agree on every word of length <= max_length
VerificationReport check_action_words(unsigned max_length = 3);

// E o word = gen o E for one dictionary entry (word in D6 letters)
VerificationReport check_dictionary_entry(EquivalenceId id, const std::string& gen,
                                          const std::vector<std::string>& word);
// field-level pushforward plus the generator dictionary at map level
std::vector<VerificationReport> equivalence_reports(EquivalenceId id);
VerificationReport check_equivalence(EquivalenceId id);

}  // namespace plab
