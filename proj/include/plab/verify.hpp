#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plab/catalog.hpp"

namespace plab {

enum class Status { PASS, FAIL };

struct VerificationReport {
    std::string check;
    SystemId system;
    std::string subject;
    Status status = Status::PASS;
    std::optional<RationalExpr> witness;  // present iff FAIL
    std::string note;
    double millis = 0;

    bool passed() const { return status == Status::PASS; }
};

// {check, system, subject, status, witness?, millis}
std::string to_json_line(const VerificationReport& r);

struct NotAutonomous : std::invalid_argument {
    NotAutonomous() : std::invalid_argument("system is not autonomous") {}
};
struct NotApplicable : std::invalid_argument {
    explicit NotApplicable(const std::string& n) : std::invalid_argument("poisson series not applicable to " + n) {}
};
struct UnknownDivisor : std::invalid_argument {
    explicit UnknownDivisor(const std::string& n) : std::invalid_argument("unknown divisor: " + n) {}
};

// J^T Omega J = Omega with Omega(x,y) = Omega(z,w) = 1 (the form dy^dx + dw^dz)
VerificationReport check_symplectic(const BirationalMap& m);

// pushforward of the source field equals the target field at the image point
// with the mapped parameters
VerificationReport check_backlund(const BirationalMap& m);

// (s_i s_j)^m(i,j) is the identity and no smaller power is
VerificationReport check_coxeter(SystemId id);
// smallest k <= max_order with (a b)^k the identity
std::optional<int> pair_order(const BirationalMap& a, const BirationalMap& b, int max_order = 6);

// the word as written (leftmost acts first on points) is the identity map
VerificationReport check_identity_word(SystemId id, const std::vector<std::string>& word, const std::string& subject);
// word_map of both words agree componentwise
VerificationReport check_word_equal(SystemId id, const std::vector<std::string>& lhs,
                                    const std::vector<std::string>& rhs, const std::string& subject);

// D6 words; shift on (a0, a1, a2, g1, b2, b3, b4)
VerificationReport check_translation(const std::vector<std::string>& word, const std::vector<BigRational>& shift,
                                     const std::string& subject = "");
struct Translation {
    std::string name;
    std::vector<std::string> word;
    std::vector<BigRational> shift;
};
const std::vector<Translation>& translations();  // T1 .. T6
// parameter actions commute exactly, and coordinates at a fixed rational point
VerificationReport check_translations_commute(const Translation& a, const Translation& b);

struct DivisorSpec {
    std::string name;       // f0 .. f6
    std::string f;          // in the coordinates named by chart
    std::string chart;      // "" for the original coordinates
    std::vector<std::pair<std::string, std::string>> condition;  // basis symbol -> value
};
const std::vector<DivisorSpec>& d6_divisors();
const DivisorSpec& d6_divisor(const std::string& name);
// f divides the numerator of df/dt along the D6 flow once the condition is imposed
VerificationReport check_invariant_divisor(const DivisorSpec& spec);

VerificationReport check_first_integral(SystemId id);
// df/dt along the flow of an autonomous system vanishes
VerificationReport check_first_integral(SystemId id, const RationalExpr& f);

// The generator read in a chart: chart(gen(p)) with mapped parameters equals the
// given images (in the chart coordinates, written x, y, z, w) applied to chart(p).
VerificationReport check_chart_form(SystemId id, const std::string& gen, const std::string& chart_name,
                                    const std::array<std::string, 4>& images);

// {F,G} = F_y G_x - F_x G_y + F_w G_z - F_z G_w
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g);
// g + (a/f){f,g} + (a/f)^2/2! {f,{f,g}} + ...
RationalExpr poisson_series(const BirationalMap& gen, const Polynomial& g);
VerificationReport check_poisson_series(const BirationalMap& gen, const Polynomial& g);
const std::vector<std::string>& poisson_probes();  // x, y, z, w, xy, zw, x^2 z

// "drop-<p>-shift" sets parameter p back to itself, "scale-<coord>" doubles a
// coordinate image. Names alpha_i, beta_i, gamma1 map to a_i, b_i, g1.
BirationalMap mutate(const BirationalMap& m, const std::string& mutation);
// "s3:drop-alpha2-shift" -> (generator, mutation)
std::pair<std::string, std::string> split_mutation(const std::string& spec);

}  // namespace plab
