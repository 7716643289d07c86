#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plab/verify.hpp"

namespace plab {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// symplectic, backlund, poisson, coxeter, relations, translations, divisors,
// first-integral, chart-form, holomorphy
const std::vector<std::string>& check_names();

struct SuiteConfig {
    std::vector<SystemId> systems;    // empty means all contexts
    std::vector<std::string> checks;  // empty means all
    std::optional<std::string> mutation;  // "gen:mutation", restricts the run to that generator
    std::string output;               // "" for stdout
    unsigned threads = 0;             // 0 for worker_count()
    unsigned seed = 0;
};

struct SuiteTask {
    std::string check;
    SystemId system;
    std::string subject;
    std::function<VerificationReport()> run;
};

// expands "all"; throws UsageError when nothing is selected
std::vector<SuiteTask> plan(const SuiteConfig& cfg);
// runs tasks on a worker pool; exceptions become FAIL reports with a note
std::vector<VerificationReport> run_tasks(const std::vector<SuiteTask>& tasks, unsigned threads = 0);

bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace plab
