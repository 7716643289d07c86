#include "plab/suite.hpp"

#include <algorithm>
#include <chrono>

#include "plab/expr_io.hpp"
#include "plab/holomorphy.hpp"
#include "plab/parallel.hpp"

namespace plab {

namespace {

bool contains(const std::vector<SystemId>& v, SystemId id) { return std::find(v.begin(), v.end(), id) != v.end(); }

struct Relation {
    SystemId id;
    std::vector<std::string> lhs, rhs;  // rhs empty: lhs is the identity
    std::string subject;
};

const std::vector<Relation>& relations() {
    static const std::vector<Relation> r{
        {SystemId::D6, {"pi2", "pi3", "pi2"}, {"pi4"}, "pi4 = pi2 pi3 pi2"},
        {SystemId::D6, {"pi3", "pi3"}, {}, "pi3^2"},
        {SystemId::B6A, {"phi", "phi"}, {}, "phi^2"},
        {SystemId::D72, {"phi", "phi"}, {}, "phi^2"},
        {SystemId::B6B, {"psi", "psi"}, {}, "psi^2"},
    };
    return r;
}

void add_generator_checks(std::vector<SuiteTask>& out, const std::string& check, SystemId id, const std::string& gen,
                          const std::optional<std::string>& mutation) {
    auto map = [id, gen, mutation] {
        const auto& g = generator(id, gen);
        return mutation ? mutate(g, *mutation) : g;
    };
    if (check == "symplectic") {
        out.push_back({check, id, gen, [map] { return check_symplectic(map()); }});
    } else if (check == "backlund") {
        out.push_back({check, id, gen, [map] { return check_backlund(map()); }});
    } else if (check == "poisson") {
        if (!generator(id, gen).poisson_series_applicable()) return;
        for (const auto& p : poisson_probes())
            out.push_back({check, id, gen + " on " + p, [map, p] {
                               auto m = map();
                               return check_poisson_series(m, parse_poly(m.source, p));
                           }});
    }
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> n{"symplectic", "backlund",       "poisson",    "coxeter",   "relations",
                                            "translations", "divisors",     "first-integral", "chart-form", "holomorphy"};
    return n;
}

std::vector<SuiteTask> plan(const SuiteConfig& cfg) {
    auto systems = cfg.systems.empty() ? all_contexts() : cfg.systems;
    auto checks = cfg.checks.empty() ? check_names() : cfg.checks;
    for (const auto& c : checks)
        if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
            throw UsageError("unknown check: " + c);

    std::optional<std::pair<std::string, std::string>> mut;
    if (cfg.mutation) {
        mut = split_mutation(*cfg.mutation);
        if (cfg.checks.empty()) checks = {"symplectic", "backlund", "poisson"};
    }

    std::vector<SuiteTask> out;
    for (auto id : systems) {
        bool hamiltonian = contains(all_systems(), id);
        for (const auto& c : checks) {
            if (c == "symplectic" || c == "backlund" || c == "poisson") {
                if (!hamiltonian) continue;
                if (mut) {
                    const auto& names = generator_names(id);
                    if (std::find(names.begin(), names.end(), mut->first) == names.end()) continue;
                    // validate the mutation name before scheduling
                    (void)mutate(generator(id, mut->first), mut->second);
                    add_generator_checks(out, c, id, mut->first, mut->second);
                } else {
                    for (const auto& g : generator_names(id)) add_generator_checks(out, c, id, g, std::nullopt);
                }
                continue;
            }
            if (mut) continue;
            if (c == "coxeter" && contains(coxeter_systems(), id)) {
                out.push_back({c, id, "", [id] { return check_coxeter(id); }});
            } else if (c == "relations") {
                for (const auto& r : relations())
                    if (r.id == id)
                        out.push_back({c, id, r.subject, [r] {
                                           return r.rhs.empty() ? check_identity_word(r.id, r.lhs, r.subject)
                                                                : check_word_equal(r.id, r.lhs, r.rhs, r.subject);
                                       }});
            } else if (c == "translations" && id == SystemId::D6) {
                const auto& ts = translations();
                for (const auto& t : ts)
                    out.push_back({c, id, t.name, [t] { return check_translation(t.word, t.shift, t.name); }});
                for (std::size_t i = 0; i < ts.size(); ++i)
                    for (std::size_t j = i + 1; j < ts.size(); ++j)
                        out.push_back({c, id, ts[i].name + " " + ts[j].name,
                                       [a = ts[i], b = ts[j]] { return check_translations_commute(a, b); }});
            } else if (c == "divisors" && id == SystemId::D6) {
                for (const auto& d : d6_divisors())
                    out.push_back({c, id, d.name, [d] { return check_invariant_divisor(d); }});
            } else if (c == "first-integral" && id == SystemId::D6AUTO) {
                out.push_back({c, id, "H", [id] { return check_first_integral(id); }});
            } else if (c == "chart-form" && id == SystemId::D6) {
                out.push_back({c, id, "s1 in r2", [id] {
                                   return check_chart_form(id, "s1", "r2", {"x", "y-a1/x", "z", "w"});
                               }});
            } else if (c == "holomorphy") {
                for (const auto& n : chart_names(id))
                    out.push_back({c, id, chart(id, n).label, [id, n] {
                                       const auto& ch = chart(id, n);
                                       return to_report(check_chart(build_system(id), ch, default_mode(ch)));
                                   }});
            }
        }
    }
    if (out.empty() && mut) throw UsageError("no selected system has generator " + mut->first);
    if (out.empty()) throw UsageError("no checks selected");
    return out;
}

std::vector<VerificationReport> run_tasks(const std::vector<SuiteTask>& tasks, unsigned threads) {
    return parallel_map<VerificationReport>(
        tasks.size(),
        [&](std::size_t i) {
            const auto& t = tasks[i];
            auto start = std::chrono::steady_clock::now();
            try {
                return t.run();
            } catch (const std::exception& e) {
                VerificationReport r;
                r.check = t.check;
                r.system = t.system;
                r.subject = t.subject;
                r.status = Status::FAIL;
                r.note = std::string("error: ") + e.what();
                r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                return r;
            }
        },
        threads == 0 ? worker_count() : threads);
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

}  // namespace plab
