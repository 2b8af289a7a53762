#pragma once

#include "chowz/registry.hpp"
#include "chowz/serialize.hpp"
#include "chowz/zlinalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chowz::replay {

inline constexpr const char* kReportSchema = "chowz.report/1";
inline constexpr const char* kClaimsSchema = "chowz.claims/1";

enum class Verdict { Pass, Fail, PassWithModuli };
std::string to_string(Verdict v);  // "pass", "fail", "pass-with-moduli"
Verdict verdict_from_string(std::string_view s);

struct ClaimResult {
    std::string id;
    std::string kind;
    std::string anchor;
    std::string moduli;   // "{w32=1}" or ""
    bool pass = false;
    std::string witness;  // for failures: a nonzero normal form, mismatched invariants, ...
    std::string detail;
    bool operator==(const ClaimResult&) const = default;
};

struct StepReport {
    std::string id;
    std::string description;
    Verdict verdict = Verdict::Fail;
    std::vector<std::string> moduli;  // residual parameters of a pass-with-moduli verdict
    std::vector<ClaimResult> claims;
    std::map<std::string, std::string> artifacts;  // "name{w}" -> "ring: p1; p2; ..."
    std::string dependency_failure;                // first failed dependency, if any

    bool passed() const { return verdict != Verdict::Fail; }
    bool operator==(const StepReport&) const = default;
};

struct StepInfo {
    std::string id;
    std::string description;
    std::vector<std::string> aliases;
    std::vector<std::string> anchors;
    std::vector<std::string> deps;
    std::vector<std::string> iterate;  // parameters the step is replayed for
    std::vector<std::string> moduli;   // parameters left open by the step
    json claims;
};

class UnknownStep : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An intermediate result of a step: polynomials in a named ring, or a
// coefficient match.
struct Artifact {
    PresentedRingPtr ring;  // null: the scratch work ring
    std::vector<Polynomial> polys;
    std::optional<MatchResult> match;
};

class Engine {
public:
    explicit Engine(const json& claims, const RingRegistry& registry = RingRegistry::builtin());
    // The claims file compiled into the library.
    static json builtin_claims();

    const std::vector<StepInfo>& catalog() const { return steps_; }
    // Full id for an id, alias or prefix before the first '-'; throws UnknownStep.
    std::string resolve(std::string_view id) const;

    // Runs missing dependencies first; with force, a failed dependency does not block the step.
    StepReport run_step(std::string_view id, bool force = false);
    // Topological order. Unknown ids in the filter throw, listing all of them.
    // Disabled steps are reported as failed without running.
    std::vector<StepReport> run_all(const std::vector<std::string>& filter = {},
                                    const std::set<std::string>& disabled = {});
    void clear() { done_.clear(); }

private:
    StepReport execute(const StepInfo& step);
    const StepInfo& info(const std::string& id) const;

    const RingRegistry& reg_;
    std::vector<StepInfo> steps_;
    std::map<std::string, StepReport> done_;
    std::set<std::string> disabled_;
};

json to_json(const ClaimResult& c);
json to_json(const StepReport& r);
StepReport step_report_from_json(const json& j);

// Whole-run document; validated on read.
json report_document(const std::vector<StepReport>& reports);
std::vector<StepReport> reports_from_document(const json& doc);
std::string human_report(const std::vector<StepReport>& reports);

}  // namespace chowz::replay
