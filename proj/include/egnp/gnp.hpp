#pragma once

#include "egnp/errors.hpp"
#include "egnp/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace egnp {

// Action space: either a strictly increasing finite list of nonnegative
// labels, or a union of disjoint closed intervals over [0, inf].
struct ActionSpace {
    struct Interval {
        double lo = 0;
        double hi = 0;  // may be +inf
    };

    std::vector<Rat> labels;
    std::vector<Interval> intervals;

    bool finite() const { return intervals.empty(); }
    void validate() const;
};

// One Type-I loss function: nondecreasing loss over its action space. The
// interval form carries a strictly increasing loss with a caller-supplied
// inverse; no numeric inversion happens here.
struct TypeOneLoss {
    std::string id;
    ActionSpace actions;
    std::vector<Ext> loss0;  // finite case, aligned with actions.labels
    std::function<double(double)> loss_fn;
    std::function<double(double)> loss_inv;

    bool finite() const { return actions.finite(); }
    void validate() const;
};

struct FinitePmf {
    std::string id;
    std::vector<Rat> p;
};

struct NullModel {
    enum class Kind { finite_discrete, normal_location };

    Kind kind = Kind::finite_discrete;

    // finite-discrete
    std::vector<Rat> outcomes;
    std::vector<FinitePmf> pmfs;

    // normal-location: Theta = [theta_lo, theta_hi], length-n sample, unit variance
    double theta_lo = 0;
    double theta_hi = 0;
    int n = 0;

    std::size_t outcome_count() const { return outcomes.size(); }
    bool full_support() const;
    const FinitePmf& pmf(const std::string& id) const;
    void validate() const;
};

struct GnpProblem {
    std::vector<TypeOneLoss> losses;
    NullModel null;
    bool theta_indexed = false;

    const TypeOneLoss& loss(const std::string& id) const;
    int loss_index(const std::string& id) const;  // -1 if absent
    void validate() const;
};

// Explicit rule table for finite problems: table[loss][outcome] -> action index.
struct DecisionRule {
    std::vector<std::vector<int>> table;
    std::string tag;

    int action_of(int loss_idx, int outcome_idx) const { return table[loss_idx][outcome_idx]; }
};

struct RiskBudget {
    Rat ell{1};
};

// Data-dependent loss selection B(y), resolved per outcome on finite problems.
struct AdversarySelector {
    std::string tag;
    std::vector<int> loss_by_outcome;
};

AdversarySelector constant_selector(const GnpProblem& problem, const std::string& loss_id);

struct ExactRisk {
    Rat value{0};
    bool infinite = false;

    double as_double() const { return infinite ? INFINITY : to_double(value); }
    std::string str() const { return infinite ? "inf" : rat_str(value); }
};

// L_b(0, delta_b(y)) <= S(y) * ell for every outcome and every loss.
bool is_compatible(const GnpProblem& problem, const DecisionRule& rule,
                   const std::vector<Rat>& s_values, const RiskBudget& budget = {});

// E_P0[L_{B(Y)}(0, delta_{B(Y)}(Y))], exact. Infinite losses met with positive
// probability yield an infinite risk, not an exception.
ExactRisk exact_type_one_risk(const GnpProblem& problem, const DecisionRule& rule,
                              const AdversarySelector& selector, const std::string& pmf_id = "");

// Appends the identity loss over the codomain of s (fresh id if needed);
// the result is rich relative to s.
GnpProblem enlarge_with_id(const GnpProblem& problem, const std::vector<Rat>& s_values);

// Scales every loss value and the budget by lambda; verdicts are invariant.
GnpProblem scale_losses(const GnpProblem& problem, const Rat& lambda);

// --- problem-file JSON -----------------------------------------------------
// {"outcomes": [...], "pmfs": [{"id":, "p": [...]}],
//  "losses": [{"id":, "actions": [...], "loss0": [...]}],
//  "evariable": {"values": [...]}}  -- scalars may be "num/den" strings.
struct ProblemFile {
    GnpProblem problem;
    std::optional<std::vector<Rat>> evariable;
};

ProblemFile load_problem_file(const std::string& path);
ProblemFile parse_problem_json(const std::string& text, const std::string& origin = "<string>");
std::string problem_to_json(const GnpProblem& problem,
                            const std::optional<std::vector<Rat>>& evariable = std::nullopt);

}  // namespace egnp
