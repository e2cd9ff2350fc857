#pragma once

#include "egnp/gnp.hpp"

#include <string>

namespace egnp {

struct no_feasible_action : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecisionOutcome {
    double action = 0;
    double loss0_at_action = 0;
    double statistic_value = 0;
    std::string rule_tag;
    // Finite action spaces additionally carry the exact pick.
    int action_index = -1;
    Rat action_exact{0};
    Rat loss0_exact{0};
};

// Largest action whose loss stays within s_value * ell. Ties (equality) pick
// the larger action; finite comparisons are exact at the float level.
DecisionOutcome max_compatible_decide(double s_value, const TypeOneLoss& loss,
                                      const RiskBudget& budget = {});

// Largest action with pval * loss0(a) <= ell; pval = 0 picks the maximal action.
DecisionOutcome naive_p_decide(double pval, const TypeOneLoss& loss, const RiskBudget& budget = {});

// naive_p_decide with pval replaced by pval / 2.
DecisionOutcome halved_p_decide(double pval, const TypeOneLoss& loss, const RiskBudget& budget = {});

// Exact core for finite losses: largest index with loss0 <= bound (-1 if none).
int largest_action_within(const TypeOneLoss& loss, const Ext& bound);

// Rule tables over a finite problem, one decision per (loss, outcome).
DecisionRule max_compatible_rule(const GnpProblem& problem, const std::vector<Rat>& s_values,
                                 const RiskBudget& budget = {});

}  // namespace egnp
