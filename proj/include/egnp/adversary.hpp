#pragma once

#include "egnp/gnp.hpp"

#include <utility>

namespace egnp {

// Post-hoc loss selection used to break p-value based decisions: the smaller
// the p-value, the higher the stakes of the loss that gets presented.
//   pval > 0.02        -> 1
//   0.001 < pval <= .02 -> 2
//   pval <= 0.001      -> 3
int threshold_selector(double pval);

// B(y) = 1 / (2 Phi(-y + eps^2/y)) for y >= eps, else 1. The matching
// credible interval [g0(y), 2y - g0(y)] never covers 0.
struct CdBreakingAdversary {
    double epsilon = 0.01;
    static constexpr double kClamp = 1e15;

    double g0(double y) const { return epsilon * epsilon / y; }
    double b(double y) const;                         // unclamped
    double b_clamped(double y, bool* clamped = nullptr) const;
    std::pair<double, double> cd_interval(double y) const;  // [g0, 2y - g0]
};

double cd_breaking_b(double y, double epsilon);

// --- worked finite demos (exact rational risks) ------------------------------
//
// Each demo carries a finite problem whose outcomes are the constancy cells of
// a strict uniform p-value (labelled by the cell's upper endpoint), together
// with pre-tabulated rules and their exact risks.

struct FiniteDemo {
    GnpProblem problem;
    AdversarySelector selector;
    std::vector<double> pval_by_outcome;
};

// Four-action escalating loss {0, 20, 100, 500}; the naive p-rule overshoots
// the unit budget: exact risk 13/5.
struct FourActionDemo : FiniteDemo {
    DecisionRule naive_rule;
    ExactRisk naive_risk;
};
FourActionDemo four_action_demo(const RiskBudget& budget = {});

// Three two-action losses (stakes 20/100/500) picked post hoc by
// threshold_selector. "naive-p" takes the offered action whenever the study
// was significant at the originally planned level 0.05 (exact risk 3);
// "max-compatible" uses S^{NP(0.05)} (exact risk 3/5).
struct ThresholdDemo : FiniteDemo {
    DecisionRule naive_rule;
    DecisionRule e_rule;
    ExactRisk naive_risk;
    ExactRisk e_risk;
};
ThresholdDemo threshold_demo(const RiskBudget& budget = {});

// Dyadic escalation: pval in {1, 1/2, ..., 2^-k} with P(pval = 2^-c) = 2^-c,
// loss 2a over actions {0, 1, 2, 4, ..., 2^k} * ell. The naive rule escalates
// at face value (largest a with pval*a <= ell; status quo at pval = 1) and has
// exact risk 2k; the halved fix steps one level down (largest a with
// pval*loss0(a) <= ell) and has exact risk k. The maximally compatible rule
// under the calibrated e-variable 1/sqrt(pval) - 1 stays within budget.
struct DyadicDemo : FiniteDemo {
    int k = 0;
    DecisionRule naive_rule;
    DecisionRule halved_rule;
    DecisionRule max_compatible;
    ExactRisk naive_risk;        // = 2k * ell
    ExactRisk halved_risk;       // = k * ell
    ExactRisk max_compat_risk;   // <= ell
};
DyadicDemo dyadic_problem(int k, const RiskBudget& budget = {});

}  // namespace egnp
