#include "egnp/adversary.hpp"

#include "egnp/evariable.hpp"
#include "egnp/normal.hpp"
#include "egnp/rules.hpp"

#include <cmath>

namespace egnp {

int threshold_selector(double pval) {
    if (std::isnan(pval) || pval < 0 || pval > 1) throw parameter_error("pval outside [0,1]");
    if (pval > 0.02) return 1;
    if (pval > 0.001) return 2;
    return 3;
}

double CdBreakingAdversary::b(double y) const {
    if (y < epsilon) return 1.0;
    return 1.0 / (2.0 * norm_cdf(-y + g0(y)));
}

double CdBreakingAdversary::b_clamped(double y, bool* clamped) const {
    double v = b(y);
    if (clamped) *clamped = v > kClamp;
    return std::min(v, kClamp);
}

std::pair<double, double> CdBreakingAdversary::cd_interval(double y) const {
    double g = g0(y);
    return {g, 2.0 * y - g};
}

double cd_breaking_b(double y, double epsilon) {
    if (!(epsilon > 0)) throw parameter_error("epsilon must be positive");
    return CdBreakingAdversary{epsilon}.b(y);
}

namespace {

TypeOneLoss step_loss(std::string id, std::vector<Rat> actions, std::vector<Rat> loss_values) {
    TypeOneLoss loss;
    loss.id = std::move(id);
    loss.actions.labels = std::move(actions);
    for (auto& v : loss_values) loss.loss0.emplace_back(std::move(v));
    loss.validate();
    return loss;
}

// Outcomes are p-value cells (upper endpoints given as exact rationals); the
// cell probability is upper - lower under a strict uniform p-value.
NullModel pval_cells(std::vector<Rat> uppers) {
    NullModel null;
    null.kind = NullModel::Kind::finite_discrete;
    FinitePmf pm;
    pm.id = "uniform-pval";
    Rat prev{0};
    for (const auto& u : uppers) {
        pm.p.push_back(u - prev);
        prev = u;
    }
    null.outcomes = std::move(uppers);
    null.pmfs.push_back(std::move(pm));
    null.validate();
    return null;
}

}  // namespace

FourActionDemo four_action_demo(const RiskBudget& budget) {
    FourActionDemo demo;
    const Rat& ell = budget.ell;
    demo.problem.losses.push_back(step_loss("escalate4", {0, 1, 2, 3},
                                            {Rat(0), 20 * ell, 100 * ell, 500 * ell}));
    // Cells split at the rule's own feasibility thresholds ell / loss0.
    demo.problem.null = pval_cells({Rat(1, 500), Rat(1, 100), Rat(1, 20), Rat(1)});
    demo.problem.validate();
    for (const auto& y : demo.problem.null.outcomes)
        demo.pval_by_outcome.push_back(to_double(y));
    demo.selector = constant_selector(demo.problem, "escalate4");

    demo.naive_rule.tag = "naive-p";
    demo.naive_rule.table.resize(1);
    for (const auto& pval : demo.problem.null.outcomes)
        demo.naive_rule.table[0].push_back(
            largest_action_within(demo.problem.losses[0], Ext(budget.ell / pval)));
    demo.naive_risk = exact_type_one_risk(demo.problem, demo.naive_rule, demo.selector);
    return demo;
}

ThresholdDemo threshold_demo(const RiskBudget& budget) {
    ThresholdDemo demo;
    const Rat& ell = budget.ell;
    demo.problem.losses.push_back(step_loss("1", {0, 1}, {Rat(0), 20 * ell}));
    demo.problem.losses.push_back(step_loss("2", {0, 2}, {Rat(0), 100 * ell}));
    demo.problem.losses.push_back(step_loss("3", {0, 3}, {Rat(0), 500 * ell}));
    // Cells split at both the selector thresholds and the planned level 0.05.
    demo.problem.null = pval_cells({Rat(1, 1000), Rat(1, 50), Rat(1, 20), Rat(1)});
    demo.problem.validate();
    for (const auto& y : demo.problem.null.outcomes)
        demo.pval_by_outcome.push_back(to_double(y));

    const Rat cell2{1, 50}, cell3{1, 1000}, planned_level{1, 20};
    demo.selector.tag = "pval-threshold";
    for (const auto& pval : demo.problem.null.outcomes)
        demo.selector.loss_by_outcome.push_back(pval > cell2 ? 0 : (pval > cell3 ? 1 : 2));

    // Naive practice: the planned test rejected at alpha = 0.05, so whatever
    // task shows up afterwards, the offered action is taken.
    demo.naive_rule.tag = "naive-p";
    demo.naive_rule.table.assign(3, {});
    for (std::size_t b = 0; b < 3; ++b)
        for (const auto& pval : demo.problem.null.outcomes)
            demo.naive_rule.table[b].push_back(pval <= planned_level ? 1 : 0);
    demo.naive_risk = exact_type_one_risk(demo.problem, demo.naive_rule, demo.selector);

    // Maximally compatible rule under S^{NP(0.05)}: values in {0, 20}.
    std::vector<Rat> s_np;
    for (const auto& pval : demo.problem.null.outcomes)
        s_np.push_back(pval <= planned_level ? Rat(20) : Rat(0));
    demo.e_rule = max_compatible_rule(demo.problem, s_np, budget);
    demo.e_risk = exact_type_one_risk(demo.problem, demo.e_rule, demo.selector);
    return demo;
}

DyadicDemo dyadic_problem(int k, const RiskBudget& budget) {
    if (k < 1) throw parameter_error("dyadic_problem: k must be >= 1");
    DyadicDemo demo;
    demo.k = k;
    const Rat& ell = budget.ell;

    // Outcomes pval = 2^-k, ..., 1/2 each with mass equal to its p-value,
    // and the leftover 2^-k on pval = 1.
    NullModel null;
    null.kind = NullModel::Kind::finite_discrete;
    FinitePmf pm;
    pm.id = "dyadic";
    for (int c = k; c >= 1; --c) {
        null.outcomes.emplace_back(Rat(1, BigInt(1) << c));
        pm.p.emplace_back(Rat(1, BigInt(1) << c));
    }
    null.outcomes.emplace_back(1);
    pm.p.emplace_back(Rat(1, BigInt(1) << k));
    null.pmfs.push_back(std::move(pm));
    demo.problem.null = std::move(null);

    // Actions 0, 1, 2, 4, ..., 2^k (times ell), Type-I loss twice the action.
    std::vector<Rat> actions{0};
    std::vector<Rat> loss_values{0};
    for (int j = 0; j <= k; ++j) {
        Rat a = Rat(BigInt(1) << j) * ell;
        actions.push_back(a);
        loss_values.push_back(2 * a);
    }
    demo.problem.losses.push_back(step_loss("dyadic", std::move(actions), std::move(loss_values)));
    demo.problem.validate();
    for (const auto& y : demo.problem.null.outcomes)
        demo.pval_by_outcome.push_back(to_double(y));
    demo.selector = constant_selector(demo.problem, "dyadic");

    const auto& loss = demo.problem.losses[0];
    demo.naive_rule.tag = "naive-p";
    demo.halved_rule.tag = "halved-p";
    demo.naive_rule.table.resize(1);
    demo.halved_rule.table.resize(1);
    std::vector<Rat> calibrated;
    for (std::size_t y = 0; y < demo.problem.null.outcomes.size(); ++y) {
        const Rat& pval = demo.problem.null.outcomes[y];
        // Face-value escalation: largest action with pval * a <= ell; a p-value
        // of 1 rejects nothing.
        int face = pval < 1 ? largest_action_within(loss, Ext(2 * ell / pval)) : 0;
        demo.naive_rule.table[0].push_back(face);
        // The fix steps the escalation one level down; this is exactly the
        // largest action with pval * loss0(a) <= ell.
        demo.halved_rule.table[0].push_back(largest_action_within(loss, Ext(ell / pval)));
        calibrated.push_back(rat_from_double(calibrate_pvalue(to_double(pval))));
    }
    demo.naive_risk = exact_type_one_risk(demo.problem, demo.naive_rule, demo.selector);
    demo.halved_risk = exact_type_one_risk(demo.problem, demo.halved_rule, demo.selector);

    demo.max_compatible = max_compatible_rule(demo.problem, calibrated, budget);
    demo.max_compat_risk = exact_type_one_risk(demo.problem, demo.max_compatible, demo.selector);
    return demo;
}

}  // namespace egnp
