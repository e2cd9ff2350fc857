#include "egnp/rules.hpp"

#include <cmath>
#include <limits>

namespace egnp {

namespace {

DecisionOutcome finite_pick(const TypeOneLoss& loss, const Ext& bound, double statistic,
                            const char* tag) {
    int idx = largest_action_within(loss, bound);
    if (idx < 0)
        throw no_feasible_action("loss '" + loss.id + "': even the least action exceeds the bound");
    DecisionOutcome out;
    out.action_index = idx;
    out.action_exact = loss.actions.labels[static_cast<std::size_t>(idx)];
    out.loss0_exact = loss.loss0[static_cast<std::size_t>(idx)].v;
    out.action = to_double(out.action_exact);
    out.loss0_at_action = to_double(out.loss0_exact);
    out.statistic_value = statistic;
    out.rule_tag = tag;
    return out;
}

DecisionOutcome interval_pick(const TypeOneLoss& loss, double bound, double statistic,
                              const char* tag) {
    double best = -1;
    bool found = false;
    for (const auto& iv : loss.actions.intervals) {
        double lo_loss = loss.loss_fn(iv.lo);
        if (!(lo_loss <= bound)) continue;
        double a;
        double hi_loss = loss.loss_fn(iv.hi);
        if (std::isinf(bound) && std::isinf(iv.hi) && std::isinf(hi_loss))
            throw no_feasible_action("loss '" + loss.id +
                                     "': unbounded statistic on an action space open at infinity");
        if (hi_loss <= bound) {
            a = iv.hi;
        } else {
            a = loss.loss_inv(bound);
            if (a > iv.hi) a = iv.hi;
            if (a < iv.lo) a = iv.lo;
            // The inverse may land a float above the bound; step down until the
            // chosen action is genuinely feasible so compatibility is exact.
            while (a > iv.lo && loss.loss_fn(a) > bound) a = std::nextafter(a, iv.lo);
        }
        if (loss.loss_fn(a) <= bound && a >= best) {
            best = a;
            found = true;
        }
    }
    if (!found)
        throw no_feasible_action("loss '" + loss.id + "': even the least action exceeds the bound");
    DecisionOutcome out;
    out.action = best;
    out.loss0_at_action = loss.loss_fn(best);
    out.statistic_value = statistic;
    out.rule_tag = tag;
    return out;
}

DecisionOutcome decide_with_bound(const TypeOneLoss& loss, double s_value, const RiskBudget& budget,
                                  double statistic, const char* tag) {
    if (std::isnan(s_value) || s_value < 0) throw parameter_error("statistic must be nonnegative");
    if (loss.finite()) {
        Ext bound = std::isinf(s_value) ? Ext::infinity() : Ext(rat_from_double(s_value) * budget.ell);
        return finite_pick(loss, bound, statistic, tag);
    }
    return interval_pick(loss, s_value * to_double(budget.ell), statistic, tag);
}

}  // namespace

int largest_action_within(const TypeOneLoss& loss, const Ext& bound) {
    for (int i = static_cast<int>(loss.loss0.size()) - 1; i >= 0; --i)
        if (loss.loss0[static_cast<std::size_t>(i)] <= bound) return i;
    return -1;
}

DecisionOutcome max_compatible_decide(double s_value, const TypeOneLoss& loss,
                                      const RiskBudget& budget) {
    return decide_with_bound(loss, s_value, budget, s_value, "max-compatible");
}

DecisionOutcome naive_p_decide(double pval, const TypeOneLoss& loss, const RiskBudget& budget) {
    if (std::isnan(pval) || pval < 0 || pval > 1) throw parameter_error("pval outside [0,1]");
    if (pval == 0.0) {
        // Same convention as S = inf: take the maximal action.
        DecisionOutcome out = decide_with_bound(loss, std::numeric_limits<double>::infinity(),
                                                budget, pval, "naive-p");
        return out;
    }
    // loss0 <= ell / pval, compared exactly on finite spaces.
    if (loss.finite()) {
        Ext bound(budget.ell / rat_from_double(pval));
        DecisionOutcome out = finite_pick(loss, bound, pval, "naive-p");
        return out;
    }
    return interval_pick(loss, to_double(budget.ell) / pval, pval, "naive-p");
}

DecisionOutcome halved_p_decide(double pval, const TypeOneLoss& loss, const RiskBudget& budget) {
    if (std::isnan(pval) || pval < 0 || pval > 1) throw parameter_error("pval outside [0,1]");
    DecisionOutcome out;
    if (pval == 0.0) {
        out = decide_with_bound(loss, std::numeric_limits<double>::infinity(), budget, pval,
                                "halved-p");
        return out;
    }
    if (loss.finite()) {
        Ext bound(budget.ell * 2 / rat_from_double(pval));
        out = finite_pick(loss, bound, pval, "halved-p");
        return out;
    }
    return interval_pick(loss, 2.0 * to_double(budget.ell) / pval, pval, "halved-p");
}

DecisionRule max_compatible_rule(const GnpProblem& problem, const std::vector<Rat>& s_values,
                                 const RiskBudget& budget) {
    DecisionRule rule;
    rule.tag = "max-compatible";
    rule.table.resize(problem.losses.size());
    for (std::size_t b = 0; b < problem.losses.size(); ++b) {
        const auto& loss = problem.losses[b];
        rule.table[b].resize(s_values.size());
        for (std::size_t y = 0; y < s_values.size(); ++y) {
            int idx = largest_action_within(loss, Ext(s_values[y] * budget.ell));
            if (idx < 0)
                throw no_feasible_action("loss '" + loss.id + "': no action within S*ell at outcome " +
                                         std::to_string(y));
            rule.table[b][y] = idx;
        }
    }
    return rule;
}

}  // namespace egnp
