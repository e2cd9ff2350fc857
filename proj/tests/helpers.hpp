#pragma once

#include "egnp/verify.hpp"

namespace egnp_test {

// Three-outcome instance with one loss over actions {0, 9, 19, 21} (identity
// Type-I loss) and the identity e-variable S(y) = y; P0 = (37/40, 1/20, 1/40).
inline egnp::FiniteInstance three_outcome_instance() {
    using egnp::Rat;
    egnp::FiniteInstance inst;
    auto& null = inst.problem.null;
    null.kind = egnp::NullModel::Kind::finite_discrete;
    null.outcomes = {Rat(0), Rat(10), Rat(20)};
    null.pmfs.push_back({"P0", {Rat(37, 40), Rat(1, 20), Rat(1, 40)}});
    egnp::TypeOneLoss b1;
    b1.id = "b1";
    b1.actions.labels = {Rat(0), Rat(9), Rat(19), Rat(21)};
    for (const auto& a : b1.actions.labels) b1.loss0.emplace_back(a);
    inst.problem.losses.push_back(b1);
    inst.problem.validate();
    inst.evariable = {Rat(0), Rat(10), Rat(20)};
    inst.has_evariable = true;
    return inst;
}

inline egnp::TypeOneLoss step_loss(std::string id, std::vector<long> actions,
                                   std::vector<long> losses) {
    egnp::TypeOneLoss loss;
    loss.id = std::move(id);
    for (long a : actions) loss.actions.labels.emplace_back(a);
    for (long l : losses) loss.loss0.emplace_back(egnp::Rat(l));
    loss.validate();
    return loss;
}

}  // namespace egnp_test
