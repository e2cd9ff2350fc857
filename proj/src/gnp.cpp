#include "egnp/gnp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace egnp {

using nlohmann::json;

void ActionSpace::validate() const {
    if (finite()) {
        if (labels.empty()) throw structural_error("action space is empty");
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0) throw structural_error("negative action label");
            if (i > 0 && !(labels[i - 1] < labels[i]))
                throw structural_error("finite action list must be strictly increasing");
        }
    } else {
        if (!labels.empty()) throw structural_error("action space cannot be both finite and interval");
        double prev_hi = -1;
        for (const auto& iv : intervals) {
            if (iv.lo < 0 || iv.hi < iv.lo) throw structural_error("bad action interval");
            if (iv.lo <= prev_hi) throw structural_error("action intervals must be disjoint and sorted");
            prev_hi = iv.hi;
        }
    }
}

void TypeOneLoss::validate() const {
    actions.validate();
    if (finite()) {
        if (loss0.size() != actions.labels.size())
            throw structural_error("loss '" + id + "': loss0/actions size mismatch");
        for (std::size_t i = 0; i < loss0.size(); ++i) {
            if (!loss0[i].inf && loss0[i].v < 0) throw structural_error("loss '" + id + "': negative loss");
            if (i > 0 && loss0[i] < loss0[i - 1])
                throw structural_error("loss '" + id + "': loss0 must be nondecreasing");
        }
    } else {
        if (!loss_fn || !loss_inv)
            throw structural_error("loss '" + id + "': interval losses need loss_fn and loss_inv");
    }
}

bool NullModel::full_support() const {
    for (const auto& pm : pmfs)
        for (const auto& p : pm.p)
            if (p == 0) return false;
    return !pmfs.empty();
}

const FinitePmf& NullModel::pmf(const std::string& id) const {
    if (id.empty() && !pmfs.empty()) return pmfs.front();
    for (const auto& pm : pmfs)
        if (pm.id == id) return pm;
    throw structural_error("unknown pmf '" + id + "'");
}

void NullModel::validate() const {
    if (kind == Kind::finite_discrete) {
        if (outcomes.empty()) throw structural_error("no outcomes");
        if (pmfs.empty()) throw structural_error("no pmfs");
        for (const auto& pm : pmfs) {
            if (pm.p.size() != outcomes.size()) throw structural_error("pmf '" + pm.id + "': size mismatch");
            Rat sum{0};
            for (const auto& p : pm.p) {
                if (p < 0) throw structural_error("pmf '" + pm.id + "': negative mass");
                sum += p;
            }
            if (std::fabs(to_double(sum - 1)) > 1e-12)
                throw structural_error("pmf '" + pm.id + "' does not sum to 1");
        }
    } else {
        if (n < 1) throw structural_error("normal-location model needs n >= 1");
        if (theta_hi < theta_lo) throw structural_error("empty parameter range");
    }
}

const TypeOneLoss& GnpProblem::loss(const std::string& id) const {
    int i = loss_index(id);
    if (i < 0) throw structural_error("unknown loss id '" + id + "'");
    return losses[static_cast<std::size_t>(i)];
}

int GnpProblem::loss_index(const std::string& id) const {
    for (std::size_t i = 0; i < losses.size(); ++i)
        if (losses[i].id == id) return static_cast<int>(i);
    return -1;
}

void GnpProblem::validate() const {
    null.validate();
    if (losses.empty()) throw structural_error("problem has no losses");
    std::set<std::string> ids;
    for (const auto& l : losses) {
        l.validate();
        if (!ids.insert(l.id).second) throw structural_error("duplicate loss id '" + l.id + "'");
    }
}

AdversarySelector constant_selector(const GnpProblem& problem, const std::string& loss_id) {
    int idx = problem.loss_index(loss_id);
    if (idx < 0) throw structural_error("unknown loss id '" + loss_id + "'");
    return AdversarySelector{"constant",
                             std::vector<int>(problem.null.outcome_count(), idx)};
}

bool is_compatible(const GnpProblem& problem, const DecisionRule& rule,
                   const std::vector<Rat>& s_values, const RiskBudget& budget) {
    if (rule.table.size() != problem.losses.size())
        throw structural_error("rule table does not match the problem's losses");
    if (s_values.size() != problem.null.outcome_count())
        throw structural_error("e-variable table does not match the outcome space");
    for (std::size_t b = 0; b < problem.losses.size(); ++b) {
        const auto& loss = problem.losses[b];
        if (rule.table[b].size() != s_values.size())
            throw structural_error("rule table does not cover the outcome space");
        for (std::size_t y = 0; y < s_values.size(); ++y) {
            int a = rule.table[b][y];
            if (a < 0 || a >= static_cast<int>(loss.loss0.size()))
                throw structural_error("rule action out of range for loss '" + loss.id + "'");
            if (Ext(s_values[y] * budget.ell) < loss.loss0[static_cast<std::size_t>(a)]) return false;
        }
    }
    return true;
}

ExactRisk exact_type_one_risk(const GnpProblem& problem, const DecisionRule& rule,
                              const AdversarySelector& selector, const std::string& pmf_id) {
    const auto& pm = problem.null.pmf(pmf_id);
    if (selector.loss_by_outcome.size() != pm.p.size())
        throw structural_error("selector does not cover the outcome space");
    ExactRisk risk;
    for (std::size_t y = 0; y < pm.p.size(); ++y) {
        if (pm.p[y] == 0) continue;
        int b = selector.loss_by_outcome[y];
        if (b < 0 || b >= static_cast<int>(problem.losses.size()))
            throw structural_error("selector names an unknown loss");
        const auto& loss = problem.losses[static_cast<std::size_t>(b)];
        int a = rule.table[static_cast<std::size_t>(b)][y];
        const Ext& l = loss.loss0[static_cast<std::size_t>(a)];
        if (l.inf) {
            risk.infinite = true;
            return risk;
        }
        risk.value += pm.p[y] * l.v;
    }
    return risk;
}

GnpProblem enlarge_with_id(const GnpProblem& problem, const std::vector<Rat>& s_values) {
    if (s_values.size() != problem.null.outcome_count())
        throw structural_error("e-variable table does not match the outcome space");
    std::vector<Rat> codomain(s_values);
    std::sort(codomain.begin(), codomain.end());
    codomain.erase(std::unique(codomain.begin(), codomain.end()), codomain.end());

    TypeOneLoss id_loss;
    std::string base = "id(S)";
    std::string fresh = base;
    for (int k = 2; problem.loss_index(fresh) >= 0; ++k)
        fresh = base + "#" + std::to_string(k);
    id_loss.id = fresh;
    id_loss.actions.labels = codomain;
    for (const auto& s : codomain) id_loss.loss0.emplace_back(s);

    GnpProblem out = problem;
    out.losses.push_back(std::move(id_loss));
    return out;
}

GnpProblem scale_losses(const GnpProblem& problem, const Rat& lambda) {
    if (lambda <= 0) throw structural_error("scale factor must be positive");
    GnpProblem out = problem;
    for (auto& loss : out.losses)
        for (auto& l : loss.loss0)
            if (!l.inf) l.v *= lambda;
    return out;
}

// --- JSON ------------------------------------------------------------------

namespace {

Rat scalar_to_rat(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return rat_parse(v.get<std::string>());
        if (v.is_number_integer()) return Rat(v.get<long long>());
        if (v.is_number_unsigned()) return Rat(static_cast<long long>(v.get<unsigned long long>()));
        if (v.is_number_float()) return rat_from_double(v.get<double>());
    } catch (const std::exception& e) {
        throw structural_error(where + ": " + e.what());
    }
    throw structural_error(where + ": expected a number or \"num/den\" string");
}

std::vector<Rat> scalar_array(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw structural_error(where + ": expected an array");
    std::vector<Rat> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(scalar_to_rat(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json rat_to_scalar(const Rat& r) {
    if (denominator(r) == 1 && numerator(r) >= -(1LL << 53) && numerator(r) <= (1LL << 53))
        return json(static_cast<long long>(numerator(r)));
    return json(rat_str(r));
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw structural_error(origin + ": " + e.what());
    }
    if (!j.is_object()) throw structural_error(origin + ": top level must be an object");

    ProblemFile pf;
    pf.problem.null.kind = NullModel::Kind::finite_discrete;
    if (!j.contains("outcomes")) throw structural_error(origin + ": missing field 'outcomes'");
    pf.problem.null.outcomes = scalar_array(j["outcomes"], origin + ": outcomes");

    if (!j.contains("pmfs")) throw structural_error(origin + ": missing field 'pmfs'");
    for (const auto& pj : j["pmfs"]) {
        FinitePmf pm;
        pm.id = pj.value("id", "");
        pm.p = scalar_array(pj.at("p"), origin + ": pmfs['" + pm.id + "'].p");
        pf.problem.null.pmfs.push_back(std::move(pm));
    }

    if (!j.contains("losses")) throw structural_error(origin + ": missing field 'losses'");
    for (const auto& lj : j["losses"]) {
        TypeOneLoss loss;
        loss.id = lj.value("id", "");
        loss.actions.labels = scalar_array(lj.at("actions"), origin + ": losses['" + loss.id + "'].actions");
        const auto& l0 = lj.at("loss0");
        if (!l0.is_array()) throw structural_error(origin + ": losses['" + loss.id + "'].loss0 must be an array");
        for (std::size_t i = 0; i < l0.size(); ++i) {
            if (l0[i].is_string() && l0[i].get<std::string>() == "inf")
                loss.loss0.push_back(Ext::infinity());
            else
                loss.loss0.emplace_back(scalar_to_rat(
                    l0[i], origin + ": losses['" + loss.id + "'].loss0[" + std::to_string(i) + "]"));
        }
        pf.problem.losses.push_back(std::move(loss));
    }

    if (j.contains("evariable")) {
        pf.evariable = scalar_array(j["evariable"].at("values"), origin + ": evariable.values");
        if (pf.evariable->size() != pf.problem.null.outcomes.size())
            throw structural_error(origin + ": evariable.values does not match outcomes");
    }

    try {
        pf.problem.validate();
    } catch (const std::exception& e) {
        throw structural_error(origin + ": " + e.what());
    }
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_json(ss.str(), path);
}

std::string problem_to_json(const GnpProblem& problem, const std::optional<std::vector<Rat>>& evariable) {
    json j;
    j["outcomes"] = json::array();
    for (const auto& y : problem.null.outcomes) j["outcomes"].push_back(rat_to_scalar(y));
    j["pmfs"] = json::array();
    for (const auto& pm : problem.null.pmfs) {
        json pj;
        pj["id"] = pm.id;
        pj["p"] = json::array();
        for (const auto& p : pm.p) pj["p"].push_back(json(rat_str(p)));
        j["pmfs"].push_back(pj);
    }
    j["losses"] = json::array();
    for (const auto& loss : problem.losses) {
        json lj;
        lj["id"] = loss.id;
        lj["actions"] = json::array();
        for (const auto& a : loss.actions.labels) lj["actions"].push_back(rat_to_scalar(a));
        lj["loss0"] = json::array();
        for (const auto& l : loss.loss0) lj["loss0"].push_back(l.inf ? json("inf") : rat_to_scalar(l.v));
        j["losses"].push_back(lj);
    }
    if (evariable) {
        json ej;
        ej["values"] = json::array();
        for (const auto& s : *evariable) ej["values"].push_back(json(rat_str(s)));
        j["evariable"] = ej;
    }
    return j.dump(2);
}

}  // namespace egnp
