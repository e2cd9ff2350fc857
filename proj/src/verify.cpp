#include "egnp/verify.hpp"

#include "egnp/rules.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace egnp {

using nlohmann::json;

namespace {

const Ext& loss_at(const FiniteInstance& inst, std::size_t b, const DecisionRule& rule,
                   std::size_t y) {
    return inst.problem.losses[b].loss0[static_cast<std::size_t>(rule.table[b][y])];
}

// E_P[max_b L_b(0, delta_b)] for one pmf; infinite if an infinite loss is charged.
ExactRisk umax_risk(const FiniteInstance& inst, const DecisionRule& rule, const FinitePmf& pm) {
    ExactRisk risk;
    for (std::size_t y = 0; y < pm.p.size(); ++y) {
        if (pm.p[y] == 0) continue;
        Ext best{Rat(0)};
        for (std::size_t b = 0; b < inst.problem.losses.size(); ++b) {
            const Ext& l = loss_at(inst, b, rule, y);
            if (best < l) best = l;
        }
        if (best.inf) {
            risk.infinite = true;
            return risk;
        }
        risk.value += pm.p[y] * best.v;
    }
    return risk;
}

std::uint64_t rule_space_size(const FiniteInstance& inst, std::uint64_t guard) {
    std::uint64_t total = 1;
    std::size_t m = inst.outcomes();
    for (const auto& loss : inst.problem.losses) {
        for (std::size_t y = 0; y < m; ++y) {
            total *= loss.loss0.size();
            if (total > guard) return guard + 1;
        }
    }
    return total;
}

}  // namespace

bool FiniteInstance::charged(std::size_t y) const {
    for (const auto& pm : problem.null.pmfs)
        if (pm.p[y] != 0) return true;
    return false;
}

bool is_type_one_risk_safe(const FiniteInstance& inst, const DecisionRule& rule) {
    for (const auto& pm : inst.problem.null.pmfs) {
        ExactRisk r = umax_risk(inst, rule, pm);
        if (r.infinite || r.value > 1) return false;
    }
    return true;
}

bool is_evariable(const FiniteInstance& inst, const std::vector<Rat>& s) {
    for (const auto& v : s)
        if (v < 0) return false;
    for (const auto& pm : inst.problem.null.pmfs) {
        Rat e{0};
        for (std::size_t y = 0; y < s.size(); ++y) e += pm.p[y] * s[y];
        if (e > 1) return false;
    }
    return true;
}

bool is_sharp(const FiniteInstance& inst, const std::vector<Rat>& s) {
    if (!is_evariable(inst, s)) return false;
    for (const auto& pm : inst.problem.null.pmfs) {
        Rat e{0};
        for (std::size_t y = 0; y < s.size(); ++y) e += pm.p[y] * s[y];
        if (e == 1) return true;
    }
    return false;
}

bool is_sharp(const NormalECollection&) {
    // E_theta[S_theta] = 1 for every theta: the two one-sided likelihood
    // ratios each integrate to one, and the mixture keeps that.
    return true;
}

bool is_rich(const FiniteInstance& inst, const std::vector<Rat>& s) {
    std::set<Rat> attained(s.begin(), s.end());
    std::set<Rat> loss_values;
    for (const auto& loss : inst.problem.losses)
        for (const auto& l : loss.loss0)
            if (!l.inf) loss_values.insert(l.v);
    return std::includes(loss_values.begin(), loss_values.end(), attained.begin(), attained.end());
}

bool is_strictly_better(const FiniteInstance& inst, const DecisionRule& a, const DecisionRule& b) {
    bool somewhere_larger = false;
    std::size_t m = inst.outcomes();
    for (std::size_t bi = 0; bi < inst.problem.losses.size(); ++bi) {
        for (std::size_t y = 0; y < m; ++y) {
            if (!inst.charged(y)) continue;
            const Ext& la = loss_at(inst, bi, a, y);
            const Ext& lb = loss_at(inst, bi, b, y);
            if (la < lb) return false;
            if (lb < la) somewhere_larger = true;
        }
    }
    return somewhere_larger;
}

AdmissibilityVerdict brute_force_admissible(const FiniteInstance& inst, const DecisionRule& rule,
                                            std::uint64_t guard) {
    if (rule_space_size(inst, guard) > guard)
        throw enumeration_bound_error("rule space exceeds the enumeration guard");
    if (!is_type_one_risk_safe(inst, rule)) {
        // Inadmissible by definition; the rule itself cannot be beaten fairly,
        // still report it as unsafe via an empty witness.
        AdmissibilityVerdict v;
        v.admissible = false;
        return v;
    }

    // Flat slot view of the rule space with per-loss value ranks, so the
    // strictly-better filter runs on integers and is updated incrementally as
    // the odometer steps (only changed slots are re-scored).
    std::size_t m = inst.outcomes();
    std::size_t nslots = inst.problem.losses.size() * m;
    std::vector<std::size_t> size_of(nslots);
    std::vector<bool> charged_slot(nslots);
    std::vector<std::vector<int>> rank(nslots);  // action -> rank of its loss value
    std::vector<int> rule_rank(nslots);
    std::vector<const std::vector<Ext>*> values(nslots);
    std::vector<bool> charged_y(m);
    for (std::size_t y = 0; y < m; ++y) charged_y[y] = inst.charged(y);
    {
        std::size_t s = 0;
        for (std::size_t b = 0; b < inst.problem.losses.size(); ++b) {
            const auto& loss = inst.problem.losses[b];
            std::vector<int> r(loss.loss0.size());
            for (std::size_t a = 1; a < loss.loss0.size(); ++a)
                r[a] = r[a - 1] + (loss.loss0[a - 1] < loss.loss0[a] ? 1 : 0);
            for (std::size_t y = 0; y < m; ++y, ++s) {
                size_of[s] = loss.loss0.size();
                charged_slot[s] = charged_y[y];
                rank[s] = r;
                rule_rank[s] = r[static_cast<std::size_t>(rule.table[b][y])];
                values[s] = &loss.loss0;
            }
        }
    }

    std::vector<int> slots(nslots, 0);
    std::size_t below = 0, above = 0;  // charged slots where cand loses/beats the rule
    auto unscore = [&](std::size_t s) {
        if (!charged_slot[s]) return;
        int d = rank[s][static_cast<std::size_t>(slots[s])] - rule_rank[s];
        if (d < 0) --below;
        if (d > 0) --above;
    };
    auto score = [&](std::size_t s) {
        if (!charged_slot[s]) return;
        int d = rank[s][static_cast<std::size_t>(slots[s])] - rule_rank[s];
        if (d < 0) ++below;
        if (d > 0) ++above;
    };
    for (std::size_t s = 0; s < nslots; ++s) score(s);

    auto safe_candidate = [&]() {
        for (const auto& pm : inst.problem.null.pmfs) {
            ExactRisk risk;
            for (std::size_t y = 0; y < m && !risk.infinite; ++y) {
                if (pm.p[y] == 0) continue;
                const Ext* best = nullptr;
                for (std::size_t s = y; s < nslots; s += m) {
                    const Ext& l = (*values[s])[static_cast<std::size_t>(slots[s])];
                    if (!best || *best < l) best = &l;
                }
                if (best->inf)
                    risk.infinite = true;
                else
                    risk.value += pm.p[y] * best->v;
            }
            if (risk.infinite || risk.value > 1) return false;
        }
        return true;
    };

    AdmissibilityVerdict verdict;
    while (true) {
        if (below == 0 && above > 0 && safe_candidate()) {
            DecisionRule cand;
            cand.tag = "witness";
            cand.table.resize(inst.problem.losses.size());
            for (std::size_t b = 0; b < inst.problem.losses.size(); ++b)
                cand.table[b].assign(slots.begin() + static_cast<long>(b * m),
                                     slots.begin() + static_cast<long>((b + 1) * m));
            verdict.admissible = false;
            ExactRisk worst;
            for (const auto& pm : inst.problem.null.pmfs) {
                ExactRisk r = umax_risk(inst, cand, pm);
                if (r.infinite || r.value > worst.value) worst = r;
            }
            verdict.witness_risk = worst;
            verdict.witness = std::move(cand);
            return verdict;
        }
        std::size_t s = nslots;
        bool advanced = false;
        while (s-- > 0) {
            unscore(s);
            if (++slots[s] < static_cast<int>(size_of[s])) {
                score(s);
                advanced = true;
                break;
            }
            slots[s] = 0;
            score(s);
            if (s == 0) break;
        }
        if (!advanced) break;
    }
    verdict.admissible = true;
    return verdict;
}

bool is_maximally_compatible(const FiniteInstance& inst, const DecisionRule& rule,
                             const std::vector<Rat>& s, std::uint64_t /*guard*/) {
    std::size_t m = inst.outcomes();
    for (std::size_t b = 0; b < inst.problem.losses.size(); ++b) {
        const auto& loss = inst.problem.losses[b];
        for (std::size_t y = 0; y < m; ++y) {
            const Ext& l = loss_at(inst, b, rule, y);
            if (Ext(s[y]) < l) return false;  // not even compatible
            if (!inst.charged(y)) continue;
            // Compatible rules are pointwise dominated by the largest feasible
            // loss; maximality forces equality on every charged slot.
            int top = largest_action_within(loss, Ext(s[y]));
            if (top >= 0 && l < loss.loss0[static_cast<std::size_t>(top)]) return false;
        }
    }
    return true;
}

LemmaVerdict check_equalizer_lemma(const FiniteInstance& inst, const std::vector<Rat>& s,
                                   const std::vector<int>& b_map, const DecisionRule& rule) {
    std::size_t m = inst.outcomes();
    if (b_map.size() != m) throw structural_error("b_map does not cover the outcome space");
    for (std::size_t y = 0; y < m; ++y) {
        auto b = static_cast<std::size_t>(b_map[y]);
        if (b >= inst.problem.losses.size()) throw structural_error("b_map names an unknown loss");
        const Ext& l = loss_at(inst, b, rule, y);
        if (l.inf || l.v != s[y]) return LemmaVerdict::not_applicable;
    }
    if (!is_sharp(inst, s)) return LemmaVerdict::not_applicable;
    if (!is_type_one_risk_safe(inst, rule)) return LemmaVerdict::not_applicable;

    for (std::size_t b = 0; b < inst.problem.losses.size(); ++b)
        for (std::size_t y = 0; y < m; ++y)
            if (Ext(s[y]) < loss_at(inst, b, rule, y)) return LemmaVerdict::fails;
    return LemmaVerdict::holds;
}

std::optional<UnsafeWitness> find_unsafe_witness(const FiniteInstance& inst,
                                                 const DecisionRule& rule, std::uint64_t guard) {
    std::size_t m = inst.outcomes();
    std::size_t k = inst.problem.losses.size();
    std::uint64_t total = 1;
    for (std::size_t y = 0; y < m; ++y) {
        total *= k;
        if (total > guard) throw enumeration_bound_error("selector space exceeds the search guard");
    }
    std::vector<int> sel(m, 0);
    while (true) {
        for (const auto& pm : inst.problem.null.pmfs) {
            ExactRisk risk;
            for (std::size_t y = 0; y < m && !risk.infinite; ++y) {
                if (pm.p[y] == 0) continue;
                const Ext& l = loss_at(inst, static_cast<std::size_t>(sel[y]), rule, y);
                if (l.inf)
                    risk.infinite = true;
                else
                    risk.value += pm.p[y] * l.v;
            }
            if (risk.infinite || risk.value > 1) return UnsafeWitness{sel, risk, pm.id};
        }
        std::size_t i = m;
        while (i-- > 0) {
            if (++sel[i] < static_cast<int>(k)) break;
            sel[i] = 0;
            if (i == 0) return std::nullopt;
        }
    }
}

// --- randomized checks -------------------------------------------------------

namespace {

Rat random_small_rat(CounterRng& rng) {
    static const int dens[] = {1, 2, 4};
    long num = static_cast<long>(rng.next_u64() % 9);
    int den = dens[rng.next_u64() % 3];
    return Rat(num, den);
}

FinitePmf random_pmf(CounterRng& rng, std::size_t m, bool full_support, std::string id) {
    FinitePmf pm;
    pm.id = std::move(id);
    auto d = static_cast<long>(m + rng.next_u64() % (41 - m));  // denominator <= 40
    std::vector<long> w(m, 0);
    std::size_t victim = m;  // outcome forced to zero mass, if any
    if (full_support) {
        for (auto& x : w) x = 1;
    } else if (rng.next_u64() % 2 == 0) {
        victim = rng.next_u64() % m;
    }
    long used = 0;
    for (auto x : w) used += x;
    for (long r = used; r < d; ++r) {
        std::size_t at = rng.next_u64() % m;
        if (at == victim) at = (at + 1) % m;
        ++w[at];
    }
    for (auto x : w) pm.p.emplace_back(Rat(x, d));
    return pm;
}

}  // namespace

FiniteInstance random_instance(CounterRng& rng, bool force_full_support) {
    FiniteInstance inst;
    while (true) {
        inst = FiniteInstance{};
        std::size_t m = 2 + rng.next_u64() % 3;
        auto& null = inst.problem.null;
        null.kind = NullModel::Kind::finite_discrete;
        for (std::size_t y = 0; y < m; ++y) null.outcomes.emplace_back(static_cast<long>(y));
        std::size_t npmf = 1 + rng.next_u64() % 2;
        for (std::size_t j = 0; j < npmf; ++j)
            null.pmfs.push_back(random_pmf(rng, m, force_full_support, "P" + std::to_string(j)));

        // Candidate e-variable, rescaled so max_P E[S] = 1 exactly (sharp).
        std::vector<Rat> s(m);
        for (auto& v : s) v = random_small_rat(rng);
        Rat mx{0};
        for (const auto& pm : null.pmfs) {
            Rat e{0};
            for (std::size_t y = 0; y < m; ++y) e += pm.p[y] * s[y];
            if (e > mx) mx = e;
        }
        if (mx == 0) continue;
        for (auto& v : s) v /= mx;
        inst.evariable = s;
        inst.has_evariable = true;

        // Loss values: distinct picks from the e-variable's values plus small
        // constants, so richness is attainable but not automatic.
        std::vector<Rat> pool(s.begin(), s.end());
        pool.emplace_back(1);
        pool.emplace_back(2);
        pool.emplace_back(3);
        pool.emplace_back(Rat(1, 2));
        pool.emplace_back(Rat(3, 2));
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        pool.erase(std::remove(pool.begin(), pool.end(), Rat(0)), pool.end());

        std::size_t nloss = 1 + rng.next_u64() % 3;
        for (std::size_t b = 0; b < nloss; ++b) {
            std::size_t nact = std::min<std::size_t>(2 + rng.next_u64() % 3, pool.size() + 1);
            std::vector<Rat> picks(pool);
            for (std::size_t i = picks.size(); i > 1; --i)
                std::swap(picks[i - 1], picks[rng.next_u64() % i]);
            picks.resize(nact - 1);
            std::sort(picks.begin(), picks.end());
            TypeOneLoss loss;
            loss.id = "L" + std::to_string(b);
            loss.actions.labels.emplace_back(0);
            loss.loss0.emplace_back(Rat(0));
            for (auto& v : picks) {
                loss.actions.labels.push_back(v);
                loss.loss0.emplace_back(v);
            }
            inst.problem.losses.push_back(std::move(loss));
        }
        inst.problem.validate();
        if (rule_space_size(inst, 20000) <= 20000) return inst;
    }
}

namespace {

DecisionRule random_rule(CounterRng& rng, const FiniteInstance& inst) {
    DecisionRule r;
    r.tag = "random";
    std::size_t m = inst.outcomes();
    for (const auto& loss : inst.problem.losses) {
        std::vector<int> row(m);
        for (auto& a : row) a = static_cast<int>(rng.next_u64() % loss.loss0.size());
        r.table.push_back(std::move(row));
    }
    return r;
}

std::vector<Rat> max_loss_table(const FiniteInstance& inst, const DecisionRule& rule) {
    std::size_t m = inst.outcomes();
    std::vector<Rat> s(m, Rat(0));
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t b = 0; b < inst.problem.losses.size(); ++b) {
            const Ext& l = loss_at(inst, b, rule, y);
            if (!l.inf && s[y] < l.v) s[y] = l.v;
        }
    return s;
}

}  // namespace

RandomCheckSummary run_random_checks(std::uint64_t cases, std::uint64_t seed) {
    RandomCheckSummary sum;
    sum.cases = cases;
    auto fail = [&](std::uint64_t i, const std::string& what) {
        ++sum.counterexamples;
        if (sum.failures.size() < 10)
            sum.failures.push_back("case " + std::to_string(i) + ": " + what);
    };

    for (std::uint64_t i = 0; i < cases; ++i) {
        CounterRng rng = CounterRng::keyed(seed, 40, i);
        bool full = (i % 3) != 2;  // a third of the cases allow zero-mass outcomes
        FiniteInstance inst = random_instance(rng, full);
        const auto& s = inst.evariable;

        // Safety <-> the pointwise max-loss table is an e-variable the rule is
        // compatible with (compatibility holds by construction).
        DecisionRule delta_r = random_rule(rng, inst);
        bool safe = is_type_one_risk_safe(inst, delta_r);
        bool equiv = is_evariable(inst, max_loss_table(inst, delta_r));
        ++sum.prop1_checked;
        if (safe != equiv) fail(i, "safety/e-variable equivalence broken");

        // Admissible random rules must be maximally compatible with their own
        // max-loss table.
        AdmissibilityVerdict vr = brute_force_admissible(inst, delta_r);
        if (vr.admissible) {
            ++sum.thm_part1_admissible;
            if (!is_maximally_compatible(inst, delta_r, max_loss_table(inst, delta_r)))
                fail(i, "admissible rule not maximally compatible");
        }

        if (!full) continue;

        // Full support + sharp + rich: the maximally compatible rule must be
        // admissible, and it is the unique maximal rule.
        FiniteInstance rich_inst = inst;
        if (!is_rich(rich_inst, s)) {
            rich_inst.problem = enlarge_with_id(rich_inst.problem, s);
            if (!is_rich(rich_inst, s)) {
                fail(i, "enlarge_with_id did not produce a rich problem");
                continue;
            }
        }
        if (!is_sharp(rich_inst, s)) {
            fail(i, "generator lost sharpness");
            continue;
        }
        if (rule_space_size(rich_inst, 200000) > 200000) continue;
        DecisionRule star = max_compatible_rule(rich_inst.problem, s);
        ++sum.thm_part2_checked;
        if (!is_maximally_compatible(rich_inst, star, s))
            fail(i, "constructed rule not maximally compatible");
        AdmissibilityVerdict v2 = brute_force_admissible(rich_inst, star);
        if (!v2.admissible) fail(i, "maximally compatible rule judged inadmissible");

        // Exact-everywhere uniqueness of the maximal rule under full support.
        bool unique = true;
        for (std::size_t b = 0; b < rich_inst.problem.losses.size() && unique; ++b) {
            const auto& loss = rich_inst.problem.losses[b];
            for (std::size_t y = 0; y < rich_inst.outcomes() && unique; ++y) {
                int top = largest_action_within(loss, Ext(s[y]));
                for (int a = 0; a < top; ++a)
                    if (loss.loss0[static_cast<std::size_t>(a)] ==
                        loss.loss0[static_cast<std::size_t>(top)])
                        unique = false;
            }
        }
        ++sum.uniqueness_checked;
        if (!unique) fail(i, "maximal rule not unique on a full-support instance");

        // Equalizing rules that happen to be safe must be fully compatible.
        std::vector<int> b_map(rich_inst.outcomes(), -1);
        DecisionRule eq_rule;
        eq_rule.tag = "equalizing";
        eq_rule.table.assign(rich_inst.problem.losses.size(), {});
        for (auto& row : eq_rule.table) row.assign(rich_inst.outcomes(), 0);
        bool constructed = true;
        for (std::size_t y = 0; y < rich_inst.outcomes() && constructed; ++y) {
            std::vector<std::pair<int, int>> hits;
            for (std::size_t b = 0; b < rich_inst.problem.losses.size(); ++b) {
                const auto& loss = rich_inst.problem.losses[b];
                for (std::size_t a = 0; a < loss.loss0.size(); ++a)
                    if (!loss.loss0[a].inf && loss.loss0[a].v == s[y])
                        hits.emplace_back(static_cast<int>(b), static_cast<int>(a));
            }
            if (hits.empty()) {
                constructed = false;
                break;
            }
            auto [b, a] = hits[rng.next_u64() % hits.size()];
            b_map[y] = b;
            eq_rule.table[static_cast<std::size_t>(b)][y] = a;
        }
        if (constructed) {
            for (std::size_t b = 0; b < rich_inst.problem.losses.size(); ++b) {
                const auto& loss = rich_inst.problem.losses[b];
                for (std::size_t y = 0; y < rich_inst.outcomes(); ++y) {
                    if (static_cast<int>(b) == b_map[y]) continue;
                    if (rng.next_u64() % 5 == 0) {
                        eq_rule.table[b][y] = static_cast<int>(rng.next_u64() % loss.loss0.size());
                    } else {
                        int top = largest_action_within(loss, Ext(s[y]));
                        eq_rule.table[b][y] = std::max(top, 0);
                    }
                }
            }
            LemmaVerdict lv = check_equalizer_lemma(rich_inst, s, b_map, eq_rule);
            if (lv != LemmaVerdict::not_applicable) {
                ++sum.lemma_applicable;
                if (lv == LemmaVerdict::fails) fail(i, "equalizing safe rule not fully compatible");
            }
        }
    }
    return sum;
}

// --- worked example -----------------------------------------------------------

ExampleAddReport verify_example_add() {
    ExampleAddReport rep;

    FiniteInstance inst;
    auto& null = inst.problem.null;
    null.kind = NullModel::Kind::finite_discrete;
    null.outcomes = {Rat(0), Rat(10), Rat(20)};
    null.pmfs.push_back({"P0", {Rat(37, 40), Rat(1, 20), Rat(1, 40)}});
    TypeOneLoss b1;
    b1.id = "b1";
    b1.actions.labels = {Rat(0), Rat(9), Rat(19), Rat(21)};
    for (const auto& a : b1.actions.labels) b1.loss0.emplace_back(a);
    inst.problem.losses.push_back(b1);
    inst.problem.validate();
    inst.evariable = {Rat(0), Rat(10), Rat(20)};
    inst.has_evariable = true;
    rep.original = inst;

    rep.sharp = is_sharp(inst, inst.evariable);
    rep.rich_before = is_rich(inst, inst.evariable);

    rep.delta.tag = "max-compatible";
    rep.delta.table = {{0, 1, 2}};  // actions 0, 9, 19
    rep.delta_prime.tag = "delta-prime";
    rep.delta_prime.table = {{0, 1, 3}};  // actions 0, 9, 21

    AdmissibilityVerdict v1 = brute_force_admissible(inst, rep.delta);
    rep.original_inadmissible = !v1.admissible;
    if (v1.witness) {
        rep.original_witness_risk = v1.witness_risk;
        rep.witness_matches_delta_prime = v1.witness->table == rep.delta_prime.table;
    }

    FiniteInstance enlarged = inst;
    enlarged.problem = enlarge_with_id(inst.problem, inst.evariable);
    rep.enlarged = enlarged;
    rep.rich_after = is_rich(enlarged, enlarged.evariable);

    DecisionRule delta_ext = rep.delta;
    delta_ext.table.push_back({0, 1, 2});  // identity on the added loss
    AdmissibilityVerdict v2 = brute_force_admissible(enlarged, delta_ext);
    rep.extended_delta_admissible = v2.admissible;

    DecisionRule prime_ext = rep.delta_prime;
    prime_ext.table.push_back({0, 1, 2});
    rep.extended_prime_unsafe = find_unsafe_witness(enlarged, prime_ext);

    std::vector<int> id_map(3, 1);  // constant selector to the added identity loss
    rep.equalizer_holds =
        check_equalizer_lemma(enlarged, enlarged.evariable, id_map, delta_ext) == LemmaVerdict::holds;
    return rep;
}

bool ExampleAddReport::ok() const {
    return sharp && !rich_before && rich_after && original_inadmissible &&
           witness_matches_delta_prime && original_witness_risk.value == Rat(39, 40) &&
           extended_delta_admissible && extended_prime_unsafe.has_value() &&
           !extended_prime_unsafe->risk.infinite && extended_prime_unsafe->risk.value == Rat(41, 40) &&
           equalizer_holds;
}

std::string verdict_to_json(const AdmissibilityVerdict& verdict, const FiniteInstance& inst) {
    json j;
    j["admissible"] = verdict.admissible;
    if (verdict.witness) {
        json w = json::object();
        for (std::size_t b = 0; b < inst.problem.losses.size(); ++b) {
            const auto& loss = inst.problem.losses[b];
            json row = json::array();
            for (int a : verdict.witness->table[b])
                row.push_back(rat_str(loss.actions.labels[static_cast<std::size_t>(a)]));
            w[loss.id] = row;
        }
        j["witness"] = w;
        j["risk"] = verdict.witness_risk.str();
    } else {
        j["witness"] = nullptr;
        j["risk"] = nullptr;
    }
    return j.dump();
}

}  // namespace egnp
