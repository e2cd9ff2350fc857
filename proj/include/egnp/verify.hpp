#pragma once

#include "egnp/gnp.hpp"
#include "egnp/montecarlo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace egnp {

struct enumeration_bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-discrete problem plus an optional candidate e-variable table, the
// whole admissibility theory runs on exact rationals against these.
struct FiniteInstance {
    GnpProblem problem;
    std::vector<Rat> evariable;
    bool has_evariable = false;

    std::size_t outcomes() const { return problem.null.outcome_count(); }
    // true iff some pmf puts positive mass on outcome y
    bool charged(std::size_t y) const;
};

// E_P[max_b L_b(0, delta_b(Y))] <= 1 for every null pmf (losses ell-normalized).
bool is_type_one_risk_safe(const FiniteInstance& inst, const DecisionRule& rule);

bool is_evariable(const FiniteInstance& inst, const std::vector<Rat>& s);

// E_P[S] = 1 for some null pmf (and S is an e-variable).
bool is_sharp(const FiniteInstance& inst, const std::vector<Rat>& s);
bool is_sharp(const NormalECollection&);  // closed form: always true

// Every attained value of s equals some Type-I loss value of the problem.
bool is_rich(const FiniteInstance& inst, const std::vector<Rat>& s);

// a is Type-II strictly better than b: losses a.s. no smaller under every
// pmf, and larger with positive probability under some pmf.
bool is_strictly_better(const FiniteInstance& inst, const DecisionRule& a, const DecisionRule& b);

struct AdmissibilityVerdict {
    bool admissible = false;
    std::optional<DecisionRule> witness;  // safe rule strictly better, lex-first
    ExactRisk witness_risk;               // E[max_b L] of the witness
};

// Enumerates every decision rule (lexicographic in (loss, outcome, action)).
AdmissibilityVerdict brute_force_admissible(const FiniteInstance& inst, const DecisionRule& rule,
                                            std::uint64_t guard = 10'000'000);

// Compatible with s and no s-compatible rule strictly better.
bool is_maximally_compatible(const FiniteInstance& inst, const DecisionRule& rule,
                             const std::vector<Rat>& s, std::uint64_t guard = 10'000'000);

enum class LemmaVerdict { not_applicable, holds, fails };

// Premises: L_{B(y)}(0, delta_{B(y)}(y)) = s(y) for all y, s sharp, rule
// Type-I risk safe. Conclusion: the rule is fully compatible with s.
LemmaVerdict check_equalizer_lemma(const FiniteInstance& inst, const std::vector<Rat>& s,
                                   const std::vector<int>& b_map, const DecisionRule& rule);

struct UnsafeWitness {
    std::vector<int> selector;  // loss index per outcome
    ExactRisk risk;
    std::string pmf_id;
};

// Searches all maps B : Y -> losses for one with E_P[L_B(0, delta_B)] > 1.
// Empty result iff the rule is Type-I risk safe.
std::optional<UnsafeWitness> find_unsafe_witness(const FiniteInstance& inst,
                                                 const DecisionRule& rule,
                                                 std::uint64_t guard = 1'000'000);

// --- randomized theory checks ----------------------------------------------

struct RandomCheckSummary {
    std::uint64_t cases = 0;
    std::uint64_t prop1_checked = 0;
    std::uint64_t lemma_applicable = 0;
    std::uint64_t thm_part1_admissible = 0;
    std::uint64_t thm_part2_checked = 0;
    std::uint64_t uniqueness_checked = 0;
    std::uint64_t counterexamples = 0;
    std::vector<std::string> failures;  // first few, for diagnostics

    bool ok() const { return counterexamples == 0; }
};

FiniteInstance random_instance(CounterRng& rng, bool force_full_support);

RandomCheckSummary run_random_checks(std::uint64_t cases, std::uint64_t seed);

// --- worked admissibility example -------------------------------------------

struct ExampleAddReport {
    FiniteInstance original;       // single loss over {0,9,19,21}, S(y)=y
    FiniteInstance enlarged;       // + identity loss over {0,10,20}
    DecisionRule delta;            // maximally compatible rule
    DecisionRule delta_prime;      // its inadmissibility witness (original)
    bool sharp = false;
    bool rich_before = false;
    bool rich_after = false;
    bool original_inadmissible = false;
    ExactRisk original_witness_risk;        // 39/40
    bool witness_matches_delta_prime = false;
    bool extended_delta_admissible = false;
    std::optional<UnsafeWitness> extended_prime_unsafe;  // risk 41/40
    bool equalizer_holds = false;

    bool ok() const;
};

ExampleAddReport verify_example_add();

std::string verdict_to_json(const AdmissibilityVerdict& verdict, const FiniteInstance& inst);

}  // namespace egnp
