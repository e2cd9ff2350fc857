#pragma once

#include "egnp/adversary.hpp"
#include "egnp/evariable.hpp"
#include "egnp/gnp.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace egnp {

// Stateless counter-based generator: draw i of the stream keyed by
// (seed, stream, trial) is
//     mix(base + (i + 1) * 0x9E3779B97F4A7C15)   with
//     base = mix(mix(seed + GAMMA * stream) + 0xD1B54A32D192ED03 * trial)
// where mix is the SplitMix64 finalizer. Draws are a pure function of the key
// and counter, so trial order and thread scheduling cannot change them.
struct CounterRng {
    std::uint64_t base = 0;
    std::uint64_t i = 0;

    static CounterRng keyed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

    std::uint64_t next_u64();
    double next_unit();    // (0,1), 53-bit
    double next_normal();  // via the quantile, fully deterministic
};

struct RiskAuditReport {
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool diverged = false;
    std::string rule;
    std::string adversary;

    std::string to_json() const;
};

struct StoppingRule {
    enum class Kind { fixed_n, first_crossing };
    Kind kind = Kind::fixed_n;
    int fixed_n = 100;
    int n_max = 500;  // first-crossing horizon
};

// Mean/stderr of per-trial losses; deterministic for fixed (seed, trials)
// regardless of the worker count (fixed-size blocks, pairwise reduction in
// block order).
RiskAuditReport estimate_type_one_risk(const std::function<double(CounterRng&)>& trial_loss,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const std::string& rule_tag, const std::string& adversary_tag,
                                       int threads = 1, std::uint64_t stream = 0);

// Finite-problem sampler: draws outcomes from the pmf, applies selector + rule.
RiskAuditReport estimate_type_one_risk(const GnpProblem& problem, const DecisionRule& rule,
                                       const AdversarySelector& selector, const std::string& pmf_id,
                                       std::uint64_t trials, std::uint64_t seed, int threads = 1);

enum class InductiveMethod { cd, e };

struct InductiveTrace {
    std::vector<double> b;
    std::vector<double> running_mean;
    std::vector<std::uint8_t> miss;
    double final_mean = 0;
};

// Per study j: Y_j ~ N(0,1) under theta* = 0, B_j from the cd-breaking
// adversary. Method cd issues the matching credible interval (never covers 0
// once Y >= eps); method e issues [Y_j +/- A(B_j)] from e_ci_halfwidth_for_b
// with n = n* = 1, alpha* = 0.05. Entries are B_j * 1{0 outside interval}.
InductiveTrace simulate_inductive_behavior(std::uint64_t m, double epsilon, InductiveMethod method,
                                           std::uint64_t seed);

// Final running mean only (no trace storage).
double inductive_final_mean(std::uint64_t m, double epsilon, InductiveMethod method,
                            std::uint64_t seed);

// Report for an inductive run. The diverged flag is set when the running
// means at m/8, m/4, m/2, m are strictly increasing (heavy tails make the
// plug-in stderr untrustworthy, so it is reported but flagged).
RiskAuditReport inductive_report(const InductiveTrace& trace, InductiveMethod method,
                                 std::uint64_t seed);

std::vector<double> sample_b_sequence(std::uint64_t m, double epsilon, std::uint64_t seed);

struct CoverageReport {
    double coverage = 0;
    double stderr_ = 0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

// Fraction of replications whose sufficient-bound e-interval, built at the
// stopped sample size, covers theta_star.
CoverageReport coverage_under_stopping(const NormalECollection& coll, double theta_star,
                                       const StoppingRule& stopping, double alpha,
                                       std::uint64_t replications, std::uint64_t seed,
                                       int threads = 1);

// P(exists k <= n_max with S_theta(X^k) >= 1/alpha) under P_theta, estimated.
CoverageReport ville_crossing_fraction(const NormalECollection& coll, double theta, int n_max,
                                       double alpha, std::uint64_t replications, std::uint64_t seed,
                                       int threads = 1);

void write_inductive_csv(std::ostream& out, const InductiveTrace& trace);

}  // namespace egnp
