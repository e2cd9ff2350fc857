#include "egnp/montecarlo.hpp"

#include "egnp/confidence.hpp"
#include "egnp/normal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace egnp {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kTrialSalt = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kBlock = 4096;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

struct BlockSums {
    double sum = 0;
    double sumsq = 0;
    double extra = 0;  // free slot (e.g. coverage counts)
};

// Runs fn over trial indices grouped in fixed blocks; block results are
// combined in block order so the reduction is schedule-independent.
template <typename PerTrial>
BlockSums reduce_trials(std::uint64_t trials, int threads, PerTrial fn) {
    std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<BlockSums> partial(blocks);
    auto run_block = [&](std::uint64_t blk) {
        std::uint64_t lo = blk * kBlock;
        std::uint64_t hi = std::min(trials, lo + kBlock);
        BlockSums bs;
        for (std::uint64_t t = lo; t < hi; ++t) {
            double x = fn(t);
            bs.sum += x;
            bs.sumsq += x * x;
        }
        partial[blk] = bs;
    };
    if (threads <= 1 || blocks <= 1) {
        for (std::uint64_t blk = 0; blk < blocks; ++blk) run_block(blk);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        int nw = std::min<std::uint64_t>(threads, blocks);
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t blk = next.fetch_add(1); blk < blocks; blk = next.fetch_add(1))
                    run_block(blk);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<double> sums(blocks), sqs(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        sums[b] = partial[b].sum;
        sqs[b] = partial[b].sumsq;
    }
    BlockSums total;
    total.sum = pairwise_sum(sums.data(), blocks);
    total.sumsq = pairwise_sum(sqs.data(), blocks);
    return total;
}

}  // namespace

CounterRng CounterRng::keyed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    CounterRng rng;
    rng.base = mix64(mix64(seed + kGolden * stream) + kTrialSalt * trial);
    return rng;
}

std::uint64_t CounterRng::next_u64() { return mix64(base + (++i) * kGolden); }

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::next_normal() { return norm_quantile(next_unit()); }

std::string RiskAuditReport::to_json() const {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "{\"estimate\":%.17g,\"stderr\":%.17g,\"trials\":%llu,\"seed\":%llu,"
                  "\"diverged\":%s,\"rule\":\"%s\",\"adversary\":\"%s\"}",
                  estimate, stderr_, static_cast<unsigned long long>(trials),
                  static_cast<unsigned long long>(seed), diverged ? "true" : "false", rule.c_str(),
                  adversary.c_str());
    return buf;
}

std::string CoverageReport::to_json() const {
    char buf[200];
    std::snprintf(buf, sizeof(buf), "{\"coverage\":%.17g,\"stderr\":%.17g,\"replications\":%llu,\"seed\":%llu}",
                  coverage, stderr_, static_cast<unsigned long long>(replications),
                  static_cast<unsigned long long>(seed));
    return buf;
}

RiskAuditReport estimate_type_one_risk(const std::function<double(CounterRng&)>& trial_loss,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const std::string& rule_tag, const std::string& adversary_tag,
                                       int threads, std::uint64_t stream) {
    if (trials < 1) throw parameter_error("trials must be >= 1");
    auto totals = reduce_trials(trials, threads, [&](std::uint64_t t) {
        CounterRng rng = CounterRng::keyed(seed, stream, t);
        return trial_loss(rng);
    });
    RiskAuditReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.rule = rule_tag;
    rep.adversary = adversary_tag;
    rep.estimate = totals.sum / static_cast<double>(trials);
    if (trials > 1) {
        double var = (totals.sumsq - totals.sum * totals.sum / static_cast<double>(trials)) /
                     static_cast<double>(trials - 1);
        rep.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
    }
    return rep;
}

RiskAuditReport estimate_type_one_risk(const GnpProblem& problem, const DecisionRule& rule,
                                       const AdversarySelector& selector, const std::string& pmf_id,
                                       std::uint64_t trials, std::uint64_t seed, int threads) {
    const auto& pm = problem.null.pmf(pmf_id);
    std::vector<double> cdf(pm.p.size());
    double acc = 0;
    for (std::size_t i = 0; i < pm.p.size(); ++i) {
        acc += to_double(pm.p[i]);
        cdf[i] = acc;
    }
    std::vector<std::vector<double>> loss_at(problem.losses.size());
    for (std::size_t b = 0; b < problem.losses.size(); ++b)
        for (const auto& l : problem.losses[b].loss0) loss_at[b].push_back(l.as_double());

    auto trial = [&](CounterRng& rng) {
        double u = rng.next_unit();
        std::size_t y = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (y >= cdf.size()) y = cdf.size() - 1;
        int b = selector.loss_by_outcome[y];
        return loss_at[static_cast<std::size_t>(b)][static_cast<std::size_t>(
            rule.table[static_cast<std::size_t>(b)][y])];
    };
    return estimate_type_one_risk(trial, trials, seed, rule.tag, selector.tag, threads);
}

namespace {

struct InductiveStep {
    double b;
    bool miss;
};

InductiveStep inductive_step(double y, const CdBreakingAdversary& adv, InductiveMethod method,
                             const NormalECollection& coll) {
    double b = adv.b(y);
    bool miss;
    if (method == InductiveMethod::cd) {
        // Credible interval [g0, 2y - g0] for y >= eps never covers 0; below
        // eps the task is called off with the empty interval, still a miss.
        miss = true;
    } else {
        double a = e_ci_halfwidth_for_b(1, b, coll);
        miss = std::fabs(y) > a;
    }
    return {b, miss};
}

}  // namespace

InductiveTrace simulate_inductive_behavior(std::uint64_t m, double epsilon, InductiveMethod method,
                                           std::uint64_t seed) {
    if (m < 1) throw parameter_error("m must be >= 1");
    if (!(epsilon > 0)) throw parameter_error("epsilon must be positive");
    CdBreakingAdversary adv{epsilon};
    NormalECollection coll = normal_ecollection(1, 0.05);
    InductiveTrace trace;
    trace.b.reserve(m);
    trace.running_mean.reserve(m);
    trace.miss.reserve(m);
    double sum = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
        CounterRng rng = CounterRng::keyed(seed, static_cast<std::uint64_t>(method) + 10, j);
        auto step = inductive_step(rng.next_normal(), adv, method, coll);
        double loss = step.miss ? step.b : 0.0;
        sum += loss;
        trace.b.push_back(step.b);
        trace.miss.push_back(step.miss ? 1 : 0);
        trace.running_mean.push_back(sum / static_cast<double>(j + 1));
    }
    trace.final_mean = trace.running_mean.back();
    return trace;
}

double inductive_final_mean(std::uint64_t m, double epsilon, InductiveMethod method,
                            std::uint64_t seed) {
    if (m < 1) throw parameter_error("m must be >= 1");
    CdBreakingAdversary adv{epsilon};
    NormalECollection coll = normal_ecollection(1, 0.05);
    double sum = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
        CounterRng rng = CounterRng::keyed(seed, static_cast<std::uint64_t>(method) + 10, j);
        auto step = inductive_step(rng.next_normal(), adv, method, coll);
        if (step.miss) sum += step.b;
    }
    return sum / static_cast<double>(m);
}

RiskAuditReport inductive_report(const InductiveTrace& trace, InductiveMethod method,
                                 std::uint64_t seed) {
    RiskAuditReport rep;
    std::size_t m = trace.b.size();
    rep.trials = m;
    rep.seed = seed;
    rep.rule = method == InductiveMethod::cd ? "cd-interval" : "e-interval";
    rep.adversary = "cd-breaking";
    rep.estimate = trace.final_mean;
    double sumsq = 0;
    for (std::size_t j = 0; j < m; ++j) {
        double loss = trace.miss[j] ? trace.b[j] : 0.0;
        sumsq += loss * loss;
    }
    if (m > 1) {
        double var = (sumsq - rep.estimate * rep.estimate * static_cast<double>(m)) /
                     static_cast<double>(m - 1);
        rep.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(m));
    }
    if (m >= 8) {
        double m8 = trace.running_mean[m / 8 - 1];
        double m4 = trace.running_mean[m / 4 - 1];
        double m2 = trace.running_mean[m / 2 - 1];
        rep.diverged = m8 < m4 && m4 < m2 && m2 < trace.final_mean;
    }
    return rep;
}

std::vector<double> sample_b_sequence(std::uint64_t m, double epsilon, std::uint64_t seed) {
    if (m < 1) throw parameter_error("m must be >= 1");
    CdBreakingAdversary adv{epsilon};
    std::vector<double> out;
    out.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        CounterRng rng = CounterRng::keyed(seed, 9, j);
        out.push_back(adv.b(rng.next_normal()));
    }
    return out;
}

namespace {

// Walks one replication; returns the stopped sample size and the mean there.
std::pair<int, double> run_stopped_path(CounterRng& rng, const NormalECollection& coll,
                                        double theta_star, const StoppingRule& stopping,
                                        double alpha) {
    if (stopping.kind == StoppingRule::Kind::fixed_n) {
        double sum = 0;
        for (int i = 0; i < stopping.fixed_n; ++i) sum += theta_star + rng.next_normal();
        return {stopping.fixed_n, sum / stopping.fixed_n};
    }
    double log_thresh = std::log(1.0 / alpha);
    double sum = 0;
    for (int k = 1; k <= stopping.n_max; ++k) {
        sum += theta_star + rng.next_normal();
        if (coll.log_s(theta_star, sum / k, k) >= log_thresh) return {k, sum / k};
    }
    return {stopping.n_max, sum / stopping.n_max};
}

}  // namespace

CoverageReport coverage_under_stopping(const NormalECollection& coll, double theta_star,
                                       const StoppingRule& stopping, double alpha,
                                       std::uint64_t replications, std::uint64_t seed,
                                       int threads) {
    if (replications < 1) throw parameter_error("replications must be >= 1");
    auto totals = reduce_trials(replications, threads, [&](std::uint64_t rep) {
        CounterRng rng = CounterRng::keyed(seed, 21, rep);
        auto [n, mle] = run_stopped_path(rng, coll, theta_star, stopping, alpha);
        ConfidenceInterval iv = e_ci_sufficient(mle, n, alpha, coll);
        return (theta_star >= iv.lo && theta_star <= iv.hi) ? 1.0 : 0.0;
    });
    CoverageReport rep;
    rep.replications = replications;
    rep.seed = seed;
    rep.coverage = totals.sum / static_cast<double>(replications);
    rep.stderr_ = std::sqrt(std::max(0.0, rep.coverage * (1 - rep.coverage)) /
                            static_cast<double>(replications));
    return rep;
}

CoverageReport ville_crossing_fraction(const NormalECollection& coll, double theta, int n_max,
                                       double alpha, std::uint64_t replications, std::uint64_t seed,
                                       int threads) {
    if (replications < 1) throw parameter_error("replications must be >= 1");
    double log_thresh = std::log(1.0 / alpha);
    auto totals = reduce_trials(replications, threads, [&](std::uint64_t rep) {
        CounterRng rng = CounterRng::keyed(seed, 22, rep);
        double sum = 0;
        for (int k = 1; k <= n_max; ++k) {
            sum += theta + rng.next_normal();
            if (coll.log_s(theta, sum / k, k) >= log_thresh) return 1.0;
        }
        return 0.0;
    });
    CoverageReport rep;
    rep.replications = replications;
    rep.seed = seed;
    rep.coverage = totals.sum / static_cast<double>(replications);
    rep.stderr_ = std::sqrt(std::max(0.0, rep.coverage * (1 - rep.coverage)) /
                            static_cast<double>(replications));
    return rep;
}

void write_inductive_csv(std::ostream& out, const InductiveTrace& trace) {
    out << "j,running_mean,b_j,miss\n";
    char buf[96];
    for (std::size_t j = 0; j < trace.b.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%d\n", j + 1, trace.running_mean[j],
                      trace.b[j], static_cast<int>(trace.miss[j]));
        out << buf;
    }
}

}  // namespace egnp
