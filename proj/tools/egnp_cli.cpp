#include "egnp/adversary.hpp"
#include "egnp/confidence.hpp"
#include "egnp/evariable.hpp"
#include "egnp/montecarlo.hpp"
#include "egnp/normal.hpp"
#include "egnp/rules.hpp"
#include "egnp/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace egnp;

std::string fmt_risk(const ExactRisk& r) {
    if (r.infinite) return "inf";
    std::string s = rat_decimal(r.value);
    if (s.find('.') == std::string::npos && s.find('/') == std::string::npos) s += ".0";
    return s;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EGNP_SEED")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 1;
}

int run_demo_naive_risk(const RiskBudget& budget, int kmax) {
    FourActionDemo four = four_action_demo(budget);
    std::cout << "naive-p 4-action risk = " << fmt_risk(four.naive_risk) << "\n";

    ThresholdDemo thr = threshold_demo(budget);
    std::cout << "naive-p threshold-adversary risk = " << fmt_risk(thr.naive_risk) << "\n";
    std::cout << "max-compatible threshold-adversary risk = " << fmt_risk(thr.e_risk) << "\n";

    for (int k = 1; k <= kmax; ++k) {
        DyadicDemo dy = dyadic_problem(k, budget);
        std::cout << "dyadic k=" << k << ": naive-p = " << fmt_risk(dy.naive_risk)
                  << ", halved-p = " << fmt_risk(dy.halved_risk)
                  << ", max-compatible = " << fmt_risk(dy.max_compat_risk) << "\n";
    }
    return 0;
}

int run_demo_adversary(std::uint64_t trials, std::uint64_t seed, int threads) {
    // Continuous strict uniform p-value; loss picked post hoc by the
    // threshold selector; stakes 20 / 100 / 500 on the active action.
    const double stakes[] = {20.0, 100.0, 500.0};

    auto naive_trial = [&](CounterRng& rng) {
        double pval = rng.next_unit();
        int b = threshold_selector(pval);
        return pval <= 0.05 ? stakes[b - 1] : 0.0;  // act whenever "significant"
    };
    auto e_trial = [&](CounterRng& rng) {
        double pval = rng.next_unit();
        int b = threshold_selector(pval);
        double s = pval <= 0.05 ? 20.0 : 0.0;  // S^{NP(0.05)}
        return stakes[b - 1] <= s ? stakes[b - 1] : 0.0;
    };

    auto naive = estimate_type_one_risk(naive_trial, trials, seed, "naive-p", "pval-threshold",
                                        threads, 1);
    auto ebased = estimate_type_one_risk(e_trial, trials, seed, "max-compatible", "pval-threshold",
                                         threads, 2);
    std::cout << naive.to_json() << "\n" << ebased.to_json() << "\n";
    return 0;
}

int run_demo_cd_failure(std::uint64_t m, double epsilon, std::uint64_t seed,
                        const std::string& method, const std::string& out) {
    auto run_one = [&](InductiveMethod mth, const char* name) {
        InductiveTrace trace = simulate_inductive_behavior(m, epsilon, mth, seed);
        std::cout << inductive_report(trace, mth, seed).to_json() << "\n";
        if (!out.empty()) {
            std::ofstream f(out + "_" + name + ".csv");
            if (!f) throw structural_error("cannot write '" + out + "_" + name + ".csv'");
            write_inductive_csv(f, trace);
        }
    };
    if (method == "cd" || method == "both") run_one(InductiveMethod::cd, "cd");
    if (method == "e" || method == "both") run_one(InductiveMethod::e, "e");
    return 0;
}

int run_curves(int n, double mle, int nstar, double alphastar, double lo, double hi, double step,
               const std::string& out) {
    NormalECollection coll = normal_ecollection(nstar, alphastar);
    std::vector<double> grid = make_grid(lo, hi, step);
    EPosteriorCurve curve = e_posterior_curve(coll, mle, n, grid);
    std::vector<double> cd = cd_tail_curve(mle, n, grid);
    if (out.empty()) {
        write_curves_csv(std::cout, curve, cd);
    } else {
        std::ofstream f(out);
        if (!f) throw structural_error("cannot write '" + out + "'");
        write_curves_csv(f, curve, cd);
    }
    return 0;
}

int run_eci(double alpha, double b, int n, int nstar, double alphastar, double mle,
            const std::string& method, const std::string& out) {
    NormalECollection coll = normal_ecollection(nstar, alphastar);
    ConfidenceInterval iv;
    if (b > 0) {
        double hw = e_ci_halfwidth_for_b(n, b, coll);
        iv = {mle - hw, mle + hw, b, "e-halfwidth-b", false};
    } else if (method == "standard") {
        iv = standard_ci(mle, n, alpha);
    } else if (method == "exact") {
        iv = e_ci_exact(mle, n, alpha, coll);
    } else {
        iv = e_ci_sufficient(mle, n, alpha, coll);
    }
    std::cout << interval_to_json(iv, 3) << "\n";
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw structural_error("cannot write '" + out + "'");
        f << interval_to_json(iv) << "\n";
    }
    return 0;
}

int run_verify_example_add() {
    ExampleAddReport rep = verify_example_add();
    std::cout << "original: " << (rep.original_inadmissible ? "inadmissible" : "admissible")
              << " (witness risk " << rep.original_witness_risk.str() << ")"
              << "; enlarged: witness risk "
              << (rep.extended_prime_unsafe ? rep.extended_prime_unsafe->risk.str() : "none")
              << " unsafe\n";
    std::cout << "sharp = " << (rep.sharp ? "yes" : "no")
              << ", rich before = " << (rep.rich_before ? "yes" : "no")
              << ", rich after id(S) = " << (rep.rich_after ? "yes" : "no") << "\n";
    std::cout << "extended rule admissible = " << (rep.extended_delta_admissible ? "yes" : "no")
              << ", equalizer lemma = " << (rep.equalizer_holds ? "holds" : "fails") << "\n";
    if (rep.extended_prime_unsafe) {
        std::cout << "unsafe selector:";
        for (std::size_t y = 0; y < rep.extended_prime_unsafe->selector.size(); ++y)
            std::cout << " " << rat_str(rep.enlarged.problem.null.outcomes[y]) << "->"
                      << rep.enlarged.problem.losses[static_cast<std::size_t>(
                                                         rep.extended_prime_unsafe->selector[y])]
                             .id;
        std::cout << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_verify_brute(const std::string& path) {
    ProblemFile pf = load_problem_file(path);
    if (!pf.evariable)
        throw structural_error(path + ": verify brute needs an \"evariable\" table in the file");
    FiniteInstance inst;
    inst.problem = pf.problem;
    inst.evariable = *pf.evariable;
    inst.has_evariable = true;
    DecisionRule rule = max_compatible_rule(inst.problem, inst.evariable);
    AdmissibilityVerdict verdict = brute_force_admissible(inst, rule);
    std::cout << verdict_to_json(verdict, inst) << "\n";
    return 0;
}

int run_verify_random(std::uint64_t cases, std::uint64_t seed) {
    RandomCheckSummary sum = run_random_checks(cases, seed);
    std::cout << "cases = " << sum.cases << "\n"
              << "safety/e-variable equivalence checks = " << sum.prop1_checked << "\n"
              << "equalizer lemma applicable cases = " << sum.lemma_applicable << "\n"
              << "admissible random rules (maximal-compatibility checked) = "
              << sum.thm_part1_admissible << "\n"
              << "rich+sharp+full-support admissibility checks = " << sum.thm_part2_checked << "\n"
              << "uniqueness checks = " << sum.uniqueness_checked << "\n"
              << "counterexamples = " << sum.counterexamples << "\n";
    for (const auto& f : sum.failures) std::cout << "  " << f << "\n";
    return sum.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"e-value based decisions under post-hoc loss functions"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    int threads = 1;

    // demo
    auto* demo = app.add_subcommand("demo", "worked demonstrations");
    demo->require_subcommand(1);

    double ell = 1.0;
    int kmax = 8;
    auto* naive = demo->add_subcommand("naive-risk", "exact risks of p-value based decisions");
    naive->add_option("--ell", ell, "Type-I risk budget")->check(CLI::PositiveNumber);
    naive->add_option("--k", kmax, "largest dyadic escalation depth")->check(CLI::Range(1, 30));

    std::uint64_t trials = 1000000;
    auto* adv = demo->add_subcommand("adversary", "Monte Carlo risk audit, e vs p rules");
    adv->add_option("--trials", trials)->check(CLI::PositiveNumber);
    adv->add_option("--seed", seed);
    adv->add_option("--threads", threads)->check(CLI::Range(1, 256));

    std::uint64_t m = 100000;
    double epsilon = 0.01;
    std::string cd_out, cd_method = "both";
    auto* cdf = demo->add_subcommand("cd-failure", "long-run averages of post-hoc interval losses");
    cdf->add_option("--m", m)->check(CLI::PositiveNumber);
    cdf->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber);
    cdf->add_option("--seed", seed);
    cdf->add_option("--out", cd_out, "CSV trace prefix");
    cdf->add_option("--method", cd_method)->check(CLI::IsMember({"cd", "e", "both"}));

    // curves
    int n = 100, nstar = 100;
    double mle = 1.0, alphastar = 0.05, alpha = 0.05;
    double lo = 0, hi = 0, step = 0;
    std::string out;
    auto* curves = app.add_subcommand("curves", "e-posterior and tail-area curves as CSV");
    curves->add_option("--n", n)->check(CLI::PositiveNumber);
    curves->add_option("--mle", mle);
    curves->add_option("--nstar", nstar)->check(CLI::PositiveNumber);
    curves->add_option("--alphastar", alphastar)->check(CLI::Range(1e-12, 1.0));
    curves->add_option("--lo", lo);
    curves->add_option("--hi", hi);
    curves->add_option("--step", step);
    curves->add_option("--out", out);

    // eci
    double b_weight = 0;
    std::string eci_method = "sufficient";
    auto* eci = app.add_subcommand("eci", "confidence intervals");
    eci->add_option("--alpha", alpha)->check(CLI::Range(1e-12, 1.0));
    eci->add_option("--b", b_weight, "interval loss weight (replaces alpha by 1/b)");
    eci->add_option("--n", n)->check(CLI::PositiveNumber);
    eci->add_option("--nstar", nstar)->check(CLI::PositiveNumber);
    eci->add_option("--alphastar", alphastar)->check(CLI::Range(1e-12, 1.0));
    eci->add_option("--mle", mle);
    eci->add_option("--method", eci_method)->check(CLI::IsMember({"sufficient", "exact", "standard"}));
    eci->add_option("--out", out);

    // verify
    auto* verify = app.add_subcommand("verify", "brute-force admissibility checks");
    verify->require_subcommand(1);
    auto* example = verify->add_subcommand("example-add", "worked enlargement example");
    std::string file;
    auto* brute = verify->add_subcommand("brute", "admissibility of the maximally compatible rule");
    brute->add_option("--file", file, "problem JSON")->required();
    std::uint64_t cases = 1000;
    auto* random = verify->add_subcommand("random", "randomized theory checks");
    random->add_option("--cases", cases)->check(CLI::PositiveNumber);
    random->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*naive) {
            RiskBudget budget{rat_from_double(ell)};
            return run_demo_naive_risk(budget, kmax);
        }
        if (*adv) return run_demo_adversary(trials, seed, threads);
        if (*cdf) return run_demo_cd_failure(m, epsilon, seed, cd_method, cd_out);
        if (*curves) {
            if (step <= 0) {
                lo = mle - 5.0 / std::sqrt(static_cast<double>(n));
                hi = mle + 5.0 / std::sqrt(static_cast<double>(n));
                step = (hi - lo) / 2000.0;
            }
            return run_curves(n, mle, nstar, alphastar, lo, hi, step, out);
        }
        if (*eci) return run_eci(alpha, b_weight, n, nstar, alphastar, mle, eci_method, out);
        if (*example) return run_verify_example_add();
        if (*brute) return run_verify_brute(file);
        if (*random) return run_verify_random(cases, seed);
    } catch (const structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
