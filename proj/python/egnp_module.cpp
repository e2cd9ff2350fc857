#include "egnp/adversary.hpp"
#include "egnp/confidence.hpp"
#include "egnp/evariable.hpp"
#include "egnp/montecarlo.hpp"
#include "egnp/normal.hpp"
#include "egnp/rules.hpp"
#include "egnp/verify.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace egnp;

namespace {

py::dict risk_entry(const ExactRisk& r) {
    py::dict d;
    d["value"] = r.as_double();
    d["exact"] = r.str();
    return d;
}

py::dict interval_dict(const ConfidenceInterval& iv) {
    py::dict d;
    d["lo"] = iv.lo;
    d["hi"] = iv.hi;
    d["level"] = iv.level_or_b;
    d["method"] = iv.method;
    return d;
}

}  // namespace

PYBIND11_MODULE(_egnp, m) {
    m.doc() = "e-value based testing and estimation under post-hoc loss functions";

    m.def("norm_cdf", &norm_cdf, py::arg("x"));
    m.def("norm_pdf", &norm_pdf, py::arg("x"));
    m.def("norm_quantile", &norm_quantile, py::arg("p"));

    m.def("calibrate_pvalue", &calibrate_pvalue, py::arg("p"),
          "Turn a p-value into an e-value via 1/sqrt(p) - 1.");
    m.def("cd_breaking_b", &cd_breaking_b, py::arg("y"), py::arg("epsilon"));
    m.def("threshold_selector", &threshold_selector, py::arg("pval"));

    py::class_<EVariable>(m, "EVariable")
        .def("__call__", [](const EVariable& s, double y) { return s(y); });
    m.def("np_evariable",
          [](double alpha, const std::function<double(double)>& pval) {
              return np_evariable(alpha, pval);
          },
          py::arg("alpha"), py::arg("pval"));
    m.def("lr_evariable",
          [](const std::function<double(double)>& p0, const std::function<double(double)>& p1) {
              return lr_evariable(p0, p1);
          },
          py::arg("p0"), py::arg("p1"));

    py::class_<NormalECollection>(m, "NormalECollection")
        .def_readonly("n_star", &NormalECollection::n_star)
        .def_readonly("alpha_star", &NormalECollection::alpha_star)
        .def_readonly("u", &NormalECollection::u)
        .def("s", &NormalECollection::s, py::arg("theta"), py::arg("mle"), py::arg("n"))
        .def("log_s", &NormalECollection::log_s, py::arg("theta"), py::arg("mle"), py::arg("n"))
        .def("s_plus", &NormalECollection::s_plus)
        .def("s_minus", &NormalECollection::s_minus)
        .def("theta_plus", &NormalECollection::theta_plus)
        .def("theta_minus", &NormalECollection::theta_minus);
    m.def("normal_ecollection", &normal_ecollection, py::arg("n_star"), py::arg("alpha_star"));
    m.def("eprocess_trace",
          [](const NormalECollection& coll, double theta, const std::vector<double>& xs) {
              return eprocess_trace(coll, theta, xs);
          },
          py::arg("coll"), py::arg("theta"), py::arg("xs"));

    m.def("standard_ci",
          [](double mle, int n, double alpha) { return interval_dict(standard_ci(mle, n, alpha)); },
          py::arg("mle"), py::arg("n"), py::arg("alpha"));
    m.def("e_ci_sufficient",
          [](double mle, int n, double alpha, const NormalECollection& coll) {
              return interval_dict(e_ci_sufficient(mle, n, alpha, coll));
          },
          py::arg("mle"), py::arg("n"), py::arg("alpha"), py::arg("coll"));
    m.def("e_ci_exact",
          [](double mle, int n, double alpha, const NormalECollection& coll) {
              return interval_dict(e_ci_exact(mle, n, alpha, coll));
          },
          py::arg("mle"), py::arg("n"), py::arg("alpha"), py::arg("coll"));
    m.def("e_ci_halfwidth_for_b", &e_ci_halfwidth_for_b, py::arg("n"), py::arg("b"),
          py::arg("coll"));
    m.def("e_posterior_curve",
          [](const NormalECollection& coll, double mle, int n, const std::vector<double>& grid) {
              auto curve = e_posterior_curve(coll, mle, n, grid);
              py::dict d;
              d["grid"] = curve.grid;
              d["values"] = curve.values;
              d["capped"] = curve.capped;
              return d;
          },
          py::arg("coll"), py::arg("mle"), py::arg("n"), py::arg("grid"));
    m.def("cd_tail_curve",
          [](double mle, int n, const std::vector<double>& grid) {
              return cd_tail_curve(mle, n, grid);
          },
          py::arg("mle"), py::arg("n"), py::arg("grid"));

    m.def("four_action_risk", [] { return risk_entry(four_action_demo().naive_risk); });
    m.def("threshold_risks", [] {
        auto demo = threshold_demo();
        py::dict d;
        d["naive_p"] = risk_entry(demo.naive_risk);
        d["max_compatible"] = risk_entry(demo.e_risk);
        return d;
    });
    m.def("dyadic_risks",
          [](int k) {
              auto demo = dyadic_problem(k);
              py::dict d;
              d["k"] = k;
              d["naive_p"] = risk_entry(demo.naive_risk);
              d["halved_p"] = risk_entry(demo.halved_risk);
              d["max_compatible"] = risk_entry(demo.max_compat_risk);
              return d;
          },
          py::arg("k"));

    m.def("inductive_final_mean",
          [](std::uint64_t m_, double epsilon, const std::string& method, std::uint64_t seed) {
              return inductive_final_mean(
                  m_, epsilon, method == "cd" ? InductiveMethod::cd : InductiveMethod::e, seed);
          },
          py::arg("m"), py::arg("epsilon"), py::arg("method"), py::arg("seed"));
    m.def("sample_b_sequence", &sample_b_sequence, py::arg("m"), py::arg("epsilon"),
          py::arg("seed"));
    m.def("coverage_under_stopping",
          [](int n_star, double alpha_star, double theta_star, const std::string& kind, int n,
             int n_max, double alpha, std::uint64_t reps, std::uint64_t seed, int threads) {
              auto coll = normal_ecollection(n_star, alpha_star);
              StoppingRule rule;
              rule.kind = kind == "fixed-n" ? StoppingRule::Kind::fixed_n
                                            : StoppingRule::Kind::first_crossing;
              rule.fixed_n = n;
              rule.n_max = n_max;
              auto rep = coverage_under_stopping(coll, theta_star, rule, alpha, reps, seed, threads);
              py::dict d;
              d["coverage"] = rep.coverage;
              d["stderr"] = rep.stderr_;
              return d;
          },
          py::arg("n_star"), py::arg("alpha_star"), py::arg("theta_star"), py::arg("kind"),
          py::arg("n") = 100, py::arg("n_max") = 500, py::arg("alpha") = 0.05,
          py::arg("replications") = 10000, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("verify_example_add", [] {
        auto rep = verify_example_add();
        py::dict d;
        d["ok"] = rep.ok();
        d["sharp"] = rep.sharp;
        d["rich_before"] = rep.rich_before;
        d["rich_after"] = rep.rich_after;
        d["original_inadmissible"] = rep.original_inadmissible;
        d["original_witness_risk"] = rep.original_witness_risk.str();
        d["extended_delta_admissible"] = rep.extended_delta_admissible;
        d["enlarged_witness_risk"] =
            rep.extended_prime_unsafe ? rep.extended_prime_unsafe->risk.str() : "";
        return d;
    });
    m.def("run_random_checks",
          [](std::uint64_t cases, std::uint64_t seed) {
              auto sum = run_random_checks(cases, seed);
              py::dict d;
              d["cases"] = sum.cases;
              d["counterexamples"] = sum.counterexamples;
              d["thm_part2_checked"] = sum.thm_part2_checked;
              d["lemma_applicable"] = sum.lemma_applicable;
              d["ok"] = sum.ok();
              return d;
          },
          py::arg("cases"), py::arg("seed"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
