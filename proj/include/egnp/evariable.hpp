#pragma once

#include "egnp/errors.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace egnp {

// A nonnegative statistic of the outcome. The e-variable contract
// (null expectation <= 1) is a property checked by tests, not enforced here.
struct EVariable {
    std::function<double(double)> eval;
    std::optional<std::vector<double>> codomain_hint;

    double operator()(double y) const { return eval(y); }
};

// S = (1/alpha) * 1{pval <= alpha}; codomain {0, 1/alpha}.
EVariable np_evariable(double alpha, std::function<double(double)> pval);

// Likelihood ratio p1/p0; evaluation fails where p0 = 0 < p1.
EVariable lr_evariable(std::function<double(double)> p0, std::function<double(double)> p1);

// 1/sqrt(p) - 1 for p in (0,1]; p = 0 maps to +inf.
double calibrate_pvalue(double p);

// Two-sided mixture e-variable family for the unit-variance normal location
// model, tuned to an anticipated sample size and level. Everything is a
// function of the sample mean; evaluation is done in log space.
struct NormalECollection {
    int n_star = 0;
    double alpha_star = 0;
    double u = 0;   // theta_plus - theta = sqrt(2 log(2/alpha*) / n*)
    double u1 = 0;  // one-sided spacing, sqrt(2 log(1/alpha*) / n*)

    double theta_plus(double theta) const { return theta + u; }
    double theta_minus(double theta) const { return theta - u; }

    double log_s(double theta, double mle, int n) const;
    double s(double theta, double mle, int n) const;

    // One-sided components (log(1/alpha*) spacing).
    double s_plus(double theta, double mle, int n) const;
    double s_minus(double theta, double mle, int n) const;

    // S_theta as a function of a length-n* ... actually any-length sample.
    EVariable at(double theta, int n) const;
};

NormalECollection normal_ecollection(int n_star, double alpha_star);

// Element k is S_theta evaluated on the first k observations.
std::vector<double> eprocess_trace(const NormalECollection& coll, double theta,
                                   std::span<const double> xs);

// Generic theta-indexed family; thin adapter used by bindings and callers
// that do not care about the normal closed form.
struct ECollection {
    std::function<EVariable(double)> at;
    double theta_lo = 0;
    double theta_hi = 0;
};

ECollection as_ecollection(const NormalECollection& coll, int n);

}  // namespace egnp
