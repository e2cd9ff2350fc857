#pragma once

#include "egnp/evariable.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace egnp {

struct ConfidenceInterval {
    double lo = 0;
    double hi = 0;
    double level_or_b = 0;
    std::string method;     // standard | e-sufficient-bound | e-exact | e-halfwidth-b
    bool fallback = false;  // e-exact only: bisection bracket failed, sufficient bound used
};

// b * 1{theta outside [lo, hi]}, b >= 1.
struct IntervalLoss {
    double b = 1;
    double operator()(double theta, const ConfidenceInterval& iv) const {
        return (theta < iv.lo || theta > iv.hi) ? b : 0.0;
    }
};

struct EPosteriorCurve {
    std::vector<double> grid;
    std::vector<double> values;  // 1 / S_theta
    std::vector<double> capped;  // min(1, value)
};

// mle +/- z_{alpha/2}/sqrt(n).
ConfidenceInterval standard_ci(double mle, int n, double alpha);

// Conservative interval from the closed-form half-width
// sqrt(2/n * log(2/alpha)) * g(c); always a superset of the exact e-set.
ConfidenceInterval e_ci_sufficient(double mle, int n, double alpha, const NormalECollection& coll);

// Exact boundary of {theta : S_theta < 1/alpha} by bisection (1e-9 on theta).
ConfidenceInterval e_ci_exact(double mle, int n, double alpha, const NormalECollection& coll);

// Half-width A making [mle-A, mle+A] compatible with the collection under the
// interval loss with weight b (alpha replaced by 1/b).
double e_ci_halfwidth_for_b(int n, double b, const NormalECollection& coll);

EPosteriorCurve e_posterior_curve(const NormalECollection& coll, double mle, int n,
                                  const std::vector<double>& grid);

// Twice the matching tail area of the objective-Bayes posterior N(mle, 1/n):
// 2 * (1 - Phi(|theta - mle| * sqrt(n))); equals 1 at the MLE.
std::vector<double> cd_tail_curve(double mle, int n, const std::vector<double>& grid);

// sup over theta outside the interval of min(1, 1/S_theta) * b <= ell,
// evaluated on a refinement grid plus the interval endpoints.
bool check_eposterior_bound(const NormalECollection& coll, double mle, int n,
                            const IntervalLoss& loss, const ConfidenceInterval& interval,
                            double ell = 1.0);

// Plain collection compatibility of an interval decision: b * 1{theta outside
// interval} <= S_theta * ell for every probed theta.
bool interval_rule_compatible(const NormalECollection& coll, double mle, int n, double b,
                              const ConfidenceInterval& interval,
                              const std::vector<double>& theta_probes, double ell = 1.0);

std::vector<double> make_grid(double lo, double hi, double step);

// CSV with header theta,e_posterior_capped,cd_tail at 17 significant digits.
void write_curves_csv(std::ostream& out, const EPosteriorCurve& curve,
                      const std::vector<double>& cd_tail);

std::string interval_to_json(const ConfidenceInterval& iv, int display_decimals = -1);

}  // namespace egnp
