#include "egnp/confidence.hpp"

#include "egnp/normal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace egnp {

namespace {

double g_of(double c) { return 0.5 * (std::sqrt(c) + 1.0 / std::sqrt(c)); }

double sufficient_halfwidth(int n, double log_2_over_alpha, const NormalECollection& coll) {
    double c = (static_cast<double>(coll.n_star) / n) * log_2_over_alpha /
               std::log(2.0 / coll.alpha_star);
    return std::sqrt(2.0 / n * log_2_over_alpha) * g_of(c);
}

void check_level(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw parameter_error("alpha outside (0,1]");
}

}  // namespace

ConfidenceInterval standard_ci(double mle, int n, double alpha) {
    check_level(alpha);
    if (n < 1) throw parameter_error("n must be >= 1");
    double z = norm_quantile(1.0 - alpha / 2.0);
    double hw = z / std::sqrt(static_cast<double>(n));
    return {mle - hw, mle + hw, alpha, "standard", false};
}

ConfidenceInterval e_ci_sufficient(double mle, int n, double alpha, const NormalECollection& coll) {
    check_level(alpha);
    if (n < 1) throw parameter_error("n must be >= 1");
    double hw = sufficient_halfwidth(n, std::log(2.0 / alpha), coll);
    return {mle - hw, mle + hw, alpha, "e-sufficient-bound", false};
}

ConfidenceInterval e_ci_exact(double mle, int n, double alpha, const NormalECollection& coll) {
    check_level(alpha);
    if (n < 1) throw parameter_error("n must be >= 1");
    double hw_suff = sufficient_halfwidth(n, std::log(2.0 / alpha), coll);
    double log_target = std::log(1.0 / alpha);

    // log S_{mle+d} - log(1/alpha) is increasing in d >= 0; S at the MLE is
    // below 1 <= 1/alpha, so any sign change sits inside the bracket.
    auto f = [&](double d) { return coll.log_s(mle + d, mle, n) - log_target; };
    double lo = 0.0;
    double hi = 2.0 * hw_suff + 1.0 / std::sqrt(static_cast<double>(n));
    if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) {
        ConfidenceInterval iv = e_ci_sufficient(mle, n, alpha, coll);
        iv.method = "e-exact";
        iv.fallback = true;
        return iv;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    // bisection noise must not report a set wider than the sufficient bound
    double d = std::min(0.5 * (lo + hi), hw_suff);
    return {mle - d, mle + d, alpha, "e-exact", false};
}

double e_ci_halfwidth_for_b(int n, double b, const NormalECollection& coll) {
    if (!(b >= 1.0)) throw parameter_error("interval loss weight b must be >= 1");
    if (n < 1) throw parameter_error("n must be >= 1");
    return sufficient_halfwidth(n, std::log(2.0 * b), coll);
}

EPosteriorCurve e_posterior_curve(const NormalECollection& coll, double mle, int n,
                                  const std::vector<double>& grid) {
    if (grid.empty()) throw parameter_error("empty grid");
    EPosteriorCurve curve;
    curve.grid = grid;
    curve.values.reserve(grid.size());
    curve.capped.reserve(grid.size());
    for (double theta : grid) {
        double s = coll.s(theta, mle, n);
        double v = s > 0 ? 1.0 / s : INFINITY;
        curve.values.push_back(v);
        curve.capped.push_back(std::min(1.0, v));
    }
    return curve;
}

std::vector<double> cd_tail_curve(double mle, int n, const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    double root_n = std::sqrt(static_cast<double>(n));
    for (double theta : grid)
        out.push_back(2.0 * (1.0 - norm_cdf(std::fabs(theta - mle) * root_n)));
    return out;
}

bool check_eposterior_bound(const NormalECollection& coll, double mle, int n,
                            const IntervalLoss& loss, const ConfidenceInterval& interval,
                            double ell) {
    auto capped_weight = [&](double theta) {
        return std::min(1.0, std::exp(-coll.log_s(theta, mle, n)));
    };
    double sup = 0.0;
    double span = std::fabs(interval.hi - interval.lo) + 10.0 / std::sqrt(static_cast<double>(n));
    // Endpoints, then a refinement just outside each side of the interval.
    sup = std::max(sup, capped_weight(interval.lo));
    sup = std::max(sup, capped_weight(interval.hi));
    constexpr int kRefine = 400;
    for (int i = 1; i <= kRefine; ++i) {
        double d = span * i / kRefine;
        sup = std::max(sup, capped_weight(interval.lo - d));
        sup = std::max(sup, capped_weight(interval.hi + d));
    }
    if (mle < interval.lo || mle > interval.hi) sup = std::max(sup, capped_weight(mle));
    return loss.b * sup <= ell;
}

bool interval_rule_compatible(const NormalECollection& coll, double mle, int n, double b,
                              const ConfidenceInterval& interval,
                              const std::vector<double>& theta_probes, double ell) {
    double log_b_over_ell = std::log(b / ell);
    for (double theta : theta_probes) {
        if (theta >= interval.lo && theta <= interval.hi) continue;
        if (coll.log_s(theta, mle, n) < log_b_over_ell) return false;
    }
    return true;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0) || hi < lo) throw parameter_error("bad grid spec");
    auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    double mid = lo + (hi - lo) / 2.0;
    for (std::size_t i = 0; i < count; ++i) {
        double t = lo + static_cast<double>(i) * step;
        if (std::fabs(t - mid) < step * 1e-9) t = mid;  // keep the center exact
        grid[i] = t;
    }
    return grid;
}

void write_curves_csv(std::ostream& out, const EPosteriorCurve& curve,
                      const std::vector<double>& cd_tail) {
    out << "theta,e_posterior_capped,cd_tail\n";
    char buf[96];
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", curve.grid[i], curve.capped[i],
                      cd_tail[i]);
        out << buf;
    }
}

std::string interval_to_json(const ConfidenceInterval& iv, int display_decimals) {
    char buf[256];
    if (display_decimals >= 0) {
        std::snprintf(buf, sizeof(buf), "{\"lo\":%.*f,\"hi\":%.*f,\"level\":%g,\"method\":\"%s\"}",
                      display_decimals, iv.lo, display_decimals, iv.hi, iv.level_or_b,
                      iv.method.c_str());
    } else {
        std::snprintf(buf, sizeof(buf), "{\"lo\":%.17g,\"hi\":%.17g,\"level\":%.17g,\"method\":\"%s\"}",
                      iv.lo, iv.hi, iv.level_or_b, iv.method.c_str());
    }
    return buf;
}

}  // namespace egnp
