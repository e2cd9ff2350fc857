#include "egnp/evariable.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace egnp {

EVariable np_evariable(double alpha, std::function<double(double)> pval) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw parameter_error("np_evariable: alpha outside (0,1)");
    double payoff = 1.0 / alpha;
    EVariable s;
    s.codomain_hint = std::vector<double>{0.0, payoff};
    s.eval = [alpha, payoff, pv = std::move(pval)](double y) {
        return pv(y) <= alpha ? payoff : 0.0;
    };
    return s;
}

EVariable lr_evariable(std::function<double(double)> p0, std::function<double(double)> p1) {
    EVariable s;
    s.eval = [f0 = std::move(p0), f1 = std::move(p1)](double y) {
        double d0 = f0(y), d1 = f1(y);
        if (d0 == 0.0) {
            if (d1 > 0.0) throw evaluation_error("lr_evariable: p0(y)=0 with p1(y)>0");
            return 0.0;
        }
        return d1 / d0;
    };
    return s;
}

double calibrate_pvalue(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0) throw parameter_error("calibrate_pvalue: p outside [0,1]");
    if (p == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(p) - 1.0;
}

NormalECollection normal_ecollection(int n_star, double alpha_star) {
    if (n_star < 1) throw parameter_error("normal_ecollection: n_star must be >= 1");
    if (!(alpha_star > 0.0) || !(alpha_star < 1.0))
        throw parameter_error("normal_ecollection: alpha_star outside (0,1)");
    NormalECollection c;
    c.n_star = n_star;
    c.alpha_star = alpha_star;
    c.u = std::sqrt(2.0 * std::log(2.0 / alpha_star) / n_star);
    c.u1 = std::sqrt(2.0 * std::log(1.0 / alpha_star) / n_star);
    return c;
}

double NormalECollection::log_s(double theta, double mle, int n) const {
    // log( exp(-n u^2/2) * cosh(n*(mle-theta)*u) ), kept stable for large n.
    double t = n * (mle - theta) * u;
    double a = std::fabs(t);
    return -0.5 * n * u * u + a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double NormalECollection::s(double theta, double mle, int n) const {
    return std::exp(log_s(theta, mle, n));
}

double NormalECollection::s_plus(double theta, double mle, int n) const {
    return std::exp(-0.5 * n * u1 * u1 + n * (mle - theta) * u1);
}

double NormalECollection::s_minus(double theta, double mle, int n) const {
    return std::exp(-0.5 * n * u1 * u1 - n * (mle - theta) * u1);
}

EVariable NormalECollection::at(double theta, int n) const {
    EVariable s;
    s.eval = [c = *this, theta, n](double mle) { return c.s(theta, mle, n); };
    return s;
}

std::vector<double> eprocess_trace(const NormalECollection& coll, double theta,
                                   std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    double sum = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sum += xs[k];
        int n = static_cast<int>(k) + 1;
        out.push_back(coll.s(theta, sum / n, n));
    }
    return out;
}

ECollection as_ecollection(const NormalECollection& coll, int n) {
    ECollection e;
    e.theta_lo = -std::numeric_limits<double>::infinity();
    e.theta_hi = std::numeric_limits<double>::infinity();
    e.at = [coll, n](double theta) { return coll.at(theta, n); };
    return e;
}

}  // namespace egnp
