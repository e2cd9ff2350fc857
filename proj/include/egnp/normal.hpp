#pragma once

namespace egnp {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, accurate to ~1e-15 absolute (erfc based).
double norm_cdf(double x);

/// Standard normal quantile (AS241 rational approximation polished with one
/// Newton step against norm_cdf). Accurate to well below 1e-12 on (0,1);
/// returns -inf/+inf at 0/1.
double norm_quantile(double p);

}  // namespace egnp
