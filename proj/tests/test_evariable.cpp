#include "egnp/evariable.hpp"

#include "egnp/normal.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace egnp;

namespace {

double normal_density(double x, double mean) { return norm_pdf(x - mean); }

// Simpson's rule on a smooth integrand.
template <typename F>
double simpson(F f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_SUITE("evariable") {

TEST_CASE("np e-variable") {
    auto s = np_evariable(0.05, [](double y) { return y; });
    CHECK(s(0.03) == 20.0);
    CHECK(s(0.07) == 0.0);
    CHECK(s(0.05) == 20.0);  // boundary included
    REQUIRE(s.codomain_hint.has_value());
    CHECK((*s.codomain_hint)[1] == 20.0);

    auto nearly_one = np_evariable(1.0 - 1e-12, [](double y) { return y; });
    CHECK(nearly_one(0.4) == doctest::Approx(1.0));
    CHECK_THROWS_AS(np_evariable(0.0, {}), parameter_error);
    CHECK_THROWS_AS(np_evariable(1.0, {}), parameter_error);
}

TEST_CASE("likelihood ratio e-variable") {
    auto identity = lr_evariable([](double y) { return normal_density(y, 0); },
                                 [](double y) { return normal_density(y, 0); });
    CHECK(identity(0.37) == 1.0);

    auto shifted = lr_evariable([](double y) { return normal_density(y, 0); },
                                [](double y) { return normal_density(y, 1); });
    CHECK(shifted(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shifted(2.0) == doctest::Approx(4.4816890703380648).epsilon(1e-12));

    auto broken = lr_evariable([](double) { return 0.0; }, [](double) { return 0.5; });
    CHECK_THROWS_AS(broken(1.0), evaluation_error);
}

TEST_CASE("p-value calibrator") {
    CHECK(calibrate_pvalue(1.0) == 0.0);
    CHECK(calibrate_pvalue(0.25) == doctest::Approx(1.0));
    CHECK(calibrate_pvalue(0.04) == doctest::Approx(4.0));
    CHECK(std::isinf(calibrate_pvalue(0.0)));
    CHECK_THROWS_AS(calibrate_pvalue(1.5), parameter_error);
    CHECK_THROWS_AS(calibrate_pvalue(-0.1), parameter_error);

    double prev = calibrate_pvalue(1e-4);
    for (double p = 2e-4; p <= 1.0; p += 1e-3) {
        double cur = calibrate_pvalue(p);
        CHECK(cur < prev);  // strictly decreasing
        prev = cur;
    }
}

TEST_CASE("calibrator is exactly sharp under a uniform p-value") {
    // integral of (1/sqrt(u) - 1) du over (0,1]; substituting u = t*t turns it
    // into the polynomial 2 - 2t, integrated exactly by quadrature
    double integral = simpson([](double t) { return (2.0 - 2.0 * t); }, 0.0, 1.0, 4000);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal e-collection closed form") {
    auto coll = normal_ecollection(100, 0.05);
    CHECK(coll.u == doctest::Approx(0.27162030314812390).epsilon(1e-14));
    CHECK(coll.theta_plus(0.3) - 0.3 == doctest::Approx(coll.u));
    CHECK(0.3 - coll.theta_minus(0.3) == doctest::Approx(coll.u));

    // at the MLE the mixture collapses to exp(-n u^2 / 2) = alpha*/2 at n = n*
    CHECK(coll.s(1.0, 1.0, 100) == doctest::Approx(0.025).epsilon(1e-12));

    // rejection threshold at the anticipated n and level
    CHECK(coll.s(1.0, 1.0 + coll.u, 100) >= 20.0);
    CHECK(coll.s(1.0, 1.0 + coll.u, 100) == doctest::Approx(20.0).epsilon(1e-4));

    // symmetric in mle - theta
    for (double d : {0.05, 0.11, 0.4}) {
        CHECK(coll.s(0.0, d, 100) == doctest::Approx(coll.s(0.0, -d, 100)));
    }

    CHECK_THROWS_AS(normal_ecollection(0, 0.05), parameter_error);
    CHECK_THROWS_AS(normal_ecollection(10, 1.0), parameter_error);
}

TEST_CASE("two-sided value is the mixture of the one-sided density ratios") {
    auto coll = normal_ecollection(100, 0.05);
    // oracle: raw likelihood ratios of n i.i.d. normals via product densities,
    // reduced to the sample mean being sufficient
    int n = 17;
    double theta = 0.4;
    for (double mle : {0.1, 0.4, 0.9}) {
        double log_num_plus = 0, log_num_minus = 0, log_den = 0;
        // density of the mean: N(theta, 1/n)
        auto log_mean_density = [&](double mu) {
            double d = mle - mu;
            return -0.5 * n * d * d;  // constants cancel in the ratios
        };
        log_num_plus = log_mean_density(theta + coll.u);
        log_num_minus = log_mean_density(theta - coll.u);
        log_den = log_mean_density(theta);
        double oracle = 0.5 * (std::exp(log_num_plus - log_den) + std::exp(log_num_minus - log_den));
        CHECK(coll.s(theta, mle, n) == doctest::Approx(oracle).epsilon(1e-12));
    }
    // one-sided components use the tighter one-sided spacing
    CHECK(coll.u1 < coll.u);
    CHECK(coll.s_plus(0.0, coll.u1, 1) == doctest::Approx(std::exp(0.5 * coll.u1 * coll.u1)));
    CHECK(coll.s_minus(0.0, coll.u1, 1) == doctest::Approx(std::exp(-1.5 * coll.u1 * coll.u1)));
}

TEST_CASE("log-space evaluation survives extreme samples") {
    auto coll = normal_ecollection(100, 0.05);
    double ls = coll.log_s(0.0, 60.0, 100000);
    CHECK(std::isfinite(ls));
    CHECK(ls > 1e5);  // hundreds of orders of magnitude
    CHECK(std::isinf(coll.s(0.0, 60.0, 100000)));  // overflow is explicit, not UB
}

TEST_CASE("e-process trace") {
    auto coll = normal_ecollection(100, 0.05);
    double theta = 0.7;

    SUBCASE("constant data at theta decreases as exp(-k u^2 / 2)") {
        std::vector<double> xs(40, theta);
        auto trace = eprocess_trace(coll, theta, xs);
        REQUIRE(trace.size() == 40);
        for (std::size_t k = 0; k < trace.size(); ++k) {
            double expected = std::exp(-0.5 * (k + 1) * coll.u * coll.u);
            CHECK(trace[k] == doctest::Approx(expected).epsilon(1e-12));
            if (k > 0) CHECK(trace[k] < trace[k - 1]);
        }
    }

    SUBCASE("single observation one step above theta") {
        std::vector<double> xs{theta + coll.u};
        auto trace = eprocess_trace(coll, theta, xs);
        CHECK(trace[0] == doctest::Approx(0.96640749754315838).epsilon(1e-12));
    }

    SUBCASE("prefix consistency") {
        std::vector<double> xs{0.3, -0.2, 1.4, 0.9, 0.1};
        auto longer = eprocess_trace(coll, theta, xs);
        xs.pop_back();
        auto shorter = eprocess_trace(coll, theta, xs);
        for (std::size_t k = 0; k < shorter.size(); ++k) CHECK(shorter[k] == longer[k]);
    }
}

TEST_CASE("generic collection adapter") {
    auto coll = normal_ecollection(50, 0.1);
    auto family = as_ecollection(coll, 25);
    EVariable at_half = family.at(0.5);
    CHECK(at_half(0.6) == doctest::Approx(coll.s(0.5, 0.6, 25)));
}

}  // TEST_SUITE
