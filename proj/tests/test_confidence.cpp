#include "egnp/confidence.hpp"

#include "egnp/normal.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <sstream>

using namespace egnp;

TEST_SUITE("confidence") {

TEST_CASE("standard interval") {
    auto iv = standard_ci(1.0, 100, 0.05);
    CHECK(iv.lo == doctest::Approx(0.80400360154).epsilon(1e-9));
    CHECK(iv.hi == doctest::Approx(1.19599639846).epsilon(1e-9));
    CHECK(iv.method == "standard");

    auto degenerate = standard_ci(0.3, 100, 1.0);
    CHECK(degenerate.lo == doctest::Approx(0.3));
    CHECK(degenerate.hi == doctest::Approx(0.3));

    auto single = standard_ci(0.0, 1, 0.05);
    CHECK(single.hi == doctest::Approx(1.9599639845400542).epsilon(1e-12));
    CHECK(single.lo == doctest::Approx(-1.9599639845400542).epsilon(1e-12));
}

TEST_CASE("sufficient-bound e-interval") {
    auto coll = normal_ecollection(100, 0.05);
    auto iv = e_ci_sufficient(1.0, 100, 0.05, coll);
    CHECK(iv.hi == doctest::Approx(1.2716203031481239).epsilon(1e-12));
    CHECK(iv.lo == doctest::Approx(0.7283796968518761).epsilon(1e-12));

    // width ratio against the standard interval at the anticipated settings
    auto std_iv = standard_ci(1.0, 100, 0.05);
    double ratio = (iv.hi - iv.lo) / (std_iv.hi - std_iv.lo);
    CHECK(ratio > 1.38);
    CHECK(ratio < 1.39);

    // c = 1/4 at n = 400: g = 1.25
    auto wide = e_ci_sufficient(1.0, 400, 0.05, coll);
    CHECK(wide.hi - 1.0 == doctest::Approx(0.16976268946757744).epsilon(1e-12));
}

TEST_CASE("exact e-interval is a subset of the sufficient bound") {
    auto coll = normal_ecollection(100, 0.05);
    auto exact = e_ci_exact(1.0, 100, 0.05, coll);
    CHECK_FALSE(exact.fallback);
    CHECK(exact.hi == doctest::Approx(1.2716202887668268).epsilon(1e-9));
    CHECK(std::fabs(exact.hi - 1.272) < 0.01);

    for (int n : {3, 10, 100, 250, 1000}) {
        for (double alpha : {0.01, 0.05, 0.2, 0.9}) {
            for (int nstar : {10, 100, 400}) {
                auto c2 = normal_ecollection(nstar, 0.05);
                auto suff = e_ci_sufficient(0.0, n, alpha, c2);
                auto ex = e_ci_exact(0.0, n, alpha, c2);
                CHECK(ex.lo >= suff.lo);
                CHECK(ex.hi <= suff.hi);
                // the boundary value of S really is 1/alpha (up to bisection width)
                double fuzz = std::fabs(c2.log_s(ex.hi, 0.0, n) - std::log(1.0 / alpha));
                CHECK((fuzz < 1e-5 || ex.hi == suff.hi));
                CHECK(ex.lo <= 0.0);  // always contains the MLE
                CHECK(ex.hi >= 0.0);
            }
        }
    }

    // alpha = 1 collapses toward {S < 1} but keeps the MLE inside
    auto tight = e_ci_exact(0.5, 100, 1.0, coll);
    CHECK(tight.lo <= 0.5);
    CHECK(tight.hi >= 0.5);
    CHECK(tight.hi - 0.5 < coll.u);
}

TEST_CASE("nesting in alpha") {
    auto coll = normal_ecollection(100, 0.05);
    double prev_hw_s = INFINITY, prev_hw_e = INFINITY;
    for (double alpha : {0.01, 0.05, 0.1, 0.3, 0.6, 0.95}) {
        auto s = e_ci_sufficient(0.0, 100, alpha, coll);
        auto e = e_ci_exact(0.0, 100, alpha, coll);
        CHECK(s.hi <= prev_hw_s + 1e-15);
        CHECK(e.hi <= prev_hw_e + 1e-15);
        prev_hw_s = s.hi;
        prev_hw_e = e.hi;
    }
}

TEST_CASE("half-width for an interval loss weight") {
    auto coll = normal_ecollection(100, 0.05);
    // 1/b = alpha* at b = 20 reproduces the alpha = 0.05 boundary
    CHECK(e_ci_halfwidth_for_b(100, 20.0, coll) ==
          doctest::Approx(0.27162030314812390).epsilon(1e-12));
    double c1 = (100.0 / 100.0) * std::log(2.0) / std::log(40.0);
    double g1 = 0.5 * (std::sqrt(c1) + 1.0 / std::sqrt(c1));
    CHECK(e_ci_halfwidth_for_b(100, 1.0, coll) ==
          doctest::Approx(std::sqrt(2.0 * std::log(2.0) / 100.0) * g1).epsilon(1e-12));
    // quadrupling n at fixed c halves the width
    auto coll4 = normal_ecollection(400, 0.05);
    CHECK(e_ci_halfwidth_for_b(400, 20.0, coll4) ==
          doctest::Approx(0.5 * e_ci_halfwidth_for_b(100, 20.0, coll)).epsilon(1e-12));
}

TEST_CASE("e-posterior curve") {
    auto coll = normal_ecollection(100, 0.05);
    std::vector<double> grid{1.0 - coll.u, 1.0, 1.0 + coll.u};
    auto curve = e_posterior_curve(coll, 1.0, 100, grid);
    CHECK(curve.values[1] == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(curve.capped[1] == 1.0);
    CHECK(curve.capped[0] == doctest::Approx(curve.capped[2]));  // symmetry

    // capped value is exactly alpha at the exact interval endpoint
    auto exact = e_ci_exact(1.0, 100, 0.05, coll);
    auto at_edge = e_posterior_curve(coll, 1.0, 100, {exact.hi});
    CHECK(at_edge.capped[0] == doctest::Approx(0.05).epsilon(1e-7));

    CHECK_THROWS_AS(e_posterior_curve(coll, 1.0, 100, {}), parameter_error);
}

TEST_CASE("tail-area curve of the flat-prior posterior") {
    std::vector<double> grid{1.0, 1.0 + 1.9599639845400542 / 10.0};
    auto tail = cd_tail_curve(1.0, 100, grid);
    CHECK(tail[0] == 1.0);
    CHECK(tail[1] == doctest::Approx(0.05).epsilon(1e-12));
    auto at272 = cd_tail_curve(1.0, 100, {1.0 + 2.716 / 10.0});
    CHECK(at272[0] == doctest::Approx(0.0066).epsilon(0.02));
    CHECK(at272[0] == doctest::Approx(0.0066075918).epsilon(1e-6));

    // the tail curve crosses alpha exactly at the standard interval endpoint
    auto iv = standard_ci(1.0, 100, 0.05);
    CHECK(cd_tail_curve(1.0, 100, {iv.hi})[0] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("e-posterior decision bound") {
    auto coll = normal_ecollection(100, 0.05);
    double mle = 1.0;
    SUBCASE("half-width interval with matching weight passes") {
        double b = 20.0;
        double a = e_ci_halfwidth_for_b(100, b, coll);
        ConfidenceInterval iv{mle - a, mle + a, b, "e-halfwidth-b", false};
        CHECK(check_eposterior_bound(coll, mle, 100, {b}, iv));
    }
    SUBCASE("a point interval fails for meaningful stakes") {
        ConfidenceInterval iv{mle, mle, 20.0, "point", false};
        CHECK_FALSE(check_eposterior_bound(coll, mle, 100, {20.0}, iv));
    }
    SUBCASE("stakes within the budget pass even with an empty interval") {
        ConfidenceInterval iv{mle, mle, 1.0, "point", false};
        CHECK(check_eposterior_bound(coll, mle, 100, {1.0}, iv));
    }
}

TEST_CASE("collection compatibility of the half-width interval") {
    auto coll = normal_ecollection(100, 0.05);
    double mle = 1.0;
    auto probes = make_grid(mle - 2.0, mle + 2.0, 0.001);
    for (double b : {1.0, 5.0, 20.0, 300.0}) {
        double a = e_ci_halfwidth_for_b(100, b, coll);
        ConfidenceInterval iv{mle - a, mle + a, b, "e-halfwidth-b", false};
        CHECK(interval_rule_compatible(coll, mle, 100, b, iv, probes));
        // shaving the interval breaks compatibility at the edge
        ConfidenceInterval shaved{mle - a + 0.02, mle + a - 0.02, b, "shaved", false};
        CHECK_FALSE(interval_rule_compatible(coll, mle, 100, b, shaved, probes));
    }
}

TEST_CASE("grid construction and csv output") {
    auto grid = make_grid(0.5, 1.5, 0.0005);
    CHECK(grid.size() == 2001);
    CHECK(grid[1000] == 1.0);  // center exact

    auto coll = normal_ecollection(100, 0.05);
    auto curve = e_posterior_curve(coll, 1.0, 100, grid);
    auto tail = cd_tail_curve(1.0, 100, grid);
    std::ostringstream out;
    write_curves_csv(out, curve, tail);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta,e_posterior_capped,cd_tail");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == grid.size());
}

TEST_CASE("interval json formats") {
    ConfidenceInterval iv{0.7283796968518761, 1.2716203031481239, 0.05, "e-sufficient-bound", false};
    CHECK(interval_to_json(iv, 3) ==
          R"({"lo":0.728,"hi":1.272,"level":0.05,"method":"e-sufficient-bound"})");
    CHECK(interval_to_json(iv).find("1.2716203031481239") != std::string::npos);
}

}  // TEST_SUITE
