#include "egnp/rules.hpp"

#include "egnp/evariable.hpp"
#include "egnp/montecarlo.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace egnp;

TEST_SUITE("rules") {

TEST_CASE("max-compatible picks the largest affordable action") {
    auto loss = egnp_test::step_loss("L", {0, 1, 2, 3}, {0, 20, 100, 500});
    auto out = max_compatible_decide(150.0, loss);
    CHECK(out.action_exact == Rat(2));
    CHECK(out.loss0_exact == Rat(100));
    CHECK(out.rule_tag == "max-compatible");

    // S = 0 with a zero-loss least action
    CHECK(max_compatible_decide(0.0, loss).action_index == 0);

    // stakes above the e-value cap never fire
    auto stakes30 = egnp_test::step_loss("L30", {0, 1}, {0, 30});
    CHECK(max_compatible_decide(20.0, stakes30).action_exact == Rat(0));
    CHECK(max_compatible_decide(0.0, stakes30).action_exact == Rat(0));

    // ties take the larger action
    CHECK(max_compatible_decide(100.0, loss).action_exact == Rat(2));
}

TEST_CASE("no feasible action is an explicit error") {
    TypeOneLoss floor;
    floor.id = "floor";
    floor.actions.labels = {Rat(1), Rat(2)};
    floor.loss0 = {Ext(Rat(5)), Ext(Rat(9))};
    floor.validate();
    CHECK_THROWS_AS(max_compatible_decide(4.0, floor), no_feasible_action);
    CHECK(max_compatible_decide(5.0, floor).action_exact == Rat(1));  // 5 <= 5 is feasible
    CHECK(max_compatible_decide(4.0, floor, {Rat(3)}).action_exact == Rat(2));
}

TEST_CASE("naive p-rule thresholds") {
    auto loss = egnp_test::step_loss("L", {0, 1, 2, 3}, {0, 20, 100, 500});
    CHECK(naive_p_decide(0.015, loss).action_exact == Rat(1));  // 0.015*100 > 1
    CHECK(naive_p_decide(1.0, loss).action_exact == Rat(0));
    CHECK(naive_p_decide(0.0005, loss).action_exact == Rat(3));  // 0.0005*500 <= 1
    CHECK(naive_p_decide(0.0, loss).action_exact == Rat(3));     // maximal action
    CHECK_THROWS_AS(naive_p_decide(1.5, loss), parameter_error);
}

TEST_CASE("halved p-rule") {
    auto loss = egnp_test::step_loss("L", {0, 1, 2, 3}, {0, 20, 100, 500});
    CHECK(halved_p_decide(0.03, loss).action_exact == Rat(1));  // q = 0.015
    CHECK(halved_p_decide(1.0, loss).action_exact == Rat(0));   // q = 0.5, 0.5*20 > 1
    // a budget of 10 makes the q = 0.5 bound admit exactly the first step
    CHECK(halved_p_decide(1.0, loss, {Rat(10)}).action_exact == Rat(1));
    CHECK(halved_p_decide(0.0, loss).action_exact == Rat(3));
}

TEST_CASE("monotonicity and compatibility by construction") {
    CounterRng rng = CounterRng::keyed(99, 0, 0);
    for (int rep = 0; rep < 200; ++rep) {
        // random 2..6 step loss with increasing values
        std::size_t nact = 2 + rng.next_u64() % 5;
        std::vector<long> acts, vals;
        long v = 0;
        for (std::size_t a = 0; a < nact; ++a) {
            acts.push_back(static_cast<long>(a));
            vals.push_back(v);
            v += 1 + static_cast<long>(rng.next_u64() % 50);
        }
        auto loss = egnp_test::step_loss("L", acts, vals);

        double prev_action = -1;
        for (double s = 0; s < 120; s += 3.7) {
            auto out = max_compatible_decide(s, loss);
            CHECK(out.loss0_at_action <= s);  // compatibility, exactly assertable
            CHECK(out.action >= prev_action);
            prev_action = out.action;
        }
        prev_action = 1e300;
        for (double p = 0.001; p <= 1.0; p *= 1.9) {
            auto out = naive_p_decide(p, loss);
            CHECK(out.action <= prev_action);  // nonincreasing in pval
            CHECK(p * out.loss0_at_action <= 1.0 + 1e-15);
            prev_action = out.action;
        }
    }
}

TEST_CASE("two-action equivalence with the classical test") {
    // loss0(1) = 1/alpha: the e-rule under S^{NP(alpha)} and the naive p-rule
    // reject on exactly the same p-values
    CounterRng rng = CounterRng::keyed(7, 0, 0);
    for (int rep = 0; rep < 500; ++rep) {
        double alpha = 0.01 + 0.98 * rng.next_unit();
        TypeOneLoss two;
        two.id = "np";
        two.actions.labels = {Rat(0), Rat(1)};
        two.loss0 = {Ext(Rat(0)), Ext(rat_from_double(1.0 / alpha))};
        auto s = np_evariable(alpha, [](double y) { return y; });
        double pval = rng.next_unit();
        auto via_e = max_compatible_decide(s(pval), two);
        auto via_p = naive_p_decide(pval, two);
        CHECK(via_e.action_index == via_p.action_index);
        CHECK((pval <= alpha) == (via_e.action_index == 1));
    }
}

TEST_CASE("interval-union action spaces use the supplied inverse") {
    TypeOneLoss quad;
    quad.id = "square";
    quad.actions.intervals = {{0.0, 4.0}, {10.0, INFINITY}};
    quad.loss_fn = [](double a) { return a * a; };
    quad.loss_inv = [](double l) { return std::sqrt(l); };
    quad.validate();

    SUBCASE("inside the first interval") {
        auto out = max_compatible_decide(9.0, quad);
        CHECK(out.action == doctest::Approx(3.0));
        CHECK(out.loss0_at_action <= 9.0);
    }
    SUBCASE("gap clamps to the interval edge") {
        auto out = max_compatible_decide(36.0, quad);  // sqrt(36)=6 falls in the gap
        CHECK(out.action == doctest::Approx(4.0));
    }
    SUBCASE("second interval") {
        CHECK(max_compatible_decide(400.0, quad).action == doctest::Approx(20.0));
    }
    SUBCASE("infinite statistic rejects the unbounded endpoint") {
        CHECK_THROWS_AS(max_compatible_decide(INFINITY, quad), no_feasible_action);
        TypeOneLoss bounded = quad;
        bounded.actions.intervals = {{0.0, 4.0}};
        CHECK(max_compatible_decide(INFINITY, bounded).action == doctest::Approx(4.0));
        CHECK(naive_p_decide(0.0, bounded).action == doctest::Approx(4.0));
    }
}

TEST_CASE("max-compatible rule tables") {
    auto inst = egnp_test::three_outcome_instance();
    auto rule = max_compatible_rule(inst.problem, inst.evariable);
    CHECK(rule.table == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(is_compatible(inst.problem, rule, inst.evariable));
}

}  // TEST_SUITE
