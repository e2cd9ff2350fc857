#include "egnp/gnp.hpp"

#include "egnp/rules.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace egnp;

namespace {

DecisionRule table_rule(std::vector<std::vector<int>> t, std::string tag = "table") {
    DecisionRule r;
    r.table = std::move(t);
    r.tag = std::move(tag);
    return r;
}

}  // namespace

TEST_SUITE("gnp") {

TEST_CASE("rational helpers") {
    CHECK(rat_str(rat_parse("39/40")) == "39/40");
    CHECK(rat_parse("0.5") == Rat(1, 2));
    CHECK(rat_parse("-3") == Rat(-3));
    CHECK(rat_decimal(Rat(13, 5)) == "2.6");
    CHECK(rat_decimal(Rat(39, 40)) == "0.975");
    CHECK(rat_decimal(Rat(1, 3)) == "1/3");
    CHECK(rat_from_double(0.25) == Rat(1, 4));
    CHECK(rat_from_double(0.1) != Rat(1, 10));  // 0.1 is not a binary fraction
    CHECK_THROWS_AS(rat_parse("x/y"), std::invalid_argument);
}

TEST_CASE("compatibility on the three-outcome instance") {
    auto inst = egnp_test::three_outcome_instance();
    // zero-loss rule against any e-variable
    CHECK(is_compatible(inst.problem, table_rule({{0, 0, 0}}), {Rat(0), Rat(0), Rat(0)}));
    // delta(0)=0, delta(10)=9, delta(20)=19 against S(y)=y
    CHECK(is_compatible(inst.problem, table_rule({{0, 1, 2}}), inst.evariable));
    // delta'(20)=21 exceeds S(20)=20
    CHECK_FALSE(is_compatible(inst.problem, table_rule({{0, 1, 3}}), inst.evariable));
    // unknown shapes are structural errors
    CHECK_THROWS_AS(is_compatible(inst.problem, table_rule({{0, 1}}), inst.evariable),
                    structural_error);
}

TEST_CASE("compatibility rescales with the budget") {
    auto inst = egnp_test::three_outcome_instance();
    auto rule = table_rule({{0, 1, 3}});
    CHECK_FALSE(is_compatible(inst.problem, rule, inst.evariable, {Rat(1)}));
    CHECK(is_compatible(inst.problem, rule, inst.evariable, {Rat(2)}));
}

TEST_CASE("exact risk of simple rules") {
    auto inst = egnp_test::three_outcome_instance();
    auto sel = constant_selector(inst.problem, "b1");
    CHECK(exact_type_one_risk(inst.problem, table_rule({{0, 0, 0}}), sel).value == 0);
    auto risk = exact_type_one_risk(inst.problem, table_rule({{0, 1, 3}}), sel);
    CHECK(risk.value == Rat(39, 40));
    CHECK(risk.str() == "39/40");
}

TEST_CASE("infinite losses charge infinite risk, zero-mass ones do not") {
    auto inst = egnp_test::three_outcome_instance();
    auto& loss = inst.problem.losses[0];
    loss.actions.labels.emplace_back(100);
    loss.loss0.push_back(Ext::infinity());
    inst.problem.validate();
    auto sel = constant_selector(inst.problem, "b1");
    CHECK(exact_type_one_risk(inst.problem, table_rule({{0, 1, 4}}), sel).infinite);

    inst.problem.null.pmfs[0].p = {Rat(39, 40), Rat(1, 40), Rat(0)};
    CHECK_FALSE(exact_type_one_risk(inst.problem, table_rule({{0, 1, 4}}), sel).infinite);
}

TEST_CASE("risk scales linearly with losses and budget together") {
    auto inst = egnp_test::three_outcome_instance();
    auto sel = constant_selector(inst.problem, "b1");
    auto rule = table_rule({{0, 1, 2}});
    Rat lambda(7, 3);
    auto scaled = scale_losses(inst.problem, lambda);
    auto base = exact_type_one_risk(inst.problem, rule, sel);
    auto big = exact_type_one_risk(scaled, rule, sel);
    CHECK(big.value == lambda * base.value);
    // verdicts unchanged when S*ell scales along
    std::vector<Rat> s = inst.evariable;
    CHECK(is_compatible(inst.problem, rule, s, {Rat(1)}) ==
          is_compatible(scaled, rule, s, {lambda}));
}

TEST_CASE("enlarge_with_id appends the identity loss") {
    auto inst = egnp_test::three_outcome_instance();
    auto out = enlarge_with_id(inst.problem, inst.evariable);
    REQUIRE(out.losses.size() == 2);
    CHECK(out.losses[0].id == "b1");  // original untouched
    CHECK(out.losses[1].actions.labels == std::vector<Rat>{Rat(0), Rat(10), Rat(20)});
    for (std::size_t a = 0; a < 3; ++a)
        CHECK(out.losses[1].loss0[a].v == out.losses[1].actions.labels[a]);

    SUBCASE("constant e-variable gives a single-action loss") {
        auto flat = enlarge_with_id(inst.problem, {Rat(1), Rat(1), Rat(1)});
        CHECK(flat.losses[1].actions.labels == std::vector<Rat>{Rat(1)});
    }
    SUBCASE("repeat enlargement picks a fresh id") {
        auto twice = enlarge_with_id(out, inst.evariable);
        CHECK(twice.losses.size() == 3);
        CHECK(twice.losses[2].id != twice.losses[1].id);
        CHECK(twice.losses[2].loss0.size() == twice.losses[1].loss0.size());
    }
}

TEST_CASE("problem json round trip") {
    auto inst = egnp_test::three_outcome_instance();
    std::string text = problem_to_json(inst.problem, inst.evariable);
    ProblemFile pf = parse_problem_json(text, "roundtrip");
    CHECK(pf.problem.null.outcomes == inst.problem.null.outcomes);
    CHECK(pf.problem.null.pmfs[0].p == inst.problem.null.pmfs[0].p);
    CHECK(pf.problem.losses[0].actions.labels == inst.problem.losses[0].actions.labels);
    REQUIRE(pf.evariable.has_value());
    CHECK(*pf.evariable == inst.evariable);
}

TEST_CASE("problem json accepts num/den strings and rejects malformed input") {
    auto pf = parse_problem_json(R"({
        "outcomes": [0, 10, 20],
        "pmfs": [{"id": "P0", "p": ["37/40", "1/20", "1/40"]}],
        "losses": [{"id": "b1", "actions": [0, 9, 19, 21], "loss0": [0, 9, 19, 21]}]
    })");
    CHECK(pf.problem.null.pmfs[0].p[0] == Rat(37, 40));
    CHECK_FALSE(pf.evariable.has_value());

    CHECK_THROWS_AS(parse_problem_json("{"), structural_error);
    CHECK_THROWS_AS(parse_problem_json("{\"outcomes\": [1]}"), structural_error);
    CHECK_THROWS_AS(parse_problem_json(R"({
        "outcomes": [0, 1],
        "pmfs": [{"id": "P0", "p": ["1/2", "1/3"]}],
        "losses": [{"id": "b", "actions": [0], "loss0": [0]}]
    })"),
                    structural_error);  // pmf does not sum to 1
}

TEST_CASE("validation catches structural defects") {
    auto inst = egnp_test::three_outcome_instance();
    auto broken = inst.problem;
    broken.losses.push_back(broken.losses[0]);  // duplicate id
    CHECK_THROWS_AS(broken.validate(), structural_error);

    TypeOneLoss bad;
    bad.id = "bad";
    bad.actions.labels = {Rat(0), Rat(1)};
    bad.loss0 = {Ext(Rat(2)), Ext(Rat(1))};
    CHECK_THROWS_AS(bad.validate(), structural_error);
}

}  // TEST_SUITE
