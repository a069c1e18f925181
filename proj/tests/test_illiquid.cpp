#include <doctest.h>

#include <cmath>
#include <limits>

#include "riskcap/illiquid.hpp"

using namespace riskcap;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const ScenarioSpace kFix({0.25, 0.25, 0.25, 0.25});
const Vec kXStar{-2, -1, 1, 3};
const EligibleAsset kSStar(0.9, {1, 1, 1, 0});

PricingFunctional two_slope() {
    return PricingFunctional::make({{1.0, 0.9}, {kInf, 1.8}}, {}, 0.9);
}

PricingFunctional jumpy() {
    return PricingFunctional::make({{kInf, 0.9}}, {{2.0, 0.5}}, 0.9);
}
} // namespace

TEST_CASE("pricing functional validation") {
    CHECK_THROWS_AS(PricingFunctional::make({{kInf, 0.9}}, {}, 1.0), ValidationError); // anchor
    CHECK_THROWS_AS(PricingFunctional::make({{1.0, 0.9}}, {}, 0.9), ValidationError);  // bounded
    CHECK_THROWS_AS(PricingFunctional::make({{kInf, -1.0}}, {}, 0.9), ValidationError);
    CHECK_THROWS_AS(PricingFunctional::make({{kInf, 0.9}}, {{1.0, 0.0}}, 0.9), ValidationError);
    CHECK_THROWS_AS(PricingFunctional::make({{kInf, 0.9}}, {{2.0, 0.1}, {2.0, 0.2}}, 0.9),
                    ValidationError);
    CHECK_NOTHROW(PricingFunctional::make({{kInf, 0.7}}, {{0.5, 0.2}}, 0.9)); // jump feeds pi(1)
}

TEST_CASE("pricing functional evaluation") {
    const PricingFunctional lin = PricingFunctional::linear(0.9);
    CHECK(lin.eval(2.0) == doctest::Approx(1.8));
    CHECK(lin.eval(-1.0) == doctest::Approx(-0.9));
    CHECK(lin.eval(0.0) == 0.0);

    const PricingFunctional ts = two_slope();
    CHECK(ts.eval(1.0) == doctest::Approx(0.9));
    CHECK(ts.eval(1.5) == doctest::Approx(1.8));
    CHECK(ts.eval(-2.0) == doctest::Approx(-1.8));

    const PricingFunctional j = jumpy();
    CHECK(j.eval(2.0) == doctest::Approx(2.3)); // right-continuous at the jump
    CHECK(j.left_limit(2.0) == doctest::Approx(1.8));
    CHECK(j.eval(1.999) == doctest::Approx(0.9 * 1.999));
    CHECK(j.eval(3.0) == doctest::Approx(0.9 * 3.0 + 0.5));

    // A jump below zero is subtracted when integrating leftwards through it.
    const PricingFunctional neg =
        PricingFunctional::make({{kInf, 0.9}}, {{-1.0, 0.3}}, 0.9);
    CHECK(neg.eval(-2.0) == doctest::Approx(-1.8 - 0.3));
    CHECK(neg.eval(-0.5) == doctest::Approx(-0.45));
}

TEST_CASE("pricing functional json round trip") {
    const PricingFunctional j = jumpy();
    const PricingFunctional back = PricingFunctional::from_json(j.to_json(), 0.9);
    CHECK(back.to_json() == j.to_json());
    CHECK_THROWS_AS(PricingFunctional::from_json(R"({"segments":[],"extra":1})", 0.9),
                    ValidationError);
    CHECK_THROWS_AS(PricingFunctional::from_json("{bad", 0.9), ParseError);
}

TEST_CASE("illiquid composition on the fixture") {
    const ExtendedValue v =
        rho_illiquid(AcceptanceSpec::tvar(0.5), kFix, kXStar, kSStar, two_slope(), 1e-10);
    REQUIRE(v.is_finite());
    CHECK(v.value == doctest::Approx(1.8).epsilon(1e-8));

    // +inf passes through, -inf maps to the lower pi limit.
    const auto stuck = rho_illiquid(AcceptanceSpec::tvar(0.2), kFix, {0, 0, 0, -10}, kSStar,
                                    two_slope(), 1e-10);
    CHECK(stuck.is_plus_inf());
}

TEST_CASE("quasiconvexity holds for convex families") {
    const auto report = check_quasiconvexity(AcceptanceSpec::tvar(0.5), kFix, kSStar, two_slope(),
                                             200, 42, 1e-9);
    CHECK(report.family_convex);
    CHECK(!report.violation_found);
    CHECK(report.consistent());
}

TEST_CASE("var quasiconvexity violation is found and verified") {
    const EligibleAsset unit(1.0, {1, 1, 1, 1});
    const PricingFunctional id = PricingFunctional::linear(1.0);
    const auto report =
        check_quasiconvexity(AcceptanceSpec::var(0.25), kFix, unit, id, 200, 42, 1e-9);
    CHECK(!report.family_convex);
    CHECK(report.violation_found);
    CHECK(report.consistent());
    REQUIRE(report.witness.has_value());
    const auto& w = *report.witness;
    CHECK(w.lhs > w.rhs);

    // Engine re-verification of the reported triple.
    Vec mix(4);
    for (std::size_t i = 0; i < 4; ++i) mix[i] = w.t * w.x[i] + (1.0 - w.t) * w.y[i];
    const auto lhs = rho_illiquid(AcceptanceSpec::var(0.25), kFix, mix, unit, id, 1e-9);
    REQUIRE(lhs.is_finite());
    CHECK(lhs.value == doctest::Approx(w.lhs).epsilon(1e-9));
}

TEST_CASE("jump falsifier reproduces the worked example") {
    const auto w = falsify_cashsub_jump(AcceptanceSpec::tvar(0.5), kFix, kSStar, jumpy(), 0.2,
                                        1e-10);
    CHECK(w.lambda == 0.2);
    CHECK(w.x[0] == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(w.x[3] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(w.rho_pi_x == doctest::Approx(2.3).epsilon(1e-9));
    CHECK(w.rho_pi_shifted == doctest::Approx(1.62).epsilon(1e-9));
    CHECK(w.gap == doctest::Approx(0.68).epsilon(1e-9));
    CHECK(w.gap > w.lambda);
}

TEST_CASE("jump falsifier closed-form expectation analogue") {
    const auto w =
        falsify_cashsub_jump(AcceptanceSpec::expectation(0.0), kFix, kSStar, jumpy(), {}, 1e-10);
    CHECK(w.gap > w.lambda);
}

TEST_CASE("jump falsifier guards") {
    CHECK_THROWS_AS(falsify_cashsub_jump(AcceptanceSpec::var(0.3), kFix, kSStar, jumpy()),
                    ValidationError);
    CHECK_THROWS_AS(
        falsify_cashsub_jump(AcceptanceSpec::tvar(0.5), kFix, kSStar, PricingFunctional::linear(0.9)),
        ValidationError);
    CHECK_THROWS_AS(falsify_cashsub_jump(AcceptanceSpec::tvar(0.5), kFix, kSStar, jumpy(), 0.7),
                    ValidationError); // lambda must stay below the jump size
}
