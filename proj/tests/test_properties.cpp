#include <doctest.h>

#include <cmath>

#include "riskcap/properties.hpp"

using namespace riskcap;

namespace {
const ScenarioSpace kFix({0.25, 0.25, 0.25, 0.25});
const Vec kXStar{-2, -1, 1, 3};
const EligibleAsset kSStar(0.9, {1, 1, 1, 0});
const EligibleAsset kSDagger(1.0, {2, 1, 1, 0.5});
} // namespace

TEST_CASE("tvar threshold criterion") {
    const EligibleAsset rich(0.8, {1, 1, 1, 0.5});
    const auto no = cash_subadditivity_report(AcceptanceSpec::tvar(0.5), kFix, rich);
    CHECK(no.verdict == CashSubVerdict::Verdict::No);
    CHECK(no.criterion == CashSubCriterion::TVaRThreshold);

    const EligibleAsset cheap(0.7, {1, 1, 1, 0.5});
    const auto yes = cash_subadditivity_report(AcceptanceSpec::tvar(0.5), kFix, cheap);
    CHECK(yes.verdict == CashSubVerdict::Verdict::Yes);
    CHECK(yes.criterion == CashSubCriterion::TVaRThreshold);
}

TEST_CASE("expectation price criterion") {
    const EligibleAsset expensive(0.9, {1, 1, 1, 0.5});
    const auto no = cash_subadditivity_report(AcceptanceSpec::expectation(0.0), kFix, expensive);
    CHECK(no.verdict == CashSubVerdict::Verdict::No);
    CHECK(no.criterion == CashSubCriterion::ExpectationPrice);

    const EligibleAsset fair(0.8, {1, 1, 1, 0.5});
    const auto yes = cash_subadditivity_report(AcceptanceSpec::expectation(0.0), kFix, fair);
    CHECK(yes.verdict == CashSubVerdict::Verdict::Yes);
}

TEST_CASE("scenario overlap criterion") {
    const auto spec12 = AcceptanceSpec::scenario(EventMask::from_indices(4, {0, 1}));
    const auto yes = cash_subadditivity_report(spec12, kFix, kSStar);
    CHECK(yes.verdict == CashSubVerdict::Verdict::Yes);
    CHECK(yes.criterion == CashSubCriterion::ScenarioOverlap);

    const auto spec4 = AcceptanceSpec::scenario(EventMask::from_indices(4, {0, 3}));
    const auto no = cash_subadditivity_report(spec4, kFix, kSStar);
    CHECK(no.verdict == CashSubVerdict::Verdict::No);
}

TEST_CASE("no capital at risk dominates every family") {
    const EligibleAsset safe(0.5, {1, 1, 1, 0.5});
    const auto v = cash_subadditivity_report(AcceptanceSpec::var(0.3), kFix, safe);
    CHECK(v.verdict == CashSubVerdict::Verdict::Yes);
    CHECK(v.criterion == CashSubCriterion::SufficientNoCapitalAtRisk);
}

TEST_CASE("var falsifier finds a defaultable-bond witness") {
    const auto verdict = cash_subadditivity_report(AcceptanceSpec::var(0.3), kFix, kSStar, 10000, 42);
    CHECK(verdict.verdict == CashSubVerdict::Verdict::No);
    CHECK(verdict.criterion == CashSubCriterion::EmpiricalCounterexample);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->gap > 0.0);

    // Re-verify the witness through the engine on both sides.
    const auto& w = *verdict.witness;
    Vec cash(4), via(4);
    for (std::size_t i = 0; i < 4; ++i) {
        cash[i] = w.x[i] + w.lambda;
        via[i] = w.x[i] + (w.lambda / kSStar.price) * kSStar.payoff[i];
    }
    const auto rc = rho(AcceptanceSpec::var(0.3), kFix, cash, kSStar).value;
    const auto rv = rho(AcceptanceSpec::var(0.3), kFix, via, kSStar).value;
    REQUIRE(rc.is_finite());
    REQUIRE(rv.is_finite());
    CHECK(rv.value - rc.value == doctest::Approx(w.gap).epsilon(1e-9));
}

TEST_CASE("falsifier is deterministic under a fixed seed") {
    const auto a = falsify_cash_subadditivity(AcceptanceSpec::var(0.3), kFix, kSStar, 5000, 42);
    const auto b = falsify_cash_subadditivity(AcceptanceSpec::var(0.3), kFix, kSStar, 5000, 42);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->x == b->x);
    CHECK(a->lambda == b->lambda);
}

TEST_CASE("numeraire identity on a payoff bounded away from zero") {
    const auto var = check_numeraire_identity(AcceptanceSpec::var(0.3), kFix, kXStar, kSDagger);
    CHECK(var.pass);
    CHECK(var.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(var.rhs == doctest::Approx(1.0).epsilon(1e-9));

    const auto sc = check_numeraire_identity(
        AcceptanceSpec::scenario(EventMask::from_indices(4, {0, 1})), kFix, kXStar, kSDagger);
    CHECK(sc.pass);
    CHECK(sc.lhs == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(check_numeraire_identity(AcceptanceSpec::var(0.3), kFix, kXStar, kSStar),
                    ValidationError);
    CHECK_THROWS_AS(check_numeraire_identity(AcceptanceSpec::tvar(0.5), kFix, kXStar, kSDagger),
                    ValidationError);
}

TEST_CASE("axiom suite passes for tvar on the fixture") {
    const AxiomReport report = axiom_suite(AcceptanceSpec::tvar(0.5), kFix, kSStar, 1000, 42);
    CHECK(report.all_claimed_pass());
    for (const auto& a : report.axioms) {
        INFO(a.name);
        if (a.claimed) {
            CHECK(a.failures == 0);
            CHECK(a.worst_violation <= 3e-9);
        }
    }
}

TEST_CASE("axiom suite flags var convexity as unclaimed and violated") {
    const AxiomReport report = axiom_suite(AcceptanceSpec::var(0.3), kFix, kSStar, 200, 42);
    CHECK(report.all_claimed_pass());
    bool found = false;
    for (const auto& a : report.axioms) {
        if (a.name == "convexity") {
            found = true;
            CHECK(!a.claimed);
            CHECK(a.failures > 0);
        }
    }
    CHECK(found);
}

TEST_CASE("axiom suite homogeneity for the coherent expectation cone") {
    const AxiomReport report = axiom_suite(AcceptanceSpec::expectation(0.0), kFix, kSStar, 500, 42);
    CHECK(report.all_claimed_pass());
    for (const auto& a : report.axioms)
        if (a.name == "positive_homogeneity") {
            CHECK(a.claimed);
            CHECK(a.failures == 0);
        }
}
