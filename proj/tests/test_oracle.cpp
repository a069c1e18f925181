#include <doctest.h>

#include <cmath>

#include "riskcap/oracle.hpp"

using namespace riskcap;

namespace {
const ScenarioSpace kFix({0.25, 0.25, 0.25, 0.25});
const Vec kXStar{-2, -1, 1, 3};
const EligibleAsset kSStar(0.9, {1, 1, 1, 0});
} // namespace

TEST_CASE("grid oracle recovers the fixture var requirement") {
    const auto r = oracle::rho_grid_oracle(AcceptanceSpec::var(0.3), kFix, kXStar, kSStar, -10.0,
                                           10.0, 2'000'000);
    CHECK(r.kind == oracle::GridResult::Kind::Value);
    CHECK(std::abs(r.value - 0.9) <= 1e-5);
}

TEST_CASE("grid oracle sentinels on infinite instances") {
    const auto stuck = oracle::rho_grid_oracle(AcceptanceSpec::var(0.2), kFix, {1, 1, 1, -1},
                                               kSStar, -1e6, 1e6, 100'000);
    CHECK(stuck.kind == oracle::GridResult::Kind::AllReject);

    const EligibleAsset flipped(1.0, {0, 0, 1, 1});
    const auto bottomless = oracle::rho_grid_oracle(AcceptanceSpec::var(0.5), kFix, {1, 1, 0, 0},
                                                    flipped, -1e6, 1e6, 100'000);
    CHECK(bottomless.kind == oracle::GridResult::Kind::AllAccept);
}

TEST_CASE("grid oracle input guards") {
    CHECK_THROWS_AS(
        oracle::rho_grid_oracle(AcceptanceSpec::var(0.3), kFix, kXStar, kSStar, 1.0, -1.0, 100),
        ValidationError);
    CHECK_THROWS_AS(
        oracle::rho_grid_oracle(AcceptanceSpec::var(0.3), kFix, kXStar, kSStar, -1.0, 1.0, 1),
        ValidationError);
    CHECK_THROWS_AS(oracle::rho_grid_oracle(AcceptanceSpec::var(0.3), kFix, kXStar, kSStar, -1.0,
                                            1.0, 20'000'000),
                    ValidationError);
}

TEST_CASE("integral oracle equals the exact tail average") {
    CHECK(oracle::tvar_integral_oracle(kFix, kXStar, 0.5, 100) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(oracle::tvar_integral_oracle(kFix, kXStar, 0.2, 100) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(oracle::tvar_integral_oracle(kFix, kXStar, 0.25, 37) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("perturbation oracle and the interior rule agree") {
    CHECK(oracle::perturbation_interior_oracle(AcceptanceSpec::tvar(0.5), kFix, {1, 1, 1, 1}, 1e-6));
    // (-1, 0, 2, 4) sits on the VaR(0.3) boundary: the perturbation dropping
    // the zero coordinate is rejected.
    CHECK(!oracle::perturbation_interior_oracle(AcceptanceSpec::var(0.3), kFix, {-1, 0, 2, 4}, 1e-6));
    CHECK(!interior_membership(AcceptanceSpec::var(0.3), kFix, {-1, 0, 2, 4}));
    CHECK(oracle::perturbation_interior_oracle(
        AcceptanceSpec::scenario(EventMask::from_indices(4, {0, 1})), kFix, {1, 1, -5, 0}, 1e-6));
}
