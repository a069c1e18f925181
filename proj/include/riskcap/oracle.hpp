#pragma once

#include "riskcap/acceptance.hpp"
#include "riskcap/scenario.hpp"

namespace riskcap::oracle {

// Brute-force references used by tests. These deliberately avoid every
// engine code path: membership is probed point by point.

struct GridResult {
    enum class Kind { Value, AllReject, AllAccept };
    Kind kind;
    double value = 0.0; // smallest accepting grid point when kind == Value
    double step = 0.0;
};

// Scans m over a uniform grid and returns the smallest accepting point.
// Sentinels tell the caller to widen the window. Grid capped at 1e7 points.
GridResult rho_grid_oracle(const AcceptanceSpec& spec, const ScenarioSpace& space,
                           const Vec& x, const EligibleAsset& asset,
                           double m_lo, double m_hi, std::size_t steps);

// Midpoint-rule integration of beta -> VaR_beta(X) over (0, alpha), divided
// by alpha. Panel edges are refined at cumulative-probability breakpoints,
// which makes the piecewise-constant integrand exact.
double tvar_integral_oracle(const ScenarioSpace& space, const Vec& x, double alpha,
                            std::size_t panels);

// True iff every +/-epsilon sign pattern over the coordinates stays
// acceptable (2^n probes; refuses n > 16).
bool perturbation_interior_oracle(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                  const Vec& x, double epsilon);

} // namespace riskcap::oracle
