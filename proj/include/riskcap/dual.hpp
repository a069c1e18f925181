#pragma once

#include <string>
#include <vector>

#include "riskcap/engine.hpp"
#include "riskcap/illiquid.hpp"

namespace riskcap {

// Nonnegative functional with psi(S_T) = S_0, lying in the dual cone of the
// acceptance set. Each certificate is a lower bound psi(-X) <= rho(X).
struct DualCertificate {
    Vec psi;

    double pay(const Vec& x) const; // psi(-X)
    std::string to_json() const;
};

struct DualDecomposition {
    std::vector<DualCertificate> certificates;
    // Densities supported on {S_T = 0}: recession directions certifying
    // rho = +inf whenever E_q[-X] > 0.
    std::vector<Vec> degenerate_directions;
};

// Vertex enumeration of the dual set for TVaR (density polytope
// {0 <= q_i <= p_i/alpha, sum q = 1}) and Scenario (scaled unit vectors on
// the event). Refuses n > 12 and unsupported families.
DualDecomposition dual_vertices(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                const EligibleAsset& asset);

// rho(X) = max over certificates of psi(-X); +inf when a degenerate
// direction pays, -inf when no certificate exists at all.
ExtendedValue dual_rho(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                       const EligibleAsset& asset);

// Illiquid variant: max of pi(psi(-X)/S_0); equals the composed primal by
// monotonicity of pi.
ExtendedValue dual_rho_illiquid(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                const Vec& x, const EligibleAsset& asset,
                                const PricingFunctional& pi);

} // namespace riskcap
