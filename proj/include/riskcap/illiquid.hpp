#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskcap/engine.hpp"

namespace riskcap {

// Strictly increasing piecewise-linear pricing functional with finitely many
// upward jumps, anchored at pi(0) = 0. Stored values are right-continuous at
// jumps: pi(b) includes the jump at b, pi_left_limit exposes the lower value.
class PricingFunctional {
public:
    struct Segment {
        double upto;  // right endpoint (inclusive), +inf for the last segment
        double slope; // > 0
    };
    struct Jump {
        double at;
        double size; // > 0
    };

    // Segments must cover the line in increasing order; validated against the
    // paired asset price via pi(1) = S_0 (|error| <= 1e-9).
    static PricingFunctional make(std::vector<Segment> segments, std::vector<Jump> jumps,
                                  double asset_price);
    // pi(lambda) = S_0 * lambda, the liquid case.
    static PricingFunctional linear(double asset_price);

    double eval(double lambda) const;
    double left_limit(double lambda) const;
    // (pi(-inf), pi(+inf)); always infinite for this representation since
    // every slope is strictly positive over an unbounded segment.
    std::pair<ExtendedValue, ExtendedValue> limits() const;

    bool has_jump() const;
    const std::vector<Jump>& jumps() const { return jumps_; }
    const std::vector<Segment>& segments() const { return segments_; }

    // {"segments": [{"upto": f|"inf", "slope": f}], "jumps": [{"at": f, "size": f}]}
    static PricingFunctional from_json(const std::string& json_text, double asset_price);
    std::string to_json() const;

private:
    PricingFunctional(std::vector<Segment> segments, std::vector<Jump> jumps)
        : segments_(std::move(segments)), jumps_(std::move(jumps)) {}

    std::vector<Segment> segments_;
    std::vector<Jump> jumps_; // sorted by position
};

// rho_{A,S,pi}(X) = pi(rho_{A,S}(X) / S_0), with inf-over-empty-set = +inf
// and rho = -inf composing to pi(-inf).
ExtendedValue rho_illiquid(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                           const EligibleAsset& asset, const PricingFunctional& pi,
                           double tol = 1e-9);

struct QuasiconvexWitness {
    Vec x;
    Vec y;
    double t;
    double lhs; // rho_pi at the mixture
    double rhs; // max of the endpoint values
};

struct QuasiconvexReport {
    bool family_convex;
    bool violation_found;
    std::optional<QuasiconvexWitness> witness;

    // Consistent with theory: convex family and no violation, or nonconvex
    // family with an engine-verified violation in hand.
    bool consistent() const { return family_convex ? !violation_found : violation_found; }
    std::string to_json() const;
};

// Convex families: sampled quasiconvexity inequality. VaR: structured plus
// random search for a violating pair, reported as a witness.
QuasiconvexReport check_quasiconvexity(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                       const EligibleAsset& asset, const PricingFunctional& pi,
                                       std::size_t samples, std::uint64_t seed = 42,
                                       double tol = 1e-9);

struct JumpCashSubWitness {
    Vec x;
    double lambda;
    double rho_pi_x;       // pi value before the cash bump
    double rho_pi_shifted; // pi value after adding lambda * 1
    double gap;            // rho_pi_x - rho_pi_shifted, verified > lambda
    double jump_at;
    double jump_size;
};

// Builds X = xi * S_T landing rho exactly on a jump of pi and verifies the
// cash-subadditivity violation through the engine. Refuses continuous pi.
// TVaR and Expectation families only; lambda defaults to half the jump size.
JumpCashSubWitness falsify_cashsub_jump(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                        const EligibleAsset& asset, const PricingFunctional& pi,
                                        std::optional<double> lambda = std::nullopt,
                                        double tol = 1e-9);

} // namespace riskcap
