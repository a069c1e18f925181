#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riskcap/acceptance.hpp"

namespace riskcap {

enum class Reason {
    None,
    VarStuckMass,       // P(X<0, S_T=0) exceeds alpha
    VarBottomless,      // P(S_T>0) + P(X<0, S_T=0) <= alpha
    TvarTailStuck,      // limiting alpha-tail over {S_T=0} stays positive
    ShortfallCeiling,   // sup_m E[u] < alpha (or = alpha, unattained)
    ScenarioStuck,      // x_i < 0 on a selected state with S_T = 0
    ScenarioBottomless, // event misses {S_T>0} and is already nonnegative
};

const char* reason_name(Reason r);

// Extended-real result of a capital computation.
struct ExtendedValue {
    enum class Tag { Finite, PlusInf, MinusInf };

    Tag tag = Tag::Finite;
    double value = 0.0; // meaningful only when finite
    Reason reason = Reason::None;

    static ExtendedValue finite(double v) { return {Tag::Finite, v, Reason::None}; }
    static ExtendedValue plus_inf(Reason r) { return {Tag::PlusInf, 0.0, r}; }
    static ExtendedValue minus_inf(Reason r) { return {Tag::MinusInf, 0.0, r}; }

    bool is_finite() const { return tag == Tag::Finite; }
    bool is_plus_inf() const { return tag == Tag::PlusInf; }
    bool is_minus_inf() const { return tag == Tag::MinusInf; }

    // Extended order: -inf < any finite < +inf.
    static bool less(const ExtendedValue& a, const ExtendedValue& b, double slack = 0.0);

    std::string to_string() const;
};

struct RhoResult {
    enum class Method { ClosedForm, Bisection };

    ExtendedValue value;
    Method method = Method::ClosedForm;
    int iterations = 0;
    double residual = 0.0; // final bracket width for bisection, 0 for closed forms
};

struct Classification {
    ExtendedValue::Tag tag;
    Reason reason;
};

// Exact per-instance classification from the limits of the membership profile
// m -> X + (m/S_0) S_T. Authoritative over the nonatomic all-X conditions.
Classification classify_finiteness(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                   const Vec& x, const EligibleAsset& asset);

// rho_{A,S}(X) = inf{m : X + (m/S_0) S_T in A}. Closed forms for VaR,
// Scenario and Expectation; certified monotone bisection (left-edge infimum)
// for TVaR and Shortfall.
RhoResult rho(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
              const EligibleAsset& asset, double tol = 1e-9);

std::vector<RhoResult> rho_batch(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                 const std::vector<Vec>& xs, const EligibleAsset& asset,
                                 double tol = 1e-9);

// S_0 / min_i s_i when the payoff is bounded away from zero; a sup-norm
// Lipschitz constant valid for every acceptance family.
std::optional<double> lipschitz_bound(const ScenarioSpace& space, const EligibleAsset& asset);

} // namespace riskcap
