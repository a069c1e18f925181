#pragma once

#include <optional>
#include <string>

#include "riskcap/scenario.hpp"

namespace riskcap {

// Concave, nondecreasing, nonconstant utility with u(-inf) = -inf.
class Utility {
public:
    enum class Kind { Exponential, Linear, CappedLinear };

    static Utility exponential(double a); // u(x) = 1 - exp(-a x), a > 0
    static Utility linear();              // u(x) = x
    static Utility capped_linear(double cap); // u(x) = min(x, cap)

    Kind kind() const { return kind_; }
    double param() const { return param_; }

    double evaluate(double x) const;
    // Least upper bound of u; +inf for the linear utility.
    double sup_value() const;
    bool bounded_above() const;
    // Whether sup u = u(x) for some finite x (capped utilities only).
    bool attains_sup() const;
    double value_at_0() const { return evaluate(0.0); }

private:
    Utility(Kind kind, double param) : kind_(kind), param_(param) {}
    Kind kind_;
    double param_;
};

enum class Family { VaR, TVaR, Shortfall, Scenario, Expectation };

const char* family_name(Family f);

// Tagged member of the five implemented acceptance-set families, with the
// structural flags the engine and property suites consult.
class AcceptanceSpec {
public:
    static AcceptanceSpec var(double alpha);
    static AcceptanceSpec tvar(double alpha);
    static AcceptanceSpec shortfall(Utility u, double alpha);
    static AcceptanceSpec scenario(EventMask event);
    static AcceptanceSpec expectation(double alpha);

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    const Utility& utility() const;
    const EventMask& event() const;

    bool is_convex() const;
    bool is_coherent() const;
    bool is_conic() const;
    bool is_closed() const { return true; }

    std::string describe() const;

    // {"type": ..., "alpha": ..., "utility": {...}, "event": [...]}; unused keys forbidden.
    static AcceptanceSpec from_json(const std::string& json_text);
    std::string to_json() const;

private:
    AcceptanceSpec(Family f, double alpha, std::optional<Utility> u, std::optional<EventMask> event)
        : family_(f), alpha_(alpha), utility_(std::move(u)), event_(std::move(event)) {}

    Family family_;
    double alpha_;
    std::optional<Utility> utility_;
    std::optional<EventMask> event_;
};

// VaR_alpha(X) = inf{m : P(X + m < 0) <= alpha}, exact over the merged
// value/mass blocks; independent of input permutation.
double var_value(const ScenarioSpace& space, const Vec& x, double alpha);

// TVaR_alpha(X) = (1/alpha) * integral of VaR_beta over (0, alpha), via the
// exact tail average with a fractionally weighted boundary outcome.
double tvar_value(const ScenarioSpace& space, const Vec& x, double alpha);

// Sum of p_i * u(x_i); -inf when the utility overflows at a deeply negative entry.
double expected_utility(const ScenarioSpace& space, const Vec& x, const Utility& u);

double expectation(const ScenarioSpace& space, const Vec& x);

// Membership verdict with the non-strict comparisons of the defining sets.
bool is_acceptable(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x);

// Finite-space-exact interior verdict. For VaR the rule is P(X <= 0) <= alpha
// (non-strict): on a finite space a perturbation can only turn zeros negative,
// and those are already counted. For CappedLinear shortfall the strict
// expected-utility rule is sufficient only.
bool interior_membership(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x);

} // namespace riskcap
