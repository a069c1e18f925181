#include "riskcap/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace riskcap {

const char* reason_name(Reason r) {
    switch (r) {
        case Reason::None: return "none";
        case Reason::VarStuckMass: return "VarStuckMass";
        case Reason::VarBottomless: return "VarBottomless";
        case Reason::TvarTailStuck: return "TvarTailStuck";
        case Reason::ShortfallCeiling: return "ShortfallCeiling";
        case Reason::ScenarioStuck: return "ScenarioStuck";
        case Reason::ScenarioBottomless: return "ScenarioBottomless";
    }
    return "?";
}

bool ExtendedValue::less(const ExtendedValue& a, const ExtendedValue& b, double slack) {
    if (a.tag == Tag::MinusInf) return b.tag != Tag::MinusInf;
    if (a.tag == Tag::PlusInf) return false;
    if (b.tag == Tag::PlusInf) return true;
    if (b.tag == Tag::MinusInf) return false;
    return a.value + slack < b.value;
}

std::string ExtendedValue::to_string() const {
    if (tag == Tag::PlusInf) return "+inf";
    if (tag == Tag::MinusInf) return "-inf";
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

namespace {

void require_asset(const ScenarioSpace& space, const EligibleAsset& asset) {
    require_length(space, asset.payoff, "asset payoff");
}

// Probability of {X < 0} intersected with {S_T = 0}: the mass no amount of
// the asset can repair.
double stuck_mass(const ScenarioSpace& space, const Vec& x, const Vec& s) {
    double mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (s[i] == 0.0 && x[i] < 0.0) mass += space.prob(i);
    return mass;
}

double positive_payoff_mass(const ScenarioSpace& space, const Vec& s) {
    double mass = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] > 0.0) mass += space.prob(i);
    return mass;
}

// Exact limit of TVaR_alpha(X + (m/S_0) S_T) as m -> +inf: the alpha-tail of
// the restriction to {S_T = 0}, or -inf when that set is too small to fill
// the tail.
double tvar_limit_at_plus_inf(const ScenarioSpace& space, const Vec& x, const Vec& s, double alpha) {
    std::vector<std::pair<double, double>> zero_block; // (x, p) on {s = 0}
    double zero_mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (s[i] == 0.0) {
            zero_block.emplace_back(x[i], space.prob(i));
            zero_mass += space.prob(i);
        }
    }
    if (zero_mass < alpha) return -std::numeric_limits<double>::infinity();
    std::sort(zero_block.begin(), zero_block.end());
    double remaining = alpha;
    double acc = 0.0;
    for (const auto& [value, mass] : zero_block) {
        const double w = std::min(mass, remaining);
        acc += w * (-value);
        remaining -= w;
        if (remaining <= 0.0) break;
    }
    return acc / alpha;
}

} // namespace

Classification classify_finiteness(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                   const Vec& x, const EligibleAsset& asset) {
    require_length(space, x, "position");
    require_asset(space, asset);
    const Vec& s = asset.payoff;

    switch (spec.family()) {
        case Family::VaR: {
            const double stuck = stuck_mass(space, x, s);
            if (positive_payoff_mass(space, s) + stuck <= spec.alpha())
                return {ExtendedValue::Tag::MinusInf, Reason::VarBottomless};
            if (stuck > spec.alpha()) return {ExtendedValue::Tag::PlusInf, Reason::VarStuckMass};
            return {ExtendedValue::Tag::Finite, Reason::None};
        }
        case Family::TVaR: {
            const double limit = tvar_limit_at_plus_inf(space, x, s, spec.alpha());
            if (limit > 0.0) return {ExtendedValue::Tag::PlusInf, Reason::TvarTailStuck};
            return {ExtendedValue::Tag::Finite, Reason::None};
        }
        case Family::Shortfall: {
            const Utility& u = spec.utility();
            const double pos_mass = positive_payoff_mass(space, s);
            if (!u.bounded_above() && pos_mass > 0.0) return {ExtendedValue::Tag::Finite, Reason::None};
            double sup_h = pos_mass * u.sup_value();
            for (std::size_t i = 0; i < x.size(); ++i)
                if (s[i] == 0.0) sup_h += space.prob(i) * u.evaluate(x[i]);
            if (sup_h < spec.alpha()) return {ExtendedValue::Tag::PlusInf, Reason::ShortfallCeiling};
            if (sup_h == spec.alpha() && !u.attains_sup())
                return {ExtendedValue::Tag::PlusInf, Reason::ShortfallCeiling};
            return {ExtendedValue::Tag::Finite, Reason::None};
        }
        case Family::Scenario: {
            const EventMask& ev = spec.event();
            bool touches_positive = false;
            bool nonnegative = true;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (!ev.contains(i)) continue;
                if (s[i] == 0.0 && x[i] < 0.0) return {ExtendedValue::Tag::PlusInf, Reason::ScenarioStuck};
                if (s[i] > 0.0) touches_positive = true;
                if (x[i] < 0.0) nonnegative = false;
            }
            if (!touches_positive && nonnegative)
                return {ExtendedValue::Tag::MinusInf, Reason::ScenarioBottomless};
            return {ExtendedValue::Tag::Finite, Reason::None};
        }
        case Family::Expectation:
            return {ExtendedValue::Tag::Finite, Reason::None};
    }
    return {ExtendedValue::Tag::Finite, Reason::None};
}

namespace {

RhoResult closed(double value) {
    return RhoResult{ExtendedValue::finite(value), RhoResult::Method::ClosedForm, 0, 0.0};
}

RhoResult var_closed_form(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                          const EligibleAsset& asset) {
    const Vec& s = asset.payoff;
    const double stuck = stuck_mass(space, x, s);

    // Candidate breakpoints m_i = -S_0 x_i / s_i: coordinate i flips from
    // failing to fixed exactly there. g is evaluated by comparing m against
    // breakpoints, never by re-deriving the profile in floating point.
    std::vector<std::pair<double, double>> breakpoints; // (m_i, mass), merged
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (s[i] > 0.0) breakpoints.emplace_back(-asset.price * x[i] / s[i], space.prob(i));
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& b : breakpoints) {
        if (!merged.empty() && merged.back().first == b.first)
            merged.back().second += b.second;
        else
            merged.push_back(b);
    }
    // Failure mass strictly above each breakpoint, scanned ascending; the
    // right-continuous g drops exactly at breakpoints, so the infimum is
    // attained at the first one where g fits under alpha.
    double above = 0.0;
    for (const auto& b : merged) above += b.second;
    for (const auto& [m, mass] : merged) {
        above -= mass; // coordinates with m_i <= m are fixed at m
        if (above + stuck <= spec.alpha()) return closed(m);
    }
    throw InternalError("classification/profile inconsistency in VaR closed form");
}

RhoResult bisection_rho(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                        const EligibleAsset& asset, double tol) {
    const Vec& s = asset.payoff;
    const double s0 = asset.price;

    Vec profile(x.size());
    auto acceptable = [&](double m) {
        for (std::size_t i = 0; i < x.size(); ++i) profile[i] = x[i] + (m / s0) * s[i];
        return is_acceptable(spec, space, profile);
    };

    double max_abs_x = 0.0;
    for (double v : x) max_abs_x = std::max(max_abs_x, std::abs(v));
    const double seed = s0 * (1.0 + max_abs_x / asset.min_positive_payoff());

    int iterations = 0;
    double lo, hi;
    if (acceptable(-seed)) {
        hi = -seed;
        lo = -2.0 * seed;
        while (acceptable(lo)) {
            hi = lo;
            lo *= 2.0;
            if (++iterations > 128) throw InternalError("classification/profile inconsistency (lower bracket)");
        }
    } else {
        lo = -seed;
        hi = seed;
        while (!acceptable(hi)) {
            lo = hi;
            hi *= 2.0;
            if (++iterations > 128) throw InternalError("classification/profile inconsistency (upper bracket)");
        }
    }

    // Bisect the monotone acceptance predicate; converging on the predicate
    // rather than a root keeps flat zero-plateaus honest (left edge wins).
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break; // denormal-width bracket
        if (acceptable(mid))
            hi = mid;
        else
            lo = mid;
        ++iterations;
    }
    return RhoResult{ExtendedValue::finite(lo), RhoResult::Method::Bisection, iterations, hi - lo};
}

} // namespace

RhoResult rho(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
              const EligibleAsset& asset, double tol) {
    if (!(tol > 0.0)) throw ValidationError("tolerance must be strictly positive");
    const Classification cls = classify_finiteness(spec, space, x, asset);
    if (cls.tag == ExtendedValue::Tag::PlusInf)
        return RhoResult{ExtendedValue::plus_inf(cls.reason), RhoResult::Method::ClosedForm, 0, 0.0};
    if (cls.tag == ExtendedValue::Tag::MinusInf)
        return RhoResult{ExtendedValue::minus_inf(cls.reason), RhoResult::Method::ClosedForm, 0, 0.0};

    const Vec& s = asset.payoff;
    switch (spec.family()) {
        case Family::VaR:
            return var_closed_form(spec, space, x, asset);
        case Family::Scenario: {
            const EventMask& ev = spec.event();
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < x.size(); ++i)
                if (ev.contains(i) && s[i] > 0.0) best = std::max(best, -x[i] / s[i]);
            return closed(asset.price * best);
        }
        case Family::Expectation: {
            const double es = expectation(space, s);
            return closed(asset.price * (spec.alpha() - expectation(space, x)) / es);
        }
        case Family::TVaR:
        case Family::Shortfall:
            return bisection_rho(spec, space, x, asset, tol);
    }
    throw InternalError("unreachable family");
}

std::vector<RhoResult> rho_batch(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                 const std::vector<Vec>& xs, const EligibleAsset& asset, double tol) {
    std::vector<RhoResult> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(rho(spec, space, x, asset, tol));
    return out;
}

std::optional<double> lipschitz_bound(const ScenarioSpace& space, const EligibleAsset& asset) {
    require_asset(space, asset);
    const double m = asset.min_payoff();
    if (m > 0.0) return asset.price / m;
    return std::nullopt;
}

} // namespace riskcap
