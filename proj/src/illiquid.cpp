#include "riskcap/illiquid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

namespace riskcap {

using nlohmann::json;

namespace {
constexpr double kAnchorTol = 1e-9;
}

PricingFunctional PricingFunctional::make(std::vector<Segment> segments, std::vector<Jump> jumps,
                                          double asset_price) {
    if (segments.empty()) throw ValidationError("pricing functional needs at least one segment");
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (!(segments[k].slope > 0.0) || !std::isfinite(segments[k].slope))
            throw ValidationError("pricing segments must have strictly positive slope");
        if (k + 1 < segments.size()) {
            if (!std::isfinite(segments[k].upto))
                throw ValidationError("only the last segment may extend to infinity");
            if (k > 0 && !(segments[k].upto > segments[k - 1].upto))
                throw ValidationError("segment breakpoints must be strictly increasing");
        }
    }
    if (!std::isinf(segments.back().upto))
        throw ValidationError("last pricing segment must extend to +inf");
    std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.at < b.at; });
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        if (!std::isfinite(jumps[k].at)) throw ValidationError("jump location must be finite");
        if (!(jumps[k].size > 0.0)) throw ValidationError("jump size must be strictly positive");
        if (k > 0 && jumps[k].at == jumps[k - 1].at) throw ValidationError("duplicate jump location");
    }
    PricingFunctional pi(std::move(segments), std::move(jumps));
    const double at_one = pi.eval(1.0);
    if (std::abs(at_one - asset_price) > kAnchorTol) {
        throw ValidationError("pricing functional has pi(1) = " + std::to_string(at_one) +
                              ", expected the asset price");
    }
    return pi;
}

PricingFunctional PricingFunctional::linear(double asset_price) {
    if (!(asset_price > 0.0)) throw ValidationError("asset price must be strictly positive");
    return make({Segment{std::numeric_limits<double>::infinity(), asset_price}}, {}, asset_price);
}

double PricingFunctional::eval(double lambda) const {
    // Continuous part: integral of the slope from 0 to lambda (signed).
    double acc = 0.0;
    const double lo = std::min(0.0, lambda);
    const double hi = std::max(0.0, lambda);
    double left = -std::numeric_limits<double>::infinity();
    for (const auto& seg : segments_) {
        const double right = seg.upto;
        const double a = std::max(lo, left);
        const double b = std::min(hi, right);
        if (b > a) acc += seg.slope * (b - a);
        left = right;
        if (left >= hi) break;
    }
    if (lambda < 0.0) acc = -acc;
    // Jumps: right-continuous convention, pi(b) carries the jump at b.
    for (const auto& j : jumps_) {
        if (lambda >= 0.0) {
            if (j.at > 0.0 && j.at <= lambda) acc += j.size;
        } else {
            if (j.at > lambda && j.at <= 0.0) acc -= j.size;
        }
    }
    return acc;
}

double PricingFunctional::left_limit(double lambda) const {
    double v = eval(lambda);
    for (const auto& j : jumps_)
        if (j.at == lambda) v -= j.size;
    return v;
}

std::pair<ExtendedValue, ExtendedValue> PricingFunctional::limits() const {
    // Strictly positive slopes over unbounded end segments: both limits are
    // infinite for this representation.
    return {ExtendedValue::minus_inf(Reason::None), ExtendedValue::plus_inf(Reason::None)};
}

bool PricingFunctional::has_jump() const { return !jumps_.empty(); }

PricingFunctional PricingFunctional::from_json(const std::string& json_text, double asset_price) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("pricing JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("segments"))
        throw ValidationError("pricing JSON needs a 'segments' array");
    std::vector<Segment> segments;
    for (const auto& s : j.at("segments")) {
        double upto;
        if (s.contains("upto") && s.at("upto").is_string()) {
            if (s.at("upto").get<std::string>() != "inf")
                throw ValidationError("segment 'upto' must be a number or \"inf\"");
            upto = std::numeric_limits<double>::infinity();
        } else {
            upto = s.at("upto").get<double>();
        }
        segments.push_back({upto, s.at("slope").get<double>()});
    }
    std::vector<Jump> jumps;
    if (j.contains("jumps"))
        for (const auto& g : j.at("jumps")) jumps.push_back({g.at("at").get<double>(), g.at("size").get<double>()});
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "segments" && it.key() != "jumps")
            throw ValidationError("unexpected key '" + it.key() + "' in pricing JSON");
    return make(std::move(segments), std::move(jumps), asset_price);
}

std::string PricingFunctional::to_json() const {
    json j;
    j["segments"] = json::array();
    for (const auto& s : segments_) {
        json seg;
        seg["upto"] = std::isinf(s.upto) ? json("inf") : json(s.upto);
        seg["slope"] = s.slope;
        j["segments"].push_back(seg);
    }
    if (!jumps_.empty()) {
        j["jumps"] = json::array();
        for (const auto& g : jumps_) j["jumps"].push_back({{"at", g.at}, {"size", g.size}});
    }
    return j.dump();
}

ExtendedValue rho_illiquid(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                           const EligibleAsset& asset, const PricingFunctional& pi, double tol) {
    const RhoResult r = rho(spec, space, x, asset, tol);
    if (r.value.is_plus_inf()) return r.value; // inf over the empty set stays +inf
    if (r.value.is_minus_inf()) return pi.limits().first;
    // Compose at the acceptable end of the bracket (value + residual): the
    // infimum is attained there up to tol, and evaluating on the accepting
    // side keeps a jump that sits exactly at the infimum in the value.
    return ExtendedValue::finite(pi.eval((r.value.value + r.residual) / asset.price));
}

QuasiconvexReport check_quasiconvexity(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                       const EligibleAsset& asset, const PricingFunctional& pi,
                                       std::size_t samples, std::uint64_t seed, double tol) {
    if (samples < 1) throw ValidationError("need at least one sample");
    require_length(space, asset.payoff, "asset payoff");
    const std::size_t n = space.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xdist(-3.0, 3.0);
    std::uniform_real_distribution<double> tdist(0.05, 0.95);

    QuasiconvexReport report{spec.is_convex(), false, std::nullopt};

    auto probe = [&](const Vec& x, const Vec& y, double t) -> bool {
        const ExtendedValue rx = rho_illiquid(spec, space, x, asset, pi, tol);
        const ExtendedValue ry = rho_illiquid(spec, space, y, asset, pi, tol);
        const ExtendedValue rhs = ExtendedValue::less(rx, ry) ? ry : rx;
        Vec mix(n);
        for (std::size_t i = 0; i < n; ++i) mix[i] = t * x[i] + (1.0 - t) * y[i];
        const ExtendedValue lhs = rho_illiquid(spec, space, mix, asset, pi, tol);
        if (ExtendedValue::less(rhs, lhs, 3.0 * tol)) {
            report.violation_found = true;
            report.witness = QuasiconvexWitness{
                x, y, t,
                lhs.is_finite() ? lhs.value : std::numeric_limits<double>::infinity(),
                rhs.is_finite() ? rhs.value : std::numeric_limits<double>::infinity()};
            return true;
        }
        return false;
    };

    // Structured pairs first (for the VaR search these are the classic
    // positions failing in two different single states).
    if (!spec.is_convex()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                Vec x(n, 1.0), y(n, 1.0);
                x[i] = -2.0;
                y[j] = -2.0;
                for (double t : {0.5, 0.25, 0.75})
                    if (probe(x, y, t)) return report;
            }
        }
    }
    for (std::size_t k = 0; k < samples; ++k) {
        Vec x(n), y(n);
        for (double& v : x) v = xdist(rng);
        for (double& v : y) v = xdist(rng);
        if (probe(x, y, tdist(rng))) return report;
    }
    return report;
}

std::string QuasiconvexReport::to_json() const {
    json j;
    j["family_convex"] = family_convex;
    j["violation_found"] = violation_found;
    j["consistent"] = consistent();
    if (witness) {
        json w;
        w["x"] = witness->x;
        w["y"] = witness->y;
        w["t"] = witness->t;
        w["lhs"] = witness->lhs;
        w["rhs"] = witness->rhs;
        j["witness"] = w;
    }
    return j.dump();
}

JumpCashSubWitness falsify_cashsub_jump(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                        const EligibleAsset& asset, const PricingFunctional& pi,
                                        std::optional<double> lambda, double tol) {
    if (spec.family() != Family::TVaR && spec.family() != Family::Expectation)
        throw ValidationError("jump falsifier supports TVaR and expectation acceptance only");
    if (!pi.has_jump()) throw ValidationError("pricing functional is continuous: nothing to falsify");
    require_length(space, asset.payoff, "asset payoff");

    const auto& jump = pi.jumps().front();
    const double x0 = jump.at;
    const double gamma = jump.size;
    if (lambda && !(*lambda > 0.0 && *lambda < gamma))
        throw ValidationError("lambda must lie in (0, jump size)");

    const std::size_t n = space.size();
    const ExtendedValue r0 = rho(spec, space, Vec(n, 0.0), asset, tol).value;
    if (!r0.is_finite()) throw ValidationError("rho(0) must be finite for the jump construction");

    // X = xi S_T places rho(X) a hair above x0 S_0, so the jump is inside the
    // requirement; any cash bump below the jump size then drops pi past it.
    // The margin absorbs closed-form roundoff that could otherwise land one
    // ulp on the continuous side of the jump.
    constexpr double kLandingMargin = 1e-10;
    const double xi = r0.value / asset.price - x0 - kLandingMargin;
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = xi * asset.payoff[i];

    const ExtendedValue rho_pi_x = rho_illiquid(spec, space, x, asset, pi, tol);
    if (!rho_pi_x.is_finite()) throw InternalError("jump construction produced an infinite value");

    std::vector<double> candidates;
    if (lambda) candidates.push_back(*lambda);
    else candidates = {gamma / 2.0, gamma / 4.0, gamma / 8.0};

    for (double lam : candidates) {
        Vec shifted(n);
        for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] + lam;
        const ExtendedValue rho_pi_shifted = rho_illiquid(spec, space, shifted, asset, pi, tol);
        if (!rho_pi_shifted.is_finite()) continue;
        const double gap = rho_pi_x.value - rho_pi_shifted.value;
        if (gap > lam) {
            return JumpCashSubWitness{x, lam, rho_pi_x.value, rho_pi_shifted.value, gap, x0, gamma};
        }
    }
    throw InternalError("jump falsifier could not verify the constructed violation");
}

} // namespace riskcap
