#include "riskcap/dual.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace riskcap {

using nlohmann::json;

double DualCertificate::pay(const Vec& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) acc += psi[i] * (-x[i]);
    return acc;
}

std::string DualCertificate::to_json() const {
    json j;
    j["psi"] = psi;
    j["feasible"] = true;
    return j.dump();
}

namespace {

bool supported_on_zero_payoff(const Vec& q, const Vec& s) {
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] > 0.0 && s[i] > 0.0) return false;
    return true;
}

double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void push_unique(std::vector<Vec>& qs, Vec q) {
    for (const auto& existing : qs) {
        double dist = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) dist = std::max(dist, std::abs(existing[i] - q[i]));
        if (dist <= 1e-12) return;
    }
    qs.push_back(std::move(q));
}

// Vertices of {q : 0 <= q_i <= p_i/alpha, sum q = 1}: a saturated subset J
// with at most one fractional coordinate absorbing the remainder.
std::vector<Vec> tvar_density_vertices(const ScenarioSpace& space, double alpha) {
    const std::size_t n = space.size();
    std::vector<Vec> qs;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) mass += space.prob(i);
        if (mass > alpha) continue;
        const double remainder = 1.0 - mass / alpha;
        Vec q(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) q[i] = space.prob(i) / alpha;
        if (std::abs(remainder) <= 1e-12) {
            push_unique(qs, q);
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
            if ((mask >> k) & 1) continue;
            if (space.prob(k) / alpha < remainder) continue;
            Vec v = q;
            v[k] = remainder;
            push_unique(qs, std::move(v));
        }
    }
    return qs;
}

} // namespace

DualDecomposition dual_vertices(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                const EligibleAsset& asset) {
    require_length(space, asset.payoff, "asset payoff");
    if (space.size() > 12) throw ValidationError("dual enumeration refuses n > 12");

    DualDecomposition out;
    const Vec& s = asset.payoff;

    auto classify_density = [&](Vec q) {
        if (supported_on_zero_payoff(q, s)) {
            out.degenerate_directions.push_back(std::move(q));
            return;
        }
        const double eq_s = dot(q, s);
        Vec psi(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) psi[i] = (asset.price / eq_s) * q[i];
        out.certificates.push_back(DualCertificate{std::move(psi)});
    };

    switch (spec.family()) {
        case Family::TVaR:
            for (auto& q : tvar_density_vertices(space, spec.alpha())) classify_density(std::move(q));
            return out;
        case Family::Scenario: {
            const EventMask& ev = spec.event();
            for (std::size_t i = 0; i < space.size(); ++i) {
                if (!ev.contains(i)) continue;
                Vec q(space.size(), 0.0);
                q[i] = 1.0;
                classify_density(std::move(q));
            }
            return out;
        }
        default:
            throw ValidationError("dual enumeration supports TVaR and scenario acceptance only");
    }
}

ExtendedValue dual_rho(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                       const EligibleAsset& asset) {
    require_length(space, x, "position");
    const DualDecomposition dec = dual_vertices(spec, space, asset);
    for (const auto& q : dec.degenerate_directions)
        if (dot(q, x) < 0.0) return ExtendedValue::plus_inf(Reason::None);
    if (dec.certificates.empty()) return ExtendedValue::minus_inf(Reason::None);
    double best = dec.certificates.front().pay(x);
    for (const auto& cert : dec.certificates) best = std::max(best, cert.pay(x));
    return ExtendedValue::finite(best);
}

ExtendedValue dual_rho_illiquid(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                                const EligibleAsset& asset, const PricingFunctional& pi) {
    require_length(space, x, "position");
    const DualDecomposition dec = dual_vertices(spec, space, asset);
    for (const auto& q : dec.degenerate_directions)
        if (dot(q, x) < 0.0) return ExtendedValue::plus_inf(Reason::None);
    if (dec.certificates.empty()) return pi.limits().first;
    double best = pi.eval(dec.certificates.front().pay(x) / asset.price);
    for (const auto& cert : dec.certificates)
        best = std::max(best, pi.eval(cert.pay(x) / asset.price));
    return ExtendedValue::finite(best);
}

} // namespace riskcap
