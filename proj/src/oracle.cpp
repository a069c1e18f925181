#include "riskcap/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "riskcap/errors.hpp"

namespace riskcap::oracle {

GridResult rho_grid_oracle(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
                           const EligibleAsset& asset, double m_lo, double m_hi, std::size_t steps) {
    if (!(m_lo < m_hi)) throw ValidationError("grid oracle needs m_lo < m_hi");
    if (steps < 2) throw ValidationError("grid oracle needs at least 2 steps");
    if (steps > 10'000'000) throw ValidationError("grid oracle capped at 1e7 points");
    require_length(space, x, "position");
    require_length(space, asset.payoff, "asset payoff");

    const double step = (m_hi - m_lo) / static_cast<double>(steps - 1);
    Vec profile(x.size());
    bool any_accept = false;
    bool any_reject = false;
    double first_accept = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double m = m_lo + step * static_cast<double>(k);
        for (std::size_t i = 0; i < x.size(); ++i)
            profile[i] = x[i] + (m / asset.price) * asset.payoff[i];
        if (is_acceptable(spec, space, profile)) {
            if (!any_accept) first_accept = m;
            any_accept = true;
            // Membership in m is an interval for every implemented family, so
            // the first accepting point is the answer; keep scanning only
            // while nothing accepted yet.
            break;
        }
        any_reject = true;
    }
    if (!any_accept) return {GridResult::Kind::AllReject, 0.0, step};
    if (!any_reject) return {GridResult::Kind::AllAccept, first_accept, step};
    return {GridResult::Kind::Value, first_accept, step};
}

double tvar_integral_oracle(const ScenarioSpace& space, const Vec& x, double alpha,
                            std::size_t panels) {
    if (panels < 10) throw ValidationError("integral oracle needs at least 10 panels");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    require_length(space, x, "position");

    // Uniform panel edges refined with the cumulative-probability breakpoints
    // of the sorted position; the integrand beta -> VaR_beta(X) is constant
    // between breakpoints, so midpoint evaluation is exact.
    std::vector<double> edges;
    for (std::size_t k = 0; k <= panels; ++k)
        edges.push_back(alpha * static_cast<double>(k) / static_cast<double>(panels));
    {
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        double cum = 0.0;
        for (std::size_t i : idx) {
            cum += space.prob(i);
            if (cum < alpha) edges.push_back(cum);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double width = edges[k + 1] - edges[k];
        if (width <= 0.0) continue;
        const double mid = edges[k] + 0.5 * width;
        integral += width * var_value(space, x, mid);
    }
    return integral / alpha;
}

bool perturbation_interior_oracle(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                  const Vec& x, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be strictly positive");
    require_length(space, x, "position");
    const std::size_t n = x.size();
    if (n > 16) throw ValidationError("perturbation oracle refuses n > 16");

    Vec probe(n);
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
        for (std::size_t i = 0; i < n; ++i)
            probe[i] = x[i] + ((pattern >> i) & 1 ? epsilon : -epsilon);
        if (!is_acceptable(spec, space, probe)) return false;
    }
    return true;
}

} // namespace riskcap::oracle
