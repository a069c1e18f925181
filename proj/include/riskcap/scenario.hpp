#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "riskcap/errors.hpp"

namespace riskcap {

using Vec = std::vector<double>;

// Finite probability space: n outcomes with strictly positive probabilities
// summing to one. Immutable after construction.
class ScenarioSpace {
public:
    // Validates: n >= 1, every p_i > 0, |sum p - 1| <= 1e-12.
    explicit ScenarioSpace(Vec probabilities);

    std::size_t size() const { return p_.size(); }
    const Vec& probabilities() const { return p_; }
    double prob(std::size_t i) const { return p_[i]; }

    static constexpr double kSumTolerance = 1e-12;

private:
    Vec p_;
};

// Rescales probabilities whose sum drifted within 1e-6 of one. Larger
// deviations are refused rather than silently repaired.
ScenarioSpace renormalize(const Vec& probabilities);

// Eligible asset: strictly positive initial price and a nonnegative,
// nonzero terminal payoff.
struct EligibleAsset {
    double price;
    Vec payoff;

    EligibleAsset(double price_, Vec payoff_);

    std::size_t size() const { return payoff.size(); }
    // Smallest strictly positive payoff entry; 0 when the payoff can default to zero.
    double min_positive_payoff() const;
    double min_payoff() const;
};

// Boolean mask selecting a nonempty measurable event.
struct EventMask {
    std::vector<bool> mask;

    explicit EventMask(std::vector<bool> m);
    static EventMask from_indices(std::size_t n, const std::vector<std::size_t>& indices);

    std::size_t size() const { return mask.size(); }
    // Indices beyond the stored mask are unselected, so a mask built from
    // index lists works with any space at least as large.
    bool contains(std::size_t i) const { return i < mask.size() && mask[i]; }
};

void require_length(const ScenarioSpace& space, const Vec& x, const char* what);

struct LoadedScenarios {
    ScenarioSpace space;
    std::vector<Vec> positions; // one vector per x column, file order
    Vec payoff;                 // s column
};

// CSV with header `prob,x,s` and optional trailing x2,x3,... columns.
LoadedScenarios load_scenarios(const std::string& path);
LoadedScenarios load_scenarios(std::istream& in, const std::string& origin = "<stream>");

// Writes the same CSV layout with 17 significant digits (bit-for-bit round trip).
void save_scenarios(std::ostream& out, const ScenarioSpace& space,
                    const std::vector<Vec>& positions, const Vec& payoff);
void save_scenarios(const std::string& path, const ScenarioSpace& space,
                    const std::vector<Vec>& positions, const Vec& payoff);

} // namespace riskcap
