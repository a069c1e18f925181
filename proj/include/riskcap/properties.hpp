#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskcap/engine.hpp"

namespace riskcap {

enum class CashSubCriterion {
    SufficientNoCapitalAtRisk, // P(S_T < S_0) = 0
    CoherentMembership,        // S_T - S_0*1 in A (closed coherent sets)
    TVaRThreshold,             // TVaR_alpha(S_T) <= -S_0
    ScenarioOverlap,           // P(A and {S_T < S_0}) = 0
    ExpectationPrice,          // E[S_T] >= S_0
    EmpiricalCounterexample,
    SearchExhausted,
};

const char* cash_sub_criterion_name(CashSubCriterion c);

struct CashSubWitness {
    Vec x;
    double lambda;
    double gap; // rho(X + (lambda/S_0) S_T) - rho(X + lambda*1), +inf on mixed tags
};

struct CashSubVerdict {
    enum class Verdict { Yes, No, Inconclusive };
    Verdict verdict;
    CashSubCriterion criterion;
    std::optional<CashSubWitness> witness;

    std::string to_json() const;
};

// Decision ladder over the family-specific exact criteria; VaR and Shortfall
// fall back to the falsification search (Inconclusive is a terminal verdict,
// never upgraded).
CashSubVerdict cash_subadditivity_report(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                         const EligibleAsset& asset, std::size_t budget = 10000,
                                         std::uint64_t seed = 42, double tol = 1e-9);

// Searches structured candidates (the two-block construction from the VaR
// impossibility argument) and then seeded random positions for a pair (X,
// lambda) violating rho(X + lambda*1) >= rho(X + (lambda/S_0) S_T) by more
// than 3*tol. Deterministic given the seed.
std::optional<CashSubWitness> falsify_cash_subadditivity(const AcceptanceSpec& spec,
                                                         const ScenarioSpace& space,
                                                         const EligibleAsset& asset,
                                                         std::size_t budget,
                                                         std::uint64_t seed = 42,
                                                         double tol = 1e-9);

struct NumeraireCheck {
    bool pass;
    double lhs; // rho_{A,S}(X)
    double rhs; // S_0 * rho with the unit asset on X/S_T
};

// rho_{A,S}(X) = S_0 * rho_{A,(1,1)}(X / S_T); exact for VaR and Scenario
// acceptance, whose membership only depends on coordinate signs. Refuses
// other families and any payoff with a zero state (discounting fails there).
NumeraireCheck check_numeraire_identity(const AcceptanceSpec& spec, const ScenarioSpace& space,
                                        const Vec& x, const EligibleAsset& asset,
                                        double tol = 1e-9);

struct AxiomResult {
    std::string name;
    bool claimed;           // whether the family flags promise this axiom
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;

    bool pass() const { return failures == 0; }
};

struct AxiomReport {
    std::vector<AxiomResult> axioms;

    bool all_claimed_pass() const;
    std::string to_json() const;
};

// Randomized battery: S-additivity, monotonicity, membership sandwich,
// convexity / positive homogeneity per flags, Lipschitz bound when min s > 0.
AxiomReport axiom_suite(const AcceptanceSpec& spec, const ScenarioSpace& space,
                        const EligibleAsset& asset, std::size_t samples,
                        std::uint64_t seed = 42, double tol = 1e-9);

} // namespace riskcap
