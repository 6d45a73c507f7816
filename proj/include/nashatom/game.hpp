#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "nashatom/geometry.hpp"
#include "nashatom/node_set.hpp"

namespace nashatom {

enum class BenefitKind { SatiatingLinear };

struct GameParams {
    double e_star = 1.0;
    double cost = 0.5;
    BenefitKind benefit = BenefitKind::SatiatingLinear;

    double benefit_of(double total_effort) const;
    // Throws InvalidInput unless e* > 0 and 0 < c < b(e*)/e*.
    void check() const;
};

// Efforts restricted to the two specialized levels {0, e*}.
class StrategyProfile {
public:
    StrategyProfile(NodeSet contributors, double e_star);

    static StrategyProfile from_efforts(const std::vector<double>& efforts, double e_star);

    std::size_t size() const noexcept { return contributors_.universe(); }
    const NodeSet& contributors() const noexcept { return contributors_; }
    double e_star() const noexcept { return e_star_; }
    double effort(std::size_t agent) const { return contributors_.contains(agent) ? e_star_ : 0.0; }
    std::vector<double> efforts() const;
    StrategyProfile with_effort(std::size_t agent, double effort) const;

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

private:
    NodeSet contributors_;
    double e_star_;
};

using PayoffVector = std::vector<double>;

// U_i = b(e_i + sum_{j in N_i} e_j) - c e_i
double payoff(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile,
              std::size_t agent);

PayoffVector payoffs(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile);

using UtilityFn = std::function<double(const StrategyProfile&, std::size_t)>;

// Best responses under an arbitrary utility. Exact ties keep both levels.
std::vector<double> best_responses(const StrategyProfile& profile, std::size_t agent, const UtilityFn& utility);

std::vector<double> best_responses(const EmbeddedGraph& graph, const GameParams& params,
                                   const StrategyProfile& profile, std::size_t agent);

bool is_nash(const StrategyProfile& profile, const UtilityFn& utility);
bool is_nash(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile);

inline constexpr std::size_t kDefaultExhaustiveLimit = 24;

// All specialized Nash profiles, sorted by contributor bitstring.
std::vector<StrategyProfile> enumerate_specialized_nash(const EmbeddedGraph& graph, const GameParams& params,
                                                        std::size_t limit = kDefaultExhaustiveLimit);

}  // namespace nashatom
