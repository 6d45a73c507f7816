#include "nashatom/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nashatom/errors.hpp"

namespace nashatom {

double GameParams::benefit_of(double total_effort) const {
    switch (benefit) {
        case BenefitKind::SatiatingLinear: return std::min(total_effort, e_star);
    }
    throw Error(ErrorCode::InvalidInput, "unknown benefit function");
}

void GameParams::check() const {
    if (!std::isfinite(e_star) || e_star <= 0.0) throw Error(ErrorCode::InvalidInput, "e_star must be positive");
    if (!std::isfinite(cost) || cost <= 0.0) throw Error(ErrorCode::InvalidInput, "cost must be positive");
    if (cost >= benefit_of(e_star) / e_star) {
        throw Error(ErrorCode::InvalidInput, "cost must be below b(e_star)/e_star so that a lone contribution pays");
    }
}

StrategyProfile::StrategyProfile(NodeSet contributors, double e_star)
    : contributors_(contributors), e_star_(e_star) {
    if (!(e_star > 0.0)) throw Error(ErrorCode::InvalidProfile, "e_star must be positive");
}

StrategyProfile StrategyProfile::from_efforts(const std::vector<double>& efforts, double e_star) {
    NodeSet s = NodeSet::empty(efforts.size());
    for (std::size_t i = 0; i < efforts.size(); ++i) {
        if (efforts[i] == e_star) {
            s = s.with(i);
        } else if (efforts[i] != 0.0) {
            throw Error(ErrorCode::InvalidProfile,
                        "agent " + std::to_string(i) + " effort is neither 0 nor e_star (specialized profiles only)");
        }
    }
    return StrategyProfile(s, e_star);
}

std::vector<double> StrategyProfile::efforts() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = effort(i);
    return out;
}

StrategyProfile StrategyProfile::with_effort(std::size_t agent, double effort) const {
    if (agent >= size()) throw Error(ErrorCode::InvalidAgent, "agent " + std::to_string(agent) + " out of range");
    if (effort == e_star_) return StrategyProfile(contributors_.with(agent), e_star_);
    if (effort == 0.0) return StrategyProfile(contributors_.without(agent), e_star_);
    throw Error(ErrorCode::InvalidProfile, "effort must be 0 or e_star");
}

namespace {

void check_profile(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile) {
    if (profile.size() != graph.size()) {
        throw Error(ErrorCode::InvalidProfile, "profile has " + std::to_string(profile.size()) +
                                                   " agents, graph has " + std::to_string(graph.size()));
    }
    if (profile.e_star() != params.e_star) {
        throw Error(ErrorCode::InvalidProfile, "profile e_star differs from game parameters");
    }
}

}  // namespace

double payoff(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile,
              std::size_t agent) {
    check_profile(graph, params, profile);
    if (agent >= graph.size()) {
        throw Error(ErrorCode::InvalidAgent, "agent " + std::to_string(agent) + " out of range");
    }
    double total = profile.effort(agent);
    for (std::size_t j : graph.neighbors(agent)) total += profile.effort(j);
    return params.benefit_of(total) - params.cost * profile.effort(agent);
}

PayoffVector payoffs(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile) {
    PayoffVector out(graph.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = payoff(graph, params, profile, i);
    return out;
}

std::vector<double> best_responses(const StrategyProfile& profile, std::size_t agent, const UtilityFn& utility) {
    if (agent >= profile.size()) {
        throw Error(ErrorCode::InvalidAgent, "agent " + std::to_string(agent) + " out of range");
    }
    const double idle = utility(profile.with_effort(agent, 0.0), agent);
    const double active = utility(profile.with_effort(agent, profile.e_star()), agent);
    if (idle == active) return {0.0, profile.e_star()};
    if (idle > active) return {0.0};
    return {profile.e_star()};
}

std::vector<double> best_responses(const EmbeddedGraph& graph, const GameParams& params,
                                   const StrategyProfile& profile, std::size_t agent) {
    check_profile(graph, params, profile);
    return best_responses(profile, agent, [&](const StrategyProfile& p, std::size_t i) {
        return payoff(graph, params, p, i);
    });
}

bool is_nash(const StrategyProfile& profile, const UtilityFn& utility) {
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const auto br = best_responses(profile, i, utility);
        if (std::find(br.begin(), br.end(), profile.effort(i)) == br.end()) return false;
    }
    return true;
}

bool is_nash(const EmbeddedGraph& graph, const GameParams& params, const StrategyProfile& profile) {
    check_profile(graph, params, profile);
    return is_nash(profile, [&](const StrategyProfile& p, std::size_t i) { return payoff(graph, params, p, i); });
}

std::vector<StrategyProfile> enumerate_specialized_nash(const EmbeddedGraph& graph, const GameParams& params,
                                                        std::size_t limit) {
    const std::size_t n = graph.size();
    if (n > limit || n > 31) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " agents exceeds exhaustive limit " +
                                             std::to_string(std::min<std::size_t>(limit, 31)));
    }
    params.check();

    // Neighbour masks in NodeSet bit order so each deviation test is a mask op
    // plus two payoff evaluations.
    std::vector<std::uint32_t> neighbor_bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : graph.neighbors(i)) neighbor_bits[i] |= NodeSet::bit_of(n, j);
    }

    auto agent_payoff = [&](std::uint32_t bits, std::size_t i) {
        const std::uint32_t own = bits & NodeSet::bit_of(n, i);
        const double e_i = own ? params.e_star : 0.0;
        const double others = params.e_star * std::popcount(bits & neighbor_bits[i]);
        return params.benefit_of(e_i + others) - params.cost * e_i;
    };

    std::vector<StrategyProfile> out;
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        bool stable = true;
        for (std::size_t i = 0; i < n && stable; ++i) {
            const std::uint32_t flipped = bits ^ NodeSet::bit_of(n, i);
            stable = agent_payoff(bits, i) >= agent_payoff(flipped, i);
        }
        if (stable) out.emplace_back(NodeSet(n, bits), params.e_star);
    }
    return out;
}

}  // namespace nashatom
