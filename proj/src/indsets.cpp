#include "nashatom/indsets.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>

#include "nashatom/errors.hpp"

namespace nashatom {

namespace {

void check_set(const EmbeddedGraph& graph, const NodeSet& s) {
    if (s.universe() != graph.size()) {
        throw Error(ErrorCode::InvalidSet, "set over " + std::to_string(s.universe()) + " nodes used with a " +
                                               std::to_string(graph.size()) + "-node graph");
    }
}

void check_limit(const EmbeddedGraph& graph, std::size_t limit) {
    if (graph.size() > limit || graph.size() > 31) {
        throw Error(ErrorCode::TooLarge, std::to_string(graph.size()) + " nodes exceeds exhaustive limit " +
                                             std::to_string(std::min<std::size_t>(limit, 31)));
    }
}

class MaximalIndependentSets {
public:
    explicit MaximalIndependentSets(const EmbeddedGraph& graph) : n_(graph.size()), non_adjacent_(n_, 0) {
        const std::uint32_t all = NodeSet::full(n_).bits();
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint32_t adj = NodeSet::bit_of(n_, i);
            for (std::size_t j : graph.neighbors(i)) adj |= NodeSet::bit_of(n_, j);
            non_adjacent_[i] = all & ~adj;
        }
    }

    std::vector<NodeSet> run() {
        found_.clear();
        expand(0, NodeSet::full(n_).bits(), 0);
        std::sort(found_.begin(), found_.end());
        return found_;
    }

private:
    std::size_t node_of(std::uint32_t single_bit) const {
        return n_ - 1 - static_cast<std::size_t>(std::countr_zero(single_bit));
    }

    // Bron-Kerbosch with pivoting on the complement graph: cliques there are
    // independent sets here.
    void expand(std::uint32_t chosen, std::uint32_t candidates, std::uint32_t excluded) {
        if (candidates == 0 && excluded == 0) {
            found_.emplace_back(n_, chosen);
            return;
        }
        std::uint32_t pivot_keep = 0;
        int best = -1;
        for (std::uint32_t rest = candidates | excluded; rest != 0; rest &= rest - 1) {
            const std::uint32_t keep = candidates & non_adjacent_[node_of(rest & (~rest + 1))];
            const int score = std::popcount(keep);
            if (score > best) {
                best = score;
                pivot_keep = keep;
            }
        }
        for (std::uint32_t branch = candidates & ~pivot_keep; branch != 0; branch &= branch - 1) {
            const std::uint32_t bit = branch & (~branch + 1);
            const std::uint32_t compatible = non_adjacent_[node_of(bit)];
            expand(chosen | bit, candidates & compatible, excluded & compatible);
            candidates &= ~bit;
            excluded |= bit;
        }
    }

    std::size_t n_;
    std::vector<std::uint32_t> non_adjacent_;
    std::vector<NodeSet> found_;
};

}  // namespace

bool is_independent(const EmbeddedGraph& graph, const NodeSet& s) {
    check_set(graph, s);
    for (std::size_t i : s.members()) {
        for (std::size_t j : graph.neighbors(i)) {
            if (s.contains(j)) return false;
        }
    }
    return true;
}

bool is_maximal(const EmbeddedGraph& graph, const NodeSet& s) {
    if (!is_independent(graph, s)) throw Error(ErrorCode::NotIndependent, format_members(s) + " has an internal edge");
    for (std::size_t i = 0; i < graph.size(); ++i) {
        if (s.contains(i)) continue;
        const auto& adj = graph.neighbors(i);
        if (std::none_of(adj.begin(), adj.end(), [&](std::size_t j) { return s.contains(j); })) return false;
    }
    return true;
}

std::vector<NodeSet> enumerate_mis(const EmbeddedGraph& graph, std::size_t limit) {
    check_limit(graph, limit);
    return MaximalIndependentSets(graph).run();
}

std::vector<NodeSet> maximum_independent_sets(const EmbeddedGraph& graph, std::size_t limit) {
    auto all = enumerate_mis(graph, limit);
    std::size_t best = 0;
    for (const auto& s : all) best = std::max(best, s.size());
    std::erase_if(all, [best](const NodeSet& s) { return s.size() != best; });
    return all;
}

CorrespondenceResult verify_correspondence(const EmbeddedGraph& graph, const GameParams& params, std::size_t limit) {
    std::vector<NodeSet> supports;
    for (const auto& p : enumerate_specialized_nash(graph, params, limit)) supports.push_back(p.contributors());
    const auto mis = enumerate_mis(graph, limit);

    CorrespondenceResult result;
    std::set_difference(supports.begin(), supports.end(), mis.begin(), mis.end(), std::back_inserter(result.nash_only));
    std::set_difference(mis.begin(), mis.end(), supports.begin(), supports.end(), std::back_inserter(result.mis_only));
    result.matches = result.nash_only.empty() && result.mis_only.empty();
    return result;
}

}  // namespace nashatom
