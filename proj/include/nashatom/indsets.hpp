#pragma once

#include <cstddef>
#include <vector>

#include "nashatom/game.hpp"
#include "nashatom/geometry.hpp"
#include "nashatom/node_set.hpp"

namespace nashatom {

bool is_independent(const EmbeddedGraph& graph, const NodeSet& s);
// Throws NotIndependent if s has an internal edge.
bool is_maximal(const EmbeddedGraph& graph, const NodeSet& s);

// All maximal independent sets in ascending bitstring order.
std::vector<NodeSet> enumerate_mis(const EmbeddedGraph& graph, std::size_t limit = kDefaultExhaustiveLimit);

// Maximal independent sets of largest cardinality.
std::vector<NodeSet> maximum_independent_sets(const EmbeddedGraph& graph,
                                              std::size_t limit = kDefaultExhaustiveLimit);

struct CorrespondenceResult {
    bool matches = false;
    std::vector<NodeSet> nash_only;  // Nash supports that are not mIS
    std::vector<NodeSet> mis_only;   // mIS with no matching Nash profile
};

CorrespondenceResult verify_correspondence(const EmbeddedGraph& graph, const GameParams& params,
                                           std::size_t limit = kDefaultExhaustiveLimit);

}  // namespace nashatom
