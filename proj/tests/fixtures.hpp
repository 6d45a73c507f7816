#pragma once

// Shared test fixtures and brute-force oracles. The oracles here deliberately
// avoid the library's enumeration code paths.

#include <cmath>
#include <random>
#include <vector>

#include "nashatom/geometry.hpp"
#include "nashatom/node_set.hpp"

namespace nashatom::testing {

inline constexpr double kPinnedC6GraphA = 2.1e6;
inline constexpr double kPinnedC6GraphB = 6.5e5;

inline EmbeddedGraph graph_a() {
    const double h = 3.0 * std::sqrt(3.0);
    return build_unit_disk_graph({{0, 0}, {6, 0}, {12, 0}, {18, 0}, {9, h}, {15, h}}, 8.0);
}

inline EmbeddedGraph graph_b() {
    return build_unit_disk_graph({{0, 0}, {6, 0}, {12, 0}, {18, 0}, {6, -6}, {12, -6}}, 7.0);
}

inline NodeSet set_of(std::size_t n, std::vector<std::size_t> members) { return NodeSet::from_members(n, members); }

// Random layout on a jittered grid so no two points coincide and the pairwise
// spacing stays at least 4 um. Radius drawn to vary edge density.
inline EmbeddedGraph random_unit_disk(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> cell(0, 24);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    std::uniform_real_distribution<double> radius(4.5, 16.0);
    std::vector<std::pair<int, int>> used;
    std::vector<Point> pts;
    while (pts.size() < n) {
        const int cx = cell(rng) % 5;
        const int cy = cell(rng) / 5;
        bool taken = false;
        for (auto& u : used) taken = taken || (u.first == cx && u.second == cy);
        if (taken) continue;
        used.emplace_back(cx, cy);
        pts.push_back({cx * 6.0 + jitter(rng), cy * 6.0 + jitter(rng)});
    }
    return build_unit_disk_graph(pts, radius(rng));
}

// Independence and maximality from raw distances.
inline bool oracle_independent(const EmbeddedGraph& g, std::uint32_t bits) {
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool both = NodeSet(n, bits).contains(i) && NodeSet(n, bits).contains(j);
            if (both && distance(g.positions()[i], g.positions()[j]) <= g.radius()) return false;
        }
    }
    return true;
}

inline std::vector<NodeSet> oracle_maximal_sets(const EmbeddedGraph& g) {
    const std::size_t n = g.size();
    std::vector<NodeSet> out;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        if (!oracle_independent(g, bits)) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < n && maximal; ++i) {
            const auto b = NodeSet::bit_of(n, i);
            if ((bits & b) == 0 && oracle_independent(g, bits | b)) maximal = false;
        }
        if (maximal) out.emplace_back(n, bits);
    }
    return out;
}

}  // namespace nashatom::testing
