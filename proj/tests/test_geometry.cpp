#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "nashatom/errors.hpp"
#include "nashatom/geometry.hpp"

namespace nashatom {
namespace {

using testing::graph_a;
using testing::graph_b;

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::InvalidInput;
}

TEST(UnitDiskGraph, GraphAHasEightEdges) {
    const auto g = graph_a();
    const EdgeList expected{{0, 1}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 5}};
    EXPECT_EQ(g.edges(), expected);
    for (auto [i, j] : g.edges()) EXPECT_NEAR(g.pair_distance(i, j), 6.0, 1e-12);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            if (!g.adjacent(i, j)) EXPECT_GE(g.pair_distance(i, j), std::sqrt(108.0) - 1e-12);
        }
    }
}

TEST(UnitDiskGraph, GraphBHasSixEdges) {
    const auto g = graph_b();
    const EdgeList expected{{0, 1}, {1, 2}, {1, 4}, {2, 3}, {2, 5}, {4, 5}};
    EXPECT_EQ(g.edges(), expected);
}

TEST(UnitDiskGraph, SinglePoint) {
    const auto g = build_unit_disk_graph({{1.0, 2.0}}, 1.0);
    EXPECT_EQ(g.size(), 1u);
    EXPECT_TRUE(g.edges().empty());
}

TEST(UnitDiskGraph, ClosedDiskBoundary) {
    const auto g = build_unit_disk_graph({{0, 0}, {5, 0}}, 5.0);
    EXPECT_TRUE(g.adjacent(0, 1));
    const auto h = build_unit_disk_graph({{0, 0}, {5, 0}}, std::nextafter(5.0, 0.0));
    EXPECT_FALSE(h.adjacent(0, 1));
}

TEST(UnitDiskGraph, RejectsBadInput) {
    EXPECT_EQ(code_of([] { build_unit_disk_graph({{0, 0}, {0, 0}}, 1.0); }), ErrorCode::DegenerateLayout);
    EXPECT_EQ(code_of([] { build_unit_disk_graph({{0, NAN}}, 1.0); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { build_unit_disk_graph({{0, INFINITY}}, 1.0); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { build_unit_disk_graph({}, 1.0); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { build_unit_disk_graph({{0, 0}}, 0.0); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { build_unit_disk_graph({{0, 0}}, 1.0, {"a", "b"}); }), ErrorCode::InvalidInput);
}

TEST(UnitDiskGraph, AdjacencySymmetricAndMonotoneInRadius) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = testing::random_unit_disk(rng, 7);
        const auto bigger = build_unit_disk_graph(g.positions(), g.radius() * 1.3);
        for (std::size_t i = 0; i < g.size(); ++i) {
            EXPECT_FALSE(g.adjacent(i, i));
            for (std::size_t j = 0; j < g.size(); ++j) {
                EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
                if (g.adjacent(i, j)) EXPECT_TRUE(bigger.adjacent(i, j));
            }
        }
    }
}

TEST(UnitDiskGraph, FingerprintTracksGeometry) {
    EXPECT_EQ(graph_a().fingerprint(), graph_a().fingerprint());
    EXPECT_NE(graph_a().fingerprint(), graph_b().fingerprint());
    const auto moved = build_unit_disk_graph({{0, 0}, {6, 0}}, 7.0);
    const auto wider = build_unit_disk_graph({{0, 0}, {6, 0}}, 7.5);
    EXPECT_NE(moved.fingerprint(), wider.fingerprint());
}

TEST(BlockadeRadius, ClosedForm) {
    EXPECT_DOUBLE_EQ(blockade_radius(64.0, 1.0, 0.0), 2.0);
    // High-precision reference: (5.42e6 / (7.27 sqrt 2))^(1/6).
    EXPECT_NEAR(blockade_radius(5.42e6, 7.27, 7.27), 8.987901680284357, 1e-12);
    EXPECT_NEAR(blockade_radius(2.0 * 5.42e6, 7.27, 7.27), std::pow(2.0, 1.0 / 6.0) * 8.987901680284357, 1e-12);
    EXPECT_EQ(code_of([] { blockade_radius(1.0, 0.0, 0.0); }), ErrorCode::UndefinedRadius);
    EXPECT_EQ(code_of([] { blockade_radius(-1.0, 1.0, 0.0); }), ErrorCode::InvalidInput);
}

TEST(BlockadeRadius, MonotoneAndHomogeneous) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 20.0);
    for (int k = 0; k < 200; ++k) {
        const double c = u(rng) * 1e5, om = u(rng), de = u(rng) - 10.0;
        EXPECT_GT(blockade_radius(c, om, de), blockade_radius(c, om * 1.01, de));
        EXPECT_NEAR(blockade_radius(64.0 * c, om, de), 2.0 * blockade_radius(c, om, de), 1e-12 * blockade_radius(c, om, de));
    }
}

TEST(ValidateEmbedding, GraphAPasses) {
    const auto report = validate_embedding(graph_a(), {});
    EXPECT_TRUE(report.ok());
}

TEST(ValidateEmbedding, CloseAtomsFlagged) {
    const auto report = validate_embedding(build_unit_disk_graph({{0, 0}, {3, 0}}, 5.0), {});
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_FALSE(report.ok());
    EXPECT_EQ(report.violations[0].kind, ViolationKind::MinPairDistance);
    EXPECT_EQ(report.violations[0].subject, "0-1");
    EXPECT_DOUBLE_EQ(report.violations[0].measured, 3.0);
    EXPECT_DOUBLE_EQ(report.violations[0].limit, 4.0);
}

TEST(ValidateEmbedding, SingleAtom) { EXPECT_TRUE(validate_embedding(build_unit_disk_graph({{0, 0}}, 1.0), {}).ok()); }

TEST(ValidateEmbedding, InsertingCloseAtomAddsExactlyOneViolation) {
    std::mt19937_64 rng(5);
    const HardwareConstraints hw;
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 50; ++trial) {
        const auto g = testing::random_unit_disk(rng, 6);
        if (!validate_embedding(g, hw).ok()) continue;
        // New atom half the floor away from node 0, pushed outward so it stays
        // clear of the other atoms.
        auto pts = g.positions();
        pts.push_back({pts[0].x - hw.min_pair_distance / 2.0, pts[0].y});
        const auto grown = build_unit_disk_graph(pts, g.radius());
        bool clear = true;
        for (std::size_t i = 1; i < g.size(); ++i) clear = clear && distance(pts.back(), pts[i]) >= hw.min_pair_distance;
        if (!clear) continue;
        const auto report = validate_embedding(grown, hw);
        ASSERT_EQ(report.violations.size(), 1u);
        EXPECT_EQ(report.violations[0].subject, "0-" + std::to_string(g.size()));
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(AmbiguityWarnings, GraphBEdgesSitNearTheRadius) {
    // 6 um edges against R = 7 fall inside a 15% band but not a 10% one.
    const auto w = ambiguity_warnings(graph_b(), 0.15);
    ASSERT_EQ(w.size(), 6u);
    for (const auto& x : w) EXPECT_EQ(x.kind, AmbiguityKind::MarginalEdge);
    EXPECT_TRUE(ambiguity_warnings(graph_b(), 0.10).empty());
}

TEST(AmbiguityWarnings, EdgeAtRadiusIsMarginal) {
    const auto g = build_unit_disk_graph({{0, 0}, {5, 0}}, 5.0);
    const auto w = ambiguity_warnings(g, 0.15);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, AmbiguityKind::MarginalEdge);
}

TEST(AmbiguityWarnings, ZeroMarginOnlyExactBoundary) {
    const auto g = build_unit_disk_graph({{0, 0}, {5, 0}, {0, 4.9}, {20, 0}}, 5.0);
    const auto w = ambiguity_warnings(g, 0.0);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].i, 0u);
    EXPECT_EQ(w[0].j, 1u);
}

TEST(AmbiguityWarnings, MarginalNonEdge) {
    const auto g = build_unit_disk_graph({{0, 0}, {5.5, 0}}, 5.0);
    const auto w = ambiguity_warnings(g, 0.15);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, AmbiguityKind::MarginalNonEdge);
    EXPECT_DOUBLE_EQ(w[0].threshold, 1.15 * 5.0);
    EXPECT_EQ(code_of([&] { ambiguity_warnings(g, -0.1); }), ErrorCode::InvalidInput);
}

}  // namespace
}  // namespace nashatom
