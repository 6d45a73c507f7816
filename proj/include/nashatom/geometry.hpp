#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nashatom {

// Plane position in micrometres.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

// Atom layout plus unit-disk radius. Adjacency is always derived from the
// positions: i ~ j iff i != j and |p_i - p_j| <= radius (closed disk, exact
// floating comparison). Node order fixes the bit order of every bitstring.
class EmbeddedGraph {
public:
    EmbeddedGraph(std::vector<Point> positions, double radius, std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return positions_.size(); }
    double radius() const noexcept { return radius_; }
    const std::vector<Point>& positions() const noexcept { return positions_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool adjacent(std::size_t i, std::size_t j) const;
    double pair_distance(std::size_t i, std::size_t j) const;
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_.at(i); }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    // FNV-1a over a canonical text rendering of positions and radius, used to
    // check that two result files describe the same graph.
    std::string fingerprint() const;

private:
    std::vector<Point> positions_;
    double radius_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

EmbeddedGraph build_unit_disk_graph(std::vector<Point> positions, double radius,
                                    std::vector<std::string> labels = {});

// R_b = (C / sqrt(omega^2 + delta^2))^(1/6)
double blockade_radius(double c6, double omega, double delta);

struct HardwareConstraints {
    double min_pair_distance = 4.0;    // um
    double max_evolution_time = 4.0;   // us
    double max_rabi = 15.8;            // rad/us
    double max_detuning_abs = 125.0;   // rad/us
    static constexpr int dimensions = 2;

    void check() const;
};

enum class ViolationKind { MinPairDistance, EvolutionTime, RabiAmplitude, DetuningAmplitude, NegativeRabi };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string subject;  // "3-5" for node pairs, waveform name otherwise
    double measured;
    double limit;
};

enum class AmbiguityKind { MarginalEdge, MarginalNonEdge };

std::string_view to_string(AmbiguityKind kind);

struct AmbiguityWarning {
    AmbiguityKind kind;
    std::size_t i;
    std::size_t j;
    double distance;
    double threshold;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<AmbiguityWarning> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_embedding(const EmbeddedGraph& graph, const HardwareConstraints& hw);

// Pairs within `margin` (relative) of the disk boundary: non-edges closer than
// (1+margin) R and edges farther than (1-margin) R.
std::vector<AmbiguityWarning> ambiguity_warnings(const EmbeddedGraph& graph, double margin = 0.15);

}  // namespace nashatom
