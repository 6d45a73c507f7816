#include "nashatom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <utility>

#include "nashatom/errors.hpp"

namespace nashatom {

namespace {

std::string pair_name(std::size_t i, std::size_t j) { return std::to_string(i) + "-" + std::to_string(j); }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

EmbeddedGraph::EmbeddedGraph(std::vector<Point> positions, double radius, std::vector<std::string> labels)
    : positions_(std::move(positions)), radius_(radius), labels_(std::move(labels)) {
    if (positions_.empty()) throw Error(ErrorCode::InvalidInput, "graph needs at least one node");
    if (!std::isfinite(radius_) || radius_ <= 0.0) {
        throw Error(ErrorCode::InvalidInput, "unit-disk radius must be finite and positive");
    }
    if (!labels_.empty() && labels_.size() != positions_.size()) {
        throw Error(ErrorCode::InvalidInput, "labels must match node count (" + std::to_string(labels_.size()) +
                                                 " labels, " + std::to_string(positions_.size()) + " nodes)");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!std::isfinite(positions_[i].x) || !std::isfinite(positions_[i].y)) {
            throw Error(ErrorCode::InvalidInput, "node " + std::to_string(i) + " has a non-finite coordinate");
        }
    }
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!seen.emplace(positions_[i].x, positions_[i].y).second) {
            throw Error(ErrorCode::DegenerateLayout, "node " + std::to_string(i) + " coincides with an earlier node");
        }
    }

    neighbors_.resize(positions_.size());
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        for (std::size_t j = i + 1; j < positions_.size(); ++j) {
            if (distance(positions_[i], positions_[j]) <= radius_) {
                neighbors_[i].push_back(j);
                neighbors_[j].push_back(i);
            }
        }
    }
    for (auto& adj : neighbors_) std::sort(adj.begin(), adj.end());
}

bool EmbeddedGraph::adjacent(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw Error(ErrorCode::InvalidInput, "node index out of range");
    if (i == j) return false;
    return distance(positions_[i], positions_[j]) <= radius_;
}

double EmbeddedGraph::pair_distance(std::size_t i, std::size_t j) const {
    return distance(positions_.at(i), positions_.at(j));
}

std::vector<std::pair<std::size_t, std::size_t>> EmbeddedGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j : neighbors_[i]) {
            if (j > i) out.emplace_back(i, j);
        }
    }
    return out;
}

std::string EmbeddedGraph::fingerprint() const {
    std::string canon = std::to_string(size()) + ";" + format_double(radius_);
    for (const auto& p : positions_) canon += ";" + format_double(p.x) + "," + format_double(p.y);

    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EmbeddedGraph build_unit_disk_graph(std::vector<Point> positions, double radius, std::vector<std::string> labels) {
    return EmbeddedGraph(std::move(positions), radius, std::move(labels));
}

double blockade_radius(double c6, double omega, double delta) {
    if (!(c6 > 0.0) || !std::isfinite(c6)) throw Error(ErrorCode::InvalidInput, "C6 must be finite and positive");
    if (!std::isfinite(omega) || !std::isfinite(delta)) {
        throw Error(ErrorCode::InvalidInput, "drive parameters must be finite");
    }
    const double scale = std::hypot(omega, delta);
    if (scale == 0.0) throw Error(ErrorCode::UndefinedRadius, "blockade radius undefined for omega = delta = 0");
    return std::pow(c6 / scale, 1.0 / 6.0);
}

void HardwareConstraints::check() const {
    const double fields[] = {min_pair_distance, max_evolution_time, max_rabi, max_detuning_abs};
    for (double f : fields) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw Error(ErrorCode::InvalidInput, "hardware constraints must be finite and strictly positive");
        }
    }
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::MinPairDistance: return "min_pair_distance";
        case ViolationKind::EvolutionTime: return "max_evolution_time";
        case ViolationKind::RabiAmplitude: return "max_rabi";
        case ViolationKind::DetuningAmplitude: return "max_detuning_abs";
        case ViolationKind::NegativeRabi: return "negative_rabi";
    }
    return "unknown";
}

std::string_view to_string(AmbiguityKind kind) {
    switch (kind) {
        case AmbiguityKind::MarginalEdge: return "marginal_edge";
        case AmbiguityKind::MarginalNonEdge: return "marginal_non_edge";
    }
    return "unknown";
}

ValidationReport validate_embedding(const EmbeddedGraph& graph, const HardwareConstraints& hw) {
    ValidationReport report;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::size_t j = i + 1; j < graph.size(); ++j) {
            const double d = graph.pair_distance(i, j);
            if (d < hw.min_pair_distance) {
                report.violations.push_back({ViolationKind::MinPairDistance, pair_name(i, j), d, hw.min_pair_distance});
            }
        }
    }
    return report;
}

std::vector<AmbiguityWarning> ambiguity_warnings(const EmbeddedGraph& graph, double margin) {
    if (!(margin >= 0.0) || !std::isfinite(margin)) {
        throw Error(ErrorCode::InvalidInput, "ambiguity margin must be finite and non-negative");
    }
    const double outer = (1.0 + margin) * graph.radius();
    const double inner = (1.0 - margin) * graph.radius();
    std::vector<AmbiguityWarning> out;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::size_t j = i + 1; j < graph.size(); ++j) {
            const double d = graph.pair_distance(i, j);
            if (graph.adjacent(i, j)) {
                if (d >= inner) out.push_back({AmbiguityKind::MarginalEdge, i, j, d, inner});
            } else if (d <= outer) {
                out.push_back({AmbiguityKind::MarginalNonEdge, i, j, d, outer});
            }
        }
    }
    return out;
}

}  // namespace nashatom
