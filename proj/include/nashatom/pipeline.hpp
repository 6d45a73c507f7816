#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nashatom/dynamics.hpp"
#include "nashatom/game.hpp"
#include "nashatom/geometry.hpp"
#include "nashatom/indsets.hpp"
#include "nashatom/node_set.hpp"

namespace nashatom {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::filesystem::path graph;
    std::optional<std::filesystem::path> game;      // default GameParams when absent
    std::optional<std::filesystem::path> schedule;  // default_schedule() when absent
    double c6 = kDefaultC6;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 20250101;
    std::filesystem::path out = "nashatom-out";
    std::size_t limit = kDefaultExhaustiveLimit;
    bool plot_data = false;
    HardwareConstraints hardware{};
    double ambiguity_margin = 0.15;

    void check() const;
};

struct ClassicalFragment {
    std::string fingerprint;
    std::size_t nodes = 0;
    GameParams params;
    std::vector<NodeSet> nash_supports;
    std::vector<NodeSet> maximal_sets;
    std::vector<NodeSet> maximum_sets;
    CorrespondenceResult correspondence;
};

struct HistogramRow {
    NodeSet bitstring;
    std::uint64_t count = 0;
    double probability = 0.0;  // |amplitude|^2 of the final state
    double energy = 0.0;       // diagonal energy at the final detuning
    bool independent = false;
    bool maximal = false;
    bool maximum = false;
};

struct QuantumFragment {
    std::string fingerprint;
    std::size_t nodes = 0;
    double c6 = kDefaultC6;
    Schedule schedule;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double step = 0.0;
    double refinement_change = 0.0;
    double norm = 0.0;
    std::vector<NodeSet> maximum_sets;
    double maximum_set_probability = 0.0;
    std::vector<HistogramRow> rows;  // observed bitstrings, count desc then bitstring asc
};

struct ComparisonReport {
    ClassicalFragment classical;
    QuantumFragment quantum;
    bool nash_equals_mis = false;
    bool mis_in_top_k = false;

    bool pass() const noexcept { return nash_equals_mis && mis_in_top_k; }
};

ClassicalFragment run_classical(const EmbeddedGraph& graph, const GameParams& params,
                                std::size_t limit = kDefaultExhaustiveLimit);

// Throws ConstraintViolation when the layout or schedule breaks hardware limits.
QuantumFragment run_quantum(const EmbeddedGraph& graph, const Schedule& schedule, double c6, std::uint64_t shots,
                            std::uint64_t seed, const HardwareConstraints& hw = {},
                            std::size_t limit = kDefaultExhaustiveLimit);

// True when every maximum independent set sits among the first |MIS| rows.
bool maximum_sets_in_top_k(const std::vector<NodeSet>& maximum_sets, const std::vector<HistogramRow>& rows);

// Throws IncompatibleRuns if the fragments were produced from different graphs.
ComparisonReport compare(const ClassicalFragment& classical, const QuantumFragment& quantum);

ValidationReport validate_run(const EmbeddedGraph& graph, const Schedule& schedule, const HardwareConstraints& hw,
                              double margin);

Json to_json(const EmbeddedGraph& graph);
Json to_json(const ValidationReport& report);
Json to_json(const ClassicalFragment& fragment);
Json to_json(const QuantumFragment& fragment);
Json to_json(const ComparisonReport& report);

ClassicalFragment classical_from_json(const Json& doc);
QuantumFragment quantum_from_json(const Json& doc);

std::string histogram_csv(const QuantumFragment& fragment);

}  // namespace nashatom
