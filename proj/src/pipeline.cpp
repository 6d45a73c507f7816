#include "nashatom/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nashatom/errors.hpp"

namespace nashatom {

namespace {

Json bitstrings(const std::vector<NodeSet>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(s.bitstring());
    return out;
}

std::vector<NodeSet> read_bitstrings(const Json& arr) {
    std::vector<NodeSet> out;
    for (const auto& item : arr) out.push_back(NodeSet::from_bitstring(item.get<std::string>()));
    return out;
}

Json graph_ref(const std::string& fingerprint, std::size_t nodes) {
    return Json{{"fingerprint", fingerprint}, {"nodes", nodes}};
}

Json waveform_json(const Waveform& w) {
    Json out = Json::array();
    for (const auto& p : w.points()) out.push_back(Json::array({p.t, p.value}));
    return out;
}

Waveform waveform_from_json(const Json& arr) {
    std::vector<Breakpoint> points;
    for (const auto& p : arr) points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return Waveform(std::move(points));
}

std::string_view benefit_name(BenefitKind kind) {
    switch (kind) {
        case BenefitKind::SatiatingLinear: return "satiating_linear";
    }
    return "unknown";
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Wraps JSON access errors so malformed report files surface as ParseError.
template <typename F>
auto parse_report(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(what) + " report: " + e.what());
    }
}

}  // namespace

void RunConfig::check() const {
    if (shots < 1) throw Error(ErrorCode::InvalidInput, "shots must be at least 1");
    if (!std::filesystem::exists(graph)) throw Error(ErrorCode::InvalidInput, "graph file not found: " + graph.string());
    if (game && !std::filesystem::exists(*game)) {
        throw Error(ErrorCode::InvalidInput, "game file not found: " + game->string());
    }
    if (schedule && !std::filesystem::exists(*schedule)) {
        throw Error(ErrorCode::InvalidInput, "schedule file not found: " + schedule->string());
    }
    if (!(c6 > 0.0) || !std::isfinite(c6)) throw Error(ErrorCode::InvalidInput, "coupling C6 must be positive");
    hardware.check();
}

ClassicalFragment run_classical(const EmbeddedGraph& graph, const GameParams& params, std::size_t limit) {
    ClassicalFragment out;
    out.fingerprint = graph.fingerprint();
    out.nodes = graph.size();
    out.params = params;
    for (const auto& p : enumerate_specialized_nash(graph, params, limit)) out.nash_supports.push_back(p.contributors());
    out.maximal_sets = enumerate_mis(graph, limit);
    out.maximum_sets = maximum_independent_sets(graph, limit);
    out.correspondence = verify_correspondence(graph, params, limit);
    return out;
}

ValidationReport validate_run(const EmbeddedGraph& graph, const Schedule& schedule, const HardwareConstraints& hw,
                              double margin) {
    ValidationReport report = validate_embedding(graph, hw);
    const auto timing = validate_schedule(schedule, hw);
    report.violations.insert(report.violations.end(), timing.violations.begin(), timing.violations.end());
    report.warnings = ambiguity_warnings(graph, margin);
    return report;
}

QuantumFragment run_quantum(const EmbeddedGraph& graph, const Schedule& schedule, double c6, std::uint64_t shots,
                            std::uint64_t seed, const HardwareConstraints& hw, std::size_t limit) {
    const auto report = validate_run(graph, schedule, hw, 0.0);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw Error(ErrorCode::ConstraintViolation,
                    std::to_string(report.violations.size()) + " hardware violation(s), first: " +
                        std::string(to_string(v.kind)) + " " + v.subject + " measured " + format_number(v.measured) +
                        " limit " + format_number(v.limit));
    }

    const RydbergSystem system(graph, c6);
    const auto evolved = evolve(system, schedule);
    const auto hist = sample(evolved.state, shots, seed);

    QuantumFragment out;
    out.fingerprint = graph.fingerprint();
    out.nodes = graph.size();
    out.c6 = c6;
    out.schedule = schedule;
    out.shots = shots;
    out.seed = seed;
    out.step = evolved.step;
    out.refinement_change = evolved.refinement_change;
    out.norm = evolved.state.norm();
    out.maximum_sets = maximum_independent_sets(graph, limit);
    for (const auto& s : out.maximum_sets) out.maximum_set_probability += evolved.state.probability(s.bits());

    const double final_delta = schedule.delta(schedule.duration);
    for (const auto& [z, count] : hist.counts) {
        HistogramRow row;
        row.bitstring = z;
        row.count = count;
        row.probability = evolved.state.probability(z.bits());
        row.energy = diagonal_energy(system, final_delta, z);
        row.independent = is_independent(graph, z);
        row.maximal = row.independent && is_maximal(graph, z);
        row.maximum = std::binary_search(out.maximum_sets.begin(), out.maximum_sets.end(), z);
        out.rows.push_back(row);
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const HistogramRow& a, const HistogramRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.bitstring < b.bitstring;
    });
    return out;
}

bool maximum_sets_in_top_k(const std::vector<NodeSet>& maximum_sets, const std::vector<HistogramRow>& rows) {
    const std::size_t k = maximum_sets.size();
    if (k == 0 || rows.size() < k) return false;
    return std::all_of(maximum_sets.begin(), maximum_sets.end(), [&](const NodeSet& s) {
        return std::any_of(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k),
                           [&](const HistogramRow& r) { return r.bitstring == s; });
    });
}

ComparisonReport compare(const ClassicalFragment& classical, const QuantumFragment& quantum) {
    if (classical.fingerprint != quantum.fingerprint) {
        throw Error(ErrorCode::IncompatibleRuns, "classical run graph " + classical.fingerprint +
                                                     " differs from quantum run graph " + quantum.fingerprint);
    }
    ComparisonReport out;
    out.classical = classical;
    out.quantum = quantum;
    out.nash_equals_mis = classical.nash_supports == classical.maximal_sets;
    out.mis_in_top_k = maximum_sets_in_top_k(classical.maximum_sets, quantum.rows);
    return out;
}

Json to_json(const EmbeddedGraph& graph) {
    Json nodes = Json::array();
    for (const auto& p : graph.positions()) nodes.push_back(Json::array({p.x, p.y}));
    Json edges = Json::array();
    for (const auto& [i, j] : graph.edges()) edges.push_back(Json::array({i, j}));
    Json out{{"fingerprint", graph.fingerprint()}, {"nodes", nodes}, {"radius", graph.radius()}};
    if (!graph.labels().empty()) out["labels"] = graph.labels();
    out["edges"] = edges;
    return out;
}

Json to_json(const ValidationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back(
            {{"kind", to_string(v.kind)}, {"subject", v.subject}, {"measured", v.measured}, {"limit", v.limit}});
    }
    Json warnings = Json::array();
    for (const auto& w : report.warnings) {
        warnings.push_back({{"kind", to_string(w.kind)},
                            {"pair", Json::array({w.i, w.j})},
                            {"distance", w.distance},
                            {"threshold", w.threshold}});
    }
    return Json{{"ok", report.ok()}, {"violations", violations}, {"warnings", warnings}};
}

Json to_json(const ClassicalFragment& f) {
    return Json{{"schema", "nashatom.classical/1"},
                {"graph", graph_ref(f.fingerprint, f.nodes)},
                {"game", {{"e_star", f.params.e_star}, {"cost", f.params.cost}, {"benefit", benefit_name(f.params.benefit)}}},
                {"nash_supports", bitstrings(f.nash_supports)},
                {"maximal_independent_sets", bitstrings(f.maximal_sets)},
                {"maximum_independent_sets", bitstrings(f.maximum_sets)},
                {"correspondence",
                 {{"match", f.correspondence.matches},
                  {"nash_only", bitstrings(f.correspondence.nash_only)},
                  {"mis_only", bitstrings(f.correspondence.mis_only)}}}};
}

Json to_json(const QuantumFragment& f) {
    Json rows = Json::array();
    for (const auto& r : f.rows) {
        rows.push_back({{"bitstring", r.bitstring.bitstring()},
                        {"count", r.count},
                        {"probability", r.probability},
                        {"energy", r.energy},
                        {"is_independent", r.independent},
                        {"is_maximal", r.maximal},
                        {"is_mis", r.maximum}});
    }
    return Json{{"schema", "nashatom.quantum/1"},
                {"graph", graph_ref(f.fingerprint, f.nodes)},
                {"coupling_c6", f.c6},
                {"schedule",
                 {{"duration", f.schedule.duration},
                  {"omega", waveform_json(f.schedule.omega)},
                  {"delta", waveform_json(f.schedule.delta)}}},
                {"shots", f.shots},
                {"seed", f.seed},
                {"integration", {{"step", f.step}, {"refinement_change", f.refinement_change}, {"norm", f.norm}}},
                {"maximum_independent_sets", bitstrings(f.maximum_sets)},
                {"maximum_set_probability", f.maximum_set_probability},
                {"histogram", rows}};
}

Json to_json(const ComparisonReport& r) {
    const std::size_t k = r.classical.maximum_sets.size();
    Json top = Json::array();
    for (std::size_t i = 0; i < std::min(k, r.quantum.rows.size()); ++i) {
        top.push_back({{"bitstring", r.quantum.rows[i].bitstring.bitstring()}, {"count", r.quantum.rows[i].count}});
    }
    return Json{{"schema", "nashatom.comparison/1"},
                {"graph", graph_ref(r.classical.fingerprint, r.classical.nodes)},
                {"classical",
                 {{"nash_supports", bitstrings(r.classical.nash_supports)},
                  {"maximal_independent_sets", bitstrings(r.classical.maximal_sets)},
                  {"maximum_independent_sets", bitstrings(r.classical.maximum_sets)}}},
                {"quantum",
                 {{"shots", r.quantum.shots},
                  {"seed", r.quantum.seed},
                  {"top_k", k},
                  {"top", top},
                  {"maximum_set_probability", r.quantum.maximum_set_probability}}},
                {"verdicts",
                 {{"nash_equals_mis", r.nash_equals_mis},
                  {"mis_in_top_k", r.mis_in_top_k},
                  {"overall", r.pass() ? "PASS" : "FAIL"}}}};
}

ClassicalFragment classical_from_json(const Json& doc) {
    return parse_report("classical", [&] {
        if (doc.at("schema") != "nashatom.classical/1") throw Error(ErrorCode::ParseError, "not a classical report");
        ClassicalFragment f;
        f.fingerprint = doc.at("graph").at("fingerprint").get<std::string>();
        f.nodes = doc.at("graph").at("nodes").get<std::size_t>();
        f.params.e_star = doc.at("game").at("e_star").get<double>();
        f.params.cost = doc.at("game").at("cost").get<double>();
        f.nash_supports = read_bitstrings(doc.at("nash_supports"));
        f.maximal_sets = read_bitstrings(doc.at("maximal_independent_sets"));
        f.maximum_sets = read_bitstrings(doc.at("maximum_independent_sets"));
        const auto& c = doc.at("correspondence");
        f.correspondence.matches = c.at("match").get<bool>();
        f.correspondence.nash_only = read_bitstrings(c.at("nash_only"));
        f.correspondence.mis_only = read_bitstrings(c.at("mis_only"));
        return f;
    });
}

QuantumFragment quantum_from_json(const Json& doc) {
    return parse_report("quantum", [&] {
        if (doc.at("schema") != "nashatom.quantum/1") throw Error(ErrorCode::ParseError, "not a quantum report");
        QuantumFragment f;
        f.fingerprint = doc.at("graph").at("fingerprint").get<std::string>();
        f.nodes = doc.at("graph").at("nodes").get<std::size_t>();
        f.c6 = doc.at("coupling_c6").get<double>();
        const auto& s = doc.at("schedule");
        f.schedule.duration = s.at("duration").get<double>();
        f.schedule.omega = waveform_from_json(s.at("omega"));
        f.schedule.delta = waveform_from_json(s.at("delta"));
        f.shots = doc.at("shots").get<std::uint64_t>();
        f.seed = doc.at("seed").get<std::uint64_t>();
        const auto& integ = doc.at("integration");
        f.step = integ.at("step").get<double>();
        f.refinement_change = integ.at("refinement_change").get<double>();
        f.norm = integ.at("norm").get<double>();
        f.maximum_sets = read_bitstrings(doc.at("maximum_independent_sets"));
        f.maximum_set_probability = doc.at("maximum_set_probability").get<double>();
        for (const auto& r : doc.at("histogram")) {
            HistogramRow row;
            row.bitstring = NodeSet::from_bitstring(r.at("bitstring").get<std::string>());
            row.count = r.at("count").get<std::uint64_t>();
            row.probability = r.at("probability").get<double>();
            row.energy = r.at("energy").get<double>();
            row.independent = r.at("is_independent").get<bool>();
            row.maximal = r.at("is_maximal").get<bool>();
            row.maximum = r.at("is_mis").get<bool>();
            f.rows.push_back(row);
        }
        return f;
    });
}

std::string histogram_csv(const QuantumFragment& f) {
    std::ostringstream os;
    os << "bitstring,count,probability,energy,is_independent,is_maximal,is_mis\n";
    for (const auto& r : f.rows) {
        os << r.bitstring.bitstring() << ',' << r.count << ',' << format_number(r.probability) << ','
           << format_number(r.energy) << ',' << (r.independent ? "true" : "false") << ','
           << (r.maximal ? "true" : "false") << ',' << (r.maximum ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace nashatom
