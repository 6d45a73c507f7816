#include "nashatom/cli.hpp"

#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "nashatom/config.hpp"
#include "nashatom/errors.hpp"
#include "nashatom/pipeline.hpp"

namespace nashatom {

namespace {

namespace fs = std::filesystem;

struct Options {
    RunConfig run;
    std::string graph;
    std::string game;
    std::string schedule;
    std::string out;
    std::string classical_report;
    std::string quantum_report;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    os << text;
}

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
    try {
        return Json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

class Pipeline {
public:
    Pipeline(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {
        cfg_ = opts.run;
        cfg_.graph = opts.graph;
        if (!opts.game.empty()) cfg_.game = opts.game;
        if (!opts.schedule.empty()) cfg_.schedule = opts.schedule;
        if (!opts.out.empty()) {
            cfg_.out = opts.out;
        } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
            cfg_.out = env;
        }
    }

    const RunConfig& config() const { return cfg_; }

    void prepare(bool needs_graph) {
        if (needs_graph) {
            cfg_.check();
            graph_.emplace(load_graph(cfg_.graph));
        }
        fs::create_directories(cfg_.out);
    }

    GameParams game() const { return cfg_.game ? load_game(*cfg_.game) : GameParams{}; }
    Schedule schedule() const {
        return cfg_.schedule ? load_schedule(*cfg_.schedule) : default_schedule(4.0, 7.27, 7.27, cfg_.hardware);
    }

    int validate() {
        const auto report = validate_run(*graph_, schedule(), cfg_.hardware, cfg_.ambiguity_margin);
        Json doc{{"schema", "nashatom.validation/1"}, {"graph", to_json(*graph_)}};
        const Json body = to_json(report);
        for (const auto& [k, v] : body.items()) doc[k] = v;
        write_json(cfg_.out / "validation.json", doc);
        out_ << "validate: " << (report.ok() ? "ok" : "FAILED") << " (" << report.violations.size()
             << " violation(s), " << report.warnings.size() << " warning(s))\n";
        return report.ok() ? kExitPass : kExitVerdictFailure;
    }

    int classical() {
        classical_ = run_classical(*graph_, game(), cfg_.limit);
        write_json(cfg_.out / "classical.json", to_json(*classical_));
        out_ << "classical: " << classical_->nash_supports.size() << " Nash, " << classical_->maximal_sets.size()
             << " mIS, " << classical_->maximum_sets.size() << " MIS, match="
             << (classical_->correspondence.matches ? "true" : "false") << "\n";
        return classical_->correspondence.matches ? kExitPass : kExitVerdictFailure;
    }

    int anneal() {
        const auto sched = schedule();
        quantum_ = run_quantum(*graph_, sched, cfg_.c6, cfg_.shots, cfg_.seed, cfg_.hardware, cfg_.limit);
        write_json(cfg_.out / "quantum.json", to_json(*quantum_));
        write_text(cfg_.out / "histogram.csv", histogram_csv(*quantum_));
        if (cfg_.plot_data) write_plot_data(sched);
        const bool top = maximum_sets_in_top_k(quantum_->maximum_sets, quantum_->rows);
        out_ << "anneal: " << quantum_->rows.size() << " distinct outcomes over " << quantum_->shots
             << " shots, modal " << quantum_->rows.front().bitstring.bitstring() << ", MIS probability "
             << quantum_->maximum_set_probability << ", MIS in top-k=" << (top ? "true" : "false") << "\n";
        return top ? kExitPass : kExitVerdictFailure;
    }

    int compare_reports() {
        const ClassicalFragment c =
            classical_ ? *classical_
                       : classical_from_json(read_json(opts_.classical_report.empty() ? cfg_.out / "classical.json"
                                                                                       : fs::path(opts_.classical_report)));
        const QuantumFragment q =
            quantum_ ? *quantum_
                     : quantum_from_json(read_json(opts_.quantum_report.empty() ? cfg_.out / "quantum.json"
                                                                                : fs::path(opts_.quantum_report)));
        const auto report = compare(c, q);
        write_json(cfg_.out / "comparison.json", to_json(report));
        out_ << "compare: nash==mIS " << (report.nash_equals_mis ? "PASS" : "FAIL") << ", MIS in top-k "
             << (report.mis_in_top_k ? "PASS" : "FAIL") << ", overall " << (report.pass() ? "PASS" : "FAIL") << "\n";
        return report.pass() ? kExitPass : kExitVerdictFailure;
    }

private:
    void write_plot_data(const Schedule& sched) const {
        std::ostringstream hist;
        hist << "# rank\tbitstring\tcount\tprobability\n";
        for (std::size_t i = 0; i < quantum_->rows.size(); ++i) {
            const auto& r = quantum_->rows[i];
            hist << i + 1 << '\t' << r.bitstring.bitstring() << '\t' << r.count << '\t' << r.probability << '\n';
        }
        write_text(cfg_.out / "plot_histogram.tsv", hist.str());

        std::ostringstream wave;
        wave << "# t_us\tomega_rad_per_us\tdelta_rad_per_us\n";
        constexpr int samples = 400;
        for (int k = 0; k <= samples; ++k) {
            const double t = sched.duration * k / samples;
            wave << t << '\t' << sched.omega(t) << '\t' << sched.delta(t) << '\n';
        }
        write_text(cfg_.out / "plot_schedule.tsv", wave.str());
    }

    Options opts_;
    RunConfig cfg_;
    std::ostream& out_;
    std::optional<EmbeddedGraph> graph_;
    std::optional<ClassicalFragment> classical_;
    std::optional<QuantumFragment> quantum_;
};

void add_run_options(CLI::App* cmd, Options& opts, bool classical, bool quantum) {
    cmd->add_option("--graph", opts.graph, "Graph file (YAML/JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out, std::string("Output directory (default $") + kOutDirEnv + " or nashatom-out)");
    cmd->add_option("--limit", opts.run.limit, "Exhaustive enumeration limit (nodes)")->check(CLI::Range(1, 31));
    if (classical) cmd->add_option("--game", opts.game, "Game parameter file")->check(CLI::ExistingFile);
    if (quantum) {
        cmd->add_option("--schedule", opts.schedule, "Schedule file (default: built-in 4 us profile)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--shots", opts.run.shots, "Measurement shots")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opts.run.seed, "Sampling seed");
        cmd->add_option("--coupling-c", opts.run.c6, "Van der Waals C6 in rad/us um^6")->check(CLI::PositiveNumber);
        cmd->add_flag("--plot-data", opts.run.plot_data, "Also write plot-ready TSV series");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nash equilibria of public-goods games via simulated Rydberg annealing", "nashatom"};
    app.require_subcommand(1);
    Options opts;

    auto* validate = app.add_subcommand("validate", "Check a layout and schedule against hardware limits");
    add_run_options(validate, opts, false, true);
    auto* classical = app.add_subcommand("classical", "Enumerate Nash equilibria and independent sets");
    add_run_options(classical, opts, true, false);
    auto* anneal = app.add_subcommand("anneal", "Simulate the annealing schedule and sample shots");
    add_run_options(anneal, opts, false, true);
    auto* cmp = app.add_subcommand("compare", "Compare classical and quantum reports");
    cmp->add_option("--out", opts.out, "Directory holding the reports; comparison.json is written here");
    cmp->add_option("--classical", opts.classical_report, "Classical report (default <out>/classical.json)");
    cmp->add_option("--quantum", opts.quantum_report, "Quantum report (default <out>/quantum.json)");
    auto* all = app.add_subcommand("all", "validate, classical, anneal and compare in one run");
    add_run_options(all, opts, true, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    try {
        Pipeline pipeline(opts, out);
        if (*cmp) {
            pipeline.prepare(false);
            return pipeline.compare_reports();
        }
        pipeline.prepare(true);
        if (*validate) return pipeline.validate();
        if (*classical) return pipeline.classical();
        if (*anneal) return pipeline.anneal();

        int status = pipeline.validate();
        if (status != kExitPass) {
            err << "hardware validation failed; see validation.json\n";
            return kExitError;
        }
        status = std::max(status, pipeline.classical());
        status = std::max(status, pipeline.anneal());
        return std::max(status, pipeline.compare_reports());
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace nashatom
