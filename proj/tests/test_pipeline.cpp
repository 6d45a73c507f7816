#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "nashatom/cli.hpp"
#include "nashatom/errors.hpp"
#include "nashatom/pipeline.hpp"

namespace nashatom {
namespace {

namespace fs = std::filesystem;
using testing::graph_a;
using testing::graph_b;

const fs::path kConfigs = NASHATOM_CONFIG_DIR;

// Quantum runs are the slow part; share them across tests.
const QuantumFragment& quantum_a() {
    static const QuantumFragment q = run_quantum(graph_a(), default_schedule(), testing::kPinnedC6GraphA, 1000, 7);
    return q;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() /
                ("nashatom-" + std::to_string(::getpid()) + "-" + info->test_suite_name() + "-" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nashatom");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(RunClassical, GraphA) {
    const auto f = run_classical(graph_a(), GameParams{});
    EXPECT_EQ(f.nash_supports.size(), 5u);
    EXPECT_EQ(f.maximal_sets.size(), 5u);
    EXPECT_EQ(f.maximum_sets, std::vector<NodeSet>{NodeSet::from_bitstring("100110")});
    EXPECT_TRUE(f.correspondence.matches);
    EXPECT_EQ(f.fingerprint, graph_a().fingerprint());
}

TEST(RunClassical, GraphB) {
    const auto f = run_classical(graph_b(), GameParams{});
    EXPECT_EQ(f.nash_supports.size(), 4u);
    EXPECT_EQ(f.maximal_sets.size(), 4u);
    EXPECT_EQ(f.maximum_sets.size(), 4u);
    EXPECT_TRUE(f.correspondence.matches);
}

TEST(RunClassical, SingleNode) {
    const auto f = run_classical(build_unit_disk_graph({{0, 0}}, 1.0), GameParams{});
    EXPECT_EQ(f.nash_supports, std::vector<NodeSet>{NodeSet::from_bitstring("1")});
    EXPECT_TRUE(f.correspondence.matches);
}

TEST(RunQuantum, GraphAModalIsTheMis) {
    const auto& q = quantum_a();
    ASSERT_FALSE(q.rows.empty());
    EXPECT_EQ(q.rows.front().bitstring.bitstring(), "100110");
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < q.rows.size(); ++i) {
        total += q.rows[i].count;
        if (i > 0) EXPECT_GE(q.rows[i - 1].count, q.rows[i].count);
    }
    EXPECT_EQ(total, 1000u);
    EXPECT_LT(std::abs(q.norm - 1.0), 1e-9);
}

TEST(RunQuantum, RowsAreClassified) {
    for (const auto& r : quantum_a().rows) {
        EXPECT_EQ(r.independent, testing::oracle_independent(graph_a(), r.bitstring.bits()));
        if (r.maximum) EXPECT_TRUE(r.maximal);
        if (r.maximal) EXPECT_TRUE(r.independent);
        EXPECT_GT(r.probability, 0.0);
    }
}

TEST(RunQuantum, SingleShot) {
    const auto q = run_quantum(graph_b(), default_schedule(), testing::kPinnedC6GraphB, 1, 3);
    ASSERT_EQ(q.rows.size(), 1u);
    EXPECT_EQ(q.rows[0].count, 1u);
}

TEST(RunQuantum, RefusesHardwareViolations) {
    try {
        run_quantum(build_unit_disk_graph({{0, 0}, {3, 0}}, 4.0), default_schedule(), kDefaultC6, 10, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
    const Schedule long_run{Waveform({{0, 0}, {5, 0}}), Waveform({{0, 0}, {5, 0}}), 5.0};
    EXPECT_THROW(run_quantum(graph_a(), long_run, kDefaultC6, 10, 1), Error);
}

TEST(TopK, PositionalMembership) {
    const auto s = [](const char* b) { return NodeSet::from_bitstring(b); };
    std::vector<HistogramRow> rows(3);
    rows[0].bitstring = s("10");
    rows[1].bitstring = s("01");
    rows[2].bitstring = s("00");
    EXPECT_TRUE(maximum_sets_in_top_k({s("01"), s("10")}, rows));
    EXPECT_FALSE(maximum_sets_in_top_k({s("00")}, rows));
    EXPECT_FALSE(maximum_sets_in_top_k({}, rows));
    EXPECT_FALSE(maximum_sets_in_top_k({s("10")}, {}));
}

TEST(Compare, GraphAPasses) {
    const auto r = compare(run_classical(graph_a(), GameParams{}), quantum_a());
    EXPECT_TRUE(r.pass());
}

TEST(Compare, DiabaticScheduleFailsOnlyTheQuantumVerdict) {
    // 0.1 us leaves most population in |000000>.
    const auto q = run_quantum(graph_a(), default_schedule(0.1), testing::kPinnedC6GraphA, 1000, 7);
    EXPECT_EQ(q.rows.front().bitstring.bitstring(), "000000");
    const auto r = compare(run_classical(graph_a(), GameParams{}), q);
    EXPECT_TRUE(r.nash_equals_mis);
    EXPECT_FALSE(r.mis_in_top_k);
    EXPECT_FALSE(r.pass());
}

TEST(Compare, DifferentGraphsAreIncompatible) {
    try {
        compare(run_classical(graph_b(), GameParams{}), quantum_a());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompatibleRuns);
    }
}

TEST(Compare, VerdictsRecomputableFromReport) {
    const auto doc = to_json(compare(run_classical(graph_a(), GameParams{}), quantum_a()));
    const auto& c = doc.at("classical");
    EXPECT_EQ(doc.at("verdicts").at("nash_equals_mis").get<bool>(),
              c.at("nash_supports") == c.at("maximal_independent_sets"));
    bool all_in_top = true;
    for (const auto& m : c.at("maximum_independent_sets")) {
        bool found = false;
        for (const auto& t : doc.at("quantum").at("top")) found = found || t.at("bitstring") == m;
        all_in_top = all_in_top && found;
    }
    EXPECT_EQ(doc.at("verdicts").at("mis_in_top_k").get<bool>(), all_in_top);
}

TEST(Reports, JsonRoundTrip) {
    const auto c = run_classical(graph_b(), GameParams{});
    EXPECT_EQ(to_json(classical_from_json(to_json(c))).dump(), to_json(c).dump());
    const auto& q = quantum_a();
    EXPECT_EQ(to_json(quantum_from_json(to_json(q))).dump(), to_json(q).dump());
    EXPECT_THROW(classical_from_json(to_json(q)), Error);
    EXPECT_THROW(quantum_from_json(Json{{"schema", "nashatom.quantum/1"}}), Error);
}

TEST(Reports, HistogramCsv) {
    const auto csv = histogram_csv(quantum_a());
    EXPECT_EQ(csv.rfind("bitstring,count,probability,energy,is_independent,is_maximal,is_mis\n100110,", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), quantum_a().rows.size() + 1);
}

TEST(Cli, ClassicalWritesReport) {
    TempDir dir;
    const auto r = cli({"classical", "--graph", (kConfigs / "graph_a.yaml").string(), "--out", dir.path().string()});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_NE(r.out.find("5 Nash, 5 mIS, 1 MIS, match=true"), std::string::npos) << r.out;
    const auto doc = Json::parse(slurp(dir.path() / "classical.json"));
    EXPECT_EQ(doc.at("maximum_independent_sets"), Json::array({"100110"}));
}

TEST(Cli, AllOnGraphAPassesAndIsDeterministic) {
    TempDir one, two;
    const std::vector<std::string> common = {"all", "--graph", (kConfigs / "graph_a.yaml").string(), "--coupling-c",
                                             "2.1e6", "--seed", "11", "--plot-data"};
    auto args = common;
    args.insert(args.end(), {"--out", one.path().string()});
    const auto r1 = cli(args);
    EXPECT_EQ(r1.code, kExitPass) << r1.err;
    args = common;
    args.insert(args.end(), {"--out", two.path().string()});
    EXPECT_EQ(cli(args).code, kExitPass);
    for (const char* f : {"validation.json", "classical.json", "quantum.json", "histogram.csv", "comparison.json",
                          "plot_histogram.tsv", "plot_schedule.tsv"}) {
        ASSERT_TRUE(fs::exists(one.path() / f)) << f;
        EXPECT_EQ(slurp(one.path() / f), slurp(two.path() / f)) << f;
    }
}

TEST(Cli, CompareReadsReportsFromDisk) {
    TempDir a, b;
    const auto graph_a_file = (kConfigs / "graph_a.yaml").string();
    ASSERT_EQ(cli({"classical", "--graph", graph_a_file, "--out", a.path().string()}).code, kExitPass);
    ASSERT_EQ(cli({"anneal", "--graph", graph_a_file, "--coupling-c", "2.1e6", "--out", a.path().string()}).code,
              kExitPass);
    EXPECT_EQ(cli({"compare", "--out", a.path().string()}).code, kExitPass);
    EXPECT_TRUE(fs::exists(a.path() / "comparison.json"));

    ASSERT_EQ(cli({"classical", "--graph", (kConfigs / "graph_b.yaml").string(), "--out", b.path().string()}).code,
              kExitPass);
    const auto mixed = cli({"compare", "--out", b.path().string(), "--quantum", (a.path() / "quantum.json").string()});
    EXPECT_EQ(mixed.code, kExitError);
    EXPECT_NE(mixed.err.find("IncompatibleRuns"), std::string::npos) << mixed.err;
}

TEST(Cli, VerdictFailureExitsTwo) {
    TempDir dir;
    const auto sched = dir.path() / "short.yaml";
    std::ofstream(sched) << "duration: 0.1\nomega: [[0, 0], [0.00625, 7.27], [0.09375, 7.27], [0.1, 0]]\n"
                            "delta: [[0, -7.27], [0.1, 7.27]]\n";
    const auto r = cli({"all", "--graph", (kConfigs / "graph_a.yaml").string(), "--schedule", sched.string(),
                        "--coupling-c", "2.1e6", "--out", dir.path().string()});
    EXPECT_EQ(r.code, kExitVerdictFailure) << r.err;
    EXPECT_NE(r.out.find("classical: 5 Nash, 5 mIS, 1 MIS, match=true"), std::string::npos);
}

TEST(Cli, HardwareViolations) {
    TempDir dir;
    const auto graph = (kConfigs / "graph_a.yaml").string();
    const auto sched = (kConfigs / "schedule_too_long.yaml").string();
    EXPECT_EQ(cli({"validate", "--graph", graph, "--schedule", sched, "--out", dir.path().string()}).code,
              kExitVerdictFailure);
    const auto doc = Json::parse(slurp(dir.path() / "validation.json"));
    EXPECT_FALSE(doc.at("ok").get<bool>());
    EXPECT_EQ(doc.at("violations").at(0).at("kind"), "max_evolution_time");
    EXPECT_EQ(cli({"all", "--graph", graph, "--schedule", sched, "--out", dir.path().string()}).code, kExitError);
    EXPECT_EQ(cli({"anneal", "--graph", graph, "--schedule", sched, "--out", dir.path().string()}).code, kExitError);
}

TEST(Cli, ExecutionErrors) {
    TempDir dir;
    EXPECT_EQ(cli({}).code, kExitError);
    EXPECT_EQ(cli({"classical"}).code, kExitError);
    EXPECT_EQ(cli({"classical", "--graph", "/nonexistent.yaml"}).code, kExitError);
    EXPECT_EQ(cli({"anneal", "--graph", (kConfigs / "graph_a.yaml").string(), "--shots", "0"}).code, kExitError);

    const auto bad = dir.path() / "bad.yaml";
    std::ofstream(bad) << "nodes: [[0, 0]]\nradius: 1\nweight: 2\n";
    const auto r = cli({"classical", "--graph", bad.string(), "--out", dir.path().string()});
    EXPECT_EQ(r.code, kExitError);
    EXPECT_NE(r.err.find("bad.yaml:3:1: unknown field 'weight'"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"--help"}).code, kExitPass);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
    TempDir dir;
    const auto target = dir.path() / "from-env";
    ::setenv(kOutDirEnv, target.c_str(), 1);
    const auto r = cli({"classical", "--graph", (kConfigs / "graph_b.yaml").string()});
    ::unsetenv(kOutDirEnv);
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_TRUE(fs::exists(target / "classical.json"));
}

}  // namespace
}  // namespace nashatom
