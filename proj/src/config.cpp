#include "nashatom/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nashatom/errors.hpp"

namespace nashatom {

namespace {

class Context {
public:
    explicit Context(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& message,
                           ErrorCode code = ErrorCode::ParseError) const {
        const auto mark = node.Mark();
        std::ostringstream os;
        os << origin_;
        if (mark.line >= 0) os << ':' << mark.line + 1 << ':' << mark.column + 1;
        os << ": " << message;
        throw Error(code, os.str());
    }

    YAML::Node root(const std::string& text) const {
        YAML::Node doc;
        try {
            doc = YAML::Load(text);
        } catch (const YAML::Exception& e) {
            std::ostringstream os;
            os << origin_ << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
            throw Error(ErrorCode::ParseError, os.str());
        }
        if (!doc.IsMap()) fail(doc, "expected a mapping at top level");
        return doc;
    }

    void only_fields(const YAML::Node& map, std::initializer_list<std::string_view> allowed) const {
        const std::set<std::string_view> ok(allowed);
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!ok.contains(key)) fail(kv.first, "unknown field '" + key + "'");
        }
    }

    YAML::Node required(const YAML::Node& map, const char* key) const {
        const YAML::Node node = map[key];
        if (!node) fail(map, std::string("missing required field '") + key + "'");
        return node;
    }

    double number(const YAML::Node& node, const std::string& what) const {
        if (!node.IsScalar()) fail(node, what + " must be a number");
        try {
            return node.as<double>();
        } catch (const YAML::Exception&) {
            fail(node, what + " must be a number, got '" + node.Scalar() + "'");
        }
    }

    std::string text(const YAML::Node& node, const std::string& what) const {
        if (!node.IsScalar()) fail(node, what + " must be a string");
        return node.Scalar();
    }

    std::vector<std::pair<double, double>> pairs(const YAML::Node& node, const std::string& what) const {
        if (!node.IsSequence()) fail(node, what + " must be a list of [a, b] pairs");
        std::vector<std::pair<double, double>> out;
        for (const auto& item : node) {
            if (!item.IsSequence() || item.size() != 2) fail(item, what + " entries must be two-element lists");
            out.emplace_back(number(item[0], what), number(item[1], what));
        }
        return out;
    }

    // Re-throws library errors with the node position attached, keeping the code.
    template <typename F>
    auto guarded(const YAML::Node& node, F&& build) const {
        try {
            return build();
        } catch (const Error& e) {
            fail(node, e.detail(), e.code());
        }
    }

private:
    std::string origin_;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

EmbeddedGraph parse_graph(const std::string& text, const std::string& origin) {
    const Context ctx(origin);
    const auto doc = ctx.root(text);
    ctx.only_fields(doc, {"nodes", "radius", "labels"});

    const auto nodes_node = ctx.required(doc, "nodes");
    std::vector<Point> nodes;
    for (const auto& [x, y] : ctx.pairs(nodes_node, "nodes")) nodes.push_back({x, y});
    const double radius = ctx.number(ctx.required(doc, "radius"), "radius");

    std::vector<std::string> labels;
    if (const auto labels_node = doc["labels"]) {
        if (!labels_node.IsSequence()) ctx.fail(labels_node, "labels must be a list of strings");
        for (const auto& l : labels_node) labels.push_back(ctx.text(l, "label"));
    }
    return ctx.guarded(nodes_node, [&] { return build_unit_disk_graph(nodes, radius, labels); });
}

GameParams parse_game(const std::string& text, const std::string& origin) {
    const Context ctx(origin);
    const auto doc = ctx.root(text);
    ctx.only_fields(doc, {"e_star", "cost", "benefit"});

    GameParams params;
    params.e_star = ctx.number(ctx.required(doc, "e_star"), "e_star");
    params.cost = ctx.number(ctx.required(doc, "cost"), "cost");
    if (const auto b = doc["benefit"]) {
        const auto name = ctx.text(b, "benefit");
        if (name != "satiating_linear") ctx.fail(b, "unknown benefit '" + name + "' (expected satiating_linear)");
        params.benefit = BenefitKind::SatiatingLinear;
    }
    ctx.guarded(doc, [&] {
        params.check();
        return 0;
    });
    return params;
}

Schedule parse_schedule(const std::string& text, const std::string& origin) {
    const Context ctx(origin);
    const auto doc = ctx.root(text);
    ctx.only_fields(doc, {"omega", "delta", "duration", "units"});

    if (const auto units = doc["units"]) {
        if (!units.IsMap()) ctx.fail(units, "units must be a mapping");
        ctx.only_fields(units, {"time", "frequency"});
        if (units["time"] && ctx.text(units["time"], "units.time") != "us") {
            ctx.fail(units["time"], "time unit must be 'us'");
        }
        if (units["frequency"] && ctx.text(units["frequency"], "units.frequency") != "rad/us") {
            ctx.fail(units["frequency"], "frequency unit must be 'rad/us'");
        }
    }

    auto waveform = [&](const char* key) {
        const auto node = ctx.required(doc, key);
        std::vector<Breakpoint> points;
        for (const auto& [t, v] : ctx.pairs(node, key)) points.push_back({t, v});
        return ctx.guarded(node, [&] { return Waveform(points); });
    };

    Schedule s;
    s.omega = waveform("omega");
    s.delta = waveform("delta");
    s.duration = ctx.number(ctx.required(doc, "duration"), "duration");
    ctx.guarded(doc, [&] {
        s.check();
        return 0;
    });
    return s;
}

EmbeddedGraph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path), path.string()); }
GameParams load_game(const std::filesystem::path& path) { return parse_game(read_file(path), path.string()); }
Schedule load_schedule(const std::filesystem::path& path) { return parse_schedule(read_file(path), path.string()); }

}  // namespace nashatom
