#pragma once

#include <filesystem>
#include <string>

#include "nashatom/dynamics.hpp"
#include "nashatom/game.hpp"
#include "nashatom/geometry.hpp"

namespace nashatom {

// Loaders for the YAML (or JSON) input files. Unknown fields are rejected;
// errors carry "file:line:column" context as ParseError.
//
// graph:    nodes: [[x, y], ...]   # um
//           radius: r              # um
//           labels: [a, b, ...]    # optional
// game:     e_star: 1.0
//           cost: 0.5
//           benefit: satiating_linear   # optional
// schedule: duration: 4.0                          # us
//           omega: [[t, value], ...]               # rad/us
//           delta: [[t, value], ...]               # rad/us
//           units: {time: us, frequency: rad/us}   # optional

EmbeddedGraph load_graph(const std::filesystem::path& path);
GameParams load_game(const std::filesystem::path& path);
Schedule load_schedule(const std::filesystem::path& path);

EmbeddedGraph parse_graph(const std::string& text, const std::string& origin = "<graph>");
GameParams parse_game(const std::string& text, const std::string& origin = "<game>");
Schedule parse_schedule(const std::string& text, const std::string& origin = "<schedule>");

}  // namespace nashatom
