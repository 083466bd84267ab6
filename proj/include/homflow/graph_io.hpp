#pragma once

// JSON graph files:
//
//   {
//     "name": "cubic2-axis",                      optional
//     "dim": 2,
//     "fiber": [{"id": "o", "pos": [0, 0]}],
//     "orbits": [{"from": "o", "to": "o", "shift": [1, 0],
//                 "alpha": 0.5,                    optional, default |d|_2 / 2
//                 "alpha_reverse": 0.5}]           optional, default alpha
//   }
//
// Unknown keys are rejected.

#include <filesystem>
#include <string>

#include "homflow/periodic_graph.hpp"

namespace homflow {

/// Throws Error(MalformedFile) on syntax or schema errors.
PeriodicGraph parse_graph(const std::string& text, const std::string& fallback_name = {});

PeriodicGraph load_graph(const std::filesystem::path& path);

std::string graph_to_json(const PeriodicGraph& g);

}  // namespace homflow
