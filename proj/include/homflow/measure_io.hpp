#pragma once

// JSON measure files: a list of atoms, each sitting on a torus vertex or at
// a point of [0,1)^d.
//
//   {"atoms": [{"vertex": {"cell": [0, 0], "fiber": "o"}, "weight": 0.5},
//              {"point": [0.25, 0.5], "weight": 0.5}]}

#include <filesystem>
#include <string>
#include <vector>

#include "homflow/periodic_graph.hpp"
#include "homflow/transport.hpp"

namespace homflow {

struct VertexAtom {
  std::vector<int> cell;
  std::string fiber;
  double weight = 0.0;
};

struct MeasureSpec {
  std::vector<VertexAtom> vertices;
  std::vector<WeightedPoint> points;

  double total_mass() const;
};

/// Throws Error(MalformedFile).
MeasureSpec parse_measure(const std::string& text);
MeasureSpec load_measure(const std::filesystem::path& path);

/// Vertex atoms land on their vertex (cells taken mod N); point atoms are
/// embedded into their eps-cube.
DiscreteMeasure realize(const RescaledGraph& rg, const MeasureSpec& spec);

}  // namespace homflow
