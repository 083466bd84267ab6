#include "homflow/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "homflow/error.hpp"

namespace homflow {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedFile, what); }

void allow_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) malformed(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!keys.count(key)) malformed("unknown field '" + key + "' in " + where);
}

double weight_of(const json& atom, const std::string& where) {
  const auto it = atom.find("weight");
  if (it == atom.end() || !it->is_number()) malformed(where + ".weight must be a number");
  const double w = it->get<double>();
  if (!std::isfinite(w) || w < 0.0) malformed(where + ".weight must be finite and nonnegative");
  return w;
}

}  // namespace

double MeasureSpec::total_mass() const {
  double s = 0.0;
  for (const auto& a : vertices) s += a.weight;
  for (const auto& p : points) s += p.weight;
  return s;
}

MeasureSpec parse_measure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  allow_keys(doc, {"atoms"}, "measure");
  if (!doc.contains("atoms") || !doc["atoms"].is_array()) malformed("measure needs an 'atoms' array");
  MeasureSpec spec;
  const json& atoms = doc["atoms"];
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    const json& a = atoms[i];
    allow_keys(a, {"vertex", "point", "weight"}, where);
    const double w = weight_of(a, where);
    if (a.contains("vertex") == a.contains("point")) malformed(where + " needs exactly one of vertex, point");
    if (a.contains("vertex")) {
      const json& v = a["vertex"];
      allow_keys(v, {"cell", "fiber"}, where + ".vertex");
      VertexAtom atom;
      atom.weight = w;
      if (!v.contains("cell") || !v["cell"].is_array()) malformed(where + ".vertex.cell must be an array");
      for (const auto& c : v["cell"]) {
        if (!c.is_number_integer()) malformed(where + ".vertex.cell entries must be integers");
        atom.cell.push_back(c.get<int>());
      }
      if (v.contains("fiber")) {
        if (v["fiber"].is_string()) atom.fiber = v["fiber"].get<std::string>();
        else if (v["fiber"].is_number_integer()) atom.fiber = std::to_string(v["fiber"].get<long long>());
        else malformed(where + ".vertex.fiber must be a string or an integer");
      }
      spec.vertices.push_back(std::move(atom));
    } else {
      const json& p = a["point"];
      if (!p.is_array() || p.empty()) malformed(where + ".point must be a nonempty array");
      WeightedPoint wp;
      wp.weight = w;
      for (const auto& c : p) {
        if (!c.is_number()) malformed(where + ".point entries must be numbers");
        wp.pos.push_back(c.get<double>());
      }
      spec.points.push_back(std::move(wp));
    }
  }
  return spec;
}

MeasureSpec load_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open measure file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

DiscreteMeasure realize(const RescaledGraph& rg, const MeasureSpec& spec) {
  std::vector<double> w = embed_points(rg, spec.points).weights();
  for (const auto& a : spec.vertices) {
    if (static_cast<int>(a.cell.size()) != rg.dim()) malformed("vertex cell has wrong dimension");
    int fiber = 0;
    if (!a.fiber.empty()) {
      const auto found = rg.base().find_fiber(a.fiber);
      if (!found) malformed("unknown fiber id '" + a.fiber + "'");
      fiber = static_cast<int>(*found);
    }
    w[rg.vertex(a.cell, fiber)] += a.weight;
  }
  return DiscreteMeasure(std::move(w));
}

}  // namespace homflow
