#include "homflow/graph_io.hpp"

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

const json& required(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) malformed("missing field '" + key + "' in " + where);
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) malformed(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) malformed(where + " must be finite");
  return x;
}

std::string fiber_id(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  malformed(where + " must be a string or an integer");
}

}  // namespace

PeriodicGraph parse_graph(const std::string& text, const std::string& fallback_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  allow_keys(doc, {"name", "dim", "fiber", "orbits"}, "graph");
  const json& jdim = required(doc, "dim", "graph");
  if (!jdim.is_number_integer() || jdim.get<long long>() < 1 || jdim.get<long long>() > 8)
    malformed("dim must be an integer in [1, 8]");
  const int dim = jdim.get<int>();
  std::string name = fallback_name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) malformed("name must be a string");
    name = doc["name"].get<std::string>();
  }

  const json& jfiber = required(doc, "fiber", "graph");
  if (!jfiber.is_array() || jfiber.empty()) malformed("fiber must be a nonempty array");
  std::vector<FiberVertex> fiber;
  for (std::size_t i = 0; i < jfiber.size(); ++i) {
    const std::string where = "fiber[" + std::to_string(i) + "]";
    allow_keys(jfiber[i], {"id", "pos"}, where);
    FiberVertex v;
    v.id = fiber_id(required(jfiber[i], "id", where), where + ".id");
    const json& pos = required(jfiber[i], "pos", where);
    if (!pos.is_array() || static_cast<int>(pos.size()) != dim)
      malformed(where + ".pos must have dim entries");
    for (const auto& c : pos) v.pos.push_back(number(c, where + ".pos"));
    for (const auto& w : fiber)
      if (w.id == v.id) malformed("duplicate fiber id '" + v.id + "'");
    fiber.push_back(std::move(v));
  }
  auto index_of = [&](const std::string& id, const std::string& where) {
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (fiber[i].id == id) return static_cast<int>(i);
    malformed(where + " references unknown fiber id '" + id + "'");
  };

  const json& jorbits = required(doc, "orbits", "graph");
  if (!jorbits.is_array()) malformed("orbits must be an array");
  std::vector<EdgeOrbit> orbits;
  for (std::size_t i = 0; i < jorbits.size(); ++i) {
    const std::string where = "orbits[" + std::to_string(i) + "]";
    const json& jo = jorbits[i];
    allow_keys(jo, {"from", "to", "shift", "alpha", "alpha_reverse"}, where);
    EdgeOrbit o;
    o.from = index_of(fiber_id(required(jo, "from", where), where + ".from"), where);
    o.to = index_of(fiber_id(required(jo, "to", where), where + ".to"), where);
    const json& shift = required(jo, "shift", where);
    if (!shift.is_array() || static_cast<int>(shift.size()) != dim)
      malformed(where + ".shift must have dim entries");
    for (const auto& c : shift) {
      if (!c.is_number_integer()) malformed(where + ".shift entries must be integers");
      o.shift.push_back(c.get<int>());
    }
    if (jo.contains("alpha")) {
      o.alpha = number(jo["alpha"], where + ".alpha");
    } else {
      Vec d(dim);
      for (int c = 0; c < dim; ++c) d[c] = o.shift[c] + fiber[o.to].pos[c] - fiber[o.from].pos[c];
      o.alpha = default_alpha(d);
    }
    o.alpha_reverse = jo.contains("alpha_reverse") ? number(jo["alpha_reverse"], where + ".alpha_reverse")
                                                   : o.alpha;
    orbits.push_back(std::move(o));
  }
  try {
    return PeriodicGraph(dim, std::move(fiber), std::move(orbits), name);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidGraph) malformed(e.what());
    throw;
  }
}

PeriodicGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path.stem().string());
}

std::string graph_to_json(const PeriodicGraph& g) {
  json doc;
  doc["name"] = g.name();
  doc["dim"] = g.dim();
  doc["fiber"] = json::array();
  for (const auto& v : g.fiber()) doc["fiber"].push_back({{"id", v.id}, {"pos", v.pos}});
  doc["orbits"] = json::array();
  for (const auto& o : g.orbits())
    doc["orbits"].push_back({{"from", g.fiber()[o.from].id},
                             {"to", g.fiber()[o.to].id},
                             {"shift", o.shift},
                             {"alpha", o.alpha},
                             {"alpha_reverse", o.alpha_reverse}});
  return doc.dump(2) + "\n";
}

}  // namespace homflow
