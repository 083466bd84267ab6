#include <gtest/gtest.h>

#include "homflow/error.hpp"
#include "homflow/graph_io.hpp"
#include "homflow/measure_io.hpp"
#include "test_util.hpp"

namespace homflow {
namespace {

void expect_same(const PeriodicGraph& a, const PeriodicGraph& b) {
  ASSERT_EQ(a.dim(), b.dim());
  ASSERT_EQ(a.fiber_size(), b.fiber_size());
  for (std::size_t v = 0; v < a.fiber_size(); ++v) EXPECT_EQ(a.fiber()[v].pos, b.fiber()[v].pos);
  ASSERT_EQ(a.orbit_count(), b.orbit_count());
  for (std::size_t i = 0; i < a.orbit_count(); ++i) {
    const auto& o = a.orbits()[i];
    const auto ref = b.find_orbit(o.from, o.to, o.shift);
    ASSERT_TRUE(ref.has_value());
    const auto& p = b.orbits()[ref->index];
    EXPECT_DOUBLE_EQ(ref->reversed ? p.alpha_reverse : p.alpha, o.alpha);
    EXPECT_DOUBLE_EQ(ref->reversed ? p.alpha : p.alpha_reverse, o.alpha_reverse);
  }
}

void expect_malformed(const std::string& text) {
  try {
    parse_graph(text);
    FAIL() << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedFile) << text;
  }
}

TEST(GraphIo, CubicFixtureMatchesGenerator) {
  expect_same(load_graph(test::data_path("cubic2-axis.json")), make_cubic(2, Neighborhood::Axis));
  expect_same(load_graph(test::data_path("cubic2-linf.json")), make_cubic(2, Neighborhood::Linf));
  expect_same(load_graph(test::data_path("triangular.json")), make_triangular());
  expect_same(load_graph(test::data_path("honeycomb.json")), make_honeycomb());
}

TEST(GraphIo, DefaultWeightIsHalfLength) {
  const auto g = load_graph(test::data_path("1d.json"));
  expect_same(g, make_1d_nn(std::vector<double>{0.0, 0.3}));
}

TEST(GraphIo, RoundTrip) {
  for (const auto& g : {make_honeycomb(), make_cubic(3, Neighborhood::Linf)}) {
    expect_same(parse_graph(graph_to_json(g)), g);
  }
}

TEST(GraphIo, RejectsBadDocuments) {
  expect_malformed("{");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0]}], "orbits": [], "extra": 1})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0], "x": 1}], "orbits": []})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0, 1]}], "orbits": []})");
  expect_malformed(R"({"fiber": [{"id": 0, "pos": [0]}], "orbits": []})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0]}],
                       "orbits": [{"from": 0, "to": 9, "shift": [1]}]})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0]}],
                       "orbits": [{"from": 0, "to": 0, "shift": [1.5]}]})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0]}],
                       "orbits": [{"from": 0, "to": 0, "shift": [0]}]})");
  expect_malformed(R"({"dim": 1, "fiber": [{"id": 0, "pos": [0]}, {"id": 0, "pos": [0.5]}], "orbits": []})");
  EXPECT_THROW(load_graph(test::data_path("missing.json")), Error);
}

TEST(MeasureIo, ParsesBothAtomKinds) {
  const auto spec = parse_measure(R"({"atoms": [
      {"vertex": {"cell": [1, 2], "fiber": "b"}, "weight": 0.25},
      {"point": [0.6, 0.1], "weight": 0.75}]})");
  ASSERT_EQ(spec.vertices.size(), 1u);
  ASSERT_EQ(spec.points.size(), 1u);
  EXPECT_EQ(spec.total_mass(), 1.0);
  const RescaledGraph rg(make_honeycomb(), 4);
  const auto m = realize(rg, spec);
  EXPECT_EQ(m[rg.vertex(std::vector<int>{1, 2}, 1)], 0.25);
  EXPECT_EQ(m[rg.vertex(std::vector<int>{2, 0}, 0)], 0.75);
}

TEST(MeasureIo, RejectsBadAtoms) {
  EXPECT_THROW(parse_measure(R"({"atoms": [{"point": [0.5], "weight": -1}]})"), Error);
  EXPECT_THROW(parse_measure(R"({"atoms": [{"weight": 1}]})"), Error);
  EXPECT_THROW(parse_measure(R"({"atoms": [{"point": [0.5], "vertex": {"cell": [0]}, "weight": 1}]})"), Error);
  EXPECT_THROW(parse_measure(R"({"points": []})"), Error);
}

}  // namespace
}  // namespace homflow
