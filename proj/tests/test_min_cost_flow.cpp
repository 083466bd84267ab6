#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homflow/error.hpp"
#include "homflow/min_cost_flow.hpp"

namespace homflow {
namespace {

FlowNetwork random_network(std::mt19937_64& rng, bool capacitated) {
  std::uniform_int_distribution<int> nodes(4, 9);
  std::uniform_real_distribution<double> cost(0.0, 5.0), cap(0.5, 3.0), supply(0.0, 1.0);
  FlowNetwork net;
  const int n = nodes(rng);
  net.supply.assign(n, 0.0);
  // A bidirectional ring keeps every instance feasible when uncapacitated.
  for (int v = 0; v < n; ++v) {
    net.arcs.push_back({static_cast<std::size_t>(v), static_cast<std::size_t>((v + 1) % n), cost(rng),
                        capacitated ? 10.0 : kInf});
    net.arcs.push_back({static_cast<std::size_t>((v + 1) % n), static_cast<std::size_t>(v), cost(rng),
                        capacitated ? 10.0 : kInf});
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < 2 * n; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a != b)
      net.arcs.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), cost(rng),
                          capacitated ? cap(rng) : kInf});
  }
  double total = 0.0;
  for (int v = 0; v + 1 < n; ++v) {
    net.supply[v] = supply(rng) - 0.5;
    total += net.supply[v];
  }
  net.supply[n - 1] = -total;
  return net;
}

TEST(MinCostFlow, SingleArc) {
  FlowNetwork net{{1.0, -1.0}, {{0, 1, 5.0}}};
  const auto s = solve_min_cost_flow(net);
  EXPECT_EQ(s.flow[0], 1.0);
  EXPECT_EQ(s.cost, 5.0);
}

TEST(MinCostFlow, CheapRouteWins) {
  // 0 -> 1 -> 3 costs 1, 0 -> 2 -> 3 costs 3.
  FlowNetwork net{{2.0, 0.0, 0.0, -2.0}, {{0, 1, 0.5}, {1, 3, 0.5}, {0, 2, 1.5}, {2, 3, 1.5}}};
  const auto s = solve_min_cost_flow(net);
  EXPECT_EQ(s.flow[0], 2.0);
  EXPECT_EQ(s.flow[1], 2.0);
  EXPECT_EQ(s.flow[2], 0.0);
  EXPECT_EQ(s.cost, 2.0);
}

TEST(MinCostFlow, CapacitySplitsFlow) {
  FlowNetwork net{{2.0, -2.0}, {{0, 1, 1.0, 1.5}, {0, 1, 4.0}}};
  const auto s = solve_min_cost_flow(net);
  EXPECT_NEAR(s.flow[0], 1.5, 1e-15);
  EXPECT_NEAR(s.flow[1], 0.5, 1e-15);
  EXPECT_NEAR(s.cost, 3.5, 1e-15);
}

TEST(MinCostFlow, DisconnectedSupplyIsInfeasible) {
  FlowNetwork net{{1.0, -1.0, 0.0}, {{0, 2, 1.0}, {2, 0, 1.0}}};
  try {
    solve_min_cost_flow(net);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleSupply);
  }
}

TEST(MinCostFlow, RejectsBadNetworks) {
  EXPECT_THROW(solve_min_cost_flow(FlowNetwork{{1.0, 0.0}, {{0, 1, 1.0}}}), Error);
  EXPECT_THROW(solve_min_cost_flow(FlowNetwork{{1.0, -1.0}, {{0, 1, -1.0}}}), Error);
  EXPECT_THROW(solve_min_cost_flow(FlowNetwork{{1.0, -1.0}, {{0, 1, 1.0, 0.0}}}), Error);
}

TEST(MinCostFlow, MatchesLinearProgramAndSlackness) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = random_network(rng, trial % 2 == 1);
    const auto s = solve_min_cost_flow(net);
    const auto lp = solve_lp(to_linear_program(net));
    ASSERT_EQ(lp.status, LpStatus::Optimal);
    EXPECT_NEAR(s.cost, lp.objective, 1e-8);

    std::vector<double> balance(net.node_count(), 0.0);
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
      const auto& arc = net.arcs[a];
      balance[arc.tail] += s.flow[a];
      balance[arc.head] -= s.flow[a];
      EXPECT_GE(s.flow[a], -1e-12);
      EXPECT_LE(s.flow[a], arc.capacity + 1e-12);
      const double rc = arc.cost + s.potential[arc.tail] - s.potential[arc.head];
      if (s.flow[a] > 1e-12) { EXPECT_LE(rc, 1e-9); }
      if (s.flow[a] < arc.capacity - 1e-12) { EXPECT_GE(rc, -1e-9); }
    }
    for (std::size_t v = 0; v < balance.size(); ++v) EXPECT_NEAR(balance[v], net.supply[v], 1e-12);
  }
}

}  // namespace
}  // namespace homflow
