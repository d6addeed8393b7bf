#include <delaygames/parity_solver.hpp>

#include <gtest/gtest.h>

#include <delaygames/arena.hpp>

#include "test_util.hpp"

using namespace delaygames;

namespace {

ParityGame single_vertex(Player owner, std::uint32_t color) {
  ParityGame g;
  g.vertices.push_back({owner, color, "v0"});
  g.successors.push_back({0});
  g.initial = 0;
  return g;
}

TEST(Attractor, FixedPoints) {
  const ParityGame g = dgtest::random_game(7);
  std::vector<std::uint32_t> all(g.vertex_count());
  for (std::uint32_t v = 0; v < all.size(); ++v) all[v] = v;
  EXPECT_EQ(attractor(g, Player::O, all), all);
  EXPECT_EQ(attractor(g, Player::I, all), all);
  EXPECT_TRUE(attractor(g, Player::O, {}).empty());
}

TEST(Attractor, ChainReachesTargets) {
  ParityGame g;
  for (std::uint32_t v = 0; v < 3; ++v) g.vertices.push_back({Player::O, 0, ""});
  g.successors = {{1}, {2}, {2}};
  g.initial = 0;
  const std::vector<std::uint32_t> targets{2};
  EXPECT_EQ(attractor(g, Player::O, targets), (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Attractor, Monotone) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ParityGame g = dgtest::random_game(seed);
    std::mt19937_64 rng(seed * 3 + 1);
    std::vector<std::uint32_t> small, big;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      if (rng() % 3 == 0) small.push_back(v);
      if (rng() % 2 == 0 ||
          std::binary_search(small.begin(), small.end(), v))
        big.push_back(v);
    }
    const auto a = attractor(g, Player::O, small);
    const auto b = attractor(g, Player::O, big);
    for (std::uint32_t v : a) EXPECT_TRUE(std::binary_search(b.begin(), b.end(), v));
  }
}

TEST(SolveParity, SingleVertexLoops) {
  const Solution even = solve_parity(single_vertex(Player::O, 0));
  EXPECT_EQ(even.win_o, std::vector<std::uint32_t>{0});
  EXPECT_TRUE(even.win_i.empty());
  EXPECT_EQ(even.strategy_o[0], 0);

  const Solution odd = solve_parity(single_vertex(Player::O, 1));
  EXPECT_EQ(odd.win_i, std::vector<std::uint32_t>{0});
  EXPECT_TRUE(odd.win_o.empty());
}

TEST(SolveParity, AgreesWithBruteForceOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const ParityGame g = dgtest::random_game(seed);
    const Solution fast = solve_parity(g);
    const Solution exact = brute_force_solve(g);
    EXPECT_EQ(fast.win_o, exact.win_o) << "seed " << seed;
    EXPECT_EQ(fast.win_i, exact.win_i) << "seed " << seed;
    EXPECT_TRUE(verify_solution(g, fast)) << "seed " << seed;
    EXPECT_TRUE(verify_solution(g, exact)) << "seed " << seed;
  }
}

TEST(SolveParity, AgreesWithBruteForceOnFixtureGames) {
  // Small games built from the reference instances: the behavior game for
  // block length 1 and the queue game with no lookahead.
  for (const char* name : {"d_univ.json", "d_empty.json", "d_pred1.json"}) {
    const Dpa dpa = dgtest::load_fixture(name);
    const Tracking tr(dpa);
    const LayerSequence ls = layer_sequence(tr, 10000);
    const ParityGame games[] = {build_abstract_game(tr, ls.at(BigUint(1ul))),
                                build_queue_game(dpa, 0)};
    for (const ParityGame& g : games) {
      const Solution fast = solve_parity(g);
      const Solution exact = brute_force_solve(g);
      EXPECT_EQ(fast.win_o, exact.win_o) << name;
      EXPECT_EQ(fast.win_i, exact.win_i) << name;
      EXPECT_TRUE(verify_solution(g, fast)) << name;
      EXPECT_TRUE(verify_solution(g, exact)) << name;
    }
  }
}

TEST(SolveParity, DeterminacyPartition) {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    const ParityGame g = dgtest::random_game(seed);
    const Solution sol = solve_parity(g);
    EXPECT_EQ(sol.win_o.size() + sol.win_i.size(), g.vertex_count());
    std::vector<std::uint32_t> merged = sol.win_o;
    merged.insert(merged.end(), sol.win_i.begin(), sol.win_i.end());
    std::sort(merged.begin(), merged.end());
    for (std::uint32_t v = 0; v < merged.size(); ++v) EXPECT_EQ(merged[v], v);
  }
}

TEST(SolveParity, DualGameSwapsRegions) {
  // Incrementing every color and swapping owners mirrors the partition.
  for (std::uint64_t seed = 300; seed < 350; ++seed) {
    const ParityGame g = dgtest::random_game(seed);
    ParityGame dual = g;
    for (auto& v : dual.vertices) {
      v.color += 1;
      v.owner = opponent(v.owner);
    }
    const Solution sol = solve_parity(g);
    const Solution mirrored = solve_parity(dual);
    EXPECT_EQ(sol.win_o, mirrored.win_i) << "seed " << seed;
    EXPECT_EQ(sol.win_i, mirrored.win_o) << "seed " << seed;
  }
}

TEST(BruteForce, DeterministicAndGuarded) {
  const ParityGame g = dgtest::random_game(5);
  const Solution a = brute_force_solve(g);
  const Solution b = brute_force_solve(g);
  EXPECT_EQ(a.win_o, b.win_o);
  EXPECT_EQ(a.strategy_o, b.strategy_o);
  EXPECT_EQ(a.strategy_i, b.strategy_i);

  // A profile limit of 1 trips as soon as some player owns a choice.
  ParityGame choice;
  choice.vertices.push_back({Player::O, 0, ""});
  choice.vertices.push_back({Player::O, 1, ""});
  choice.successors = {{0, 1}, {1}};
  choice.initial = 0;
  EXPECT_THROW(brute_force_solve(choice, 1), ResourceLimitError);
}

TEST(VerifySolution, AcceptsSolverOutput) {
  ParityGame g;
  g.vertices.push_back({Player::O, 0, ""});  // even self-loop
  g.vertices.push_back({Player::O, 1, ""});  // odd self-loop
  g.successors = {{0}, {1}};
  g.initial = 0;
  const Solution sol = solve_parity(g);
  EXPECT_TRUE(verify_solution(g, sol));

  Solution moved = sol;  // move the even vertex into Player I's region
  moved.win_o.clear();
  moved.win_i = {0, 1};
  moved.strategy_o[0] = -1;
  EXPECT_FALSE(verify_solution(g, moved));
}

TEST(VerifySolution, RejectsStrategyLeavingRegion) {
  ParityGame g;
  g.vertices.push_back({Player::O, 0, ""});
  g.vertices.push_back({Player::I, 1, ""});
  g.successors = {{0, 1}, {1}};
  g.initial = 0;
  Solution sol = solve_parity(g);
  ASSERT_EQ(sol.win_o, std::vector<std::uint32_t>{0});
  ASSERT_TRUE(verify_solution(g, sol));
  sol.strategy_o[0] = 1;  // points into win_I
  EXPECT_FALSE(verify_solution(g, sol));
}

TEST(VerifySolution, RejectsNonEdgeStrategy) {
  ParityGame g;
  g.vertices.push_back({Player::O, 0, ""});
  g.vertices.push_back({Player::O, 0, ""});
  g.successors = {{0}, {1}};
  g.initial = 0;
  Solution sol = solve_parity(g);
  ASSERT_TRUE(verify_solution(g, sol));
  sol.strategy_o[1] = 0;  // 1 -> 0 is not an edge
  EXPECT_FALSE(verify_solution(g, sol));
}

TEST(SolutionJson, ListsRegionsAndStrategies) {
  const Solution sol = solve_parity(single_vertex(Player::O, 0));
  const auto j = solution_json(sol);
  EXPECT_EQ(j["win_O"], std::vector<std::uint32_t>{0});
  EXPECT_TRUE(j["win_I"].empty());
  EXPECT_EQ(j["strategy_O"]["0"], 0);
}

}  // namespace
