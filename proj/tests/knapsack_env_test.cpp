#include "doctest.h"

#include <cmath>
#include <set>

#include "npi/episode.hpp"
#include "npi/knapsack_env.hpp"
#include "npi/rng.hpp"
#include "npi/teachers.hpp"

using namespace npi;

namespace {

auto dfs_agent = [](const Eigen::VectorXd& o) { return dfs_knapsack_teacher(o); };

}  // namespace

TEST_SUITE("env.knapsack") {

TEST_CASE("capacity forces the empty solution at n=1") {
  Rng rng(1);
  auto st = new_knapsack_instance(1, rng);
  CHECK(st.capacity == doctest::Approx(st.w[0] / 2));
  KnapsackEnv env(st);
  auto trace = run_episode(env, dfs_agent, 100);
  CHECK(trace.outcome == Outcome::Solved);  // DFS returned at depth 0
  CHECK(env.state().best_v == 0.0);
}

TEST_CASE("observation width and sign boundaries") {
  Rng rng(2);
  auto st = new_knapsack_instance(5, rng);
  auto obs = observe_knapsack(st);
  REQUIRE(obs.size() == 14);
  CHECK(obs[0] == 0.0);   // cursor at 0
  CHECK(obs[1] == -1.0);  // cursor before the end
  CHECK(obs[13] == 1.0);  // no previous action

  st.item = 5;
  CHECK(observe_knapsack(st)[1] == 0.0);  // sign(i - n) at the end
  CHECK(observe_knapsack(st)[0] == 1.0);
  st.item = -1;
  CHECK(observe_knapsack(st)[0] == -1.0);
}

TEST_CASE("aggregate features match a from-scratch summation") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + rng.uniform_int(10);
    auto st = new_knapsack_instance(n, rng);
    st.item = rng.uniform_int(n + 2) - 1;
    for (int k = 0; k < n; ++k)
      if (rng.coin()) {
        st.in_sol[static_cast<std::size_t>(k)] = 1;
        st.cur_w += st.w[static_cast<std::size_t>(k)];
        st.cur_v += st.value[static_cast<std::size_t>(k)];
      }
    st.best_v = rng.uniform_double() * n;
    auto obs = observe_knapsack(st);

    bool member = st.item >= 0 && st.item < n && st.in_sol[static_cast<std::size_t>(st.item)];
    double v_rest = 0, w_rest = 0, w_min = HUGE_VAL;
    for (int j = std::max(member ? st.item + 1 : st.item, 0); j < n; ++j) {
      v_rest += st.value[static_cast<std::size_t>(j)];
      w_rest += st.w[static_cast<std::size_t>(j)];
      w_min = std::min(w_min, st.w[static_cast<std::size_t>(j)]);
    }
    CHECK(obs[4] == double(st.cur_v + v_rest > st.best_v));
    CHECK(obs[5] == double(st.cur_w + w_rest <= st.capacity));
    CHECK(obs[6] == double(st.cur_w + w_min <= st.capacity));
  }
}

TEST_CASE("episode reward telescopes to the best value") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + rng.uniform_int(7);
    KnapsackEnv env(new_knapsack_instance(n, rng));
    auto trace = run_episode(env, dfs_agent, 20 * n);
    CHECK(trace.total_reward == doctest::Approx(env.state().best_v).epsilon(1e-12));
    for (double r : trace.rewards) CHECK(r >= 0.0);  // best value never decreases
  }
}

TEST_CASE("running totals stay consistent under instruction fuzz") {
  Rng rng(5);
  const auto& s = knapsack_schema();
  auto all = s.enumerate_instructions();
  auto st = new_knapsack_instance(8, rng);
  KnapsackEnv env(st);
  for (int k = 0; k < 5000; ++k) {
    auto ins = all[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(all.size())))];
    if (s.type(ins.type).is_return && env.state().depth() == 0) continue;
    env.apply(ins);
    const auto& cur = env.state();
    double w = 0, v = 0;
    for (int j = 0; j < cur.n(); ++j)
      if (cur.in_sol[static_cast<std::size_t>(j)]) {
        w += cur.w[static_cast<std::size_t>(j)];
        v += cur.value[static_cast<std::size_t>(j)];
      }
    CHECK(cur.cur_w == doctest::Approx(w).epsilon(1e-12));
    CHECK(cur.cur_v == doctest::Approx(v).epsilon(1e-12));
    CHECK(cur.item >= -1);
    CHECK(cur.item <= cur.n());
    CHECK(cur.best_v <= knapsack_brute_force_optimum(cur.w, cur.value, cur.capacity) + 1e-12);
  }
}

TEST_CASE("unbudgeted depth-first search finds the exact optimum") {
  Rng rng(6);
  for (int n : {4, 8, 11}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto st = new_knapsack_instance(n, rng);
      double exact = knapsack_brute_force_optimum(st.w, st.value, st.capacity);
      KnapsackEnv env(st);
      auto stats = run_episode_stats(env, dfs_agent, 1 << 24);
      CHECK(stats.outcome == Outcome::Solved);
      CHECK(env.state().best_v == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("depth-first search enumerates feasible subsets exactly once") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + rng.uniform_int(7);  // up to 10
    auto st = new_knapsack_instance(n, rng);
    KnapsackEnv env(st);
    std::set<unsigned> created;
    int steps = 0;
    const auto& s = knapsack_schema();
    while (steps < (1 << 22)) {
      auto ins = dfs_agent(env.observe());
      bool is_put = s.type(ins.type).op == Op::Put;
      auto res = env.apply(ins);
      ++steps;
      if (is_put) {
        unsigned mask = 0;
        for (int j = 0; j < n; ++j)
          if (env.state().in_sol[static_cast<std::size_t>(j)]) mask |= 1u << j;
        CHECK(created.insert(mask).second);  // never created twice
      }
      if (res.terminal) break;
    }
    // every feasible subset was reached (supersets of overweight sets are
    // themselves overweight, so pruning never skips a feasible one)
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      double w = 0;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) w += st.w[static_cast<std::size_t>(j)];
      if (w <= st.capacity) CHECK(created.count(mask) == 1);
    }
  }
}

TEST_CASE("budget exhaustion ends the episode") {
  Rng rng(8);
  KnapsackEnv env(new_knapsack_instance(12, rng));
  auto trace = run_episode(env, dfs_agent, 50);
  CHECK(trace.outcome == Outcome::BudgetExhausted);
  CHECK(trace.total_steps == 50);
}

TEST_CASE("instance lines round trip at full precision") {
  Rng rng(9);
  auto st = new_knapsack_instance(6, rng);
  auto back = parse_knapsack_instance_line(knapsack_instance_line(st));
  CHECK(back.w == st.w);
  CHECK(back.value == st.value);
  CHECK(back.capacity == st.capacity);
  CHECK_THROWS(parse_knapsack_instance_line("2 0.5 0.1"));
}

}  // TEST_SUITE
