#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "npi/episode.hpp"
#include "npi/knapsack_env.hpp"
#include "npi/rng.hpp"
#include "npi/search_env.hpp"
#include "npi/sort_env.hpp"
#include "npi/teachers.hpp"

using namespace npi;

namespace {

auto bubble = [](const Eigen::VectorXd& o) { return bubble_teacher(o); };
auto insertion = [](const Eigen::VectorXd& o) { return insertion_teacher(o); };
auto quick = [](const Eigen::VectorXd& o) { return quicksort_teacher(o); };
auto binary = [](const Eigen::VectorXd& o) { return binary_search_teacher(o); };
auto linear = [](const Eigen::VectorXd& o) { return linear_search_teacher(o); };

double mean_len_sort(SortInterface iface, auto agent, int n, int episodes, int cap,
                     std::uint64_t seed) {
  double total = 0;
  for (int e = 0; e < episodes; ++e) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(e)));
    SortEnv env(new_sort_instance(n, rng), iface);
    auto stats = run_episode_stats(env, agent, cap);
    REQUIRE(stats.outcome == Outcome::Solved);
    total += stats.total_steps;
  }
  return total / episodes;
}

// Reference divide-and-conquer sort with a high-end pivot; records the
// effective swap positions (identity swaps in the scan are skipped, the
// final pivot placement is always recorded).
void reference_quicksort(std::vector<int>& a, int low, int high,
                         std::vector<std::pair<int, int>>& swaps) {
  if (low >= high) return;
  int i = low;
  for (int j = low; j < high; ++j) {
    if (a[static_cast<std::size_t>(j)] < a[static_cast<std::size_t>(high)]) {
      if (i != j) {
        std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        swaps.emplace_back(i, j);
      }
      ++i;
    }
  }
  std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(high)]);
  swaps.emplace_back(i, high);
  reference_quicksort(a, low, i - 1, swaps);
  reference_quicksort(a, i + 1, high, swaps);
}

}  // namespace

TEST_SUITE("teachers") {

TEST_CASE("sorting teachers solve everything at small sizes") {
  Rng rng(1);
  for (int n : {2, 3, 5, 10, 20}) {
    for (int e = 0; e < 30; ++e) {
      {
        SortEnv env(new_sort_instance(n, rng), SortInterface::BubbleInsertion);
        CHECK(run_episode_stats(env, bubble, n * n).outcome == Outcome::Solved);
      }
      {
        SortEnv env(new_sort_instance(n, rng), SortInterface::BubbleInsertion);
        CHECK(run_episode_stats(env, insertion, n * n).outcome == Outcome::Solved);
      }
      {
        SortEnv env(new_sort_instance(n, rng), SortInterface::QuickSort);
        CHECK(run_episode_stats(env, quick, 10 * n * n).outcome == Outcome::Solved);
      }
    }
  }
}

TEST_CASE("teacher episode lengths sit near their long-run means") {
  CHECK(mean_len_sort(SortInterface::BubbleInsertion, bubble, 10, 300, 400, 42) ==
        doctest::Approx(71.0).epsilon(0.08));
  CHECK(mean_len_sort(SortInterface::BubbleInsertion, insertion, 10, 300, 400, 42) ==
        doctest::Approx(55.7).epsilon(0.08));
  CHECK(mean_len_sort(SortInterface::QuickSort, quick, 5, 300, 250, 42) ==
        doctest::Approx(27.9).epsilon(0.1));
}

TEST_CASE("teachers are deterministic and schema-valid") {
  Rng rng(2);
  for (int e = 0; e < 50; ++e) {
    auto st = new_sort_instance(12, rng);
    SortEnv env1(st, SortInterface::QuickSort);
    SortEnv env2(st, SortInterface::QuickSort);
    auto t1 = run_episode(env1, quick, 2000);
    auto t2 = run_episode(env2, quick, 2000);
    CHECK(t1.actions == t2.actions);  // run_episode validates every action
  }
}

TEST_CASE("quick-sort agent reproduces the reference swap sequence") {
  // Exhaustive over all permutations up to n = 7, sampled at n = 8.
  const auto& s = quicksort_schema();
  for (int n = 2; n <= 7; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> copy = perm;
      std::vector<std::pair<int, int>> want;
      reference_quicksort(copy, 0, n - 1, want);

      SortEnv env(sort_state_from_array(perm, 0, n - 1), SortInterface::QuickSort);
      std::vector<std::pair<int, int>> got;
      int steps = 0;
      while (!env.solved() && steps < 10 * n * n) {
        auto ins = quick(env.observe());
        if (s.type(ins.type).op == Op::Swap) {
          int p = env.state().v[static_cast<std::size_t>(ins.args[0])];
          int q = env.state().v[static_cast<std::size_t>(ins.args[1])];
          got.emplace_back(std::min(p, q), std::max(p, q));
        }
        env.apply(ins);
        ++steps;
      }
      REQUIRE(env.solved());
      // the reference recursion continues past the point where the array
      // happens to be sorted; the episode stops there
      REQUIRE(got.size() <= want.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        CHECK(got[k].first == std::min(want[k].first, want[k].second));
        CHECK(got[k].second == std::max(want[k].first, want[k].second));
      }
      CHECK(std::is_sorted(env.state().a.begin(), env.state().a.end()));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Rng rng(3);
  for (int e = 0; e < 200; ++e) {
    auto st = new_sort_instance(8, rng);
    std::vector<int> copy = st.a;
    std::vector<std::pair<int, int>> want;
    reference_quicksort(copy, 0, 7, want);
    SortEnv env(st, SortInterface::QuickSort);
    auto stats = run_episode_stats(env, quick, 640);
    CHECK(stats.outcome == Outcome::Solved);
    CHECK(std::is_sorted(env.state().a.begin(), env.state().a.end()));
  }
}

TEST_CASE("binary search answers correctly in every mode") {
  Rng rng(4);
  for (auto mode : {QueryMode::Member, QueryMode::NonMember, QueryMode::Mixed}) {
    for (int n : {1, 2, 3, 17, 100, 1000}) {
      if (n == 1 && mode == QueryMode::NonMember) continue;
      for (int e = 0; e < 300; ++e) {
        SearchEnv env(new_search_instance(n, rng, mode));
        auto stats = run_episode_stats(env, binary, 4 * n + 64);
        CHECK(stats.outcome == Outcome::Solved);
      }
    }
  }
}

TEST_CASE("query below the whole array yields an immediate not-found") {
  auto st = search_state_from({2, 4, 6, 8}, -1);
  SearchEnv env(st);
  auto ins = binary(env.observe());
  CHECK(search_schema().type(ins.type).op == Op::NotFound);
}

TEST_CASE("linear search scans from the left") {
  Rng rng(5);
  for (int e = 0; e < 300; ++e) {
    SearchEnv env(new_search_instance(50, rng, QueryMode::Mixed));
    auto stats = run_episode_stats(env, linear, 4 * 50 + 8);
    CHECK(stats.outcome == Outcome::Solved);
  }
  // mean decision steps over members is about half the size
  double total = 0;
  int episodes = 400;
  for (int e = 0; e < episodes; ++e) {
    SearchEnv env(new_search_instance(100, rng, QueryMode::Member));
    auto stats = run_episode_stats(env, linear, 500);
    total += stats.total_steps - 1;  // answer instruction excluded
  }
  CHECK(total / episodes == doctest::Approx(49.5).epsilon(0.12));
}

TEST_CASE("selection teacher strictly reduces misplacement") {
  Rng rng(6);
  double total = 0;
  const int episodes = 400;
  for (int e = 0; e < episodes; ++e) {
    FullViewSortEnv env(new_sort_instance(10, rng));
    int steps = 0;
    while (!env.solved()) {
      const auto& a = env.state().a;
      int misplaced_before = 0;
      for (int i = 0; i < 10; ++i) misplaced_before += a[static_cast<std::size_t>(i)] != i;
      env.apply(selection_teacher(env.observe()));
      int misplaced_after = 0;
      for (int i = 0; i < 10; ++i)
        misplaced_after += env.state().a[static_cast<std::size_t>(i)] != i;
      CHECK(misplaced_after < misplaced_before);
      ++steps;
      REQUIRE(steps <= 10);
    }
    total += steps;
  }
  CHECK(total / episodes == doctest::Approx(7.07).epsilon(0.08));
}

TEST_CASE("depth-first knapsack teacher stays on budget and in schema") {
  Rng rng(7);
  double total = 0;
  const int episodes = 300;
  for (int e = 0; e < episodes; ++e) {
    KnapsackEnv env(new_knapsack_instance(8, rng));
    auto trace =
        run_episode(env, [](const Eigen::VectorXd& o) { return dfs_knapsack_teacher(o); }, 160);
    total += env.state().best_v;
  }
  CHECK(total / episodes == doctest::Approx(2.55).epsilon(0.10));
}

}  // TEST_SUITE
