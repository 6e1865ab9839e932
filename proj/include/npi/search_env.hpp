#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "npi/episode.hpp"
#include "npi/rng.hpp"
#include "npi/schema.hpp"

namespace npi {

enum class QueryMode { Member, NonMember, Mixed };

struct SearchState {
  std::vector<int> a;  // nondecreasing
  int q = 0;
  std::vector<int> v;  // v1 = v2 = low, v3 = v4 = high at reset
  std::optional<Instruction> prev;

  int low() const { return 0; }
  int high() const { return static_cast<int>(a.size()) - 1; }
};

const InstructionSchema& search_schema();
inline constexpr int kSearchViewWidth = 115;

// Sorted distinct even values 0,2,...,2(n-1); member queries pick a uniform
// element, non-member queries a uniform odd value strictly inside the range.
SearchState new_search_instance(int n, Rng& rng, QueryMode mode = QueryMode::Member);
SearchState search_state_from(std::vector<int> a, int q);

// 68-dim variable comparisons ++ per-variable query comparison (12) ++
// previous-action encoding (35).
Eigen::VectorXd observe_search(const SearchState& st);

class SearchEnv {
 public:
  using Obs = Eigen::VectorXd;

  // Wrong terminals add a penalty of -wrong_penalty on top of the step cost;
  // the default scales with the instance size.
  SearchEnv(SearchState st, double step_cost = 0.01, double wrong_penalty = -1.0);

  const InstructionSchema& schema() const { return search_schema(); }
  bool solved() const { return solved_; }
  bool aborted() const { return false; }
  Obs observe() const { return observe_search(st_); }
  StepResult apply(const Instruction& ins);
  const SearchState& state() const { return st_; }

 private:
  SearchState st_;
  double step_cost_;
  double wrong_penalty_;
  bool solved_ = false;
};

// Instance line format: n q a_0 ... a_{n-1}.
std::string search_instance_line(const SearchState& st);
SearchState parse_search_instance_line(const std::string& line);

}  // namespace npi
