#include "npi/search_env.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "npi/encoding.hpp"
#include "npi/sort_env.hpp"

namespace npi {

const InstructionSchema& search_schema() {
  static const InstructionSchema schema = [] {
    ArgSpec var{ArgKind::Integer, kNumSortVars};
    ArgSpec dir{ArgKind::Boolean, 2};
    TypeSpec move{.name = "MoveVar", .op = Op::MoveVar, .args = {var, dir}};
    TypeSpec assign{.name = "AssignVar", .op = Op::AssignVar, .args = {var, var}};
    TypeSpec mid{.name = "AssignMid", .op = Op::AssignMid, .args = {var, var, var}};
    TypeSpec found{.name = "Found", .op = Op::Found, .args = {var}, .is_terminal = true};
    TypeSpec not_found{.name = "NotFound", .op = Op::NotFound, .args = {}, .is_terminal = true};
    return InstructionSchema("list_search", {move, assign, mid, found, not_found});
  }();
  return schema;
}

SearchState search_state_from(std::vector<int> a, int q) {
  if (a.empty()) throw std::invalid_argument("empty search instance");
  if (!std::is_sorted(a.begin(), a.end()))
    throw std::invalid_argument("search instance array must be nondecreasing");
  SearchState st;
  st.q = q;
  int high = static_cast<int>(a.size()) - 1;
  st.a = std::move(a);
  st.v = {0, 0, high, high};
  return st;
}

SearchState new_search_instance(int n, Rng& rng, QueryMode mode) {
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = 2 * i;
  bool member = mode == QueryMode::Member || (mode == QueryMode::Mixed && rng.coin());
  int q;
  if (member || n == 1) {
    q = a[static_cast<std::size_t>(rng.uniform_int(n))];
    if (!member) q = 1;  // n == 1 non-member fallback: the only interior odd is 1
  } else {
    q = 2 * rng.uniform_int(n - 1) + 1;
  }
  return search_state_from(std::move(a), q);
}

Eigen::VectorXd observe_search(const SearchState& st) {
  const auto& schema = search_schema();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kSearchViewWidth);
  // Reuse the sorting interface view for the first 68 entries.
  SortState tmp;
  tmp.a = st.a;
  tmp.low = st.low();
  tmp.high = st.high();
  tmp.v = st.v;
  out.head(kInterfaceViewWidth) = observe_bubble_insertion(tmp);
  int slot = kInterfaceViewWidth;
  for (int i = 0; i < kNumSortVars; ++i) {
    int val = st.a[static_cast<std::size_t>(st.v[static_cast<std::size_t>(i)])];
    out[slot++] = st.q < val;
    out[slot++] = st.q == val;
    out[slot++] = st.q > val;
  }
  out.segment(slot, schema.encode_width()) = encode_prev_action(schema, st.prev);
  return out;
}

SearchEnv::SearchEnv(SearchState st, double step_cost, double wrong_penalty)
    : st_(std::move(st)),
      step_cost_(step_cost),
      wrong_penalty_(wrong_penalty < 0 ? static_cast<double>(st_.a.size()) : wrong_penalty) {}

StepResult SearchEnv::apply(const Instruction& ins) {
  schema().validate(ins);
  const auto& t = schema().type(ins.type);
  auto& v = st_.v;
  switch (t.op) {
    case Op::MoveVar: {
      int i = ins.args[0];
      int cur = v[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] =
          ins.args[1] ? std::min(cur + 1, st_.high()) : std::max(cur - 1, st_.low());
      break;
    }
    case Op::AssignVar:
      v[static_cast<std::size_t>(ins.args[0])] = v[static_cast<std::size_t>(ins.args[1])];
      break;
    case Op::AssignMid:
      v[static_cast<std::size_t>(ins.args[0])] =
          (v[static_cast<std::size_t>(ins.args[1])] + v[static_cast<std::size_t>(ins.args[2])]) / 2;
      break;
    case Op::Found: {
      bool correct = st_.a[static_cast<std::size_t>(v[static_cast<std::size_t>(ins.args[0])])] == st_.q;
      solved_ = correct;
      st_.prev = ins;
      return StepResult{-step_cost_ + (correct ? 0.0 : -wrong_penalty_), true, !correct};
    }
    case Op::NotFound: {
      bool correct = !std::binary_search(st_.a.begin(), st_.a.end(), st_.q);
      solved_ = correct;
      st_.prev = ins;
      return StepResult{-step_cost_ + (correct ? 0.0 : -wrong_penalty_), true, !correct};
    }
    default:
      throw std::invalid_argument("instruction not part of the search schema");
  }
  st_.prev = ins;
  return StepResult{-step_cost_, false, false};
}

std::string search_instance_line(const SearchState& st) {
  std::ostringstream os;
  os << st.a.size() << ' ' << st.q;
  for (int x : st.a) os << ' ' << x;
  return os.str();
}

SearchState parse_search_instance_line(const std::string& line) {
  std::istringstream is(line);
  int n, q;
  if (!(is >> n >> q) || n <= 0) throw std::invalid_argument("bad search instance line");
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (!(is >> a[static_cast<std::size_t>(i)])) throw std::invalid_argument("bad search instance line");
  return search_state_from(std::move(a), q);
}

}  // namespace npi
