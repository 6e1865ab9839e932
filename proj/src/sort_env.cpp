#include "npi/sort_env.hpp"

#include <sstream>
#include <stdexcept>

#include "npi/encoding.hpp"

namespace npi {

namespace {

int sign_of(long long x) { return (x > 0) - (x < 0); }

std::vector<TypeSpec> base_interface_types() {
  ArgSpec var{ArgKind::Integer, kNumSortVars};
  ArgSpec dir{ArgKind::Boolean, 2};
  TypeSpec swap_next{.name = "SwapWithNext", .op = Op::SwapWithNext, .args = {var}};
  TypeSpec move{.name = "MoveVar", .op = Op::MoveVar, .args = {var, dir}};
  TypeSpec assign{.name = "AssignVar", .op = Op::AssignVar, .args = {var, var}};
  return {swap_next, move, assign};
}

}  // namespace

const InstructionSchema& bubble_insertion_schema() {
  static const InstructionSchema schema("sort_interface", base_interface_types());
  return schema;
}

const InstructionSchema& quicksort_schema() {
  static const InstructionSchema schema = [] {
    ArgSpec var{ArgKind::Integer, kNumSortVars};
    ArgSpec fn{ArgKind::Integer, 2};
    auto types = base_interface_types();
    TypeSpec call{.name = "FunctionCall",
                  .op = Op::FunctionCall,
                  .args = {fn, var, var, var, var, var},
                  .is_call = true,
                  .call_has_id = true,
                  .call_passed = 2,
                  .call_returns = 1};
    TypeSpec ret{.name = "Return",
                 .op = Op::Return,
                 .args = {var},
                 .is_return = true,
                 .return_arity = 1};
    TypeSpec swap{.name = "Swap", .op = Op::Swap, .args = {var, var}};
    types.push_back(call);
    types.push_back(ret);
    types.push_back(swap);
    return InstructionSchema("sort_functions", std::move(types), /*num_functions=*/2);
  }();
  return schema;
}

InstructionSchema full_view_schema(int n) {
  ArgSpec node{ArgKind::Pointer, n};
  TypeSpec swap{.name = "Swap", .op = Op::Swap, .args = {node, node}};
  return InstructionSchema("sort_full_view", {swap});
}

int orderedness(std::span<const int> a, int low, int high) {
  int count = 0;
  for (int i = low; i < high; ++i) count += a[static_cast<std::size_t>(i)] <= a[static_cast<std::size_t>(i) + 1];
  return count;
}

SortState sort_state_from_array(std::vector<int> a, int low, int high) {
  if (a.empty() || low < 0 || high >= static_cast<int>(a.size()) || low > high)
    throw std::invalid_argument("bad sort instance range");
  SortState st;
  st.a = std::move(a);
  st.low = low;
  st.high = high;
  st.v = {low, high, low, high};
  st.ordered = orderedness(st.a, low, high);
  return st;
}

SortState new_sort_instance(int n, Rng& rng) {
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = i;
  rng.shuffle(std::span<int>(a));
  return sort_state_from_array(std::move(a), 0, n - 1);
}

int pair_feature_base(int i, int j) {
  // pairs in order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
  int idx = 0;
  for (int p = 0; p < kNumSortVars; ++p)
    for (int q = p + 1; q < kNumSortVars; ++q) {
      if (p == i && q == j) return 6 * idx;
      ++idx;
    }
  throw std::invalid_argument("bad variable pair");
}

int left_neighbor_feature_base(int i) { return 36 + 8 * i; }
int right_neighbor_feature_base(int i) { return 36 + 8 * i + 4; }

namespace {

// Shared by the sorting and search observations (identical construction).
void fill_interface_view(const std::vector<int>& a, int low, int high,
                         const std::vector<int>& v, Eigen::VectorXd& out) {
  auto at = [&](int idx) { return a[static_cast<std::size_t>(idx)]; };
  int slot = 0;
  for (int i = 0; i < kNumSortVars; ++i)
    for (int j = i + 1; j < kNumSortVars; ++j) {
      out[slot++] = v[i] < v[j];
      out[slot++] = v[i] == v[j];
      out[slot++] = v[i] > v[j];
      out[slot++] = at(v[i]) < at(v[j]);
      out[slot++] = at(v[i]) == at(v[j]);
      out[slot++] = at(v[i]) > at(v[j]);
    }
  for (int i = 0; i < kNumSortVars; ++i) {
    if (v[i] - 1 < low) {
      out[slot] = 1.0;
    } else {
      out[slot + 1] = at(v[i]) > at(v[i] - 1);
      out[slot + 2] = at(v[i]) == at(v[i] - 1);
      out[slot + 3] = at(v[i]) < at(v[i] - 1);
    }
    slot += 4;
    if (v[i] + 1 > high) {
      out[slot + 3] = 1.0;
    } else {
      out[slot] = at(v[i]) > at(v[i] + 1);
      out[slot + 1] = at(v[i]) == at(v[i] + 1);
      out[slot + 2] = at(v[i]) < at(v[i] + 1);
    }
    slot += 4;
  }
}

}  // namespace

Eigen::VectorXd observe_bubble_insertion(const SortState& st) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kInterfaceViewWidth);
  fill_interface_view(st.a, st.low, st.high, st.v, out);
  return out;
}

Eigen::VectorXd observe_quicksort(const SortState& st) {
  const auto& schema = quicksort_schema();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kQuickSortViewWidth);
  fill_interface_view(st.a, st.low, st.high, st.v, out);
  out[kInterfaceViewWidth + st.ctl.function_id] = 1.0;
  out.segment(kInterfaceViewWidth + schema.num_functions() + 1, schema.encode_width()) =
      encode_prev_action(schema, st.ctl.prev_action);
  return out;
}

SortGraphObservation observe_full_view(const SortState& st) {
  SortGraphObservation g;
  g.num_nodes = st.size();
  int n = g.num_nodes;
  g.edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
  g.edge_features.resize(static_cast<long>(n) * (n - 1), 2);
  long e = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      g.edges.emplace_back(u, v);
      g.edge_features(e, 0) = sign_of(u - v);
      g.edge_features(e, 1) = sign_of(st.a[static_cast<std::size_t>(st.low + u)] -
                                      st.a[static_cast<std::size_t>(st.low + v)]);
      ++e;
    }
  return g;
}

namespace {

// Swap A[p] and A[p+1], returning the change in the orderedness count.
int swap_adjacent(SortState& st, int p) {
  auto& a = st.a;
  int before = 0, after = 0;
  for (int q = p - 1; q <= p + 1; ++q)
    if (q >= st.low && q < st.high) before += a[static_cast<std::size_t>(q)] <= a[static_cast<std::size_t>(q) + 1];
  std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(p) + 1]);
  for (int q = p - 1; q <= p + 1; ++q)
    if (q >= st.low && q < st.high) after += a[static_cast<std::size_t>(q)] <= a[static_cast<std::size_t>(q) + 1];
  st.ordered += after - before;
  return after - before;
}

int swap_positions(SortState& st, int p, int q) {
  if (p == q) return 0;
  auto& a = st.a;
  auto pair_ok = [&](int r) { return a[static_cast<std::size_t>(r)] <= a[static_cast<std::size_t>(r) + 1]; };
  int touched[4] = {p - 1, p, q - 1, q};
  int before = 0, after = 0;
  auto in_range = [&](int r) { return r >= st.low && r < st.high; };
  // Dedup: adjacent p,q share a pair.
  auto counted = [&](int r, int upto) {
    for (int k = 0; k < upto; ++k)
      if (touched[k] == r) return true;
    return false;
  };
  for (int k = 0; k < 4; ++k)
    if (in_range(touched[k]) && !counted(touched[k], k)) before += pair_ok(touched[k]);
  std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(q)]);
  for (int k = 0; k < 4; ++k)
    if (in_range(touched[k]) && !counted(touched[k], k)) after += pair_ok(touched[k]);
  st.ordered += after - before;
  return after - before;
}

}  // namespace

int apply_sort_instruction(SortState& st, const Instruction& ins,
                           const InstructionSchema& schema, int depth_limit, bool* overflow) {
  schema.validate(ins);
  const auto& t = schema.type(ins.type);
  int dh = 0;
  switch (t.op) {
    case Op::SwapWithNext: {
      int p = st.v[static_cast<std::size_t>(ins.args[0])];
      if (p < st.high) dh = swap_adjacent(st, p);  // no-op at the high end
      st.ctl.prev_action = ins;
      break;
    }
    case Op::MoveVar: {
      int i = ins.args[0];
      int cur = st.v[static_cast<std::size_t>(i)];
      st.v[static_cast<std::size_t>(i)] =
          ins.args[1] ? std::min(cur + 1, st.high) : std::max(cur - 1, st.low);
      st.ctl.prev_action = ins;
      break;
    }
    case Op::AssignVar: {
      st.v[static_cast<std::size_t>(ins.args[0])] = st.v[static_cast<std::size_t>(ins.args[1])];
      st.ctl.prev_action = ins;
      break;
    }
    case Op::Swap: {
      int p, q;
      if (t.args[0].kind == ArgKind::Pointer) {  // full view: raw positions
        p = st.low + ins.args[0];
        q = st.low + ins.args[1];
      } else {  // function interface: variable contents
        p = st.v[static_cast<std::size_t>(ins.args[0])];
        q = st.v[static_cast<std::size_t>(ins.args[1])];
      }
      dh = swap_positions(st, p, q);
      st.ctl.prev_action = ins;
      break;
    }
    case Op::FunctionCall: {
      bool ok = push_call(st.ctl, st.v, ins, schema, /*save_variables=*/true, depth_limit);
      if (!ok && overflow) *overflow = true;
      break;
    }
    case Op::Return: {
      // Outermost-scope Return is a no-op that still consumes a step.
      if (!pop_return(st.ctl, st.v, ins, schema)) st.ctl.prev_action = ins;
      break;
    }
    default:
      throw std::invalid_argument("instruction not part of a sorting schema");
  }
  return dh;
}

SortEnv::SortEnv(SortState st, SortInterface iface, RewardMode mode, double step_cost)
    : st_(std::move(st)), iface_(iface), mode_(mode), step_cost_(step_cost) {
  if (iface == SortInterface::FullView)
    throw std::invalid_argument("use FullViewSortEnv for the full-view interface");
  schema_ = iface == SortInterface::BubbleInsertion ? &bubble_insertion_schema()
                                                    : &quicksort_schema();
  depth_limit_ = 2 * st_.size() + 64;
}

Eigen::VectorXd SortEnv::observe() const {
  return iface_ == SortInterface::BubbleInsertion ? observe_bubble_insertion(st_)
                                                  : observe_quicksort(st_);
}

StepResult SortEnv::apply(const Instruction& ins) {
  int dh = apply_sort_instruction(st_, ins, *schema_, depth_limit_, &overflow_);
  double reward = mode_ == RewardMode::Shaping ? static_cast<double>(dh) - step_cost_
                                               : -step_cost_;
  return StepResult{reward, false, false};
}

FullViewSortEnv::FullViewSortEnv(SortState st, RewardMode mode, double step_cost)
    : st_(std::move(st)), mode_(mode), step_cost_(step_cost), schema_(full_view_schema(st_.size())) {}

StepResult FullViewSortEnv::apply(const Instruction& ins) {
  int dh = apply_sort_instruction(st_, ins, schema_, /*depth_limit=*/1, nullptr);
  double reward = mode_ == RewardMode::Shaping ? static_cast<double>(dh) - step_cost_
                                               : -step_cost_;
  return StepResult{reward, false, false};
}

std::string sort_instance_line(const SortState& st) {
  std::ostringstream os;
  os << st.a.size() << ' ' << st.low << ' ' << st.high;
  for (int x : st.a) os << ' ' << x;
  return os.str();
}

SortState parse_sort_instance_line(const std::string& line) {
  std::istringstream is(line);
  int n, low, high;
  if (!(is >> n >> low >> high) || n <= 0) throw std::invalid_argument("bad sort instance line");
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (!(is >> a[static_cast<std::size_t>(i)])) throw std::invalid_argument("bad sort instance line");
  return sort_state_from_array(std::move(a), low, high);
}

}  // namespace npi
