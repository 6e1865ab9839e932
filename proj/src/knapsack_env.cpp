#include "npi/knapsack_env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "npi/encoding.hpp"

namespace npi {

const InstructionSchema& knapsack_schema() {
  static const InstructionSchema schema = [] {
    ArgSpec dir{ArgKind::Boolean, 2};
    TypeSpec put{.name = "Put", .op = Op::Put, .args = {}};
    TypeSpec pop{.name = "Pop", .op = Op::Pop, .args = {}};
    TypeSpec move{.name = "MoveVar", .op = Op::MoveVar, .args = {dir}};
    TypeSpec call{.name = "Knapsack", .op = Op::FunctionCall, .args = {}, .is_call = true};
    TypeSpec ret{.name = "Return", .op = Op::Return, .args = {}, .is_return = true};
    return InstructionSchema("knapsack", {put, pop, move, call, ret}, /*num_functions=*/1);
  }();
  return schema;
}

KnapsackState knapsack_state_from(std::vector<double> w, std::vector<double> value,
                                  double capacity) {
  if (w.empty() || w.size() != value.size())
    throw std::invalid_argument("bad knapsack instance");
  KnapsackState st;
  st.w = std::move(w);
  st.value = std::move(value);
  st.capacity = capacity;
  st.in_sol.assign(st.w.size(), 0);
  return st;
}

KnapsackState new_knapsack_instance(int n, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(n)), val(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform_double();
  for (auto& x : val) x = rng.uniform_double();
  double cap = 0.5 * std::accumulate(w.begin(), w.end(), 0.0);
  return knapsack_state_from(std::move(w), std::move(val), cap);
}

namespace {

int sign_of(int x) { return (x > 0) - (x < 0); }

}  // namespace

Eigen::VectorXd observe_knapsack(const KnapsackState& st) {
  const auto& schema = knapsack_schema();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kKnapsackViewWidth);
  int n = st.n();
  int i = st.item;
  bool member = i >= 0 && i < n && st.in_sol[static_cast<std::size_t>(i)];
  // Aggregates over the remaining items (from i+1 if the current item is
  // already in the solution, else from i), clamped to the array.
  int start = std::max(member ? i + 1 : i, 0);
  double v_rest = 0.0, w_rest = 0.0;
  double w_min = std::numeric_limits<double>::infinity();
  for (int j = start; j < n; ++j) {
    v_rest += st.value[static_cast<std::size_t>(j)];
    w_rest += st.w[static_cast<std::size_t>(j)];
    w_min = std::min(w_min, st.w[static_cast<std::size_t>(j)]);
  }
  out[0] = sign_of(i);
  out[1] = sign_of(i - n);
  out[2] = member;
  out[3] = st.cur_w <= st.capacity;
  out[4] = st.cur_v + v_rest > st.best_v;
  out[5] = st.cur_w + w_rest <= st.capacity;
  out[6] = st.cur_w + w_min <= st.capacity;
  out.segment(7, schema.encode_width()) = encode_prev_action(schema, st.prev);
  return out;
}

KnapsackEnv::KnapsackEnv(KnapsackState st) : st_(std::move(st)) {}

StepResult KnapsackEnv::apply(const Instruction& ins) {
  schema().validate(ins);
  const auto& t = schema().type(ins.type);
  double before = st_.best_v;
  bool terminal = false;
  int n = st_.n();
  switch (t.op) {
    case Op::Put:
      if (st_.item >= 0 && st_.item < n && !st_.in_sol[static_cast<std::size_t>(st_.item)]) {
        st_.in_sol[static_cast<std::size_t>(st_.item)] = 1;
        st_.cur_w += st_.w[static_cast<std::size_t>(st_.item)];
        st_.cur_v += st_.value[static_cast<std::size_t>(st_.item)];
      }
      st_.prev = ins;
      break;
    case Op::Pop:
      if (st_.item >= 0 && st_.item < n && st_.in_sol[static_cast<std::size_t>(st_.item)]) {
        st_.in_sol[static_cast<std::size_t>(st_.item)] = 0;
        st_.cur_w -= st_.w[static_cast<std::size_t>(st_.item)];
        st_.cur_v -= st_.value[static_cast<std::size_t>(st_.item)];
      }
      st_.prev = ins;
      break;
    case Op::MoveVar:
      st_.item = ins.args[0] ? std::min(st_.item + 1, n) : std::max(st_.item - 1, -1);
      st_.prev = ins;
      break;
    case Op::FunctionCall:
      st_.call_stack.push_back(ins);
      st_.prev.reset();
      break;
    case Op::Return:
      if (st_.call_stack.empty()) {
        terminal = true;  // outermost return ends the episode
      } else {
        st_.prev = st_.call_stack.back();
        st_.call_stack.pop_back();
      }
      break;
    default:
      throw std::invalid_argument("instruction not part of the knapsack schema");
  }
  if (st_.cur_w <= st_.capacity && st_.cur_v > st_.best_v) st_.best_v = st_.cur_v;
  return StepResult{st_.best_v - before, terminal, false};
}

double knapsack_brute_force_optimum(const std::vector<double>& w,
                                    const std::vector<double>& value, double capacity) {
  int n = static_cast<int>(w.size());
  if (n > 24) throw std::invalid_argument("brute force limited to n <= 24");
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double tw = 0.0, tv = 0.0;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) {
        tw += w[static_cast<std::size_t>(k)];
        tv += value[static_cast<std::size_t>(k)];
      }
    if (tw <= capacity) best = std::max(best, tv);
  }
  return best;
}

std::string knapsack_instance_line(const KnapsackState& st) {
  std::ostringstream os;
  os.precision(17);
  os << st.n() << ' ' << st.capacity;
  for (double x : st.w) os << ' ' << x;
  for (double x : st.value) os << ' ' << x;
  return os.str();
}

KnapsackState parse_knapsack_instance_line(const std::string& line) {
  std::istringstream is(line);
  int n;
  double cap;
  if (!(is >> n >> cap) || n <= 0) throw std::invalid_argument("bad knapsack instance line");
  std::vector<double> w(static_cast<std::size_t>(n)), val(static_cast<std::size_t>(n));
  for (auto& x : w)
    if (!(is >> x)) throw std::invalid_argument("bad knapsack instance line");
  for (auto& x : val)
    if (!(is >> x)) throw std::invalid_argument("bad knapsack instance line");
  return knapsack_state_from(std::move(w), std::move(val), cap);
}

}  // namespace npi
