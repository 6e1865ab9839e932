#include "npi/callstack.hpp"

#include <stdexcept>

namespace npi {

bool push_call(ControlState& ctl, std::vector<int>& variables, const Instruction& ins,
               const InstructionSchema& schema, bool save_variables, int depth_limit) {
  const auto& t = schema.type(ins.type);
  if (!t.is_call) throw std::invalid_argument("push_call on non-call instruction");
  if (ctl.depth() >= depth_limit) return false;

  int base = t.call_has_id ? 1 : 0;
  int p = t.call_passed;
  int q = t.call_returns;

  CallFrame frame;
  frame.caller_function_id = ctl.function_id;
  frame.caller_prev_action = ins;
  if (save_variables) frame.saved_variables = variables;
  frame.return_targets.reserve(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    frame.return_targets.push_back(ins.args[static_cast<std::size_t>(base + 2 * p + i)]);

  // Bind callee locals l_i <- caller o_i; evaluate all sources first so
  // overlapping local/outer ids behave like simultaneous assignment.
  std::vector<int> passed(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    passed[static_cast<std::size_t>(i)] =
        variables.at(static_cast<std::size_t>(ins.args[static_cast<std::size_t>(base + p + i)]));
  ctl.stack.push_back(std::move(frame));
  for (int i = 0; i < p; ++i)
    variables.at(static_cast<std::size_t>(ins.args[static_cast<std::size_t>(base + i)])) =
        passed[static_cast<std::size_t>(i)];

  ctl.function_id = t.call_has_id ? ins.args[0] + 1 : 1;
  ctl.prev_action.reset();
  return true;
}

bool pop_return(ControlState& ctl, std::vector<int>& variables, const Instruction& ins,
                const InstructionSchema& schema) {
  const auto& t = schema.type(ins.type);
  if (!t.is_return) throw std::invalid_argument("pop_return on non-return instruction");
  if (ctl.stack.empty()) return false;

  std::vector<int> returning(static_cast<std::size_t>(t.return_arity));
  for (int i = 0; i < t.return_arity; ++i)
    returning[static_cast<std::size_t>(i)] =
        variables.at(static_cast<std::size_t>(ins.args[static_cast<std::size_t>(i)]));

  CallFrame frame = std::move(ctl.stack.back());
  ctl.stack.pop_back();
  ctl.function_id = frame.caller_function_id;
  ctl.prev_action = std::move(frame.caller_prev_action);
  if (!frame.saved_variables.empty()) variables = frame.saved_variables;
  for (std::size_t i = 0; i < frame.return_targets.size(); ++i)
    variables.at(static_cast<std::size_t>(frame.return_targets[i])) = returning[i];
  return true;
}

}  // namespace npi
