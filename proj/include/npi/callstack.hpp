#pragma once

#include <optional>
#include <vector>

#include "npi/schema.hpp"

namespace npi {

// One saved caller context. caller_prev_action is the function-call
// instruction itself, so the caller resumes as if the call just happened.
struct CallFrame {
  int caller_function_id = 0;
  std::optional<Instruction> caller_prev_action;
  std::vector<int> saved_variables;  // empty in environments that do not save
  std::vector<int> return_targets;
};

// Control-flow part of an environment state: current function (0 = outermost
// scope), previous action, and the call stack.
struct ControlState {
  int function_id = 0;
  std::optional<Instruction> prev_action;
  std::vector<CallFrame> stack;

  int depth() const { return static_cast<int>(stack.size()); }
};

// Applies a function-call instruction: pushes a frame, binds callee locals
// from the caller's passed variables (unpassed variables retain caller
// values), switches the function id, and clears the previous action.
// Returns false when the depth limit is exceeded (frame not pushed).
bool push_call(ControlState& ctl, std::vector<int>& variables, const Instruction& ins,
               const InstructionSchema& schema, bool save_variables, int depth_limit);

// Applies a return instruction: captures the returning local values, pops a
// frame, restores function id / previous action / saved variables, then
// assigns the captured values into the recorded return targets. Returns
// false when the stack is empty (state untouched; the caller decides what an
// outermost return means).
bool pop_return(ControlState& ctl, std::vector<int>& variables, const Instruction& ins,
                const InstructionSchema& schema);

}  // namespace npi
