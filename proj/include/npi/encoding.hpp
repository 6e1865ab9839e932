#pragma once

#include <Eigen/Core>
#include <optional>

#include "npi/schema.hpp"

namespace npi {

// Fixed-width vector encoding of a (possibly absent) previous action:
// [type one-hot | per-type argument blocks, zeros off-type | none bit].
// Integer arguments encode as one-hot, booleans as a single 0/1 entry.
Eigen::VectorXd encode_prev_action(const InstructionSchema& schema,
                                   const std::optional<Instruction>& ins);

// Inverse of encode_prev_action for well-formed encodings.
std::optional<Instruction> decode_prev_action(const InstructionSchema& schema,
                                              const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace npi
