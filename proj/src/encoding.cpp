#include "npi/encoding.hpp"

#include <stdexcept>

namespace npi {

Eigen::VectorXd encode_prev_action(const InstructionSchema& schema,
                                   const std::optional<Instruction>& ins) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(schema.encode_width());
  if (!ins.has_value()) {
    v[schema.encode_width() - 1] = 1.0;
    return v;
  }
  schema.validate(*ins);
  const auto& t = schema.type(ins->type);
  v[ins->type] = 1.0;
  int base = schema.num_types() + schema.arg_block_offset(ins->type);
  for (int i = 0; i < t.arity(); ++i) {
    const auto& spec = t.args[static_cast<std::size_t>(i)];
    int val = ins->args[static_cast<std::size_t>(i)];
    if (spec.kind == ArgKind::Boolean) {
      v[base] = val ? 1.0 : 0.0;
      base += 1;
    } else {
      v[base + val] = 1.0;
      base += spec.cardinality;
    }
  }
  return v;
}

std::optional<Instruction> decode_prev_action(const InstructionSchema& schema,
                                              const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() != schema.encode_width())
    throw std::invalid_argument("encoding width mismatch for schema " + schema.name());
  if (v[schema.encode_width() - 1] > 0.5) return std::nullopt;
  int type = -1;
  for (int i = 0; i < schema.num_types(); ++i)
    if (v[i] > 0.5) type = i;
  if (type < 0) throw std::invalid_argument("no type bit set in action encoding");
  const auto& t = schema.type(type);
  Instruction ins{type, {}};
  int base = schema.num_types() + schema.arg_block_offset(type);
  for (const auto& spec : t.args) {
    if (spec.kind == ArgKind::Boolean) {
      ins.args.push_back(v[base] > 0.5 ? 1 : 0);
      base += 1;
    } else {
      int val = -1;
      for (int k = 0; k < spec.cardinality; ++k)
        if (v[base + k] > 0.5) val = k;
      if (val < 0) throw std::invalid_argument("no argument bit set in action encoding");
      ins.args.push_back(val);
      base += spec.cardinality;
    }
  }
  return ins;
}

}  // namespace npi
