#pragma once

#include <string>
#include <vector>

namespace npi {

// Semantic operation behind an instruction type. Environments dispatch on
// this; the schema decides which operations exist and with which arguments.
enum class Op {
  SwapWithNext,
  MoveVar,
  AssignVar,
  Swap,
  FunctionCall,
  Return,
  AssignMid,
  Found,
  NotFound,
  Put,
  Pop,
};

enum class ArgKind { Boolean, Integer, Pointer };

struct ArgSpec {
  ArgKind kind = ArgKind::Integer;
  int cardinality = 0;  // value range [0, cardinality); Boolean is fixed at 2

  int num_values() const { return kind == ArgKind::Boolean ? 2 : cardinality; }
  // One-hot width in the fixed action encoding; booleans use a single bit.
  int encoded_width() const { return kind == ArgKind::Boolean ? 1 : cardinality; }
};

struct TypeSpec {
  std::string name;
  Op op = Op::MoveVar;
  std::vector<ArgSpec> args;
  bool is_call = false;
  bool is_return = false;
  bool is_terminal = false;
  // Call argument layout: [id?][l_1..l_p][o_1..o_p][r_1..r_q].
  bool call_has_id = false;
  int call_passed = 0;
  int call_returns = 0;
  int return_arity = 0;

  int arity() const { return static_cast<int>(args.size()); }
  int arg_width() const;
};

struct Instruction {
  int type = 0;
  std::vector<int> args;  // booleans stored as 0/1

  bool operator==(const Instruction&) const = default;
};

class InstructionSchema {
 public:
  InstructionSchema(std::string name, std::vector<TypeSpec> types, int num_functions = 0);

  const std::string& name() const { return name_; }
  int num_types() const { return static_cast<int>(types_.size()); }
  const TypeSpec& type(int id) const { return types_.at(static_cast<std::size_t>(id)); }
  const std::vector<TypeSpec>& types() const { return types_; }
  int num_functions() const { return num_functions_; }

  // Index of the type with the given name; throws if absent.
  int type_id(const std::string& type_name) const;

  int total_arg_width() const { return total_arg_width_; }
  // Width of the fixed action encoding: type one-hot + arg blocks + none bit.
  int encode_width() const { return num_types() + total_arg_width_ + 1; }
  // Offset of a type's argument block within the argument section.
  int arg_block_offset(int type_id) const { return arg_offsets_.at(static_cast<std::size_t>(type_id)); }

  // Number of distinct instructions, or -1 if unbounded (pointer args with
  // cardinality 0 never occur; pointer schemas are instance-sized).
  long long num_instructions() const;
  std::vector<Instruction> enumerate_instructions() const;

  void validate(const Instruction& ins) const;  // throws std::invalid_argument
  bool is_valid(const Instruction& ins) const;

  std::string to_string(const Instruction& ins) const;

 private:
  std::string name_;
  std::vector<TypeSpec> types_;
  std::vector<int> arg_offsets_;
  int total_arg_width_ = 0;
  int num_functions_ = 0;
};

// Convenience constructor used by teachers and tests.
inline Instruction make_ins(int type, std::initializer_list<int> args = {}) {
  return Instruction{type, std::vector<int>(args)};
}

}  // namespace npi
