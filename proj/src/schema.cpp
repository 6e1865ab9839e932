#include "npi/schema.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace npi {

int TypeSpec::arg_width() const {
  int w = 0;
  for (const auto& a : args) w += a.encoded_width();
  return w;
}

InstructionSchema::InstructionSchema(std::string name, std::vector<TypeSpec> types,
                                     int num_functions)
    : name_(std::move(name)), types_(std::move(types)), num_functions_(num_functions) {
  std::set<std::string> seen;
  for (const auto& t : types_) {
    if (!seen.insert(t.name).second)
      throw std::invalid_argument("duplicate instruction type: " + t.name);
  }
  arg_offsets_.reserve(types_.size());
  for (const auto& t : types_) {
    arg_offsets_.push_back(total_arg_width_);
    total_arg_width_ += t.arg_width();
  }
}

int InstructionSchema::type_id(const std::string& type_name) const {
  for (int i = 0; i < num_types(); ++i)
    if (types_[static_cast<std::size_t>(i)].name == type_name) return i;
  throw std::invalid_argument("unknown instruction type: " + type_name);
}

long long InstructionSchema::num_instructions() const {
  long long total = 0;
  for (const auto& t : types_) {
    long long combos = 1;
    for (const auto& a : t.args) combos *= a.num_values();
    total += combos;
  }
  return total;
}

std::vector<Instruction> InstructionSchema::enumerate_instructions() const {
  std::vector<Instruction> out;
  for (int tid = 0; tid < num_types(); ++tid) {
    const auto& t = types_[static_cast<std::size_t>(tid)];
    std::vector<int> args(t.args.size(), 0);
    while (true) {
      out.push_back(Instruction{tid, args});
      int slot = static_cast<int>(args.size()) - 1;
      while (slot >= 0) {
        if (++args[static_cast<std::size_t>(slot)] <
            t.args[static_cast<std::size_t>(slot)].num_values())
          break;
        args[static_cast<std::size_t>(slot)] = 0;
        --slot;
      }
      if (slot < 0) break;
      if (t.args.empty()) break;
    }
  }
  return out;
}

void InstructionSchema::validate(const Instruction& ins) const {
  if (ins.type < 0 || ins.type >= num_types())
    throw std::invalid_argument("instruction type id out of range");
  const auto& t = types_[static_cast<std::size_t>(ins.type)];
  if (static_cast<int>(ins.args.size()) != t.arity())
    throw std::invalid_argument("arity mismatch for " + t.name);
  for (std::size_t i = 0; i < ins.args.size(); ++i) {
    int v = ins.args[i];
    if (v < 0 || v >= t.args[i].num_values())
      throw std::invalid_argument("argument out of range for " + t.name);
  }
}

bool InstructionSchema::is_valid(const Instruction& ins) const {
  if (ins.type < 0 || ins.type >= num_types()) return false;
  const auto& t = types_[static_cast<std::size_t>(ins.type)];
  if (static_cast<int>(ins.args.size()) != t.arity()) return false;
  for (std::size_t i = 0; i < ins.args.size(); ++i)
    if (ins.args[i] < 0 || ins.args[i] >= t.args[i].num_values()) return false;
  return true;
}

std::string InstructionSchema::to_string(const Instruction& ins) const {
  const auto& t = types_.at(static_cast<std::size_t>(ins.type));
  std::ostringstream os;
  os << t.name << '(';
  for (std::size_t i = 0; i < ins.args.size(); ++i) {
    if (i) os << ',';
    if (t.args[i].kind == ArgKind::Boolean)
      os << (ins.args[i] ? "+1" : "-1");
    else
      os << ins.args[i];
  }
  os << ')';
  return os.str();
}

}  // namespace npi
