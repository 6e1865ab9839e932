#include "npi/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace npi {

namespace {

constexpr const char* kMagic = "npicheckpoint 1";

CheckpointMeta read_header(std::istream& in, int* tensor_count) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw std::runtime_error("not a checkpoint file");
  CheckpointMeta meta;
  *tensor_count = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "kind") {
      ls >> meta.kind;
    } else if (key == "schema") {
      ls >> meta.schema;
    } else if (key == "meta") {
      std::string k, v;
      ls >> k;
      std::getline(ls, v);
      if (!v.empty() && v.front() == ' ') v.erase(0, 1);
      meta.extra[k] = v;
    } else if (key == "tensors") {
      ls >> *tensor_count;
      break;
    } else {
      throw std::runtime_error("unknown checkpoint header line: " + line);
    }
  }
  if (*tensor_count < 0) throw std::runtime_error("checkpoint missing tensor count");
  return meta;
}

}  // namespace

void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const ParamSet& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << kMagic << '\n';
  out << "kind " << meta.kind << '\n';
  out << "schema " << meta.schema << '\n';
  for (const auto& [k, v] : meta.extra) out << "meta " << k << ' ' << v << '\n';
  out << "tensors " << params.count() << '\n';
  for (const auto& t : params.tensors()) {
    out << "tensor " << t.name << ' ' << t.value.rows() << ' ' << t.value.cols() << '\n';
    out.write(reinterpret_cast<const char*>(t.value.data()),
              static_cast<std::streamsize>(sizeof(double)) * t.value.size());
  }
  if (!out) throw std::runtime_error("short write on checkpoint: " + path);
}

CheckpointMeta read_checkpoint_meta(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  int count;
  return read_header(in, &count);
}

CheckpointMeta load_checkpoint(const std::string& path, ParamSet& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  int count;
  CheckpointMeta meta = read_header(in, &count);
  if (count != params.count())
    throw std::runtime_error("checkpoint tensor count mismatch");
  std::string line;
  for (int i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated checkpoint");
    std::istringstream ls(line);
    std::string tag, name;
    long rows, cols;
    if (!(ls >> tag >> name >> rows >> cols) || tag != "tensor")
      throw std::runtime_error("bad tensor header: " + line);
    auto& t = params.at(i);
    if (name != t.name || rows != t.value.rows() || cols != t.value.cols())
      throw std::runtime_error("checkpoint layout mismatch at " + name);
    in.read(reinterpret_cast<char*>(t.value.data()),
            static_cast<std::streamsize>(sizeof(double)) * t.value.size());
    if (!in) throw std::runtime_error("truncated checkpoint tensor " + name);
  }
  return meta;
}

}  // namespace npi
