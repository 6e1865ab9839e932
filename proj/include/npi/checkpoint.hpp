#pragma once

#include <map>
#include <string>

#include "npi/mlp.hpp"

namespace npi {

// Self-describing checkpoint container: a short text header (format version,
// kind, schema name, free-form metadata) followed by named tensors as raw
// little-endian doubles. Round-trips bit-exactly.
struct CheckpointMeta {
  std::string kind;    // e.g. "mlp_policy", "gnn_policy"
  std::string schema;  // owning instruction schema name
  std::map<std::string, std::string> extra;
};

void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const ParamSet& params);

// Reads the header only.
CheckpointMeta read_checkpoint_meta(const std::string& path);

// Loads tensors into an already-constructed parameter set; names and shapes
// must match exactly.
CheckpointMeta load_checkpoint(const std::string& path, ParamSet& params);

}  // namespace npi
