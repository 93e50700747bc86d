#pragma once

#include <map>
#include <optional>
#include <string>

#include "sce/index_model.hpp"
#include "sce/network_model.hpp"

namespace sce {

// One .sce file: an instance, an optional code, optional per-message pmfs
// (uniform when absent), and free-form metadata. parse(serialize(x)) == x.
struct SceFile {
  enum class Kind { Index, Network };
  Kind kind = Kind::Index;
  std::map<std::string, std::string> meta;

  std::optional<IndexInstance> index;
  std::optional<IndexCode> index_code;

  std::optional<NetworkInstance> network;
  std::optional<size_t> augmented_original_count;
  std::optional<NetworkCode> network_code;

  std::map<std::string, Pmf> pmfs;  // keyed by message id

  bool operator==(const SceFile&) const;
};

std::string serialize(const SceFile& file);
SceFile parse_sce(const std::string& text);

SceFile load_sce_file(const std::string& path);
void save_sce_file(const std::string& path, const SceFile& file);

// Explicit pmfs where given, uniform otherwise.
std::vector<Pmf> resolve_index_pmfs(const SceFile& file);
std::vector<Pmf> resolve_network_pmfs(const SceFile& file);

// Requires the augmented marker.
AugmentedInstance as_augmented(const SceFile& file);

}  // namespace sce
