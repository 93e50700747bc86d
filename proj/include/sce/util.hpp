#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sce/error.hpp"

namespace sce {

// Mixed-radix packing with the first component most significant.
// All table and tuple layouts in this project use this convention.
inline std::uint64_t pack_mixed(std::span<const std::uint32_t> vals,
                                std::span<const std::uint32_t> sizes) {
  std::uint64_t r = 0;
  for (size_t i = 0; i < vals.size(); ++i) r = r * sizes[i] + vals[i];
  return r;
}

inline std::vector<std::uint32_t> unpack_mixed(
    std::uint64_t rank, std::span<const std::uint32_t> sizes) {
  std::vector<std::uint32_t> v(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(rank % sizes[i]);
    rank /= sizes[i];
  }
  return v;
}

// Product of alphabet sizes, guarded against desk-scale blowups.
inline std::uint64_t space_size(std::span<const std::uint32_t> sizes) {
  std::uint64_t total = 1;
  for (auto s : sizes) {
    if (s == 0) throw InputError("zero alphabet size");
    if (total > (std::uint64_t{1} << 40) / s)
      throw InputError("enumeration space too large");
    total *= s;
  }
  return total;
}

inline std::uint64_t pow2(std::uint64_t bits) {
  if (bits > 62) throw InputError("2^bits out of range");
  return std::uint64_t{1} << bits;
}

}  // namespace sce
