// SPDX-License-Identifier: Apache-2.0
//
// Flat little-endian tensor container shared by checkpoints, graph caches,
// node2vec embedding caches and binary contact maps.
//
//   "GIGCKPT1"                       8 bytes
//   u64 entry count
//   per entry: u32 name length, name bytes,
//              u32 rank, u64 dims[rank], f64 data[prod(dims)]

#ifndef GIG_AD_CONTAINER_HPP_
#define GIG_AD_CONTAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gig::ad {

inline constexpr std::string_view kContainerMagic = "GIGCKPT1";

struct NamedArray {
  std::string name;
  std::vector<std::uint64_t> shape;
  std::vector<double> data;

  friend bool operator==(const NamedArray&, const NamedArray&) = default;
};

// Written to a temporary sibling and renamed into place.
void write_container(const std::filesystem::path& path, std::span<const NamedArray> arrays);
std::vector<NamedArray> read_container(const std::filesystem::path& path);
bool has_container_magic(const std::filesystem::path& path);

// Writes `contents` to a temporary sibling of `path` then renames it.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace gig::ad

#endif  // GIG_AD_CONTAINER_HPP_
