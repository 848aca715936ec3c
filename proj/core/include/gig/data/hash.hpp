// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_DATA_HASH_HPP_
#define GIG_DATA_HASH_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace gig::data {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace gig::data

#endif  // GIG_DATA_HASH_HPP_
