// SPDX-License-Identifier: Apache-2.0

#include "gig/ad/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gig/error.hpp"

namespace gig::ad {
namespace {

template <typename T>
void put_le(std::string& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffU));
  }
}

class Reader {
 public:
  Reader(std::string bytes, std::string origin)
      : bytes_(std::move(bytes)), origin_(std::move(origin)) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    if constexpr (std::is_same_v<T, double>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }

  std::string get_string(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw FormatError("truncated tensor container: " + origin_);
  }

  std::string bytes_;
  std::string origin_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw FormatError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_container(const std::filesystem::path& path, std::span<const NamedArray> arrays) {
  std::string out(kContainerMagic);
  put_le<std::uint64_t>(out, arrays.size());
  for (const NamedArray& a : arrays) {
    const std::uint64_t expected = std::accumulate(a.shape.begin(), a.shape.end(),
                                                   std::uint64_t{1}, std::multiplies<>());
    if (expected != a.data.size()) {
      throw ContractViolation("container entry '" + a.name + "': shape does not match data");
    }
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(a.name.size()));
    out += a.name;
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(a.shape.size()));
    for (std::uint64_t d : a.shape) put_le<std::uint64_t>(out, d);
    for (double v : a.data) put_le<double>(out, v);
  }
  write_file_atomically(path, out);
}

std::vector<NamedArray> read_container(const std::filesystem::path& path) {
  Reader r(slurp(path), path.string());
  if (r.get_string(kContainerMagic.size()) != kContainerMagic) {
    throw FormatError("bad magic in " + path.string());
  }
  const auto count = r.get<std::uint64_t>();
  std::vector<NamedArray> arrays;
  for (std::uint64_t i = 0; i < count; ++i) {
    NamedArray a;
    a.name = r.get_string(r.get<std::uint32_t>());
    const auto rank = r.get<std::uint32_t>();
    std::uint64_t total = 1;
    for (std::uint32_t k = 0; k < rank; ++k) {
      a.shape.push_back(r.get<std::uint64_t>());
      total *= a.shape.back();
    }
    a.data.resize(total);
    for (double& v : a.data) v = r.get<double>();
    arrays.push_back(std::move(a));
  }
  if (!r.done()) throw FormatError("trailing bytes in " + path.string());
  return arrays;
}

bool has_container_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char buf[8] = {};
  in.read(buf, sizeof buf);
  return in.gcount() == 8 && std::string_view(buf, 8) == kContainerMagic;
}

}  // namespace gig::ad
