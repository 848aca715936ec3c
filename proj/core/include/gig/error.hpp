// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_ERROR_HPP_
#define GIG_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gig {

// Caller broke a documented precondition (shape mismatch, empty segment,
// second backward on a record, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file or record.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent dataset: dimension mismatch, missing entity, too few edges.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training diverged (non-finite loss) or a numeric check failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace gig

#endif  // GIG_ERROR_HPP_
