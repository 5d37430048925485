#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mnclust {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NegativeEntryError : Error {
  std::int64_t row, col;
  NegativeEntryError(std::int64_t i, std::int64_t t)
      : Error("negative entry at (" + std::to_string(i) + ", " + std::to_string(t) + ")"),
        row(i), col(t) {}
};

struct ZeroColumnError : Error {
  std::int64_t col;
  explicit ZeroColumnError(std::int64_t t)
      : Error("column " + std::to_string(t) + " sums to zero"), col(t) {}
};

struct RankOutOfRangeError : Error {
  explicit RankOutOfRangeError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

struct LengthMismatchError : Error {
  explicit LengthMismatchError(const std::string& msg) : Error(msg) {}
};

struct EmptyClusterError : Error {
  int cluster;
  explicit EmptyClusterError(int k)
      : Error("cluster " + std::to_string(k) + " is empty"), cluster(k) {}
};

struct DTooSmallError : Error {
  explicit DTooSmallError(const std::string& msg) : Error(msg) {}
};

struct InvalidPartitionError : Error {
  explicit InvalidPartitionError(const std::string& msg) : Error(msg) {}
};

struct ShapeMismatchError : Error {
  explicit ShapeMismatchError(const std::string& msg) : Error(msg) {}
};

struct InvalidSplitError : Error {
  explicit InvalidSplitError(const std::string& msg) : Error(msg) {}
};

struct KTooSmallError : Error {
  explicit KTooSmallError(const std::string& msg) : Error(msg) {}
};

// Malformed user input (CSV and friends); carries a 1-based position.
struct InputError : Error {
  std::int64_t line, column;
  InputError(std::int64_t ln, std::int64_t col, const std::string& msg)
      : Error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " + msg),
        line(ln), column(col) {}
};

}  // namespace mnclust
