#pragma once

#include <stdexcept>
#include <string>

namespace stone {

/// Malformed data: indices out of range, tables of the wrong size,
/// duplicate composition keys. Raised while constructing or parsing.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violation of an otherwise well-formed input: a
/// non-skeletal groupoid where a skeletal one is required, a depth out
/// of range, an oracle size bound exceeded, and so on.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stone
