#pragma once

#include <stdexcept>
#include <string>

namespace swlat {

/// Input is structurally well-formed but describes a surface outside the
/// supported families (e.g. q > 0, non-coprime multiplicities, rational/ruled).
class UnsupportedModel : public std::runtime_error {
 public:
  explicit UnsupportedModel(const std::string& what) : std::runtime_error(what) {}
};

/// JSON input does not match the documented schemas.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A recovery procedure found no unique answer; the input is not of the
/// shape produced by any supported surface.
class AmbiguousRecovery : public std::runtime_error {
 public:
  explicit AmbiguousRecovery(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swlat
