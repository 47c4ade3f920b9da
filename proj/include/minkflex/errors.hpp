#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minkflex {

enum class Errc {
  NullVector,
  NullAxis,
  DegeneratePlane,
  BadFrame,
  NonManifold,
  Disconnected,
  NonOrientable,
  InconsistentOrientation,
  BadEdge,
  Lemma2Violation,
  NotClosed,
  DegenerateFacePlane,
  NullEdge,
  SeedSearchFailed,
  NewtonDiverged,
  RigidityLost,
  GlueMismatch,
  Parse,
  Io,
  Usage,
};

std::string_view to_string(Errc code);

// Every recoverable failure in the library is reported through this type.
// `detail` carries the offending index (condition number, edge id, sample
// index...) when one exists, otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, long detail = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  long detail() const noexcept { return detail_; }

 private:
  Errc code_;
  long detail_;
};

}  // namespace minkflex
