#pragma once

#include <stdexcept>
#include <string>

namespace wsnloc {

enum class ErrorKind {
  Config,              // malformed or invalid scenario
  Io,                  // file could not be read or written
  NoFixes,             // weighted centroid with an empty fix list
  InsufficientFixes,   // trilateration with fewer than three fixes
  DegenerateGeometry,  // collinear beacons
  Trace,               // malformed trace file
  OutOfRange,          // requested step not present
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wsnloc
