#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnloc {

/// Seeded random stream. Every call to uniform() or normal() consumes exactly
/// one output of the underlying engine, so call counts translate directly into
/// stream positions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  /// Derives an independent stream from (seed, id, purpose). Adding or removing
  /// other ids never shifts this stream.
  static Stream derive(std::uint64_t seed, std::string_view id, std::string_view purpose);

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal, by inverse CDF of one uniform.
  double normal();

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsnloc
