#include "wsnloc/rng.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

namespace wsnloc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Stream Stream::derive(std::uint64_t seed, std::string_view id, std::string_view purpose) {
  // The 0x1f separator keeps ("ab","c") and ("a","bc") apart.
  std::uint64_t h = fnv1a(id);
  h = fnv1a("\x1f", h);
  h = fnv1a(purpose, h);
  return Stream(splitmix64(splitmix64(seed) ^ h));
}

double Stream::uniform() {
  // 53 random mantissa bits, shifted half a ulp off zero.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  const double u = uniform();
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

}  // namespace wsnloc
