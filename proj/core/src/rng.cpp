#include "linrl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace linrl {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// Finalizer from splitmix64; full-period mixing of a 64-bit counter.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_name(std::uint64_t seed, std::string_view name) {
  // FNV-1a over the name, folded into the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix(seed);
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix(h);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view name)
    : key_(hash_name(seed, name)), name_(name) {}

RngStream::RngStream(std::uint64_t key, std::string name, int)
    : key_(key), name_(std::move(name)) {}

RngStream RngStream::substream(std::string_view name) const {
  std::string child = name_ + "/" + std::string(name);
  return RngStream(hash_name(key_, child), child, 0);
}

std::uint64_t RngStream::next_u64() { return mix(key_ + kGamma * ++counter_); }

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RngStream::next_int(int n) {
  if (n < 1) throw std::invalid_argument("RngStream::next_int: n must be >= 1");
  return static_cast<int>(next_double() * n) % n;
}

double RngStream::next_normal() {
  // Marsaglia polar method; the discarded mate keeps the draw counter simple.
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

}  // namespace linrl
