#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace evdep {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t hash_string(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream for replicate `index` of a computation seeded with `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(seed, index)),
                    static_cast<std::uint32_t>(derive_seed(seed, index) >> 32)};
  return Rng(seq);
}

// Uniform on the open interval (0,1).
inline double open_uniform(Rng& rng) {
  for (;;) {
    double u = std::generate_canonical<double, 53>(rng);
    if (u > 0.0 && u < 1.0) return u;
  }
}

}  // namespace evdep
