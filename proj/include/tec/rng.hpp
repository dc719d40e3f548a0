#pragma once

#include <cstdint>
#include <random>

namespace tec {

/// SplitMix64 finalizer; used only to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

/// Every random stream in the library is one of these.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::uint64_t index) { return Rng(derive_seed(master, index)); }

}  // namespace tec
