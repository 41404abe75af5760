#pragma once

#include <cstdint>
#include <random>

namespace wetperc {

using Engine = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent random streams drawn inside one Monte-Carlo iteration.
enum class Stream : std::uint64_t {
  kDevices = 1,
  kStations = 2,
  kMarks = 3,
  kFaces = 4,
};

// Seed for stream `stream` of iteration `index` under `master`. Every
// (master, index, stream) triple maps to its own generator, so iterations can
// be evaluated in any order on any number of workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    Stream stream) noexcept {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ mix64(index + 0x632be59bd9b4e019ULL));
  return mix64(s ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
}

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

}  // namespace wetperc
