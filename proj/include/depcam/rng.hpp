#ifndef DEPCAM_RNG_HPP
#define DEPCAM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace depcam {

// A seed that can be split into independent, named child seeds. All
// randomness in the toolkit is derived from one of these, so a single
// top-level seed fixes every draw of a command.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  SeedStream split(std::string_view name) const;
  SeedStream split(std::uint64_t index) const;

  std::mt19937_64 engine() const { return std::mt19937_64(mix(seed_)); }

 private:
  static std::uint64_t mix(std::uint64_t x);

  std::uint64_t seed_;
};

inline std::uint64_t SeedStream::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline SeedStream SeedStream::split(std::string_view name) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return SeedStream(mix(seed_ ^ mix(h)));
}

inline SeedStream SeedStream::split(std::uint64_t index) const {
  return SeedStream(mix(seed_ + mix(index ^ 0x5851f42d4c957f2dULL)));
}

}  // namespace depcam

#endif  // DEPCAM_RNG_HPP
