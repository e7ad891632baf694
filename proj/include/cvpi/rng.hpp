#ifndef CVPI_RNG_HPP_INCLUDED
#define CVPI_RNG_HPP_INCLUDED

#include <cstdint>
#include <random>

namespace cvpi {

// SplitMix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RngSeed {
  std::uint64_t value = 0;
};

// A keyed random stream.
//
// Every stream is identified by a 64-bit key. Child streams are derived from
// the parent's key (never from its state), so `Rng(seed).split(rep)` yields the
// same numbers no matter how many draws the parent has made or which thread
// asks for it. Monte-Carlo code keys one child per replication index; that is
// what makes results independent of the worker count.
class Rng {
 public:
  explicit Rng(RngSeed seed) : Rng(splitmix64(seed.value), KeyTag{}) {}

  Rng split(std::uint64_t index) const {
    return Rng(splitmix64(key_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)), KeyTag{});
  }

  std::uint64_t key() const noexcept { return key_; }

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  bool bernoulli(double p) { return uniform_(engine_) < p; }
  std::uint64_t next() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  struct KeyTag {};
  Rng(std::uint64_t key, KeyTag) : key_(key), engine_(key) {}

  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cvpi

#endif  // CVPI_RNG_HPP_INCLUDED
