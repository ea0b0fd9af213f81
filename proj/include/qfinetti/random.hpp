#pragma once

// Deterministic random streams.
//
// The generator is SplitMix64: state += 0x9E3779B97F4A7C15, followed by the
// finalizer
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     z ^= z >> 31.
// A draw d is read as the rational u = d / 2^64 in [0, 1). An event of exact
// probability p occurs iff u < p, compared exactly. Choosing among branches
// with probabilities p_0, p_1, ... picks the first i with u < p_0 + ... + p_i.
// Trial t of a batch seeded with s uses the seed mix(s + 0x9E3779B97F4A7C15 * (t + 1)),
// where mix is the finalizer above.

#include <cstddef>
#include <cstdint>
#include <span>

#include "qfinetti/rational.hpp"

namespace qfin {

struct Seed {
  std::uint64_t value = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

/// Seed of trial `index` within a batch seeded by `base`.
Seed derive_seed(Seed base, std::uint64_t index);

class SplitMix64 {
 public:
  explicit SplitMix64(Seed seed) : state_(seed.value) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// True iff draw / 2^64 < p.
bool draw_below(std::uint64_t draw, const Rational& p);

/// One draw; true with probability exactly p (up to the 2^-64 grid).
bool bernoulli(SplitMix64& rng, const Rational& p);

/// One draw; index of the branch selected by cumulative comparison.
std::size_t choose_branch(SplitMix64& rng, std::span<const Rational> probs);

/// Uniform integer in [0, bound) by Lemire's multiply-and-reject method.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound);

/// (draw >> 11) * 2^-53, for float-mode samplers.
double uniform_double(SplitMix64& rng);

}  // namespace qfin
