#include "qfinetti/random.hpp"

#include <stdexcept>

namespace qfin {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z(static_cast<unsigned long>(v >> 32));
  z <<= 32;
  z += static_cast<unsigned long>(v & 0xFFFFFFFFULL);
  return z;
}
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Seed derive_seed(Seed base, std::uint64_t index) {
  return Seed{splitmix64_mix(base.value + kGolden * (index + 1))};
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return splitmix64_mix(state_);
}

bool draw_below(std::uint64_t draw, const Rational& p) {
  if (p.sign() <= 0) return false;
  if (p >= Rational(1)) return true;
  // draw / 2^64 < num / den  <=>  draw * den < num * 2^64
  mpz_class lhs = to_mpz(draw) * p.denominator();
  mpz_class rhs = p.numerator();
  rhs <<= 64;
  return lhs < rhs;
}

bool bernoulli(SplitMix64& rng, const Rational& p) { return draw_below(rng.next(), p); }

std::size_t choose_branch(SplitMix64& rng, std::span<const Rational> probs) {
  if (probs.empty()) throw std::invalid_argument("choose_branch needs at least one branch");
  const std::uint64_t d = rng.next();
  Rational cumulative(0);
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cumulative += probs[i];
    if (draw_below(d, cumulative)) return i;
  }
  return probs.size() - 1;
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  unsigned __int128 m = static_cast<unsigned __int128>(rng.next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng.next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double uniform_double(SplitMix64& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

}  // namespace qfin
