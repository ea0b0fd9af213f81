#pragma once

// Three families of q-exchangeable processes with exact laws and seeded
// samplers:
//   * extreme laws (ergodic q-analogue of the Bernoulli process),
//   * the theta-process with independent inhomogeneous increments,
//   * the q-Polya urn.
//
// Every exact sampler is a decision tree: at each state it offers a list of
// chunks (continuations of the word) with exact rational probabilities, and
// one uniform draw selects a chunk by inverse CDF (see random.hpp). The same
// branches drive both sampling and exact enumeration.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "qfinetti/boundary.hpp"
#include "qfinetti/laws.hpp"
#include "qfinetti/random.hpp"

namespace qfin {

enum class ExtremeMode {
  TSequence,  // one geometric run length per draw
  Forward,    // one bit per draw, P(0 | k ones so far) = q^{kappa-k}
};

struct ExtremeParams {
  BoundaryPoint point;
  QParam q;
  ExtremeMode mode = ExtremeMode::Forward;
};

/// theta >= 0; `infinite` selects the all-ones limit law.
struct ThetaParams {
  Rational theta;
  QParam q;
  bool infinite = false;
};

/// Exact mode: a, b positive integers.
struct PolyaParams {
  Rational a;
  Rational b;
  QParam q;
};

using ProcessSpec = std::variant<ExtremeParams, ThetaParams, PolyaParams>;

struct Branch {
  BinaryWord chunk;
  Rational probability;
};

/// Branches available after `prefix` when sampling words of length n.
/// Probabilities are exact and sum to one.
std::vector<Branch> next_branches(const ProcessSpec& spec, const BinaryWord& prefix, std::size_t n);

/// Validates parameters (regime, integrality); throws on violation.
void validate(const ProcessSpec& spec);

/// Exact sampler for words of a fixed length. Branch lists are cached per
/// (length, ones) state, so a sampler instance is not shareable across
/// threads; sampling is a pure function of (spec, n, seed).
class Sampler {
 public:
  Sampler(ProcessSpec spec, std::size_t n);
  BinaryWord sample(Seed seed);

 private:
  const std::vector<Branch>& branches(std::size_t length, std::size_t ones, const BinaryWord& prefix);

  ProcessSpec spec_;
  std::size_t n_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<Branch>, std::vector<Rational>>> cache_;
};

BinaryWord sample_extreme(BoundaryPoint point, const QParam& q, std::size_t n, Seed seed,
                          ExtremeMode mode = ExtremeMode::Forward);
BinaryWord sample_theta(const ThetaParams& params, std::size_t n, Seed seed);
BinaryWord sample_polya(const PolyaParams& params, std::size_t n, Seed seed);

/// The exact law of a process as a VArray (extreme_array, theta_array or polya_array).
VArray process_array(const ProcessSpec& spec, std::size_t depth);

/// w_{n,k} = theta^k q^{k(k-1)/2} / (-theta, q)_n.
VArray theta_array(const ThetaParams& params, std::size_t depth);

/// q-Poisson mixing measure of the theta-process, atoms kappa <= K, in double precision.
FloatBoundaryMeasure theta_boundary_measure(const ThetaParams& params, std::size_t K,
                                            const TruncationPolicy& policy = {});

/// v_{n,k} = P{S_n = (n-k,k)} / d_{n,k} for the q-Polya urn. Throws
/// NonIntegerParamsInExactMode unless a and b are positive integers.
VArray polya_array(const PolyaParams& params, std::size_t depth);

/// Forward probabilities (append 0, append 1) from (n-k, k).
std::pair<Rational, Rational> polya_forward(const PolyaParams& params, std::size_t n, std::size_t k);

/// Float-mode urn for real a, b > 0 and any q > 0, with [x] = (1 - q^x)/(1 - q) (= x at q = 1).
struct PolyaFloatParams {
  double a = 1.0;
  double b = 1.0;
  double q = 0.5;
};
std::pair<double, double> polya_forward(const PolyaFloatParams& params, std::size_t n, std::size_t k);
/// Level distributions P{S_n = (n-k,k)} for n <= depth.
FloatTriangle polya_levels(const PolyaFloatParams& params, std::size_t depth);
BinaryWord sample_polya(const PolyaFloatParams& params, std::size_t n, Seed seed);

/// q-beta mixing measure of the urn, atoms kappa <= K, in double precision.
FloatBoundaryMeasure polya_boundary_measure(const PolyaParams& params, std::size_t K,
                                            const TruncationPolicy& policy = {});
/// Exact geometric measure (1 - q^b) q^{kappa b} for a = 1; zero mass is the tail by complement.
BoundaryMeasure polya_boundary_measure_exact(const PolyaParams& params, std::size_t K);

/// Float-mode extreme sampler for q close to 1 (large kappa), uniform_double draws.
BinaryWord sample_extreme_float(std::size_t kappa, double q, std::size_t n, Seed seed,
                                ExtremeMode mode = ExtremeMode::Forward);

struct LevelHistogram {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;  // counts[k] = trials ending with k ones

  double frequency(std::size_t k) const {
    return trials == 0 ? 0.0 : static_cast<double>(counts[k]) / static_cast<double>(trials);
  }
};

/// Level-n histogram of the number of ones over `trials` words; trial t is
/// sampled with derive_seed(seed, t). Identical for every thread count.
LevelHistogram empirical_level_histogram(const ProcessSpec& spec, std::size_t n, std::uint64_t trials,
                                         Seed seed, unsigned threads = 1);

/// Total variation distance between a histogram and an exact level distribution.
double tv_distance(const LevelHistogram& hist, const std::vector<Rational>& exact_level);

}  // namespace qfin
