#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfinetti/boundary.hpp"
#include "qfinetti/processes.hpp"

using namespace qfin;

namespace {

QParam Q(long num, long den = 1) { return QParam(Rational(num, den)); }
BinaryWord W(const char* s) { return BinaryWord::parse(s); }

void expect_tree_matches_array(const ProcessSpec& spec, std::size_t n) {
  const VArray a = process_array(spec, n);
  const auto law = oracle::tree_law(spec, n);
  Rational total(0);
  for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
    const auto w = BinaryWord::from_index(i, n);
    const auto it = law.find(w);
    const Rational p = it == law.end() ? Rational(0) : it->second;
    EXPECT_EQ(p, word_probability(a, w)) << w.str();
    total += p;
  }
  EXPECT_EQ(total, Rational(1));
}

std::vector<double> float_level(const std::vector<Rational>& level) {
  std::vector<double> out;
  for (const auto& x : level) out.push_back(x.to_double());
  return out;
}

}  // namespace

TEST(Extreme, DiracEndpoints) {
  for (auto mode : {ExtremeMode::Forward, ExtremeMode::TSequence}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      EXPECT_EQ(sample_extreme(BoundaryPoint::at(0), Q(1, 2), 9, Seed{s}, mode), BinaryWord::repeat(0, 9));
      EXPECT_EQ(sample_extreme(BoundaryPoint::zero(), Q(1, 2), 9, Seed{s}, mode), BinaryWord::repeat(1, 9));
    }
  }
}

TEST(Extreme, FirstBit) {
  const auto law = oracle::tree_law(ExtremeParams{BoundaryPoint::at(1), Q(1, 2)}, 1);
  EXPECT_EQ(law.at(W("1")), Rational(1, 2));
  EXPECT_EQ(law.at(W("1")), tilde_of_v(extreme_array(BoundaryPoint::at(1), Q(1, 2), 1))(1, 1));
}

TEST(Extreme, DecisionTreesMatchArrays) {
  for (const QParam& q : {Q(1, 2), Q(2, 3)}) {
    for (std::size_t kappa = 0; kappa <= 4; ++kappa) {
      for (auto mode : {ExtremeMode::Forward, ExtremeMode::TSequence}) {
        for (std::size_t n = 0; n <= 6; ++n) expect_tree_matches_array(ExtremeParams{BoundaryPoint::at(kappa), q, mode}, n);
      }
    }
    for (auto mode : {ExtremeMode::Forward, ExtremeMode::TSequence}) {
      expect_tree_matches_array(ExtremeParams{BoundaryPoint::zero(), q, mode}, 6);
    }
  }
}

TEST(Extreme, ModesInduceTheSameLaw) {
  for (std::size_t kappa = 0; kappa <= 5; ++kappa) {
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto f = oracle::tree_law(ExtremeParams{BoundaryPoint::at(kappa), Q(1, 3), ExtremeMode::Forward}, n);
      const auto t = oracle::tree_law(ExtremeParams{BoundaryPoint::at(kappa), Q(1, 3), ExtremeMode::TSequence}, n);
      EXPECT_EQ(f, t);
    }
  }
}

TEST(Extreme, AtMostKappaOnes) {
  const QParam q = Q(1, 2);
  for (std::size_t kappa = 0; kappa <= 3; ++kappa) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      EXPECT_LE(sample_extreme(BoundaryPoint::at(kappa), q, 12, Seed{s}).ones(), kappa);
    }
  }
  // P(at least one 1 within n) >= 1 - n q for kappa = 1.
  for (const QParam& qq : {Q(1, 2), Q(1, 5), Q(1, 10)}) {
    const TildeArray t = tilde_of_v(extreme_array(BoundaryPoint::at(1), qq, 8));
    for (std::size_t n = 1; n <= 8; ++n) {
      EXPECT_GE(Rational(1) - t(n, 0), Rational(1) - Rational(static_cast<long>(n)) * qq.value());
    }
  }
}

TEST(Extreme, RegimeError) {
  EXPECT_THROW(sample_extreme(BoundaryPoint::at(1), Q(1), 3, Seed{1}), RegimeError);
  EXPECT_THROW(sample_extreme(BoundaryPoint::at(1), Q(2), 3, Seed{1}), RegimeError);
}

TEST(Theta, ArrayExamples) {
  const VArray zero = theta_array({Rational(0), Q(1, 2)}, 5);
  EXPECT_EQ(zero, extreme_array(BoundaryPoint::at(0), Q(1, 2), 5));

  const VArray inf = theta_array({Rational(0), Q(1, 2), true}, 5);
  EXPECT_EQ(inf, extreme_array(BoundaryPoint::zero(), Q(1, 2), 5));

  const VArray one = theta_array({Rational(1), Q(1, 2)}, 4);
  EXPECT_EQ(one(1, 1), Rational(1, 2));
  const Rational d21 = q_binomial(2, 1, Q(1, 2));
  EXPECT_EQ(one(2, 1) * d21 + one(2, 0) + one(2, 2), Rational(1));
}

TEST(Theta, ArraysValid) {
  for (const Rational& theta : {Rational(1, 2), Rational(1), Rational(3)}) {
    for (const QParam& q : {Q(1, 2), Q(3, 4), Q(2)}) {
      EXPECT_TRUE(check_recursion(theta_array({theta, q}, 12)).ok);
    }
  }
  EXPECT_THROW(theta_array({Rational(-1), Q(1, 2)}, 3), InvalidArgument);
}

TEST(Theta, WordLawIsIndependentIncrements) {
  for (const Rational& theta : {Rational(1, 2), Rational(3)}) {
    const QParam q = Q(1, 2);
    const VArray a = theta_array({theta, q}, 7);
    for (std::uint64_t i = 0; i < 128; ++i) {
      const auto w = BinaryWord::from_index(i, 7);
      EXPECT_EQ(word_probability(a, w), oracle::theta_word(theta, q.value(), w));
    }
  }
}

TEST(Theta, SamplerExamples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(sample_theta({Rational(0), Q(1, 2)}, 7, Seed{s}), BinaryWord::repeat(0, 7));
    EXPECT_EQ(sample_theta({Rational(0), Q(1, 2), true}, 7, Seed{s}), BinaryWord::repeat(1, 7));
  }
  EXPECT_EQ(oracle::tree_law(ThetaParams{Rational(1), Q(1, 2)}, 1).at(W("1")), Rational(1, 2));
}

TEST(Theta, DecisionTreesMatchArrays) {
  for (const Rational& theta : {Rational(0), Rational(1, 2), Rational(1), Rational(3)}) {
    for (std::size_t n = 0; n <= 6; ++n) expect_tree_matches_array(ThetaParams{theta, Q(1, 2)}, n);
  }
  expect_tree_matches_array(ThetaParams{Rational(0), Q(1, 2), true}, 6);
}

TEST(Theta, BoundaryMeasure) {
  const auto dirac = theta_boundary_measure({Rational(0), Q(1, 2)}, 10);
  EXPECT_DOUBLE_EQ(dirac.atoms.at(0), 1.0);
  EXPECT_EQ(dirac.atoms.size(), 1u);

  const ThetaParams params{Rational(1), Q(1, 2)};
  const auto mu = theta_boundary_measure(params, 80);
  double sum = 0;
  for (const auto& [kappa, m] : mu.atoms) sum += m;
  EXPECT_GE(sum, 1.0 - 1e-10);
  EXPECT_LE(sum, 1.0 + 1e-12);

  const FloatTriangle approx = mixture_array(mu, 8);
  const VArray exact = theta_array(params, 8);
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(approx[n][k], exact(n, k).to_double(), 1e-9);
  }
  EXPECT_THROW(theta_boundary_measure({Rational(1), Q(1)}, 5), RegimeError);
}

TEST(Polya, ArrayExamples) {
  const PolyaParams p{Rational(1), Rational(1), Q(1, 2)};
  const TildeArray t = tilde_of_v(polya_array(p, 3));
  EXPECT_EQ(t.level(1), (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));

  const auto [z0, o0] = polya_forward(p, 0, 0);
  const auto [z1, o1] = polya_forward(p, 1, 1);
  EXPECT_EQ(o0 * z1, word_probability(polya_array(p, 2), W("10")));
  EXPECT_EQ(o0, Rational(1, 3));
  (void)z0;
  (void)o1;

  EXPECT_THROW(polya_array({Rational(3, 2), Rational(1), Q(1, 2)}, 3), NonIntegerParamsInExactMode);
  EXPECT_THROW(polya_array({Rational(0), Rational(1), Q(1, 2)}, 3), NonIntegerParamsInExactMode);
}

TEST(Polya, ForwardProbabilitiesSumToOne) {
  for (const QParam& q : {Q(1, 2), Q(3, 4), Q(2)}) {
    for (long a = 1; a <= 3; ++a) {
      for (long b = 1; b <= 3; ++b) {
        for (std::size_t n = 0; n <= 10; ++n) {
          for (std::size_t k = 0; k <= n; ++k) {
            const auto [z, o] = polya_forward({Rational(a), Rational(b), q}, n, k);
            EXPECT_EQ(z + o, Rational(1));
          }
        }
      }
    }
  }
}

TEST(Polya, WordLawMatchesUrnRule) {
  for (long a = 1; a <= 3; ++a) {
    for (long b = 1; b <= 3; ++b) {
      const QParam q = Q(2, 3);
      const VArray v = polya_array({Rational(a), Rational(b), q}, 7);
      EXPECT_TRUE(check_recursion(v).ok);
      for (std::uint64_t i = 0; i < 128; ++i) {
        const auto w = BinaryWord::from_index(i, 7);
        EXPECT_EQ(word_probability(v, w), oracle::polya_word(a, b, q.value(), w));
      }
    }
  }
}

TEST(Polya, DecisionTreesMatchArrays) {
  for (long a = 1; a <= 3; ++a) {
    for (long b = 1; b <= 3; ++b) expect_tree_matches_array(PolyaParams{Rational(a), Rational(b), Q(1, 2)}, 6);
  }
}

TEST(Polya, FloatModeClassicalLimit) {
  // q = 1, a = b = 1: uniform level distribution.
  const FloatTriangle levels = polya_levels(PolyaFloatParams{1.0, 1.0, 1.0}, 3);
  for (double x : levels[3]) EXPECT_NEAR(x, 0.25, 1e-15);
  for (std::size_t n = 0; n <= 5; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      const auto [z, o] = polya_forward(PolyaFloatParams{2.0, 3.0, 1.0}, n, k);
      EXPECT_NEAR(o, (2.0 + k) / (5.0 + n), 1e-15);
      EXPECT_NEAR(z + o, 1.0, 1e-15);
    }
  }
}

TEST(Polya, FloatModeMatchesExact) {
  const PolyaParams exact{Rational(2), Rational(3), Q(1, 2)};
  const TildeArray t = tilde_of_v(polya_array(exact, 8));
  const FloatTriangle levels = polya_levels(PolyaFloatParams{2.0, 3.0, 0.5}, 8);
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(levels[n][k], t(n, k).to_double(), 1e-14);
  }
  // Real parameters still give probability distributions.
  const FloatTriangle real = polya_levels(PolyaFloatParams{0.7, 1.3, 0.6}, 10);
  for (const auto& level : real) {
    double s = 0;
    for (double x : level) s += x;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Polya, BoundaryMeasureExamples) {
  const PolyaParams p11{Rational(1), Rational(1), Q(1, 2)};
  const BoundaryMeasure exact = polya_boundary_measure_exact(p11, 10);
  for (std::size_t kappa = 0; kappa <= 10; ++kappa) EXPECT_EQ(exact.mass(kappa), pow2(-static_cast<long>(kappa) - 1));
  EXPECT_EQ(exact.zero_mass(), pow2(-11));

  const BoundaryMeasure p12 = polya_boundary_measure_exact({Rational(1), Rational(2), Q(1, 2)}, 4);
  EXPECT_EQ(p12.mass(0), Rational(3, 4));

  const auto f = polya_boundary_measure(p11, 40);
  for (std::size_t kappa = 0; kappa <= 40; ++kappa) {
    EXPECT_NEAR(f.atoms.at(kappa), std::ldexp(1.0, -static_cast<int>(kappa) - 1), 1e-15);
  }
  EXPECT_THROW(polya_boundary_measure_exact({Rational(2), Rational(1), Q(1, 2)}, 4), InvalidArgument);
}

TEST(Polya, MixtureOfBoundaryMeasureMatchesArray) {
  for (long a = 1; a <= 3; ++a) {
    for (long b = 1; b <= 3; ++b) {
      const PolyaParams p{Rational(a), Rational(b), Q(1, 2)};
      const FloatTriangle approx = mixture_array(polya_boundary_measure(p, 80), 6);
      const VArray exact = polya_array(p, 6);
      for (std::size_t n = 0; n <= 6; ++n) {
        for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(approx[n][k], exact(n, k).to_double(), 1e-9);
      }
    }
  }
}

TEST(Histogram, Examples) {
  const auto dirac = empirical_level_histogram(ExtremeParams{BoundaryPoint::at(0), Q(1, 2)}, 6, 500, Seed{1});
  EXPECT_EQ(dirac.counts[0], 500u);
  EXPECT_DOUBLE_EQ(dirac.frequency(0), 1.0);

  const ProcessSpec extreme = ExtremeParams{BoundaryPoint::at(2), Q(1, 2)};
  const auto h = empirical_level_histogram(extreme, 10, 100000, Seed{2024}, 4);
  EXPECT_LE(tv_distance(h, tilde_of_v(process_array(extreme, 10)).level(10)), 0.02);

  const ProcessSpec theta = ThetaParams{Rational(1), Q(1, 2)};
  const auto ht = empirical_level_histogram(theta, 8, 100000, Seed{7}, 4);
  EXPECT_LE(tv_distance(ht, tilde_of_v(process_array(theta, 8)).level(8)), 0.02);
}

TEST(Histogram, IndependentOfThreadCount) {
  const ProcessSpec spec = PolyaParams{Rational(2), Rational(1), Q(1, 2)};
  const auto one = empirical_level_histogram(spec, 8, 5000, Seed{99}, 1);
  for (unsigned threads : {2U, 3U, 7U}) {
    EXPECT_EQ(empirical_level_histogram(spec, 8, 5000, Seed{99}, threads).counts, one.counts);
  }
  std::uint64_t total = 0;
  for (auto c : one.counts) total += c;
  EXPECT_EQ(total, 5000u);
}

TEST(Histogram, TrialsUseDerivedSeeds) {
  const ProcessSpec spec = ThetaParams{Rational(1), Q(1, 2)};
  std::vector<std::uint64_t> counts(7, 0);
  Sampler sampler(spec, 6);
  for (std::uint64_t t = 0; t < 300; ++t) ++counts[sampler.sample(derive_seed(Seed{5}, t)).ones()];
  EXPECT_EQ(empirical_level_histogram(spec, 6, 300, Seed{5}, 3).counts, counts);
}

TEST(Samplers, Deterministic) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    EXPECT_EQ(sample_polya({Rational(1), Rational(2), Q(1, 2)}, 20, Seed{s}),
              sample_polya({Rational(1), Rational(2), Q(1, 2)}, 20, Seed{s}));
    EXPECT_EQ(sample_extreme(BoundaryPoint::at(3), Q(2, 3), 20, Seed{s}, ExtremeMode::TSequence),
              sample_extreme(BoundaryPoint::at(3), Q(2, 3), 20, Seed{s}, ExtremeMode::TSequence));
  }
}

TEST(ExtremeFloat, MatchesExactLevels) {
  for (auto mode : {ExtremeMode::Forward, ExtremeMode::TSequence}) {
    const std::size_t n = 10;
    const auto exact = float_level(tilde_of_v(extreme_array(BoundaryPoint::at(3), Q(1, 2), n)).level(n));
    std::vector<double> freq(n + 1, 0.0);
    const int trials = 50000;
    for (int t = 0; t < trials; ++t) freq[sample_extreme_float(3, 0.5, n, derive_seed(Seed{8}, t), mode).ones()] += 1.0 / trials;
    double tv = 0;
    for (std::size_t k = 0; k <= n; ++k) tv += std::abs(freq[k] - exact[k]) / 2;
    EXPECT_LE(tv, 0.02);
  }
  EXPECT_THROW(sample_extreme_float(3, 1.0, 5, Seed{1}), RegimeError);
}

TEST(PolyaFloatSampler, ClassicalMean) {
  // Classical urn with a = b = 1: the fraction of ones is uniform on [0,1] in the limit.
  double mean = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) mean += sample_polya(PolyaFloatParams{1.0, 1.0, 1.0}, 20, derive_seed(Seed{4}, t)).ones() / 20.0;
  EXPECT_NEAR(mean / trials, 0.5, 0.01);
}
