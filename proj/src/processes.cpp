#include "qfinetti/processes.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qfin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

long as_positive_integer(const Rational& r, const char* name) {
  if (!r.is_integer() || r.sign() <= 0) {
    throw NonIntegerParamsInExactMode(std::string("exact mode needs a positive integer ") + name + ", got " + r.str());
  }
  if (!r.numerator().fits_slong_p()) throw InvalidArgument(std::string(name) + " is too large");
  return r.numerator().get_si();
}

std::vector<Branch> bit_branches(const Rational& p_zero) {
  return {{BinaryWord::parse("0"), p_zero}, {BinaryWord::parse("1"), Rational(1) - p_zero}};
}

std::vector<Branch> extreme_branches(const ExtremeParams& p, const BinaryWord& prefix, std::size_t n) {
  const std::size_t ones = prefix.ones();
  const std::size_t remaining = n - prefix.size();
  if (p.point.is_zero()) {
    return p.mode == ExtremeMode::Forward ? bit_branches(Rational(0))
                                          : std::vector<Branch>{{BinaryWord::parse("1"), Rational(1)}};
  }
  const std::size_t kappa = *p.point.kappa;
  if (ones >= kappa) {
    // All kappa runs closed: the rest of the sequence is zeros.
    return p.mode == ExtremeMode::Forward ? bit_branches(Rational(1))
                                          : std::vector<Branch>{{BinaryWord::repeat(0, remaining), Rational(1)}};
  }
  const Rational stay = p.q.pow(static_cast<long>(kappa - ones));  // q^{kappa-k}
  if (p.mode == ExtremeMode::Forward) return bit_branches(stay);

  // Run length T ~ Geometric(success 1 - stay), failures before success,
  // truncated at the remaining length.
  std::vector<Branch> out;
  out.reserve(remaining + 1);
  Rational tail(1);  // stay^t
  for (std::size_t t = 0; t < remaining; ++t) {
    std::vector<std::uint8_t> bits(t, 0);
    bits.push_back(1);
    out.push_back({BinaryWord(std::move(bits)), tail * (Rational(1) - stay)});
    tail *= stay;
  }
  out.push_back({BinaryWord::repeat(0, remaining), tail});
  return out;
}

std::vector<Branch> theta_branches(const ThetaParams& p, const BinaryWord& prefix) {
  if (p.infinite) return bit_branches(Rational(0));
  const Rational growth = p.theta * p.q.pow(static_cast<long>(prefix.size()));  // theta q^{m-1}
  return bit_branches(Rational(1) / (Rational(1) + growth));
}

std::vector<Branch> polya_branches(const PolyaParams& p, const BinaryWord& prefix) {
  auto [zero, one] = polya_forward(p, prefix.size(), prefix.ones());
  return {{BinaryWord::parse("0"), std::move(zero)}, {BinaryWord::parse("1"), std::move(one)}};
}

double q_number(double x, double q) {
  if (q == 1.0) return x;
  return (1.0 - std::pow(q, x)) / (1.0 - q);
}


// Masses term_kappa / total for kappa <= K, where total is the full series sum.
// `next(kappa, term)` returns term_{kappa+1}; `tail_ratio(kappa)` bounds
// term_{j+1} / term_j for every j >= kappa. The divisor is nudged upward until the
// returned masses sum to at most one.
template <class Next, class TailRatio>
FloatBoundaryMeasure normalized_series(const QParam& q, std::size_t K, const TruncationPolicy& policy, Next next,
                                       TailRatio tail_ratio) {
  constexpr double kEps = 2.3e-16;
  std::vector<double> terms;
  double total = 0.0;
  double term = 1.0;
  for (std::size_t kappa = 0;; ++kappa) {
    if (kappa >= policy.max_terms) throw TooLarge("boundary series did not converge within max_terms terms");
    if (kappa <= K) terms.push_back(term);
    total += term;
    const double r = tail_ratio(kappa);
    if (kappa >= K && r < 1.0 && term * r / (1.0 - r) <= total * 0x1p-60) break;
    term = next(kappa, term);
  }
  const double slack = static_cast<double>(terms.size() + 8) * kEps;
  FloatBoundaryMeasure mu{q, {}, 0.0, 0.0};
  double sum = 0.0;
  for (double divisor = total;; divisor *= 1.0 + slack) {
    mu.atoms.clear();
    sum = 0.0;
    for (std::size_t kappa = 0; kappa < terms.size(); ++kappa) {
      const double mass = terms[kappa] / divisor;
      if (mass > 0.0) mu.atoms[kappa] = mass;
      sum += mass;
    }
    if (sum <= 1.0) break;
  }
  mu.zero_mass = std::max(0.0, 1.0 - sum);
  mu.error_bound = 2.0 * slack + 0x1p-60;
  return mu;
}

}  // namespace

void validate(const ProcessSpec& spec) {
  std::visit(Overloaded{
                 [](const ExtremeParams& p) { p.q.require_sub_unit("extreme process"); },
                 [](const ThetaParams& p) {
                   if (!p.infinite && p.theta.sign() < 0) throw InvalidArgument("theta must be nonnegative");
                 },
                 [](const PolyaParams& p) {
                   as_positive_integer(p.a, "a");
                   as_positive_integer(p.b, "b");
                 },
             },
             spec);
}

std::vector<Branch> next_branches(const ProcessSpec& spec, const BinaryWord& prefix, std::size_t n) {
  if (prefix.size() >= n) throw InvalidArgument("prefix already has the requested length");
  return std::visit(Overloaded{
                        [&](const ExtremeParams& p) { return extreme_branches(p, prefix, n); },
                        [&](const ThetaParams& p) { return theta_branches(p, prefix); },
                        [&](const PolyaParams& p) { return polya_branches(p, prefix); },
                    },
                    spec);
}

Sampler::Sampler(ProcessSpec spec, std::size_t n) : spec_(std::move(spec)), n_(n) { validate(spec_); }

const std::vector<Branch>& Sampler::branches(std::size_t length, std::size_t ones, const BinaryWord& prefix) {
  // Branches depend on the prefix only through (length, ones) for all three families.
  auto key = std::make_pair(length, ones);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto list = next_branches(spec_, prefix, n_);
    std::vector<Rational> probs;
    probs.reserve(list.size());
    for (const auto& b : list) probs.push_back(b.probability);
    it = cache_.emplace(key, std::make_pair(std::move(list), std::move(probs))).first;
  }
  return it->second.first;
}

BinaryWord Sampler::sample(Seed seed) {
  SplitMix64 rng(seed);
  BinaryWord word;
  while (word.size() < n_) {
    const auto& list = branches(word.size(), word.ones(), word);
    const auto& probs = cache_.at({word.size(), word.ones()}).second;
    const std::size_t i = choose_branch(rng, probs);
    for (auto b : list[i].chunk.bits()) word.push_back(b);
  }
  return word;
}

BinaryWord sample_extreme(BoundaryPoint point, const QParam& q, std::size_t n, Seed seed, ExtremeMode mode) {
  return Sampler(ExtremeParams{point, q, mode}, n).sample(seed);
}

BinaryWord sample_theta(const ThetaParams& params, std::size_t n, Seed seed) {
  return Sampler(params, n).sample(seed);
}

BinaryWord sample_polya(const PolyaParams& params, std::size_t n, Seed seed) {
  return Sampler(params, n).sample(seed);
}

VArray process_array(const ProcessSpec& spec, std::size_t depth) {
  return std::visit(Overloaded{
                        [&](const ExtremeParams& p) { return extreme_array(p.point, p.q, depth); },
                        [&](const ThetaParams& p) { return theta_array(p, depth); },
                        [&](const PolyaParams& p) { return polya_array(p, depth); },
                    },
                    spec);
}

VArray theta_array(const ThetaParams& params, std::size_t depth) {
  const QParam& q = params.q;
  Triangle w(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) w[n].assign(n + 1, Rational(0));
  if (params.infinite) {
    for (std::size_t n = 0; n <= depth; ++n) w[n][n] = Rational(1);
    return VArray(q, std::move(w));
  }
  if (params.theta.sign() < 0) throw InvalidArgument("theta must be nonnegative");
  const Rational minus_theta = -params.theta;
  for (std::size_t n = 0; n <= depth; ++n) {
    const Rational norm = q_pochhammer(minus_theta, q, n);  // (-theta, q)_n
    Rational theta_k(1);
    for (std::size_t k = 0; k <= n; ++k) {
      w[n][k] = theta_k * q.pow(static_cast<long>(k) * (static_cast<long>(k) - 1) / 2) / norm;
      theta_k *= params.theta;
    }
  }
  return VArray(q, std::move(w));
}

FloatBoundaryMeasure theta_boundary_measure(const ThetaParams& params, std::size_t K,
                                            const TruncationPolicy& policy) {
  params.q.require_sub_unit("theta boundary measure");
  if (params.infinite) return FloatBoundaryMeasure{params.q, {}, 1.0, 0.0};
  if (params.theta.sign() < 0) throw InvalidArgument("theta must be nonnegative");
  const double q = params.q.value().to_double();
  const double theta = params.theta.to_double();
  // term_kappa = q^{kappa(kappa-1)/2} theta^kappa / (q, q)_kappa, summing to (-theta, q)_inf.
  const auto step = [&](std::size_t kappa) {
    const auto k = static_cast<double>(kappa);
    return theta * std::pow(q, k) / (1.0 - std::pow(q, k + 1.0));
  };
  return normalized_series(
      params.q, K, policy, [&](std::size_t kappa, double term) { return term * step(kappa); }, step);
}

std::pair<Rational, Rational> polya_forward(const PolyaParams& params, std::size_t n, std::size_t k) {
  const long a = as_positive_integer(params.a, "a");
  const long b = as_positive_integer(params.b, "b");
  if (k > n) throw InvalidArgument("polya_forward needs k <= n");
  const QParam& q = params.q;
  const auto ln = static_cast<long>(n);
  const auto lk = static_cast<long>(k);
  const Rational total = q_integer(static_cast<std::size_t>(a + b + ln), q);
  Rational zero = q_integer(static_cast<std::size_t>(b + ln - lk), q) / total;
  Rational one = q_integer(static_cast<std::size_t>(a + lk), q) / total * q.pow(ln - lk + b);
  return {std::move(zero), std::move(one)};
}

VArray polya_array(const PolyaParams& params, std::size_t depth) {
  const long a = as_positive_integer(params.a, "a");
  const long b = as_positive_integer(params.b, "b");
  const QParam& q = params.q;
  const auto top = static_cast<std::size_t>(a + b) + depth;
  std::vector<Rational> qint(top + 1);
  for (std::size_t m = 0; m <= top; ++m) qint[m] = q_integer(m, q);

  // rising[x][j] = [x][x+1]...[x+j-1]
  auto rising = [&](long x, std::size_t j) {
    Rational r(1);
    for (std::size_t i = 0; i < j; ++i) r *= qint[static_cast<std::size_t>(x) + i];
    return r;
  };
  Triangle v(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) {
    v[n].resize(n + 1);
    const Rational denom = rising(a + b, n);
    for (std::size_t k = 0; k <= n; ++k) {
      v[n][k] = q.pow(b * static_cast<long>(k)) * rising(a, k) * rising(b, n - k) / denom;
    }
  }
  return VArray(q, std::move(v));
}

std::pair<double, double> polya_forward(const PolyaFloatParams& p, std::size_t n, std::size_t k) {
  if (!(p.a > 0.0 && p.b > 0.0 && p.q > 0.0)) throw InvalidArgument("float urn needs a, b, q > 0");
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  const double total = q_number(p.a + p.b + dn, p.q);
  return {q_number(p.b + dn - dk, p.q) / total, q_number(p.a + dk, p.q) / total * std::pow(p.q, dn - dk + p.b)};
}

FloatTriangle polya_levels(const PolyaFloatParams& p, std::size_t depth) {
  // Forward propagation of the level distributions.
  FloatTriangle levels(depth + 1);
  levels[0] = {1.0};
  for (std::size_t n = 0; n < depth; ++n) {
    levels[n + 1].assign(n + 2, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      auto [zero, one] = polya_forward(p, n, k);
      levels[n + 1][k] += levels[n][k] * zero;
      levels[n + 1][k + 1] += levels[n][k] * one;
    }
  }
  return levels;
}

BinaryWord sample_polya(const PolyaFloatParams& params, std::size_t n, Seed seed) {
  SplitMix64 rng(seed);
  BinaryWord word;
  while (word.size() < n) {
    auto [zero, one] = polya_forward(params, word.size(), word.ones());
    word.push_back(uniform_double(rng) * (zero + one) < zero ? 0 : 1);
  }
  return word;
}

FloatBoundaryMeasure polya_boundary_measure(const PolyaParams& params, std::size_t K,
                                            const TruncationPolicy& policy) {
  params.q.require_sub_unit("polya boundary measure");
  if (params.a.sign() <= 0 || params.b.sign() <= 0) throw InvalidArgument("urn parameters must be positive");
  const double q = params.q.value().to_double();
  const double a = params.a.to_double();
  const double qb = std::pow(q, params.b.to_double());
  // term_kappa = (q^a, q)_kappa / (q, q)_kappa q^{kappa b}, summing to (q^{a+b}, q)_inf / (q^b, q)_inf.
  const auto step = [&](std::size_t kappa) {
    const auto k = static_cast<double>(kappa);
    return (1.0 - std::pow(q, a + k)) / (1.0 - std::pow(q, k + 1.0)) * qb;
  };
  const auto bound = [&](std::size_t kappa) {
    return qb * std::max(1.0, 1.0 / (1.0 - std::pow(q, static_cast<double>(kappa) + 1.0)));
  };
  return normalized_series(
      params.q, K, policy, [&](std::size_t kappa, double term) { return term * step(kappa); }, bound);
}

BoundaryMeasure polya_boundary_measure_exact(const PolyaParams& params, std::size_t K) {
  params.q.require_sub_unit("polya boundary measure");
  const long a = as_positive_integer(params.a, "a");
  const long b = as_positive_integer(params.b, "b");
  if (a != 1) throw InvalidArgument("the exact urn boundary measure is available for a = 1 only");
  const Rational qb = params.q.pow(b);
  std::map<std::size_t, Rational> atoms;
  Rational total(0);
  Rational power(1);
  for (std::size_t kappa = 0; kappa <= K; ++kappa) {
    Rational m = (Rational(1) - qb) * power;
    total += m;
    atoms.emplace(kappa, std::move(m));
    power *= qb;
  }
  return BoundaryMeasure(params.q, std::move(atoms), Rational(1) - total);
}

BinaryWord sample_extreme_float(std::size_t kappa, double q, std::size_t n, Seed seed, ExtremeMode mode) {
  if (!(q > 0.0 && q < 1.0)) throw RegimeError("float extreme sampler requires 0 < q < 1");
  SplitMix64 rng(seed);
  BinaryWord word;
  std::size_t ones = 0;
  while (word.size() < n) {
    const double stay = ones >= kappa ? 1.0 : std::pow(q, static_cast<double>(kappa - ones));
    if (mode == ExtremeMode::Forward) {
      const bool zero = uniform_double(rng) < stay;
      word.push_back(zero ? 0 : 1);
      if (!zero) ++ones;
      continue;
    }
    // Inverse CDF of the truncated geometric run length: P(T >= t) = stay^t.
    const std::size_t remaining = n - word.size();
    std::size_t run = remaining;
    if (stay < 1.0) {
      const double u = uniform_double(rng);
      const double t = std::floor(std::log1p(-u) / std::log(stay));
      if (t < static_cast<double>(remaining)) run = static_cast<std::size_t>(t);
    }
    for (std::size_t i = 0; i < run; ++i) word.push_back(0);
    if (run < remaining) {
      word.push_back(1);
      ++ones;
    }
  }
  return word;
}

LevelHistogram empirical_level_histogram(const ProcessSpec& spec, std::size_t n, std::uint64_t trials, Seed seed,
                                         unsigned threads) {
  if (trials == 0) throw InvalidArgument("histogram needs at least one trial");
  validate(spec);
  threads = std::max(1U, threads);
  LevelHistogram hist;
  hist.n = n;
  hist.trials = trials;
  hist.counts.assign(n + 1, 0);

  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(n + 1, 0));
  auto work = [&](unsigned worker) {
    Sampler sampler(spec, n);
    const std::uint64_t begin = trials * worker / threads;
    const std::uint64_t end = trials * (worker + 1) / threads;
    for (std::uint64_t t = begin; t < end; ++t) ++partial[worker][sampler.sample(derive_seed(seed, t)).ones()];
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& part : partial) {
    for (std::size_t k = 0; k <= n; ++k) hist.counts[k] += part[k];
  }
  return hist;
}

double tv_distance(const LevelHistogram& hist, const std::vector<Rational>& exact_level) {
  if (exact_level.size() != hist.counts.size()) throw InvalidArgument("level sizes differ");
  double tv = 0.0;
  for (std::size_t k = 0; k < exact_level.size(); ++k) tv += std::fabs(hist.frequency(k) - exact_level[k].to_double());
  return tv / 2.0;
}

}  // namespace qfin
