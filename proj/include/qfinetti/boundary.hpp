#pragma once

// Boundary of the q-Pascal graph for 0 < q < 1.
//
// Extreme laws are indexed by x in {1, q, q^2, ...} U {0} and have
// v_{n,k} = Phi_{n,k}(x) = q^{-k(n-k)} x^{n-k} (x, 1/q)_k. Every law is a
// unique mixture of extremes; the mixing measure is recovered as the limit of
// the level distributions tv_{nu, kappa}.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfinetti/exactq.hpp"
#include "qfinetti/laws.hpp"

namespace qfin {

/// A point of {q^kappa : kappa >= 0} U {0}; an empty kappa is the point 0.
struct BoundaryPoint {
  std::optional<std::size_t> kappa;

  static BoundaryPoint at(std::size_t k) { return {k}; }
  static BoundaryPoint zero() { return {}; }
  bool is_zero() const { return !kappa.has_value(); }
  Rational x(const QParam& q) const { return kappa ? q.pow(static_cast<long>(*kappa)) : Rational(0); }
  std::string str() const { return kappa ? std::to_string(*kappa) : std::string("inf"); }
  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

/// Finitely supported probability measure on {q^kappa} U {0}.
class BoundaryMeasure {
 public:
  /// Throws InvalidArgument on negative masses or a total different from 1,
  /// RegimeError unless 0 < q < 1.
  BoundaryMeasure(QParam q, std::map<std::size_t, Rational> atoms, Rational zero_mass);

  static BoundaryMeasure dirac(const QParam& q, BoundaryPoint point);

  const QParam& q() const { return q_; }
  const std::map<std::size_t, Rational>& atoms() const { return atoms_; }
  const Rational& zero_mass() const { return zero_mass_; }
  Rational mass(std::size_t kappa) const;

  friend bool operator==(const BoundaryMeasure&, const BoundaryMeasure&) = default;

 private:
  QParam q_;
  std::map<std::size_t, Rational> atoms_;
  Rational zero_mass_;
};

struct PhiValue {
  Rational phi;
  Rational phi_tilde;
};

/// Phi_{n,k}(x) and d_{n,k} Phi_{n,k}(x). Requires 0 < q < 1 and 0 <= x <= 1.
PhiValue phi(std::size_t n, std::size_t k, const Rational& x, const QParam& q);

VArray extreme_array(BoundaryPoint point, const QParam& q, std::size_t depth);

/// v_{n,k} = sum_x Phi_{n,k}(x) mu(x).
VArray mixture_array(const BoundaryMeasure& mu, std::size_t depth);

/// Finite-nu estimate of the mixing measure: masses tv_{nu,kappa} for kappa <= K,
/// zero mass by complement. Requires K <= nu <= depth.
BoundaryMeasure recover_measure(const VArray& array, std::size_t nu, std::size_t K);

inline constexpr std::size_t kDefaultRecoveryLevel = 40;
inline constexpr std::size_t kDefaultRecoveryAtoms = 12;

struct MomentSequence {
  std::vector<Rational> u;
};

/// (delta_q u)_l = q^{-l} (u_l - u_{l+1}); the result is one entry shorter.
MomentSequence delta_q_apply(const MomentSequence& u, const QParam& q);

struct MonotoneCheck {
  bool ok = true;
  std::size_t iterate = 0;  // number of delta_q applications at the failure
  std::size_t index = 0;    // position l inside that iterate
  Rational value;           // the offending (negative) entry
  explicit operator bool() const { return ok; }
};

/// Truncated q-complete monotonicity: every iterate delta_q^j u for
/// j <= iterations is componentwise nonnegative on its available range.
/// `iterations` defaults to u.size() - 1, the full triangular range.
MonotoneCheck is_q_completely_monotone(const MomentSequence& u, const QParam& q,
                                       std::optional<std::size_t> iterations = std::nullopt);

/// u_l = v_{l,0}.
MomentSequence first_column(const VArray& array);

/// Moments sum_x x^l mu(x) for l = 0..length-1.
MomentSequence moments(const BoundaryMeasure& mu, std::size_t length);

/// Triangle rebuilt from its first column by v_{l+k,k} = (delta_q^k u)_l.
VArray rebuild_from_first_column(const MomentSequence& u, const QParam& q);

/// Boundary measure with floating-point masses (q-Poisson, q-beta).
struct FloatBoundaryMeasure {
  QParam q{Rational(1, 2)};
  std::map<std::size_t, double> atoms;
  double zero_mass = 0.0;
  double error_bound = 0.0;  // bound on the relative error of each mass

  double total() const;
};

using FloatTriangle = std::vector<std::vector<double>>;

/// Floating-point mixture of extreme arrays, v_{n,k} for n <= depth.
FloatTriangle mixture_array(const FloatBoundaryMeasure& mu, std::size_t depth);

}  // namespace qfin
