#pragma once

// q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols over
// exact rationals.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfinetti/errors.hpp"
#include "qfinetti/rational.hpp"

namespace qfin {

enum class Regime { SubUnit, Unit, SuperUnit };

std::string to_string(Regime r);

/// A concrete deformation parameter q > 0 together with its regime.
class QParam {
 public:
  /// Throws InvalidArgument unless q > 0.
  explicit QParam(Rational q);
  static QParam parse(std::string_view text) { return QParam(Rational::parse(text)); }

  const Rational& value() const { return q_; }
  Regime regime() const { return regime_; }
  bool sub_unit() const { return regime_ == Regime::SubUnit; }

  /// q^e for any integer e.
  Rational pow(long e) const { return q_.pow(e); }
  QParam inverse() const { return QParam(q_.reciprocal()); }

  /// Throws RegimeError unless 0 < q < 1; `what` names the caller in the message.
  void require_sub_unit(const char* what) const;

  friend bool operator==(const QParam& a, const QParam& b) { return a.q_ == b.q_; }

 private:
  Rational q_;
  Regime regime_;
};

/// Truncation control for infinite products evaluated in floating point.
struct TruncationPolicy {
  std::size_t max_terms = 10000;
  double target_relative_error = 1e-12;
};

/// A floating-point value with a certified bound on its relative error.
struct FloatEstimate {
  double value = 0.0;
  double relative_error = 0.0;
  std::size_t terms = 0;
};

/// [n] = 1 + q + ... + q^{n-1}.
Rational q_integer(std::size_t n, const QParam& q);

/// [n]! = [1][2]...[n].
Rational q_factorial(std::size_t n, const QParam& q);

/// Gaussian binomial; zero when n < 0, k < 0 or k > n.
Rational q_binomial(long n, long k, const QParam& q);

/// (x, q)_k = prod_{i<k} (1 - x q^i), exact.
Rational q_pochhammer(const Rational& x, const QParam& q, std::size_t k);

/// (x, q)_infinity for 0 < q < 1 in double precision.
///
/// Factors are multiplied until the geometric tail bound
/// |x q^i| / ((1 - q)(1 - |x q^i|)) on |log of the remaining product| drops
/// below policy.target_relative_error, which is then reported as the
/// relative error. Throws InfiniteProductOutsideSubUnit if q >= 1 and
/// TooLarge if max_terms is reached first.
FloatEstimate q_pochhammer_infinite(const Rational& x, const QParam& q,
                                    const TruncationPolicy& policy = {});
FloatEstimate q_pochhammer_infinite(double x, double q, const TruncationPolicy& policy = {});

/// Row-by-row table of Gaussian binomials d[n][k] for 0 <= k <= n <= depth.
class QBinomialTable {
 public:
  QBinomialTable(const QParam& q, std::size_t depth);
  const Rational& operator()(std::size_t n, std::size_t k) const { return rows_[n][k]; }
  std::size_t depth() const { return rows_.size() - 1; }

 private:
  std::vector<std::vector<Rational>> rows_;
};

/// Guard for exhaustive enumerations: `fallback` unless the QB_MAX_ENUM
/// environment variable holds a positive integer.
std::uint64_t enumeration_limit(std::uint64_t fallback);

}  // namespace qfin
