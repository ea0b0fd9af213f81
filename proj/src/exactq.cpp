#include "qfinetti/exactq.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qfin {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::SubUnit: return "SubUnit";
    case Regime::Unit: return "Unit";
    case Regime::SuperUnit: return "SuperUnit";
  }
  return "?";
}

QParam::QParam(Rational q) : q_(std::move(q)) {
  if (q_.sign() <= 0) throw InvalidArgument("q must be positive, got " + q_.str());
  if (q_ < Rational(1)) regime_ = Regime::SubUnit;
  else if (q_ == Rational(1)) regime_ = Regime::Unit;
  else regime_ = Regime::SuperUnit;
}

void QParam::require_sub_unit(const char* what) const {
  if (regime_ != Regime::SubUnit) {
    throw RegimeError(std::string(what) + " requires 0 < q < 1, got q = " + q_.str() + " (" +
                      to_string(regime_) + ")");
  }
}

Rational q_integer(std::size_t n, const QParam& q) {
  Rational sum(0);
  Rational power(1);
  for (std::size_t i = 0; i < n; ++i) {
    sum += power;
    power *= q.value();
  }
  return sum;
}

Rational q_factorial(std::size_t n, const QParam& q) {
  Rational product(1);
  Rational qi(0);  // running [i]
  Rational power(1);
  for (std::size_t i = 1; i <= n; ++i) {
    qi += power;
    power *= q.value();
    product *= qi;
  }
  return product;
}

Rational q_binomial(long n, long k, const QParam& q) {
  if (n < 0 || k < 0 || k > n) return Rational(0);
  if (k > n - k) k = n - k;
  // [n]!/([k]![n-k]!) = prod_{i=1}^{k} [n-k+i]/[i]
  Rational num(1);
  Rational den(1);
  for (long i = 1; i <= k; ++i) {
    num *= q_integer(static_cast<std::size_t>(n - k + i), q);
    den *= q_integer(static_cast<std::size_t>(i), q);
  }
  return num / den;
}

Rational q_pochhammer(const Rational& x, const QParam& q, std::size_t k) {
  Rational product(1);
  Rational xqi = x;
  for (std::size_t i = 0; i < k; ++i) {
    product *= Rational(1) - xqi;
    xqi *= q.value();
  }
  return product;
}

FloatEstimate q_pochhammer_infinite(double x, double q, const TruncationPolicy& policy) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InfiniteProductOutsideSubUnit("(x,q)_inf requires 0 < q < 1");
  }
  FloatEstimate out;
  out.value = 1.0;
  double xqi = x;
  for (std::size_t i = 0; i < policy.max_terms; ++i) {
    const double a = std::fabs(xqi);
    if (a < 1.0) {
      const double tail = a / ((1.0 - q) * (1.0 - a));
      if (tail < policy.target_relative_error) {
        // Truncated tail plus accumulated rounding in the i factors.
        out.relative_error = std::expm1(tail) + static_cast<double>(i + 1) * 2.3e-16;
        out.terms = i;
        return out;
      }
    }
    out.value *= 1.0 - xqi;
    xqi *= q;
  }
  throw TooLarge("(x,q)_inf did not reach the target error within max_terms factors");
}

FloatEstimate q_pochhammer_infinite(const Rational& x, const QParam& q, const TruncationPolicy& policy) {
  if (!q.sub_unit()) {
    throw InfiniteProductOutsideSubUnit("(x,q)_inf requires 0 < q < 1, got q = " + q.value().str());
  }
  return q_pochhammer_infinite(x.to_double(), q.value().to_double(), policy);
}

QBinomialTable::QBinomialTable(const QParam& q, std::size_t depth) : rows_(depth + 1) {
  std::vector<Rational> qpow(depth + 1);
  qpow[0] = Rational(1);
  for (std::size_t i = 1; i <= depth; ++i) qpow[i] = qpow[i - 1] * q.value();
  for (std::size_t n = 0; n <= depth; ++n) {
    rows_[n].assign(n + 1, Rational(1));
    for (std::size_t k = 1; k < n; ++k) {
      rows_[n][k] = qpow[n - k] * rows_[n - 1][k - 1] + rows_[n - 1][k];
    }
  }
}

std::uint64_t enumeration_limit(std::uint64_t fallback) {
  if (const char* env = std::getenv("QB_MAX_ENUM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace qfin
