#include "qfinetti/boundary.hpp"

#include <cmath>

namespace qfin {

BoundaryMeasure::BoundaryMeasure(QParam q, std::map<std::size_t, Rational> atoms, Rational zero_mass)
    : q_(std::move(q)), atoms_(std::move(atoms)), zero_mass_(std::move(zero_mass)) {
  q_.require_sub_unit("boundary measure");
  Rational total = zero_mass_;
  if (zero_mass_.sign() < 0) throw InvalidArgument("negative mass at 0");
  for (auto it = atoms_.begin(); it != atoms_.end();) {
    if (it->second.sign() < 0) throw InvalidArgument("negative mass at kappa = " + std::to_string(it->first));
    total += it->second;
    if (it->second.is_zero()) it = atoms_.erase(it);
    else ++it;
  }
  if (total != Rational(1)) throw InvalidArgument("boundary measure has total mass " + total.str());
}

BoundaryMeasure BoundaryMeasure::dirac(const QParam& q, BoundaryPoint point) {
  if (point.is_zero()) return BoundaryMeasure(q, {}, Rational(1));
  return BoundaryMeasure(q, {{*point.kappa, Rational(1)}}, Rational(0));
}

Rational BoundaryMeasure::mass(std::size_t kappa) const {
  auto it = atoms_.find(kappa);
  return it == atoms_.end() ? Rational(0) : it->second;
}

PhiValue phi(std::size_t n, std::size_t k, const Rational& x, const QParam& q) {
  q.require_sub_unit("Phi polynomials");
  if (k > n) throw InvalidArgument("Phi_{n,k} needs k <= n");
  if (x.sign() < 0 || x > Rational(1)) throw InvalidArgument("Phi_{n,k}(x) needs 0 <= x <= 1");
  // (x, 1/q)_k = prod_{i<k} (1 - x q^{-i})
  Rational poch(1);
  for (std::size_t i = 0; i < k && !poch.is_zero(); ++i) poch *= Rational(1) - x * q.pow(-static_cast<long>(i));
  Rational value = q.pow(-static_cast<long>(k * (n - k))) * x.pow(static_cast<long>(n - k)) * poch;
  Rational tilde = q_binomial(static_cast<long>(n), static_cast<long>(k), q) * value;
  return {std::move(value), std::move(tilde)};
}

VArray extreme_array(BoundaryPoint point, const QParam& q, std::size_t depth) {
  q.require_sub_unit("extreme_array");
  const Rational x = point.x(q);
  Triangle v(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) {
    v[n].resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[n][k] = phi(n, k, x, q).phi;
  }
  return VArray(q, std::move(v));
}

VArray mixture_array(const BoundaryMeasure& mu, std::size_t depth) {
  const QParam& q = mu.q();
  Triangle v(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) v[n].assign(n + 1, Rational(0));
  for (const auto& [kappa, mass] : mu.atoms()) {
    const Rational x = q.pow(static_cast<long>(kappa));
    for (std::size_t n = 0; n <= depth; ++n) {
      for (std::size_t k = 0; k <= n; ++k) v[n][k] += mass * phi(n, k, x, q).phi;
    }
  }
  // Phi_{n,k}(0) = 1 if k = n, else 0.
  for (std::size_t n = 0; n <= depth; ++n) v[n][n] += mu.zero_mass();
  return VArray(q, std::move(v));
}

BoundaryMeasure recover_measure(const VArray& array, std::size_t nu, std::size_t K) {
  array.q().require_sub_unit("recover_measure");
  if (nu > array.depth()) throw InvalidArgument("recovery level nu exceeds the array depth");
  if (K > nu) throw InvalidArgument("recover_measure needs K <= nu");
  std::map<std::size_t, Rational> atoms;
  Rational total(0);
  for (std::size_t kappa = 0; kappa <= K; ++kappa) {
    Rational m = q_binomial(static_cast<long>(nu), static_cast<long>(kappa), array.q()) * array(nu, kappa);
    total += m;
    atoms.emplace(kappa, std::move(m));
  }
  return BoundaryMeasure(array.q(), std::move(atoms), Rational(1) - total);
}

MomentSequence delta_q_apply(const MomentSequence& u, const QParam& q) {
  q.require_sub_unit("delta_q");
  MomentSequence out;
  if (u.u.size() < 2) return out;
  out.u.reserve(u.u.size() - 1);
  for (std::size_t l = 0; l + 1 < u.u.size(); ++l) {
    out.u.push_back(q.pow(-static_cast<long>(l)) * (u.u[l] - u.u[l + 1]));
  }
  return out;
}

MonotoneCheck is_q_completely_monotone(const MomentSequence& u, const QParam& q,
                                       std::optional<std::size_t> iterations) {
  q.require_sub_unit("q-complete monotonicity");
  const std::size_t available = u.u.empty() ? 0 : u.u.size() - 1;
  const std::size_t depth = iterations.value_or(available);
  if (depth > u.u.size()) throw InvalidArgument("more iterations requested than the sequence supports");
  MonotoneCheck out;
  MomentSequence current = u;
  for (std::size_t j = 0; j <= depth && !current.u.empty(); ++j) {
    for (std::size_t l = 0; l < current.u.size(); ++l) {
      if (current.u[l].sign() < 0) {
        out.ok = false;
        out.iterate = j;
        out.index = l;
        out.value = current.u[l];
        return out;
      }
    }
    if (j < depth) current = delta_q_apply(current, q);
  }
  return out;
}

MomentSequence first_column(const VArray& array) {
  MomentSequence u;
  u.u.reserve(array.depth() + 1);
  for (std::size_t n = 0; n <= array.depth(); ++n) u.u.push_back(array(n, 0));
  return u;
}

MomentSequence moments(const BoundaryMeasure& mu, std::size_t length) {
  MomentSequence m;
  m.u.assign(length, Rational(0));
  for (const auto& [kappa, mass] : mu.atoms()) {
    const Rational x = mu.q().pow(static_cast<long>(kappa));
    Rational power(1);
    for (std::size_t l = 0; l < length; ++l) {
      m.u[l] += mass * power;
      power *= x;
    }
  }
  if (length > 0) m.u[0] += mu.zero_mass();  // 0^0 = 1
  return m;
}

VArray rebuild_from_first_column(const MomentSequence& u, const QParam& q) {
  if (u.u.empty()) throw InvalidArgument("empty first column");
  const std::size_t depth = u.u.size() - 1;
  Triangle v(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) v[n].resize(n + 1);
  MomentSequence current = u;
  for (std::size_t k = 0; k <= depth; ++k) {
    for (std::size_t l = 0; l + k <= depth; ++l) v[l + k][k] = current.u[l];
    if (k < depth) current = delta_q_apply(current, q);
  }
  return VArray(q, std::move(v));
}

double FloatBoundaryMeasure::total() const {
  double t = zero_mass;
  for (const auto& [kappa, m] : atoms) t += m;
  return t;
}

FloatTriangle mixture_array(const FloatBoundaryMeasure& mu, std::size_t depth) {
  mu.q.require_sub_unit("mixture_array");
  const double q = mu.q.value().to_double();
  FloatTriangle v(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) v[n].assign(n + 1, 0.0);
  for (const auto& [kappa, mass] : mu.atoms) {
    for (std::size_t n = 0; n <= depth; ++n) {
      for (std::size_t k = 0; k <= n && k <= kappa; ++k) {
        // Phi_{n,k}(q^kappa) = q^{(kappa-k)(n-k)} prod_{i<k} (1 - q^{kappa-i}), zero for kappa < k.
        double value = std::pow(q, static_cast<double>((kappa - k) * (n - k)));
        for (std::size_t i = 0; i < k; ++i) value *= 1.0 - std::pow(q, static_cast<double>(kappa - i));
        v[n][k] += mass * value;
      }
    }
  }
  for (std::size_t n = 0; n <= depth; ++n) v[n][n] += mu.zero_mass;
  return v;
}

}  // namespace qfin
