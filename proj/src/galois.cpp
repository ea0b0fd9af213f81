#include "qfinetti/galois.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfin {

namespace {

constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

// Remainder of `a` modulo the monic polynomial `d` over F_p (constant term first).
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& d,
                                    std::uint32_t p) {
  const std::size_t dd = d.size() - 1;
  for (std::size_t i = a.size(); i-- > dd;) {
    const std::uint64_t c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      const std::size_t idx = i - dd + j;
      a[idx] = static_cast<std::uint32_t>((a[idx] + static_cast<std::uint64_t>(p - c) * d[j]) % p);
    }
  }
  a.resize(std::min(a.size(), dd));
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg == 0 || monic.back() != 1) return false;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> divisor(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      const auto rem = poly_mod(monic, divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t x) { return x == 0; })) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), order_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m_; ++i) order_ *= p_;
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t m, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (m == 0) throw FieldError("extension degree must be at least 1");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    order *= p;
    if (order > kMaxFieldOrder) throw FieldError("fields with more than 2^20 elements are not supported");
  }

  if (modulus) {
    if (modulus->size() != m + 1) throw NotIrreducible("modulus must have degree m (m + 1 coefficients)");
    for (auto c : *modulus) {
      if (c >= p) throw NotIrreducible("modulus coefficients must lie in [0, p)");
    }
    if (modulus->back() != 1) throw NotIrreducible("modulus must be monic");
    if (!is_irreducible(*modulus, p)) throw NotIrreducible("modulus is reducible over F_" + std::to_string(p));
    return FieldSpec(p, m, std::move(*modulus));
  }

  std::uint64_t count = order;  // candidates: all monic polynomials of degree m
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> candidate(m + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      candidate[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    candidate[m] = 1;
    if (is_irreducible(candidate, p)) return FieldSpec(p, m, std::move(candidate));
  }
  throw NotIrreducible("no irreducible polynomial found");  // unreachable for prime p
}

std::vector<std::uint32_t> FieldSpec::coefficients(FieldElement a) const {
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FieldElement FieldSpec::from_coefficients(const std::vector<std::uint32_t>& c) const {
  FieldElement a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p_ + c[i] % p_;
  return a;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (m_ == 1) return (a + b) % p_;
  FieldElement out = 0;
  FieldElement scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const {
  if (m_ == 1) return (a + p_ - b) % p_;
  FieldElement out = 0;
  FieldElement scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + p_ - b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (m_ == 1) return static_cast<FieldElement>(static_cast<std::uint64_t>(a) * b % p_);
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
  }
  return from_coefficients(poly_mod(std::move(prod), modulus_, p_));
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a == 0) throw std::domain_error("inverse of zero in a finite field");
  // a^{order - 2}
  FieldElement result = 1;
  FieldElement base = a;
  std::uint64_t e = order_ - 2;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Subspace::Subspace(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n) {
  if (!field_) throw InvalidArgument("subspace needs a field");
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(basis_.size());
  for (const auto& row : basis_) {
    out.push_back(static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](FieldElement e) { return e != 0; }) -
                                           row.begin()));
  }
  return out;
}

bool Subspace::contains(const FieldVector& v) const {
  if (v.size() != n_) return false;
  auto rows = basis_;
  rows.push_back(v);
  return rref_canonicalize(field_, n_, std::move(rows)).dim() == dim();
}

Subspace rref_canonicalize(const FieldPtr& field, std::size_t n, std::vector<FieldVector> rows) {
  const FieldSpec& f = *field;
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidArgument("vector length differs from the ambient dimension");
    for (auto e : r) {
      if (e >= f.order()) throw InvalidArgument("vector entry is not a field element");
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const FieldElement scale = f.inv(rows[rank][col]);
    for (auto& e : rows[rank]) e = f.mul(e, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const FieldElement factor = rows[r][col];
      for (std::size_t c = col; c < n; ++c) rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  Subspace out(field, n);
  out.basis_ = std::move(rows);
  return out;
}

Subspace full_space(const FieldPtr& field, std::size_t n) {
  std::vector<FieldVector> rows(n, FieldVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return rref_canonicalize(field, n, std::move(rows));
}

Subspace embed(const Subspace& x) {
  std::vector<FieldVector> rows = x.basis();
  for (auto& r : rows) r.push_back(0);
  return rref_canonicalize(x.field_ptr(), x.ambient_dim() + 1, std::move(rows));
}

Subspace project_down(const Subspace& x) {
  const std::size_t n = x.ambient_dim();
  if (n == 0) throw InvalidArgument("project_down needs ambient dimension >= 1");
  const FieldSpec& f = x.field();
  std::vector<FieldVector> rows = x.basis();
  auto lead = std::find_if(rows.begin(), rows.end(), [n](const FieldVector& r) { return r[n - 1] != 0; });
  if (lead != rows.end()) {
    // Clear the last coordinate from every other row, then drop the eliminating row.
    const FieldVector pivot_row = *lead;
    rows.erase(lead);
    const FieldElement inv_last = f.inv(pivot_row[n - 1]);
    for (auto& r : rows) {
      if (r[n - 1] == 0) continue;
      const FieldElement factor = f.mul(r[n - 1], inv_last);
      for (std::size_t c = 0; c < n; ++c) r[c] = f.sub(r[c], f.mul(factor, pivot_row[c]));
    }
  }
  for (auto& r : rows) r.pop_back();
  return rref_canonicalize(x.field_ptr(), n - 1, std::move(rows));
}

Subspace extend_with(const Subspace& x, const FieldVector& xi) {
  if (xi.size() != x.ambient_dim() + 1) throw InvalidArgument("extension vector must live in V_{n+1}");
  std::vector<FieldVector> rows = x.basis();
  for (auto& r : rows) r.push_back(0);
  rows.push_back(xi);
  return rref_canonicalize(x.field_ptr(), x.ambient_dim() + 1, std::move(rows));
}

std::vector<Subspace> list_extensions(const Subspace& x) {
  const std::size_t n = x.ambient_dim();
  const std::uint32_t q = x.field().order();
  std::vector<std::size_t> free_cols;
  {
    const auto piv = x.pivots();
    for (std::size_t c = 0; c < n; ++c) {
      if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_cols.push_back(c);
    }
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    count *= q;
    if (count > enumeration_limit(std::uint64_t{1} << 22)) throw TooLarge("too many extensions to list");
  }
  std::vector<Subspace> out;
  out.reserve(count + 1);
  out.push_back(embed(x));
  // Each new line is spanned by a unique xi = (w, 1) with w zero on the pivot
  // columns of X.
  for (std::uint64_t code = 0; code < count; ++code) {
    FieldVector xi(n + 1, 0);
    std::uint64_t c = code;
    for (std::size_t col : free_cols) {
      xi[col] = static_cast<FieldElement>(c % q);
      c /= q;
    }
    xi[n] = 1;
    out.push_back(extend_with(x, xi));
  }
  return out;
}

std::vector<Subspace> enumerate_grassmannian(const FieldPtr& field, std::size_t n, std::size_t k) {
  if (k > n) return {};
  const std::uint32_t q = field->order();
  const Rational expected = q_binomial(static_cast<long>(n), static_cast<long>(k), QParam(Rational(static_cast<long>(q))));
  if (expected > Rational(mpz_class(static_cast<unsigned long>(enumeration_limit(std::uint64_t{1} << 22)))) ) {
    throw TooLarge("Grassmannian G(" + std::to_string(n) + "," + std::to_string(k) + ") over F_" +
                   std::to_string(q) + " has " + expected.str() + " elements, beyond the enumeration guard");
  }
  std::vector<Subspace> out;
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;

  while (true) {
    // Free entries: row r, columns after its pivot that are not pivot columns.
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = pivots[r] + 1; c < n; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cells.emplace_back(r, c);
      }
    }
    std::vector<FieldElement> values(free_cells.size(), 0);
    while (true) {
      std::vector<FieldVector> rows(k, FieldVector(n, 0));
      for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = 1;
      for (std::size_t i = 0; i < free_cells.size(); ++i) rows[free_cells[i].first][free_cells[i].second] = values[i];
      out.push_back(rref_canonicalize(field, n, std::move(rows)));
      // Odometer over the free entries.
      std::size_t i = 0;
      while (i < values.size() && ++values[i] == q) values[i++] = 0;
      if (i == values.size()) break;
    }
    // Next pivot combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational growth_probability(const BoundaryPoint& kappa, std::size_t codim, const FieldSpec& field) {
  if (kappa.is_zero()) return Rational(0);
  if (codim > *kappa.kappa) throw InvalidArgument("codimension exceeds kappa");
  return Rational(static_cast<long>(field.order())).pow(-static_cast<long>(*kappa.kappa - codim));
}

std::vector<Subspace> sample_growth(const BoundaryPoint& kappa, const FieldPtr& field, std::size_t n_max, Seed seed) {
  SplitMix64 rng(seed);
  const std::uint32_t q = field->order();
  std::vector<Subspace> trajectory;
  trajectory.reserve(n_max + 1);
  trajectory.emplace_back(field, 0);
  for (std::size_t n = 0; n < n_max; ++n) {
    const Subspace& current = trajectory.back();
    if (!bernoulli(rng, growth_probability(kappa, current.codim(), *field))) {
      trajectory.push_back(embed(current));
      continue;
    }
    FieldVector xi(n + 1, 0);
    xi[n] = static_cast<FieldElement>(1 + uniform_below(rng, q - 1));
    for (std::size_t i = 0; i < n; ++i) xi[i] = static_cast<FieldElement>(uniform_below(rng, q));
    trajectory.push_back(extend_with(current, xi));
  }
  return trajectory;
}

BinaryWord codim_word(const std::vector<Subspace>& trajectory) {
  std::vector<std::uint8_t> bits;
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    if (trajectory[j].ambient_dim() != trajectory[j - 1].ambient_dim() + 1) {
      throw InvalidArgument("trajectory must step through V_0, V_1, ...");
    }
    bits.push_back(trajectory[j].codim() > trajectory[j - 1].codim() ? 1 : 0);
  }
  return BinaryWord(std::move(bits));
}

}  // namespace qfin
