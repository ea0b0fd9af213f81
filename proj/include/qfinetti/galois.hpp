#pragma once

// Subspaces of F^n over a finite field F = GF(p^m).
//
// V_n is the space of sequences whose coordinates beyond n vanish, so
// V_0 = {0} c V_1 c V_2 c ... . A subspace is stored in reduced row echelon
// form (leading 1s, zeros above and below every pivot), which is the unique
// representative; equal subspaces compare equal.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfinetti/boundary.hpp"
#include "qfinetti/pascal_graph.hpp"
#include "qfinetti/random.hpp"

namespace qfin {

/// An element of GF(p^m) encoded as sum_i c_i p^i, where c_i is the
/// coefficient of x^i in its polynomial representative.
using FieldElement = std::uint32_t;

class FieldSpec {
 public:
  /// Builds GF(p^m). Without a modulus, the smallest monic irreducible
  /// polynomial of degree m is used, ordering candidates by their
  /// coefficients read as base-p digits with the constant term least
  /// significant. `modulus` lists coefficients constant term first and must be
  /// monic of degree m. Throws NotPrime, NotIrreducible, or FieldError for
  /// m = 0 or fields larger than 2^20 elements.
  static FieldSpec make(std::uint32_t p, std::uint32_t m,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const { return sub(0, a); }
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws std::domain_error for 0.
  FieldElement inv(FieldElement a) const;

  std::vector<std::uint32_t> coefficients(FieldElement a) const;
  FieldElement from_coefficients(const std::vector<std::uint32_t>& c) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldSpec(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t order_;
  std::vector<std::uint32_t> modulus_;
};

bool is_prime(std::uint64_t n);

/// True iff the monic polynomial (constant term first) has no monic factor
/// of degree 1..deg/2 over F_p.
bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p);

using FieldPtr = std::shared_ptr<const FieldSpec>;
using FieldVector = std::vector<FieldElement>;

class Subspace {
 public:
  /// The zero subspace of V_n.
  Subspace(FieldPtr field, std::size_t n);

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t codim() const { return n_ - basis_.size(); }
  const std::vector<FieldVector>& basis() const { return basis_; }
  /// Pivot column of each basis row (0-based).
  std::vector<std::size_t> pivots() const;

  bool contains(const FieldVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return *a.field_ == *b.field_ && a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  /// Lexicographic order on (ambient dimension, basis matrix).
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.basis_ < b.basis_;
  }

 private:
  friend Subspace rref_canonicalize(const FieldPtr& field, std::size_t n, std::vector<FieldVector> vectors);
  FieldPtr field_;
  std::size_t n_;
  std::vector<FieldVector> basis_;
};

/// Span of `vectors` (each of length n) in reduced row echelon form.
Subspace rref_canonicalize(const FieldPtr& field, std::size_t n, std::vector<FieldVector> vectors);

/// V_n itself.
Subspace full_space(const FieldPtr& field, std::size_t n);

/// The same subspace viewed inside V_{n+1}.
Subspace embed(const Subspace& x);

/// X intersected with V_{n-1}. Requires n >= 1.
Subspace project_down(const Subspace& x);

/// span(X, xi) in V_{n+1}, where xi has length n+1.
Subspace extend_with(const Subspace& x, const FieldVector& xi);

/// All X' in Gr(V_{n+1}) with X' intersected with V_n equal to X: X itself first,
/// then the q^{n-dim} subspaces of dimension dim + 1.
std::vector<Subspace> list_extensions(const Subspace& x);

/// All k-dimensional subspaces of V_n, sorted. Throws TooLarge beyond the
/// enumeration guard (2^22 subspaces, see enumeration_limit).
std::vector<Subspace> enumerate_grassmannian(const FieldPtr& field, std::size_t n, std::size_t k);

/// Exact probability q_f^{-(kappa - codim)} that the growth step adds a dimension;
/// zero for the kappa = infinity point.
Rational growth_probability(const BoundaryPoint& kappa, std::size_t codim, const FieldSpec& field);

/// Random growth X_0 c X_1 c ... c X_{n_max} under the ergodic invariant
/// measure with parameter kappa. Each step consumes one draw for the growth
/// decision and, on growth, draws xi_{n+1} = 1 + uniform_below(q_f - 1) then
/// xi_1..xi_n = uniform_below(q_f) each.
std::vector<Subspace> sample_growth(const BoundaryPoint& kappa, const FieldPtr& field, std::size_t n_max,
                                    Seed seed);

/// Bit j is 1 iff the codimension of X_j in V_j exceeds that of X_{j-1} in V_{j-1}.
BinaryWord codim_word(const std::vector<Subspace>& trajectory);

}  // namespace qfin
