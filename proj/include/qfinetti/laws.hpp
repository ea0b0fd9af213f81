#pragma once

// Laws of q-exchangeable binary sequences.
//
// A law is encoded by the triangular array v_{n,k} = P(1^k 0^{n-k}), which
// must satisfy v_{0,0} = 1, v >= 0 and
//
//     v_{n,k} = v_{n+1,k} + q^{n-k} v_{n+1,k+1}.
//
// The companion array tv_{n,k} = d_{n,k} v_{n,k} is the distribution of the
// number of ones after n steps.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfinetti/exactq.hpp"
#include "qfinetti/pascal_graph.hpp"

namespace qfin {

using Triangle = std::vector<std::vector<Rational>>;

/// (n, k) coordinates of a triangular array cell.
struct Cell {
  std::size_t n = 0;
  std::size_t k = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Throws InvalidArgument unless rows[n] has n + 1 entries for every n.
void require_triangular(const Triangle& rows);

class VArray {
 public:
  /// Shape-checked only; use check_recursion() for the defining identities.
  VArray(QParam q, Triangle v);

  const QParam& q() const { return q_; }
  std::size_t depth() const { return v_.size() - 1; }
  const Rational& operator()(std::size_t n, std::size_t k) const { return v_[n][k]; }
  const Triangle& rows() const { return v_; }

  /// Copy with one entry replaced (test and diagnostics helper).
  VArray with_entry(std::size_t n, std::size_t k, Rational value) const;
  /// First `depth + 1` levels.
  VArray truncated(std::size_t depth) const;

  friend bool operator==(const VArray& a, const VArray& b) { return a.q_ == b.q_ && a.v_ == b.v_; }

 private:
  QParam q_;
  Triangle v_;
};

class TildeArray {
 public:
  TildeArray(QParam q, Triangle tv);

  const QParam& q() const { return q_; }
  std::size_t depth() const { return tv_.size() - 1; }
  const Rational& operator()(std::size_t n, std::size_t k) const { return tv_[n][k]; }
  const Triangle& rows() const { return tv_; }
  const std::vector<Rational>& level(std::size_t n) const { return tv_[n]; }

  friend bool operator==(const TildeArray& a, const TildeArray& b) { return a.q_ == b.q_ && a.tv_ == b.tv_; }

 private:
  QParam q_;
  Triangle tv_;
};

struct RecursionCheck {
  bool ok = true;
  std::optional<Cell> cell;  // first violating cell
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Verifies v_{0,0} = 1, nonnegativity and the recursion, level by level.
RecursionCheck check_recursion(const VArray& array);

/// Sum of every level equals 1 and entries are nonnegative.
RecursionCheck check_levels(const TildeArray& tilde);

TildeArray tilde_of_v(const VArray& array);
VArray v_of_tilde(const TildeArray& tilde);

struct BackwardStep {
  Rational stay;  // toward (n-1-k, k): the last step was a 0
  Rational down;  // toward (n-k, k-1): the last step was a 1
};

/// One-step backward transition probabilities at level n, k ones.
/// With dual = true, those of the dual graph (0-step weight q^k, 1-step weight 1).
BackwardStep backward_kernel(std::size_t n, std::size_t k, const QParam& q, bool dual = false);

/// P{S_n = (n-k, k) | S_nu = (nu-kappa, kappa)}, a q-hypergeometric law in k.
Rational multistep_backward(std::size_t n, std::size_t k, std::size_t nu, std::size_t kappa, const QParam& q);

/// q^{inversions(word)} v_{n,K}. Throws InvalidArgument if the word is longer than the array.
Rational word_probability(const VArray& array, const BinaryWord& word);

/// Explicit law of the first n coordinates; probs[w.index()] is P(w).
struct FiniteLaw {
  std::size_t n = 0;
  std::vector<Rational> probs;

  /// Zero law on {0,1}^n; throws TooLarge beyond the 20-bit guard.
  static FiniteLaw zeros(std::size_t n);
  const Rational& operator[](const BinaryWord& w) const { return probs[w.index()]; }
  /// Masses nonnegative and summing to one.
  bool is_probability() const;
};

FiniteLaw finite_law(const VArray& array, std::size_t n);

struct ExchangeabilityCheck {
  bool ok = true;
  std::optional<BinaryWord> word;  // first word whose swap breaks the cocycle
  std::size_t position = 0;        // 0-based index i of the swapped pair (i, i+1)
  explicit operator bool() const { return ok; }
};

/// Swapping adjacent (e_i, e_{i+1}) must multiply P by q^{e_i - e_{i+1}}.
ExchangeabilityCheck check_q_exchangeable(const FiniteLaw& law, const QParam& q);

/// Run-length encoding by lengths of 0-runs. `runs[j]` is the number of zeros
/// between the j-th and (j+1)-th one (T_0 counts the zeros before the first
/// one); `open_run` counts the zeros after the last one, which are the visible
/// part of a run that has not been closed yet.
struct TSequence {
  std::vector<std::size_t> runs;
  std::size_t open_run = 0;

  bool trailing() const { return open_run > 0; }
  friend bool operator==(const TSequence&, const TSequence&) = default;
};

TSequence word_to_tsequence(const BinaryWord& word);
BinaryWord tsequence_to_word(const TSequence& t);

/// q > 1 reduction for arrays: the bit-flipped law has parameter 1/q and
/// v'_{n,k} = q^{k(n-k)} v_{n,n-k}. Throws NotSuperUnit if q <= 1.
VArray flip_reduction(const VArray& array);

/// Same transformation without the regime check (inverse of flip_reduction).
VArray flip_array(const VArray& array);

}  // namespace qfin
