#pragma once

// The weighted q-Pascal graph: vertices (l, k), the 0-step (l,k)->(l+1,k) of
// weight 1 and the 1-step (l,k)->(l,k+1) of weight q^l. In the dual graph the
// 0-step weighs q^k and the 1-step weighs 1.
//
// Paths are represented by binary words (bit 0 = increase l, bit 1 = increase k).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfinetti/exactq.hpp"

namespace qfin {

struct Vertex {
  std::size_t l = 0;  // number of 0-steps
  std::size_t k = 0;  // number of 1-steps

  std::size_t level() const { return l + k; }
  std::string str() const;  // "(l,k)"
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A finite 0/1 sequence; equivalently a directed path in the graph.
class BinaryWord {
 public:
  BinaryWord() = default;
  explicit BinaryWord(std::vector<std::uint8_t> bits);
  /// Parses a string over {0,1}; throws InvalidArgument otherwise.
  static BinaryWord parse(std::string_view text);
  static BinaryWord repeat(std::uint8_t bit, std::size_t n);
  /// Bit i of the word is bit (n-1-i) of `code`, so codes order words lexicographically.
  static BinaryWord from_index(std::uint64_t code, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::size_t ones() const;
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  void push_back(std::uint8_t bit);
  BinaryWord appended(std::uint8_t bit) const;
  BinaryWord prefix(std::size_t n) const;
  std::uint64_t index() const;

  /// Vertex reached from `start` by following the word.
  Vertex endpoint(Vertex start = {}) const;
  /// #{i < j : w_i = 0, w_j = 1}.
  std::size_t inversions() const;

  std::string str() const;
  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  friend auto operator<=>(const BinaryWord&, const BinaryWord&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Exponent e such that the path weight is q^e.
long path_weight_exponent(const BinaryWord& word, bool dual = false, Vertex start = {});

/// Product of edge weights along `word` started at `start`.
Rational path_weight(const BinaryWord& word, const QParam& q, bool dual = false, Vertex start = {});

/// Closed form q^{(kappa-k)(n-k)} [nu-n, kappa-k]_q for the total weight of all
/// paths from `from` to `to`. Throws Unreachable when no path exists.
Rational segment_weight_sum(const Vertex& from, const Vertex& to, const QParam& q);

/// Same quantity by enumerating every lattice path. Throws TooLarge when the
/// level difference exceeds the enumeration guard (22 steps, see enumeration_limit).
Rational brute_force_weight_sum(const Vertex& from, const Vertex& to, const QParam& q,
                                bool dual = false);

/// Reduction of q > 1 to 1/q < 1: swaps 0 and 1 and inverts q. Throws NotSuperUnit if q <= 1.
std::pair<BinaryWord, QParam> flip_reduction(const BinaryWord& word, const QParam& q);

/// The involution itself, valid for any q (used to undo a reduction).
BinaryWord flip_bits(const BinaryWord& word);

}  // namespace qfin
