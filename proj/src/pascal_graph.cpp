#include "qfinetti/pascal_graph.hpp"

#include <algorithm>

namespace qfin {

std::string Vertex::str() const { return "(" + std::to_string(l) + "," + std::to_string(k) + ")"; }

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw InvalidArgument("binary word entries must be 0 or 1");
  }
}

BinaryWord BinaryWord::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument("binary word must be a string over {0,1}: '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::repeat(std::uint8_t bit, std::size_t n) {
  return BinaryWord(std::vector<std::uint8_t>(n, bit));
}

BinaryWord BinaryWord::from_index(std::uint64_t code, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((code >> (n - 1 - i)) & 1U);
  return BinaryWord(std::move(bits));
}

std::size_t BinaryWord::ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void BinaryWord::push_back(std::uint8_t bit) {
  if (bit > 1) throw InvalidArgument("binary word entries must be 0 or 1");
  bits_.push_back(bit);
}

BinaryWord BinaryWord::appended(std::uint8_t bit) const {
  BinaryWord w = *this;
  w.push_back(bit);
  return w;
}

BinaryWord BinaryWord::prefix(std::size_t n) const {
  return BinaryWord(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, bits_.size()))));
}

std::uint64_t BinaryWord::index() const {
  std::uint64_t code = 0;
  for (auto b : bits_) code = (code << 1) | b;
  return code;
}

Vertex BinaryWord::endpoint(Vertex start) const {
  const std::size_t k = ones();
  return {start.l + size() - k, start.k + k};
}

std::size_t BinaryWord::inversions() const {
  std::size_t zeros = 0;
  std::size_t count = 0;
  for (auto b : bits_) {
    if (b == 0) ++zeros;
    else count += zeros;
  }
  return count;
}

std::string BinaryWord::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

long path_weight_exponent(const BinaryWord& word, bool dual, Vertex start) {
  long exponent = 0;
  Vertex v = start;
  for (auto b : word.bits()) {
    if (b == 1) {
      if (!dual) exponent += static_cast<long>(v.l);
      ++v.k;
    } else {
      if (dual) exponent += static_cast<long>(v.k);
      ++v.l;
    }
  }
  return exponent;
}

Rational path_weight(const BinaryWord& word, const QParam& q, bool dual, Vertex start) {
  return q.pow(path_weight_exponent(word, dual, start));
}

Rational segment_weight_sum(const Vertex& from, const Vertex& to, const QParam& q) {
  if (to.l < from.l || to.k < from.k) {
    throw Unreachable("no directed path from " + from.str() + " to " + to.str());
  }
  const long n = static_cast<long>(from.level());
  const long k = static_cast<long>(from.k);
  const long nu = static_cast<long>(to.level());
  const long kappa = static_cast<long>(to.k);
  return q.pow((kappa - k) * (n - k)) * q_binomial(nu - n, kappa - k, q);
}

namespace {

// Visits every word with the given numbers of zeros and ones and tallies the
// weight exponent of the corresponding path.
void enumerate_words(std::vector<std::uint8_t>& bits, std::size_t zeros_left, std::size_t ones_left,
                     const Vertex& from, bool dual, std::vector<std::uint64_t>& exponent_counts) {
  if (zeros_left == 0 && ones_left == 0) {
    const auto e = static_cast<std::size_t>(path_weight_exponent(BinaryWord(bits), dual, from));
    if (e >= exponent_counts.size()) exponent_counts.resize(e + 1, 0);
    ++exponent_counts[e];
    return;
  }
  if (zeros_left > 0) {
    bits.push_back(0);
    enumerate_words(bits, zeros_left - 1, ones_left, from, dual, exponent_counts);
    bits.pop_back();
  }
  if (ones_left > 0) {
    bits.push_back(1);
    enumerate_words(bits, zeros_left, ones_left - 1, from, dual, exponent_counts);
    bits.pop_back();
  }
}

}  // namespace

Rational brute_force_weight_sum(const Vertex& from, const Vertex& to, const QParam& q, bool dual) {
  if (to.l < from.l || to.k < from.k) {
    throw Unreachable("no directed path from " + from.str() + " to " + to.str());
  }
  const std::size_t steps = to.level() - from.level();
  const std::uint64_t limit = enumeration_limit(std::uint64_t{1} << 22);
  if (steps >= 64 || (std::uint64_t{1} << steps) > limit) {
    throw TooLarge("path enumeration over " + std::to_string(steps) + " steps exceeds the guard");
  }
  std::vector<std::uint64_t> counts;
  std::vector<std::uint8_t> bits;
  bits.reserve(steps);
  enumerate_words(bits, to.l - from.l, to.k - from.k, from, dual, counts);
  Rational sum(0);
  for (std::size_t e = 0; e < counts.size(); ++e) {
    if (counts[e] != 0) sum += Rational(mpz_class(static_cast<unsigned long>(counts[e]))) * q.pow(static_cast<long>(e));
  }
  return sum;
}

std::pair<BinaryWord, QParam> flip_reduction(const BinaryWord& word, const QParam& q) {
  if (q.regime() != Regime::SuperUnit) {
    throw NotSuperUnit("flip reduction requires q > 1, got q = " + q.value().str());
  }
  return {flip_bits(word), q.inverse()};
}

BinaryWord flip_bits(const BinaryWord& word) {
  std::vector<std::uint8_t> bits = word.bits();
  for (auto& b : bits) b ^= 1U;
  return BinaryWord(std::move(bits));
}

}  // namespace qfin
