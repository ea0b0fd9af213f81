#include "qfinetti/laws.hpp"

namespace qfin {

namespace {

constexpr std::size_t kFiniteLawBits = 20;

std::string cell_str(std::size_t n, std::size_t k) {
  return "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

}  // namespace

void require_triangular(const Triangle& rows) {
  if (rows.empty()) throw InvalidArgument("triangular array needs at least level 0");
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].size() != n + 1) {
      throw InvalidArgument("level " + std::to_string(n) + " must have " + std::to_string(n + 1) + " entries");
    }
  }
}

VArray::VArray(QParam q, Triangle v) : q_(std::move(q)), v_(std::move(v)) { require_triangular(v_); }

VArray VArray::with_entry(std::size_t n, std::size_t k, Rational value) const {
  Triangle rows = v_;
  rows.at(n).at(k) = std::move(value);
  return VArray(q_, std::move(rows));
}

VArray VArray::truncated(std::size_t depth) const {
  if (depth > this->depth()) throw InvalidArgument("cannot truncate to a larger depth");
  return VArray(q_, Triangle(v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(depth + 1)));
}

TildeArray::TildeArray(QParam q, Triangle tv) : q_(std::move(q)), tv_(std::move(tv)) { require_triangular(tv_); }

RecursionCheck check_recursion(const VArray& array) {
  RecursionCheck out;
  auto fail = [&out](std::size_t n, std::size_t k, std::string reason) {
    out.ok = false;
    out.cell = Cell{n, k};
    out.reason = std::move(reason);
    return out;
  };
  if (array(0, 0) != Rational(1)) return fail(0, 0, "v(0,0) must equal 1");

  const QParam& q = array.q();
  for (std::size_t n = 0; n <= array.depth(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      if (array(n, k).sign() < 0) return fail(n, k, "negative entry at " + cell_str(n, k));
    }
    if (n == array.depth()) break;
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational rhs = array(n + 1, k) + q.pow(static_cast<long>(n - k)) * array(n + 1, k + 1);
      if (array(n, k) != rhs) {
        return fail(n, k, "recursion fails at " + cell_str(n, k) + ": v = " + array(n, k).str() +
                              " but v(n+1,k) + q^(n-k) v(n+1,k+1) = " + rhs.str());
      }
    }
  }
  return out;
}

RecursionCheck check_levels(const TildeArray& tilde) {
  RecursionCheck out;
  for (std::size_t n = 0; n <= tilde.depth(); ++n) {
    Rational sum(0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (tilde(n, k).sign() < 0) {
        out.ok = false;
        out.cell = Cell{n, k};
        out.reason = "negative entry at " + cell_str(n, k);
        return out;
      }
      sum += tilde(n, k);
    }
    if (sum != Rational(1)) {
      out.ok = false;
      out.cell = Cell{n, 0};
      out.reason = "level " + std::to_string(n) + " sums to " + sum.str();
      return out;
    }
  }
  return out;
}

TildeArray tilde_of_v(const VArray& array) {
  const QBinomialTable d(array.q(), array.depth());
  Triangle tv = array.rows();
  for (std::size_t n = 0; n < tv.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) tv[n][k] *= d(n, k);
  }
  return TildeArray(array.q(), std::move(tv));
}

VArray v_of_tilde(const TildeArray& tilde) {
  const QBinomialTable d(tilde.q(), tilde.depth());
  Triangle v = tilde.rows();
  for (std::size_t n = 0; n < v.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) v[n][k] /= d(n, k);
  }
  return VArray(tilde.q(), std::move(v));
}

BackwardStep backward_kernel(std::size_t n, std::size_t k, const QParam& q, bool dual) {
  if (n == 0 || k > n) throw InvalidArgument("backward kernel needs 1 <= n and k <= n");
  const Rational total = q_integer(n, q);
  const Rational zeros = q_integer(n - k, q) / total;  // [n-k]/[n]
  const Rational ones = q_integer(k, q) / total;       // [k]/[n]
  if (dual) {
    return {q.pow(static_cast<long>(k)) * zeros, ones};
  }
  return {zeros, q.pow(static_cast<long>(n - k)) * ones};
}

Rational multistep_backward(std::size_t n, std::size_t k, std::size_t nu, std::size_t kappa, const QParam& q) {
  if (n > nu) throw InvalidArgument("multistep kernel needs n <= nu");
  if (k > n || kappa > nu || k > kappa) return Rational(0);
  const long ln = static_cast<long>(n);
  const long lk = static_cast<long>(k);
  const long lnu = static_cast<long>(nu);
  const long lkappa = static_cast<long>(kappa);
  const Rational top = q_binomial(lnu - ln, lkappa - lk, q);
  if (top.is_zero()) return Rational(0);
  return q.pow((lkappa - lk) * (ln - lk)) * top * q_binomial(ln, lk, q) / q_binomial(lnu, lkappa, q);
}

Rational word_probability(const VArray& array, const BinaryWord& word) {
  if (word.size() > array.depth()) {
    throw InvalidArgument("word of length " + std::to_string(word.size()) + " exceeds array depth " +
                          std::to_string(array.depth()));
  }
  return array.q().pow(static_cast<long>(word.inversions())) * array(word.size(), word.ones());
}

FiniteLaw FiniteLaw::zeros(std::size_t n) {
  if (n >= 64 || (std::uint64_t{1} << n) > enumeration_limit(std::uint64_t{1} << kFiniteLawBits)) {
    throw TooLarge("finite law over " + std::to_string(n) + " bits exceeds the enumeration guard");
  }
  FiniteLaw law;
  law.n = n;
  law.probs.assign(std::size_t{1} << n, Rational(0));
  return law;
}

bool FiniteLaw::is_probability() const {
  Rational sum(0);
  for (const auto& p : probs) {
    if (p.sign() < 0) return false;
    sum += p;
  }
  return sum == Rational(1);
}

FiniteLaw finite_law(const VArray& array, std::size_t n) {
  FiniteLaw law = FiniteLaw::zeros(n);
  for (std::uint64_t code = 0; code < law.probs.size(); ++code) {
    law.probs[code] = word_probability(array, BinaryWord::from_index(code, n));
  }
  return law;
}

ExchangeabilityCheck check_q_exchangeable(const FiniteLaw& law, const QParam& q) {
  ExchangeabilityCheck out;
  if (law.probs.size() != (std::size_t{1} << law.n)) throw InvalidArgument("finite law has the wrong number of words");
  for (std::uint64_t code = 0; code < law.probs.size(); ++code) {
    for (std::size_t i = 0; i + 1 < law.n; ++i) {
      // Bit i of the word sits at bit position n-1-i of the code.
      const unsigned hi = static_cast<unsigned>(law.n - 1 - i);
      const unsigned a = (code >> hi) & 1U;
      const unsigned b = (code >> (hi - 1)) & 1U;
      if (a == b) continue;
      const std::uint64_t swapped = code ^ (std::uint64_t{3} << (hi - 1));
      const Rational factor = a > b ? q.value() : q.value().reciprocal();
      if (law.probs[swapped] != factor * law.probs[code]) {
        out.ok = false;
        out.word = BinaryWord::from_index(code, law.n);
        out.position = i;
        return out;
      }
    }
  }
  return out;
}

TSequence word_to_tsequence(const BinaryWord& word) {
  TSequence t;
  std::size_t zeros = 0;
  for (auto b : word.bits()) {
    if (b == 0) {
      ++zeros;
    } else {
      t.runs.push_back(zeros);
      zeros = 0;
    }
  }
  t.open_run = zeros;
  return t;
}

BinaryWord tsequence_to_word(const TSequence& t) {
  std::vector<std::uint8_t> bits;
  for (std::size_t run : t.runs) {
    bits.insert(bits.end(), run, 0);
    bits.push_back(1);
  }
  bits.insert(bits.end(), t.open_run, 0);
  return BinaryWord(std::move(bits));
}

VArray flip_array(const VArray& array) {
  const QParam& q = array.q();
  Triangle v(array.depth() + 1);
  for (std::size_t n = 0; n <= array.depth(); ++n) {
    v[n].resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[n][k] = q.pow(static_cast<long>(k * (n - k))) * array(n, n - k);
  }
  return VArray(q.inverse(), std::move(v));
}

VArray flip_reduction(const VArray& array) {
  if (array.q().regime() != Regime::SuperUnit) {
    throw NotSuperUnit("flip reduction requires q > 1, got q = " + array.q().value().str());
  }
  return flip_array(array);
}

}  // namespace qfin
