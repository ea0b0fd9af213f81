// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qfinetti/boundary.hpp"
#include "qfinetti/galois.hpp"
#include "qfinetti/laws.hpp"
#include "qfinetti/pascal_graph.hpp"
#include "qfinetti/processes.hpp"

using namespace qfin;

namespace {

QParam Q(long p, long q) { return QParam(Rational(p, q)); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

std::vector<VArray> criterion_arrays(std::size_t depth) {
  std::vector<VArray> out;
  const QParam half = Q(1, 2);
  for (std::size_t kappa = 0; kappa <= 6; ++kappa) out.push_back(extreme_array(BoundaryPoint::at(kappa), half, depth));
  out.push_back(extreme_array(BoundaryPoint::zero(), half, depth));
  out.push_back(mixture_array(BoundaryMeasure(half, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}, Rational(0)), depth));
  for (const Rational theta : {Rational(1, 2), Rational(1), Rational(3)}) out.push_back(theta_array({theta, half}, depth));
  for (long a = 1; a <= 3; ++a) {
    for (long b = 1; b <= 3; ++b) out.push_back(polya_array({Rational(a), Rational(b), half}, depth));
  }
  return out;
}

Outcome segment_sums() {
  Outcome o;
  for (const QParam& q : {Q(1, 2), Q(1, 3), Q(3, 4)}) {
    for (std::size_t level = 0; level <= 10; ++level) {
      for (std::size_t k = 0; k <= level; ++k) {
        const Vertex from{level - k, k};
        for (std::size_t dl = 0; dl <= 10; ++dl) {
          for (std::size_t dk = 0; dl + dk <= 10; ++dk) {
            const Vertex to{from.l + dl, from.k + dk};
            if (segment_weight_sum(from, to, q) != brute_force_weight_sum(from, to, q)) {
              o.fail("mismatch " + from.str() + " -> " + to.str() + " at q=" + q.value().str());
            }
          }
        }
      }
    }
  }
  return o;
}

Outcome recursion_and_levels() {
  Outcome o;
  for (const VArray& a : criterion_arrays(20)) {
    const RecursionCheck r = check_recursion(a);
    if (!r.ok) o.fail("recursion: " + r.reason);
    const TildeArray t = tilde_of_v(a);
    if (!check_levels(t).ok) o.fail("level check");
    for (std::size_t n = 0; n <= 20; ++n) {
      Rational sum(0);
      for (const auto& x : t.level(n)) sum += x;
      if (sum != Rational(1)) o.fail("level " + std::to_string(n) + " sums to " + sum.str());
    }
  }
  return o;
}

Outcome recovery() {
  Outcome o;
  const QParam half = Q(1, 2);
  const VArray mix =
      mixture_array(BoundaryMeasure(half, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}, Rational(0)), 40);
  const BoundaryMeasure mu = recover_measure(mix, 40, kDefaultRecoveryAtoms);
  for (std::size_t kappa : {0, 1}) {
    if ((mu.mass(kappa) - Rational(1, 2)).abs() > pow2(-30)) o.fail("mixture mass at " + std::to_string(kappa));
  }
  const BoundaryMeasure e = recover_measure(extreme_array(BoundaryPoint::at(2), half, 40), 40, kDefaultRecoveryAtoms);
  if (e.mass(2) < Rational(1) - pow2(-25)) o.fail("extreme mass " + e.mass(2).str());
  return o;
}

void compare_tree(const ProcessSpec& spec, std::size_t n, Outcome& o, const std::string& label) {
  const auto law = oracle::tree_law(spec, n);
  const VArray a = process_array(spec, n);
  for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
    const BinaryWord w = BinaryWord::from_index(i, n);
    const auto it = law.find(w);
    const Rational tree = it == law.end() ? Rational(0) : it->second;
    if (tree != word_probability(a, w)) o.fail(label + " word " + w.str());
  }
}

Outcome decision_trees() {
  Outcome o;
  const std::size_t n = 6;
  for (const QParam& q : {Q(1, 2), Q(1, 3)}) {
    std::vector<BoundaryPoint> points{BoundaryPoint::zero()};
    for (std::size_t kappa = 0; kappa <= 7; ++kappa) points.push_back(BoundaryPoint::at(kappa));
    for (const auto& p : points) {
      const ExtremeParams fwd{p, q, ExtremeMode::Forward};
      const ExtremeParams tseq{p, q, ExtremeMode::TSequence};
      compare_tree(fwd, n, o, "extreme " + p.str());
      compare_tree(tseq, n, o, "extreme tsequence " + p.str());
      if (oracle::tree_law(fwd, n) != oracle::tree_law(tseq, n)) o.fail("mode mismatch at " + p.str());
    }
  }
  for (const QParam& q : {Q(1, 2), Q(2, 1)}) {
    for (const Rational theta : {Rational(0), Rational(1, 2), Rational(1), Rational(3)}) {
      compare_tree(ThetaParams{theta, q}, n, o, "theta " + theta.str());
    }
    compare_tree(ThetaParams{Rational(0), q, true}, n, o, "theta inf");
    for (long a = 1; a <= 3; ++a) {
      for (long b = 1; b <= 3; ++b) compare_tree(PolyaParams{Rational(a), Rational(b), q}, n, o, "polya");
    }
  }
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const ProcessSpec spec = ExtremeParams{BoundaryPoint::at(2), Q(1, 2)};
  const auto exact = tilde_of_v(process_array(spec, 10)).level(10);
  const auto h = empirical_level_histogram(spec, 10, 100000, Seed{20240601}, 0);
  const double tv = tv_distance(h, exact);
  if (tv > 0.02) o.fail("tv " + std::to_string(tv));
  if (empirical_level_histogram(spec, 10, 100000, Seed{20240601}, 1).counts != h.counts) o.fail("not deterministic");
  o.detail = o.ok ? "tv " + std::to_string(tv) : o.detail;
  return o;
}

Outcome grassmannians() {
  Outcome o;
  const auto f2 = std::make_shared<const FieldSpec>(FieldSpec::make(2, 1));
  const auto f3 = std::make_shared<const FieldSpec>(FieldSpec::make(3, 1));
  if (enumerate_grassmannian(f2, 4, 2).size() != 35) o.fail("#G(4,2) over F2");
  if (enumerate_grassmannian(f3, 3, 1).size() != 13) o.fail("#G(3,1) over F3");
  for (const auto& f : {f2, f3}) {
    const std::uint64_t q = f->order();
    for (std::size_t n = 0; n <= 3; ++n) {
      std::set<Subspace> reached;
      std::uint64_t total = 0;
      for (std::size_t k = 0; k <= n; ++k) {
        for (const Subspace& x : enumerate_grassmannian(f, n, k)) {
          const auto ext = list_extensions(x);
          std::uint64_t expected = 1;
          for (std::size_t i = 0; i < x.codim(); ++i) expected *= q;
          if (ext.size() != expected + 1) o.fail("extension count");
          for (const Subspace& y : ext) {
            if (!(project_down(y) == x)) o.fail("extension does not project back");
            reached.insert(y);
          }
          total += ext.size();
        }
      }
      std::uint64_t all = 0;
      for (std::size_t k = 0; k <= n + 1; ++k) all += enumerate_grassmannian(f, n + 1, k).size();
      if (reached.size() != total || total != all) o.fail("extensions do not partition V_" + std::to_string(n + 1));
    }
  }
  return o;
}

Outcome growth() {
  Outcome o;
  const auto f2 = std::make_shared<const FieldSpec>(FieldSpec::make(2, 1));
  const auto law = oracle::growth_tree(BoundaryPoint::at(1), f2, 3);
  const VArray a = extreme_array(BoundaryPoint::at(1), Q(1, 2), 3);
  for (std::uint64_t i = 0; i < 8; ++i) {
    const BinaryWord w = BinaryWord::from_index(i, 3);
    const auto it = law.words.find(w);
    if ((it == law.words.end() ? Rational(0) : it->second) != word_probability(a, w)) o.fail("word " + w.str());
  }
  for (std::size_t kappa = 0; kappa <= 3; ++kappa) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto tree = oracle::growth_tree(BoundaryPoint::at(kappa), f2, n);
      std::map<std::size_t, Rational> by_dim;
      for (const auto& [x, p] : tree.endpoints) by_dim[x.dim()] += p;
      for (const auto& [x, p] : tree.endpoints) {
        const auto size = enumerate_grassmannian(f2, n, x.dim()).size();
        if (p != by_dim[x.dim()] / Rational(static_cast<long>(size))) o.fail("not uniform given dimension");
      }
    }
  }
  return o;
}

Outcome monotone_moments() {
  Outcome o;
  const std::size_t N = 20;
  const QParam half = Q(1, 2);
  for (const VArray& a : criterion_arrays(N)) {
    if (!is_q_completely_monotone(first_column(a), half).ok) o.fail("first column not q-monotone");
  }
  const std::vector<VArray> finite{
      extreme_array(BoundaryPoint::at(2), half, N),
      mixture_array(BoundaryMeasure(half, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}, Rational(0)), N)};
  for (const VArray& a : finite) {
    const MomentSequence u = first_column(a);
    for (std::size_t l = 1; l < N; ++l) {
      MomentSequence bad = u;
      bad.u[l] += Rational(1, 100);
      const MonotoneCheck c = is_q_completely_monotone(bad, half);
      if (c.ok || c.value >= Rational(0)) o.fail("perturbation at l=" + std::to_string(l) + " undetected");
    }
  }
  return o;
}

Outcome float_measures() {
  Outcome o;
  const QParam half = Q(1, 2);
  const ThetaParams theta{Rational(1), half};
  const PolyaParams polya{Rational(1), Rational(1), half};
  const FloatBoundaryMeasure mt = theta_boundary_measure(theta, 80);
  const FloatBoundaryMeasure mp = polya_boundary_measure(polya, 80);
  for (const auto* mu : {&mt, &mp}) {
    double sum = 0;
    for (const auto& [kappa, m] : mu->atoms) sum += m;
    if (sum < 1.0 - 1e-10 || sum > 1.0) o.fail("atom sum " + std::to_string(sum));
  }
  const auto check = [&](const FloatBoundaryMeasure& mu, const VArray& exact) {
    const FloatTriangle approx = mixture_array(mu, 8);
    for (std::size_t n = 0; n <= 8; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        if (std::abs(approx[n][k] - exact(n, k).to_double()) > 1e-9) o.fail("mixture differs from array");
      }
    }
  };
  check(mt, theta_array(theta, 8));
  check(mp, polya_array(polya, 8));
  return o;
}

Outcome near_one() {
  Outcome o;
  const double q = 0.999;
  const double p = 0.3;
  const auto kappa = static_cast<std::size_t>(std::lround(-std::log(1 - p) / 0.001));
  const std::size_t n = 200;
  const std::uint64_t trials = 10000;
  std::uint64_t ones = 0;
  for (std::uint64_t t = 0; t < trials; ++t) ones += sample_extreme_float(kappa, q, n, derive_seed(Seed{99}, t)).ones();
  const double mean = static_cast<double>(ones) / static_cast<double>(trials * n);
  if (std::abs(mean - p) > 0.05) o.fail("mean " + std::to_string(mean));
  if (o.ok) o.detail = "kappa " + std::to_string(kappa) + ", mean " + std::to_string(mean);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "segment weight sums match enumeration", 10, segment_sums},
      {2, "recursion and level sums at depth 20", 5, recursion_and_levels},
      {3, "boundary recovery", 1, recovery},
      {4, "sampler decision trees at n=6", 30, decision_trees},
      {5, "extreme sampler level histogram", 5, monte_carlo},
      {6, "Grassmannian and extension counts", 10, grassmannians},
      {7, "growth law and conditional uniformity", 30, growth},
      {8, "q-complete monotonicity of first columns", 1, monotone_moments},
      {9, "floating-point mixing measures", 2, float_measures},
      {10, "float sampler near q=1", 60, near_one},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("took " + std::to_string(secs) + " s");
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << secs << " s";
    if (!o.detail.empty()) line << "; " << o.detail;
    line << ")";
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
