#include "qfinetti/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qfinetti/boundary.hpp"
#include "qfinetti/galois.hpp"
#include "qfinetti/laws.hpp"
#include "qfinetti/processes.hpp"
#include "qfinetti/serialize.hpp"

namespace qfin {

namespace {

class InvalidArray : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string q;
  std::size_t depth = 5;
  std::size_t n = 10;
  std::string kind = "v";
  std::string law;
  std::string process;
  std::string kappa;
  std::string theta;
  std::string a;
  std::string b;
  std::string mode = "forward";
  std::string measure;
  std::string input;
  std::string output;
  std::string format;  // empty: the subcommand's default
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  bool histogram = false;
  bool float_mode = false;
  unsigned threads = 0;
  std::optional<std::size_t> nu;
  std::optional<std::size_t> K;
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus;
  std::vector<std::size_t> enumerate;
  bool list = false;
  std::string grow;
  std::size_t nmax = 5;
  std::string word;
};

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw InvalidArgument(std::string(flag) + " is required");
  return value;
}

std::string format_or(const Config& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "csv" && f != "text") throw InvalidArgument("--format must be json, csv or text");
  return f;
}

// q defaults to 1/2 when --q is omitted.
QParam parse_q(const Config& c) { return QParam::parse(c.q.empty() ? std::string("1/2") : c.q); }

Rational parse_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(required(text, flag));
  } catch (const std::invalid_argument&) {
    throw InvalidArgument(std::string("cannot parse ") + flag + " value '" + text + "'");
  }
}

std::size_t parse_count(const std::string& text, const char* flag) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument(std::string(flag) + " must be a nonnegative integer or 'inf'");
  }
  return value;
}

BoundaryPoint parse_point(const std::string& text, const char* flag) {
  if (required(text, flag) == "inf") return BoundaryPoint::zero();
  return BoundaryPoint::at(parse_count(text, flag));
}

std::string decimal(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

VArray read_array_file(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    if (j.contains("tv")) return v_of_tilde(tilde_from_json(j));
    return varray_from_json(j);
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed array in '" + path + "': " + e.what());
  }
}

ProcessSpec process_spec(const Config& c, const std::string& family) {
  if (family == "extreme") {
    ExtremeMode mode;
    if (c.mode == "forward") mode = ExtremeMode::Forward;
    else if (c.mode == "tsequence") mode = ExtremeMode::TSequence;
    else throw InvalidArgument("--mode must be forward or tsequence");
    return ExtremeParams{parse_point(c.kappa, "--kappa"), parse_q(c), mode};
  }
  if (family == "theta") {
    if (c.theta == "inf") return ThetaParams{Rational(0), parse_q(c), true};
    return ThetaParams{parse_rational(c.theta, "--theta"), parse_q(c), false};
  }
  if (family == "polya") return PolyaParams{parse_rational(c.a, "--a"), parse_rational(c.b, "--b"), parse_q(c)};
  throw InvalidArgument("unknown process '" + family + "' (extreme, theta, polya)");
}

/// The exact array selected by --input, or by --law and its parameters.
VArray build_array(const Config& c) {
  if (!c.input.empty()) return read_array_file(c.input);
  const std::string& law = required(c.law, "--law or --input");
  if (law == "mixture") {
    const BoundaryMeasure mu = measure_from_json(read_json_file(required(c.measure, "--measure")));
    if (!c.q.empty() && !(parse_q(c) == mu.q())) throw InvalidArgument("--q differs from the measure file");
    return mixture_array(mu, c.depth);
  }
  const ProcessSpec spec = process_spec(c, law);
  validate(spec);
  return process_array(spec, c.depth);
}

void render_triangle(std::ostream& os, const Triangle& rows, const std::string& format) {
  if (format == "csv") {
    os << "n,k,value\n";
    for (std::size_t n = 0; n < rows.size(); ++n) {
      for (std::size_t k = 0; k < rows[n].size(); ++k) os << n << ',' << k << ',' << rows[n][k] << '\n';
    }
    return;
  }
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k];
    os << '\n';
  }
}

void cmd_table(const Config& c, std::ostream& os) {
  const std::string format = format_or(c, "json");
  if (c.kind == "d") {
    const QParam q = parse_q(c);
    const QBinomialTable table(q, c.depth);
    Triangle rows(c.depth + 1);
    for (std::size_t n = 0; n <= c.depth; ++n) {
      for (std::size_t k = 0; k <= n; ++k) rows[n].push_back(table(n, k));
    }
    if (format == "json") {
      Json j;
      j["q"] = q.value().str();
      j["depth"] = c.depth;
      j["d"] = triangle_json(rows);
      os << j.dump() << '\n';
    } else {
      render_triangle(os, rows, format);
    }
    return;
  }
  if (c.kind != "v" && c.kind != "tilde") throw InvalidArgument("--kind must be v, tilde or d");
  const VArray array = build_array(c);
  if (c.kind == "v") {
    if (format == "json") os << to_json(array).dump() << '\n';
    else render_triangle(os, array.rows(), format);
  } else {
    const TildeArray tilde = tilde_of_v(array);
    if (format == "json") os << to_json(tilde).dump() << '\n';
    else render_triangle(os, tilde.rows(), format);
  }
}

unsigned thread_count(const Config& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1U, std::thread::hardware_concurrency());
}

void cmd_sample(const Config& c, std::ostream& os) {
  const std::string& family = required(c.process, "--process");
  const Seed seed{c.seed};

  if (c.float_mode) {
    if (c.histogram) throw InvalidArgument("--histogram needs exact mode");
    if (family != "extreme" && family != "polya") throw InvalidArgument("--float supports extreme and polya");
    const double q = parse_q(c).value().to_double();
    std::function<BinaryWord(Seed)> draw;
    if (family == "extreme") {
      const std::size_t kappa = parse_count(required(c.kappa, "--kappa"), "--kappa");
      const ExtremeMode mode = c.mode == "tsequence" ? ExtremeMode::TSequence : ExtremeMode::Forward;
      draw = [=, n = c.n](Seed s) { return sample_extreme_float(kappa, q, n, s, mode); };
    } else {
      const PolyaFloatParams params{parse_rational(c.a, "--a").to_double(), parse_rational(c.b, "--b").to_double(), q};
      draw = [=, n = c.n](Seed s) { return sample_polya(params, n, s); };
    }
    for (std::uint64_t t = 0; t < c.trials; ++t) os << draw(derive_seed(seed, t)).str() << '\n';
    return;
  }

  const ProcessSpec spec = process_spec(c, family);
  validate(spec);
  if (!c.histogram) {
    format_or(c, "text");
    Sampler sampler(spec, c.n);
    for (std::uint64_t t = 0; t < c.trials; ++t) os << sampler.sample(derive_seed(seed, t)).str() << '\n';
    return;
  }

  const std::string format = format_or(c, "csv");
  const LevelHistogram hist = empirical_level_histogram(spec, c.n, c.trials, seed, thread_count(c));
  const std::vector<Rational> exact = tilde_of_v(process_array(spec, c.n)).level(c.n);
  if (format == "json") {
    Json j;
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["counts"] = hist.counts;
    Json e = Json::array();
    for (const auto& x : exact) e.push_back(x.str());
    j["exact_expected"] = std::move(e);
    os << j.dump() << '\n';
    return;
  }
  const char sep = format == "csv" ? ',' : ' ';
  if (format == "csv") os << "k,count,frequency,exact_expected\n";
  for (std::size_t k = 0; k <= c.n; ++k) {
    os << k << sep << hist.counts[k] << sep << decimal(hist.frequency(k)) << sep << exact[k] << '\n';
  }
}

void require_valid(const VArray& array) {
  const RecursionCheck check = check_recursion(array);
  if (!check.ok) {
    std::string where = check.cell ? " at n=" + std::to_string(check.cell->n) + ", k=" + std::to_string(check.cell->k)
                                   : std::string();
    throw InvalidArray("array fails the recursion" + where + ": " + check.reason);
  }
}

void cmd_recover(const Config& c, std::ostream& os) {
  format_or(c, "json");
  const VArray array = read_array_file(required(c.input, "--input"));
  array.q().require_sub_unit("recover");
  require_valid(array);
  const std::size_t nu = c.nu.value_or(std::min<std::size_t>(kDefaultRecoveryLevel, array.depth()));
  const std::size_t K = c.K.value_or(std::min<std::size_t>(kDefaultRecoveryAtoms, nu));
  const BoundaryMeasure mu = recover_measure(array, nu, K);
  Json j;
  j["nu"] = nu;
  j["K"] = K;
  const Json measure = to_json(mu);
  for (const auto& [key, value] : measure.items()) j[key] = value;
  os << j.dump() << '\n';
}

void cmd_check(const Config& c, std::ostream& os, bool& failed) {
  format_or(c, "json");
  const VArray array = build_array(c);
  Json j;

  const RecursionCheck rec = check_recursion(array);
  Json r{{"ok", rec.ok}};
  if (!rec.ok) {
    if (rec.cell) r["cell"] = {{"n", rec.cell->n}, {"k", rec.cell->k}};
    r["reason"] = rec.reason;
  }
  j["recursion"] = std::move(r);

  const std::size_t n = std::min<std::size_t>(array.depth(), 10);
  const ExchangeabilityCheck ex = check_q_exchangeable(finite_law(array, n), array.q());
  Json e{{"ok", ex.ok}, {"n", n}};
  if (!ex.ok) {
    e["word"] = ex.word->str();
    e["position"] = ex.position;
  }
  j["q_exchangeable"] = std::move(e);

  bool monotone_ok = true;
  if (array.q().sub_unit()) {
    const MonotoneCheck mono = is_q_completely_monotone(first_column(array), array.q());
    monotone_ok = mono.ok;
    Json m{{"ok", mono.ok}};
    if (!mono.ok) {
      m["iterate"] = mono.iterate;
      m["index"] = mono.index;
      m["value"] = mono.value.str();
    }
    j["q_monotone"] = std::move(m);
  } else {
    j["q_monotone"] = {{"ok", nullptr}, {"reason", "requires 0 < q < 1"}};
  }
  failed = !rec.ok || !ex.ok || !monotone_ok;
  os << j.dump() << '\n';
}

void cmd_grassmann(const Config& c, std::ostream& os) {
  const std::string format = format_or(c, "json");
  if (c.p == 0) throw InvalidArgument("--p is required");
  std::optional<std::vector<std::uint32_t>> modulus;
  if (!c.modulus.empty()) modulus = c.modulus;
  const auto field = std::make_shared<const FieldSpec>(FieldSpec::make(c.p, c.m, modulus));

  if (!c.enumerate.empty() == !c.grow.empty()) throw InvalidArgument("give exactly one of --enumerate and --grow");
  if (!c.enumerate.empty()) {
    const std::size_t n = c.enumerate[0];
    const std::size_t k = c.enumerate[1];
    const auto all = enumerate_grassmannian(field, n, k);
    if (format == "json") {
      Json j{{"p", c.p}, {"m", c.m}, {"n", n}, {"k", k}, {"count", all.size()}};
      if (c.list) {
        Json items = Json::array();
        for (const auto& x : all) items.push_back(to_json(x)["basis"]);
        j["subspaces"] = std::move(items);
      }
      os << j.dump() << '\n';
    } else {
      os << all.size() << '\n';
      if (c.list) {
        for (const auto& x : all) os << to_json(x).dump() << '\n';
      }
    }
    return;
  }

  const auto trajectory = sample_growth(parse_point(c.grow, "--grow"), field, c.nmax, Seed{c.seed});
  if (format == "text") {
    os << codim_word(trajectory).str() << '\n';
    return;
  }
  for (const auto& x : trajectory) os << to_json(x).dump() << '\n';
}

void cmd_flip(const Config& c, std::ostream& os) {
  const std::string format = format_or(c, "json");
  if (!c.word.empty()) {
    const auto [word, q] = flip_reduction(BinaryWord::parse(c.word), parse_q(c));
    if (format == "json") os << Json{{"word", word.str()}, {"q", q.value().str()}}.dump() << '\n';
    else os << word.str() << ' ' << q.value() << '\n';
    return;
  }
  const VArray flipped = flip_reduction(build_array(c));
  if (format == "json") os << to_json(flipped).dump() << '\n';
  else render_triangle(os, flipped.rows(), format);
}

void add_output_options(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "json, csv or text");
  sub->add_option("--output,-o", c.output, "write to a file instead of standard output");
}

void add_law_options(CLI::App* sub, Config& c) {
  sub->add_option("--q", c.q, "q as p/q or a decimal");
  sub->add_option("--depth", c.depth, "deepest level");
  sub->add_option("--law", c.law, "extreme, mixture, theta or polya");
  sub->add_option("--kappa", c.kappa, "boundary point (integer or inf)");
  sub->add_option("--theta", c.theta, "theta (rational or inf)");
  sub->add_option("--a", c.a, "urn parameter a");
  sub->add_option("--b", c.b, "urn parameter b");
  sub->add_option("--measure", c.measure, "boundary measure JSON file");
  sub->add_option("--input", c.input, "array JSON file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact tables, samplers and checks for q-exchangeable binary sequences", "qfin"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand("table", "print v, tilde-v or q-binomial tables");
  add_law_options(table, c);
  table->add_option("--kind", c.kind, "v, tilde or d");
  add_output_options(table, c);

  auto* sample = app.add_subcommand("sample", "sample words or a level histogram");
  sample->add_option("--process", c.process, "extreme, theta or polya");
  sample->add_option("--q", c.q);
  sample->add_option("--kappa", c.kappa);
  sample->add_option("--mode", c.mode, "extreme sampler: forward or tsequence");
  sample->add_option("--theta", c.theta);
  sample->add_option("--a", c.a);
  sample->add_option("--b", c.b);
  sample->add_option("--n", c.n, "word length");
  sample->add_option("--seed", c.seed);
  sample->add_option("--trials", c.trials);
  sample->add_flag("--histogram", c.histogram, "aggregate level-n counts");
  sample->add_flag("--float", c.float_mode, "floating-point sampler");
  sample->add_option("--threads", c.threads, "worker threads (0: all cores)");
  add_output_options(sample, c);

  auto* recover = app.add_subcommand("recover", "recover the boundary measure of an array");
  recover->add_option("--input", c.input, "array JSON file")->required();
  recover->add_option("--nu", c.nu, "recovery level");
  recover->add_option("--K", c.K, "largest kappa reported");
  add_output_options(recover, c);

  auto* check = app.add_subcommand("check", "recursion, q-exchangeability and q-monotonicity checks");
  add_law_options(check, c);
  add_output_options(check, c);

  auto* grassmann = app.add_subcommand("grassmann", "subspaces of GF(p^m)^n");
  grassmann->add_option("--p", c.p, "characteristic");
  grassmann->add_option("--m", c.m, "extension degree");
  grassmann->add_option("--modulus", c.modulus, "monic modulus, constant term first")->delimiter(',');
  grassmann->add_option("--enumerate", c.enumerate, "n k")->expected(2);
  grassmann->add_flag("--list", c.list, "print every subspace");
  grassmann->add_option("--grow", c.grow, "kappa (integer or inf)");
  grassmann->add_option("--nmax", c.nmax);
  grassmann->add_option("--seed", c.seed);
  add_output_options(grassmann, c);

  auto* flip = app.add_subcommand("flip", "reduce a q > 1 word or array to parameter 1/q");
  add_law_options(flip, c);
  flip->add_option("--word", c.word);
  add_output_options(flip, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (*table) cmd_table(c, buffer);
    else if (*sample) cmd_sample(c, buffer);
    else if (*recover) cmd_recover(c, buffer);
    else if (*grassmann) cmd_grassmann(c, buffer);
    else if (*flip) cmd_flip(c, buffer);
    else if (*check) {
      bool failed = false;
      cmd_check(c, buffer, failed);
      if (failed) status = kExitInvalidArray;
    }
  } catch (const InvalidArray& e) {
    err << "qfin: " << e.what() << '\n';
    return kExitInvalidArray;
  } catch (const RegimeError& e) {
    err << "qfin: " << e.what() << '\n';
    return kExitRegime;
  } catch (const FieldError& e) {
    err << "qfin: " << e.what() << '\n';
    return kExitField;
  } catch (const std::exception& e) {
    err << "qfin: " << e.what() << '\n';
    return kExitConfig;
  }

  if (c.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.output, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << "qfin: cannot write '" << c.output << "'\n";
      return kExitConfig;
    }
  }
  return status;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qfin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qfin
