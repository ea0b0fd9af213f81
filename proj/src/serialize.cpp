#include "qfinetti/serialize.hpp"

namespace qfin {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

QParam q_from_json(const Json& j) { return QParam(rational_from_json(field(j, "q"))); }

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidArgument("rationals must be encoded as \"p/q\" strings");
}

Json triangle_json(const Triangle& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.str());
    out.push_back(std::move(r));
  }
  return out;
}

Triangle triangle_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("triangle must be an array of rows");
  Triangle rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InvalidArgument("triangle rows must be arrays");
    std::vector<Rational> row;
    for (const auto& x : r) row.push_back(rational_from_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const VArray& array) {
  Json j;
  j["q"] = array.q().value().str();
  j["depth"] = array.depth();
  j["v"] = triangle_json(array.rows());
  return j;
}

VArray varray_from_json(const Json& j) {
  VArray out(q_from_json(j), triangle_from_json(field(j, "v")));
  if (j.contains("depth") && j.at("depth").get<std::size_t>() != out.depth()) {
    throw InvalidArgument("\"depth\" does not match the number of rows");
  }
  return out;
}

Json to_json(const TildeArray& tilde) {
  Json j;
  j["q"] = tilde.q().value().str();
  j["depth"] = tilde.depth();
  j["tv"] = triangle_json(tilde.rows());
  return j;
}

TildeArray tilde_from_json(const Json& j) { return TildeArray(q_from_json(j), triangle_from_json(field(j, "tv"))); }

Json to_json(const FiniteLaw& law) {
  Json j;
  j["n"] = law.n;
  Json probs = Json::object();
  for (std::uint64_t i = 0; i < law.probs.size(); ++i) probs[BinaryWord::from_index(i, law.n).str()] = law.probs[i].str();
  j["probs"] = std::move(probs);
  return j;
}

Json to_json(const BoundaryMeasure& mu) {
  Json j;
  j["q"] = mu.q().value().str();
  Json atoms = Json::array();
  for (const auto& [kappa, mass] : mu.atoms()) atoms.push_back({{"kappa", kappa}, {"mass", mass.str()}});
  j["atoms"] = std::move(atoms);
  j["zero_mass"] = mu.zero_mass().str();
  return j;
}

BoundaryMeasure measure_from_json(const Json& j) {
  if (j.contains("float") && j.at("float").get<bool>()) {
    throw InvalidArgument("float-mode measures cannot be read as exact measures");
  }
  std::map<std::size_t, Rational> atoms;
  for (const auto& a : field(j, "atoms")) {
    const auto kappa = field(a, "kappa").get<std::size_t>();
    if (!atoms.emplace(kappa, rational_from_json(field(a, "mass"))).second) {
      throw InvalidArgument("duplicate atom at kappa = " + std::to_string(kappa));
    }
  }
  Rational zero = j.contains("zero_mass") ? rational_from_json(j.at("zero_mass")) : Rational(0);
  return BoundaryMeasure(q_from_json(j), std::move(atoms), std::move(zero));
}

Json to_json(const FloatBoundaryMeasure& mu) {
  Json j;
  j["float"] = true;
  j["q"] = mu.q.value().str();
  Json atoms = Json::array();
  for (const auto& [kappa, mass] : mu.atoms) atoms.push_back({{"kappa", kappa}, {"mass", mass}});
  j["atoms"] = std::move(atoms);
  j["zero_mass"] = mu.zero_mass;
  j["error_bound"] = mu.error_bound;
  return j;
}

Json to_json(const Subspace& x) {
  const FieldSpec& f = x.field();
  Json j;
  j["p"] = f.characteristic();
  j["m"] = f.degree();
  j["n"] = x.ambient_dim();
  Json basis = Json::array();
  for (const auto& row : x.basis()) {
    Json r = Json::array();
    for (auto e : row) {
      if (f.degree() == 1) r.push_back(e);
      else r.push_back(f.coefficients(e));
    }
    basis.push_back(std::move(r));
  }
  j["basis"] = std::move(basis);
  return j;
}

}  // namespace qfin
