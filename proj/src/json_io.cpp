#include "lolab/json_io.hpp"

#include <fstream>

#include "lolab/errors.hpp"

namespace lolab::json_io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t count(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(std::string("field \"") + name + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<std::size_t> indices(const json& j) {
  if (!j.is_array()) throw ParseError("index list must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw ParseError("indices must be nonnegative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

}  // namespace

GaussianRational scalar(const json& j) {
  if (j.is_number_integer()) return GaussianRational(j.get<long>());
  if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
  throw ParseError("scalar must be a string or an integer");
}

mpq_class rational(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("rational must be a string or an integer");
}

ExactVector vector(const json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  ExactVector v;
  for (const auto& x : j) v.push_back(scalar(x));
  return v;
}

std::vector<ExactVector> vectors(const json& j) {
  if (!j.is_array()) throw ParseError("vector list must be an array");
  std::vector<ExactVector> out;
  for (const auto& x : j) out.push_back(vector(x));
  return out;
}

VectorSequence sequence(const json& j) {
  try {
    return VectorSequence(count(j, "k"), vectors(field(j, "vectors")));
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError(e.what());
  }
}

SparsePoly polynomial(const json& j) {
  const std::size_t nvars = count(j, "nvars");
  SparsePoly f(nvars);
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
  for (const auto& t : terms) {
    Exponents e;
    for (const auto& x : field(t, "exps")) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw ParseError("exponents must be nonnegative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    if (e.size() != nvars) throw ParseError("exponent vector length must equal nvars");
    f.add_term(e, scalar(field(t, "coef")));
  }
  return f;
}

Variety variety(const json& j) {
  Variety v;
  v.k = count(j, "k");
  for (const auto& p : field(j, "polys")) {
    v.polys.push_back(polynomial(p));
    if (v.polys.back().nvars() != v.k) throw ParseError("variety polynomial must have k variables");
  }
  if (j.contains("dim") && !j.at("dim").is_null()) v.declared_dim = j.at("dim").get<int>();
  if (j.contains("deg") && !j.at("deg").is_null()) v.declared_deg = j.at("deg").get<int>();
  return v;
}

ChowRepresentation chow(const json& j) {
  ChowRepresentation r{count(j, "n"), count(j, "k"), vectors(field(j, "forms")), polynomial(field(j, "outer"))};
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return r;
}

SymmetricGAP gap(const json& j) {
  auto gens = vectors(field(j, "generators"));
  std::vector<std::int64_t> radii;
  for (const auto& r : field(j, "radii")) radii.push_back(r.get<std::int64_t>());
  std::size_t k = j.contains("k") ? count(j, "k") : (gens.empty() ? 0 : gens[0].size());
  try {
    return SymmetricGAP(k, std::move(gens), std::move(radii));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

MembershipSet membership(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "points") return FinitePointSet{count(j, "k"), vectors(field(j, "points"))};
  if (type == "variety") return variety(j);
  if (type == "subspace") return SubspaceSet(count(j, "k"), vectors(field(j, "basis")));
  if (type == "translate")
    return TranslatedSet{std::make_shared<const MembershipSet>(membership(field(j, "base"))), vector(field(j, "shift"))};
  throw ParseError("unknown set type \"" + type + "\"");
}

Partition partition(const json& j) {
  if (!j.is_array()) throw ParseError("partition must be an array of index arrays");
  Partition p;
  for (const auto& b : j) p.blocks.push_back(indices(b));
  return p;
}

StructureCertificate certificate(const json& j) {
  StructureCertificate c;
  c.u_basis = vectors(field(j, "u"));
  c.w_basis = vectors(field(j, "w"));
  c.s_prime = variety(field(j, "s_prime"));
  c.surviving = indices(field(j, "surviving"));
  c.delta = rational(field(j, "delta"));
  c.c = rational(field(j, "c"));
  c.c1 = rational(field(j, "c1"));
  if (j.contains("witness")) c.witness = vectors(j.at("witness"));
  if (j.contains("translates")) c.translates = vectors(j.at("translates"));
  return c;
}

AffineMap affine_map(const json& j) {
  auto rows = vectors(field(j, "matrix"));
  auto shift = vector(field(j, "shift"));
  AffineMap m{ExactMatrix::from_rows(rows, shift.size()), shift, j.value("label", std::string("map"))};
  return m;
}

json to_json(const GaussianRational& x) { return x.str(); }
json to_json(const mpq_class& q) { return rational_str(q); }

json to_json(const ExactVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json to_json(const std::vector<ExactVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const VectorSequence& a) { return {{"k", a.k()}, {"vectors", to_json(a.vectors())}}; }

json to_json(const SparsePoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exps", e}, {"coef", c.str()}});
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

json to_json(const Variety& v) {
  json polys = json::array();
  for (const auto& p : v.polys) polys.push_back(to_json(p));
  json j = {{"k", v.k}, {"polys", polys}};
  if (v.declared_dim) j["dim"] = *v.declared_dim;
  if (v.declared_deg) j["deg"] = *v.declared_deg;
  return j;
}

json to_json(const BasisPacking& p) { return {{"b", p.b}, {"index_sets", p.index_sets}}; }

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace lolab::json_io
