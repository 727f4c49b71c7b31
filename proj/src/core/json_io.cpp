#include "json_io.hpp"

namespace sparseapprox {

const Json& json_require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::parse_error, std::string("missing field '") + key + "'");
  return *it;
}

Int json_int(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return int_from_string(j.get<std::string>());
  fail(Errc::parse_error, "expected an integer or a decimal string");
}

Rat json_rat(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  fail(Errc::parse_error, "expected a rational string");
}

int json_small_int(const Json& j, const char* what) {
  Int v = json_int(j);
  if (!v.fits_sint_p()) fail(Errc::parse_error, std::string(what) + " out of range");
  return int(v.get_si());
}

namespace {

NormTag norm_from_string(const std::string& s) {
  if (s == "linf") return NormTag::linf;
  if (s == "pnorm") return NormTag::pnorm_b;
  fail(Errc::parse_error, "unknown norm tag '" + s + "'");
}

}  // namespace

Json matrix_to_json(const IntMat& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(to_string(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(rows)}};
}

IntMat matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "matrix must be an object");
  int rows = json_small_int(json_require(j, "rows"), "rows");
  int cols = json_small_int(json_require(j, "cols"), "cols");
  if (rows < 0 || cols < 0) fail(Errc::parse_error, "negative matrix dimension");
  const Json& entries = json_require(j, "entries");
  if (!entries.is_array() || int(entries.size()) != rows)
    fail(Errc::parse_error, "entries must hold one array per row");
  IntMat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || int(row.size()) != cols)
      fail(Errc::parse_error, "row length disagrees with cols");
    for (int c = 0; c < cols; ++c) a.at(i, c) = json_int(row[c]);
  }
  return a;
}

Json vec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(to_string(x));
  return out;
}

IntVec vec_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::parse_error, "expected an array of integers");
  IntVec v;
  v.reserve(j.size());
  for (const Json& x : j) v.push_back(json_int(x));
  return v;
}

Json solution_to_json(const SparseSolution& s) {
  Json out{{"x", vec_to_json(s.x)},
           {"support", s.support},
           {"error", to_string(s.error)},
           {"norm", norm_name(s.norm)}};
  if (s.certified_bound) out["bound"] = to_string(*s.certified_bound);
  return out;
}

Json oracle_report_to_json(const OracleReport& r) {
  return Json{{"value", to_string(r.value)},
              {"witness_b", vec_to_json(r.witness_b)},
              {"witness_support", r.witness_support},
              {"stats", Json{{"cosets", r.stats.cosets},
                             {"supports", r.stats.supports},
                             {"nodes", r.stats.nodes}}}};
}

Json instance_to_json(const InstanceSpec& spec) {
  Json params = Json::object();
  for (const auto& [key, value] : spec.params) params[key] = to_string(value);
  Json predicted = Json::array();
  for (const Prediction& p : spec.predicted)
    predicted.push_back(Json{{"quantity", p.quantity},
                             {"k", p.k},
                             {"dir", p.dir},
                             {"value", to_string(p.value)},
                             {"norm", norm_name(p.norm)}});
  Json out{{"family", spec.family},
           {"params", std::move(params)},
           {"matrix", matrix_to_json(spec.matrix)},
           {"basis", spec.basis},
           {"predicted", std::move(predicted)}};
  if (!spec.primes.empty()) out["primes"] = vec_to_json(spec.primes);
  if (spec.target) out["target"] = vec_to_json(*spec.target);
  if (spec.witness) out["witness"] = vec_to_json(*spec.witness);
  return out;
}

InstanceSpec instance_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "instance must be an object");
  InstanceSpec spec;
  const Json& family = json_require(j, "family");
  if (!family.is_string()) fail(Errc::parse_error, "family must be a string");
  spec.family = family.get<std::string>();
  spec.matrix = matrix_from_json(json_require(j, "matrix"));
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) fail(Errc::parse_error, "params must be an object");
    for (auto& [key, value] : it->items()) spec.params[key] = json_int(value);
  }
  if (auto it = j.find("basis"); it != j.end()) {
    if (!it->is_array()) fail(Errc::parse_error, "basis must be an array");
    for (const Json& x : *it) spec.basis.push_back(json_small_int(x, "basis index"));
  }
  if (auto it = j.find("primes"); it != j.end()) spec.primes = vec_from_json(*it);
  if (auto it = j.find("target"); it != j.end()) spec.target = vec_from_json(*it);
  if (auto it = j.find("witness"); it != j.end()) spec.witness = vec_from_json(*it);
  if (auto it = j.find("predicted"); it != j.end()) {
    if (!it->is_array()) fail(Errc::parse_error, "predicted must be an array");
    for (const Json& p : *it) {
      Prediction pred;
      pred.quantity = json_require(p, "quantity").get<std::string>();
      pred.k = json_small_int(json_require(p, "k"), "k");
      pred.dir = json_require(p, "dir").get<std::string>();
      if (pred.dir != "le" && pred.dir != "ge" && pred.dir != "eq")
        fail(Errc::parse_error, "dir must be le, ge or eq");
      pred.value = json_rat(json_require(p, "value"));
      pred.norm = norm_from_string(json_require(p, "norm").get<std::string>());
      spec.predicted.push_back(std::move(pred));
    }
  }
  return spec;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Errc::parse_error, e.what());
  }
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sparseapprox
