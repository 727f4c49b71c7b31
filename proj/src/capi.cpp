#include "sparseapprox.h"

#include <cstdlib>
#include <cstring>
#include <memory>

#include "core/report.hpp"

using namespace sparseapprox;

struct sxa_instance {
  InstanceSpec spec;
};

namespace {

thread_local std::string g_last_error;

sxa_status map_code(Errc c) {
  switch (c) {
    case Errc::budget_exceeded:
      return SXA_ERR_BUDGET;
    case Errc::not_in_lattice:
    case Errc::no_witness:
      return SXA_ERR_INFEASIBLE;
    case Errc::pigeonhole_violation:
    case Errc::tau_search_failed:
    case Errc::rank_retry_exhausted:
      return SXA_ERR_INTERNAL;
    default:
      return SXA_ERR_VALIDATION;
  }
}

template <class Fn>
sxa_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SXA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SXA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SXA_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json parse_or_empty(const char* text) {
  if (!text || !*text) return Json::object();
  return parse_json(text);
}

Int opt_int(const Json& j, const char* key, const Int& fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : json_int(*it);
}

int opt_small(const Json& j, const char* key, int fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : json_small_int(*it, key);
}

long long opt_budget(const Json& j) {
  Int b = opt_int(j, "budget", Int(long(kDefaultBudget)));
  if (b < 1 || !b.fits_slong_p()) fail(Errc::bad_input, "budget out of range");
  return b.get_si();
}

unsigned long opt_seed(const Json& j, const char* key, unsigned long fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  Int v = json_int(*it);
  if (v < 0 || !v.fits_ulong_p()) fail(Errc::bad_input, "seed out of range");
  return v.get_ui();
}

InstanceSpec generate_family(const std::string& family, const Json& p) {
  if (family == "example1") return gen_example1(json_small_int(json_require(p, "m"), "m"));
  if (family == "example2") {
    std::vector<Int> primes;
    for (const Json& x : json_require(p, "primes")) primes.push_back(json_int(x));
    return gen_example2(primes, json_small_int(json_require(p, "m"), "m"),
                        json_small_int(json_require(p, "k"), "k"), opt_budget(p));
  }
  if (family == "prop13")
    return gen_prop13(json_small_int(json_require(p, "k"), "k"),
                      json_small_int(json_require(p, "n"), "n"), opt_int(p, "tail_scale", 1));
  if (family == "prop14") return gen_prop14(json_small_int(json_require(p, "n"), "n"));
  if (family == "prop15")
    return gen_prop15(json_small_int(json_require(p, "n"), "n"),
                      json_small_int(json_require(p, "k"), "k"));
  if (family == "example3") return gen_example3(json_small_int(json_require(p, "l"), "l"));
  if (family == "random_lattice")
    return gen_random_lattice(json_small_int(json_require(p, "m"), "m"),
                              json_small_int(json_require(p, "n"), "n"),
                              opt_int(p, "entry_bound", 5), opt_seed(p, "seed", 1));
  if (family == "random_simplicial")
    return gen_random_simplicial(json_small_int(json_require(p, "m"), "m"),
                                 json_small_int(json_require(p, "n"), "n"),
                                 opt_int(p, "entry_bound", 2), opt_seed(p, "seed", 1));
  fail(Errc::bad_input, "unknown family '" + family + "'");
}

IntVec target_or_field(const InstanceSpec& spec, const Json& req) {
  if (auto it = req.find("b"); it != req.end()) return vec_from_json(*it);
  if (spec.target) return *spec.target;
  fail(Errc::bad_input, "no target: pass b or use an instance with a stored target");
}

std::optional<IntVec> witness_for(const InstanceSpec& spec, const Json& req, const IntVec& b) {
  if (auto it = req.find("witness"); it != req.end()) return vec_from_json(*it);
  if (spec.witness && spec.target && *spec.target == b) return spec.witness;
  return std::nullopt;
}

IntVec row_vector(const InstanceSpec& spec) {
  if (spec.matrix.rows() != 1) fail(Errc::bad_input, "mode needs a one-row instance");
  IntVec a(spec.matrix.cols());
  for (int j = 0; j < spec.matrix.cols(); ++j) a[j] = spec.matrix.at(0, j);
  return a;
}

// Recompute the residual norm from scratch; a printed error must never
// disagree with its own solution vector.
void self_check(const InstanceSpec& spec, const IntVec& b, const SparseSolution& sol) {
  IntVec ax = mat_vec(spec.matrix, sol.x);
  RatVec diff(ax.size());
  for (size_t i = 0; i < ax.size(); ++i) diff[i] = Rat(ax[i] - b[i]);
  Rat err = sol.norm == NormTag::linf ? linf_norm(diff)
                                      : pnorm(spec.matrix.select_cols(spec.basis), diff);
  if (err != sol.error) throw std::logic_error("recomputed error disagrees with solution");
}

}  // namespace

extern "C" {

const char* sxa_version(void) { return "1.0.0"; }

const char* sxa_status_name(sxa_status status) {
  switch (status) {
    case SXA_OK:
      return "ok";
    case SXA_ERR_VIOLATION:
      return "violation";
    case SXA_ERR_VALIDATION:
      return "validation";
    case SXA_ERR_BUDGET:
      return "budget";
    case SXA_ERR_INFEASIBLE:
      return "infeasible";
    case SXA_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* sxa_last_error(void) { return g_last_error.c_str(); }

sxa_status sxa_instance_parse(const char* json_text, sxa_instance** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out = nullptr;
  return guard([&] {
    auto inst = std::make_unique<sxa_instance>();
    inst->spec = instance_from_json(parse_json(json_text));
    *out = inst.release();
  });
}

sxa_status sxa_instance_generate(const char* family, const char* params_json,
                                 sxa_instance** out) {
  if (!family || !out) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out = nullptr;
  return guard([&] {
    auto inst = std::make_unique<sxa_instance>();
    inst->spec = generate_family(family, parse_or_empty(params_json));
    *out = inst.release();
  });
}

sxa_status sxa_instance_to_json(const sxa_instance* inst, char** out_json) {
  if (!inst || !out_json) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out_json = nullptr;
  return guard([&] { *out_json = dup_string(pretty(instance_to_json(inst->spec))); });
}

void sxa_instance_free(sxa_instance* inst) { delete inst; }

sxa_status sxa_approximate(const sxa_instance* inst, const char* request_json,
                           char** out_json) {
  if (!inst || !out_json) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out_json = nullptr;
  return guard([&] {
    Json req = parse_or_empty(request_json);
    int k = json_small_int(json_require(req, "k"), "k");
    long long budget = opt_budget(req);
    IntVec b = target_or_field(inst->spec, req);
    std::string mode = req.value("mode", inst->spec.basis.empty() ? "lattice" : "semigroup");

    Json reply;
    if (mode == "lattice") {
      SparseSolution sol = approximate_lattice(inst->spec.matrix, b, k, budget);
      self_check(inst->spec, b, sol);
      reply = solution_to_json(sol);
    } else if (mode == "spanning") {
      SparseSolution sol = approximate_spanning(inst->spec.matrix, b, k, budget);
      self_check(inst->spec, b, sol);
      reply = solution_to_json(sol);
    } else if (mode == "semigroup") {
      SemigroupInstance sg = inst->spec.to_semigroup();
      SemigroupSolution sol =
          approximate_semigroup(sg, b, k, witness_for(inst->spec, req, b), budget);
      self_check(inst->spec, b, sol.sol);
      reply = solution_to_json(sol.sol);
      Json steps = Json::array();
      for (const auto& [support, increment] : sol.steps)
        steps.push_back(Json{{"support", support}, {"increment", to_string(increment)}});
      reply["steps"] = std::move(steps);
    } else if (mode == "k2") {
      if (b.size() != 1) fail(Errc::bad_input, "mode k2 takes a single target value");
      SparseSolution sol =
          approximate_k2(row_vector(inst->spec), b[0], witness_for(inst->spec, req, b), budget);
      self_check(inst->spec, b, sol);
      reply = solution_to_json(sol);
    } else {
      fail(Errc::bad_input, "unknown mode '" + mode + "'");
    }
    *out_json = dup_string(pretty(reply));
  });
}

sxa_status sxa_oracle(const sxa_instance* inst, const char* request_json, char** out_json) {
  if (!out_json) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out_json = nullptr;
  return guard([&] {
    Json req = parse_or_empty(request_json);
    std::string op = json_require(req, "op").get<std::string>();
    long long budget = opt_budget(req);
    Json reply;

    if (op == "max_antichain") {
      reply["value"] = std::to_string(
          max_antichain(json_small_int(json_require(req, "m"), "m"),
                        json_small_int(json_require(req, "s"), "s"), budget));
      *out_json = dup_string(pretty(reply));
      return;
    }
    if (!inst) fail(Errc::bad_input, "this op needs an instance");
    const InstanceSpec& spec = inst->spec;

    if (op == "delta") {
      DeltaResult d = delta(spec.matrix, budget);
      reply = Json{{"value", to_string(d.value)}, {"cols", d.cols}};
    } else if (op == "lattice_app") {
      reply = oracle_report_to_json(
          lattice_app(spec.matrix, json_small_int(json_require(req, "k"), "k"), budget));
    } else if (op == "lattice_dist") {
      Rat v = lattice_dist(spec.matrix, target_or_field(spec, req),
                           json_small_int(json_require(req, "k"), "k"), budget);
      reply = Json{{"value", to_string(v)}};
    } else if (op == "lattice_period") {
      Int v = lattice_period(spec.matrix, json_small_int(json_require(req, "k"), "k"), budget);
      reply = Json{{"value", to_string(v)}};
    } else if (op == "semigroup_app") {
      reply = oracle_report_to_json(semigroup_app(spec.to_semigroup(),
                                                  json_small_int(json_require(req, "k"), "k"),
                                                  req.value("basis_fixed", false), budget));
    } else if (op == "semigroup_dist") {
      Rat v = semigroup_dist(spec.to_semigroup(), target_or_field(spec, req),
                             json_small_int(json_require(req, "k"), "k"),
                             req.value("basis_fixed", false), budget);
      reply = Json{{"value", to_string(v)}};
    } else if (op == "unique_representation") {
      IntVec b = target_or_field(spec, req);
      if (b.size() != 1) fail(Errc::bad_input, "unique_representation takes a single value");
      bool v = verify_unique_representation(row_vector(spec), b[0],
                                            json_int(json_require(req, "max_coeff_sum")), budget);
      reply = Json{{"value", v}};
    } else {
      fail(Errc::bad_input, "unknown op '" + op + "'");
    }
    *out_json = dup_string(pretty(reply));
  });
}

sxa_status sxa_verify_sweep(const char* request_json, char** out_json) {
  if (!out_json) {
    g_last_error = "null argument";
    return SXA_ERR_VALIDATION;
  }
  *out_json = nullptr;
  bool violation = false;
  sxa_status status = guard([&] {
    Json req = parse_or_empty(request_json);
    SweepOptions opt;
    if (auto it = req.find("families"); it != req.end())
      for (const Json& f : *it) opt.families.push_back(f.get<std::string>());
    opt.k_min = opt_small(req, "k_min", opt.k_min);
    opt.k_max = opt_small(req, "k_max", opt.k_max);
    opt.random_count = opt_small(req, "count", opt.random_count);
    opt.seed = opt_seed(req, "seed", opt.seed);
    opt.budget = opt_budget(req);

    std::vector<ReportRow> rows = run_sweeps(opt);
    long long violations = 0;
    for (const ReportRow& r : rows)
      if (r.verdict == "VIOLATION") ++violations;
    Json reply = report_to_json(rows);
    reply["csv"] = report_to_csv(rows);
    reply["violations"] = violations;
    violation = violations > 0;
    *out_json = dup_string(pretty(reply));
  });
  if (status == SXA_OK && violation) return SXA_ERR_VIOLATION;
  return status;
}

void sxa_string_free(char* text) { std::free(text); }

}  // extern "C"
