// Command-line front end. Talks to the library exclusively through the C
// interface: instances, requests and results are JSON payloads.

#include <sparseapprox.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace {

using nlohmann::json;

int fail_with(sxa_status status) {
  std::cerr << "error (" << sxa_status_name(status) << "): " << sxa_last_error() << "\n";
  return int(status);
}

int fail_usage(const std::string& message) {
  std::cerr << "error (validation): " << message << "\n";
  return int(SXA_ERR_VALIDATION);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return out.good();
}

// "--b -3,5" style lists arrive as one comma-separated token; entries stay
// decimal strings so arbitrary precision survives.
json csv_list(const std::string& csv) {
  json arr = json::array();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) return json();
    arr.push_back(item.substr(a, b - a + 1));
  }
  if (arr.empty()) return json();
  return arr;
}

long long env_budget(long long fallback) {
  const char* raw = std::getenv("SPARSEAPPROX_BUDGET");
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return fallback;
  return v;
}

struct ApproximateArgs {
  std::string instance_path, mode, b_csv, witness_csv;
  int k = 0;
  long long budget = 0;
};

int run_approximate(const ApproximateArgs& args) {
  std::string text;
  if (!read_file(args.instance_path, text))
    return fail_usage("cannot read instance file '" + args.instance_path + "'");
  sxa_instance* inst = nullptr;
  sxa_status st = sxa_instance_parse(text.c_str(), &inst);
  if (st != SXA_OK) return fail_with(st);

  json req{{"k", args.k}, {"budget", args.budget}};
  if (!args.mode.empty()) req["mode"] = args.mode;
  if (!args.b_csv.empty()) {
    json b = csv_list(args.b_csv);
    if (b.is_null()) {
      sxa_instance_free(inst);
      return fail_usage("--b expects a comma-separated integer list");
    }
    req["b"] = std::move(b);
  }
  if (!args.witness_csv.empty()) {
    json w = csv_list(args.witness_csv);
    if (w.is_null()) {
      sxa_instance_free(inst);
      return fail_usage("--witness expects a comma-separated integer list");
    }
    req["witness"] = std::move(w);
  }

  char* out = nullptr;
  st = sxa_approximate(inst, req.dump().c_str(), &out);
  sxa_instance_free(inst);
  if (st != SXA_OK) return fail_with(st);
  std::cout << out;
  sxa_string_free(out);
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> families;
  int k_min = 0, k_max = 0;
  bool has_k_min = false, has_k_max = false;
  int count = 25;
  unsigned long seed = 1;
  long long budget = 0;
  std::string out_path, format = "csv";
};

int run_verify(const VerifyArgs& args) {
  json req{{"budget", args.budget}, {"count", args.count}, {"seed", args.seed}};
  if (!args.families.empty()) req["families"] = args.families;
  if (args.has_k_min) req["k_min"] = args.k_min;
  if (args.has_k_max) req["k_max"] = args.k_max;

  char* out = nullptr;
  sxa_status st = sxa_verify_sweep(req.dump().c_str(), &out);
  if (st != SXA_OK && st != SXA_ERR_VIOLATION) return fail_with(st);

  json payload = json::parse(out);
  sxa_string_free(out);
  std::string text;
  if (args.format == "csv") {
    text = payload["csv"].get<std::string>();
  } else {
    text = json{{"rows", payload["rows"]}, {"violations", payload["violations"]}}.dump(2) + "\n";
  }
  if (!write_output(args.out_path, text))
    return fail_usage("cannot write to '" + args.out_path + "'");
  return int(st);
}

struct GenerateArgs {
  std::string family, primes_csv, out_path;
  int m = 0, n = 0, k = 0, l = 0;
  std::string tail_scale, entry_bound;
  unsigned long seed = 0;
  const CLI::App* sub = nullptr;
};

int run_generate(const GenerateArgs& args) {
  json params = json::object();
  if (args.sub->count("--m")) params["m"] = args.m;
  if (args.sub->count("--n")) params["n"] = args.n;
  if (args.sub->count("--k")) params["k"] = args.k;
  if (args.sub->count("--l")) params["l"] = args.l;
  if (args.sub->count("--seed")) params["seed"] = args.seed;
  if (args.sub->count("--tail-scale")) params["tail_scale"] = args.tail_scale;
  if (args.sub->count("--entry-bound")) params["entry_bound"] = args.entry_bound;
  if (args.sub->count("--primes")) {
    json p = csv_list(args.primes_csv);
    if (p.is_null()) return fail_usage("--primes expects a comma-separated integer list");
    params["primes"] = std::move(p);
  }

  sxa_instance* inst = nullptr;
  sxa_status st = sxa_instance_generate(args.family.c_str(), params.dump().c_str(), &inst);
  if (st != SXA_OK) return fail_with(st);
  char* out = nullptr;
  st = sxa_instance_to_json(inst, &out);
  sxa_instance_free(inst);
  if (st != SXA_OK) return fail_with(st);
  std::string text = out;
  sxa_string_free(out);
  if (!write_output(args.out_path, text))
    return fail_usage("cannot write to '" + args.out_path + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse approximation over integer lattices and semigroups, with exact bounds"};
  app.set_version_flag("--version", sxa_version());
  app.require_subcommand(1);

  ApproximateArgs approx;
  approx.budget = env_budget(1000000);
  CLI::App* cmd_a = app.add_subcommand("approximate", "Compute a k-sparse approximation");
  cmd_a->add_option("--instance", approx.instance_path, "Instance JSON file")->required();
  cmd_a->add_option("--k", approx.k, "Sparsity budget")->required();
  cmd_a->add_option("--mode", approx.mode, "lattice | semigroup | spanning | k2")
      ->check(CLI::IsMember({"lattice", "semigroup", "spanning", "k2"}));
  cmd_a->add_option("--b", approx.b_csv, "Target vector, comma-separated integers");
  cmd_a->add_option("--witness", approx.witness_csv, "Known coefficients with A*witness = b");
  cmd_a->add_option("--budget", approx.budget, "Enumeration budget");

  VerifyArgs verify;
  verify.budget = env_budget(100000000);
  CLI::App* cmd_v = app.add_subcommand("verify", "Run bound-verification sweeps");
  cmd_v->add_option("--family", verify.families,
                    "Family to sweep (repeatable); default: all families");
  cmd_v->add_option("--k-min", verify.k_min, "Keep only rows with k >= this");
  cmd_v->add_option("--k-max", verify.k_max, "Keep only rows with k <= this");
  cmd_v->add_option("--count", verify.count, "Instances per random family");
  cmd_v->add_option("--seed", verify.seed, "Base seed for random families");
  cmd_v->add_option("--budget", verify.budget, "Enumeration budget");
  cmd_v->add_option("--out", verify.out_path, "Write the report here instead of stdout");
  cmd_v->add_option("--format", verify.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  GenerateArgs gen;
  CLI::App* cmd_g = app.add_subcommand("generate", "Write an instance file for a family");
  cmd_g->add_option("--family", gen.family, "Instance family")->required();
  cmd_g->add_option("--m", gen.m, "Rows");
  cmd_g->add_option("--n", gen.n, "Columns");
  cmd_g->add_option("--k", gen.k, "Sparsity the instance is built for");
  cmd_g->add_option("--l", gen.l, "Scale parameter of the bad-basis family");
  cmd_g->add_option("--primes", gen.primes_csv, "Comma-separated primes");
  cmd_g->add_option("--tail-scale", gen.tail_scale, "Tail spacing");
  cmd_g->add_option("--entry-bound", gen.entry_bound, "Random entry magnitude bound");
  cmd_g->add_option("--seed", gen.seed, "Random seed");
  cmd_g->add_option("--out", gen.out_path, "Write the instance here instead of stdout");
  gen.sub = cmd_g;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : int(SXA_ERR_VALIDATION);
  }

  verify.has_k_min = cmd_v->count("--k-min") > 0;
  verify.has_k_max = cmd_v->count("--k-max") > 0;

  if (cmd_a->parsed()) return run_approximate(approx);
  if (cmd_v->parsed()) return run_verify(verify);
  return run_generate(gen);
}
