// charnum: characteristic numbers of finite algebras and symmetric pencils.
//
// Subcommands: info, charnum, sequence, multidegree, eulerian, classify,
// verify. Output is a replayable JSON run record by default; --format text
// prints human-readable tables. Exit codes: 0 success, 1 verification
// failure, 2 input error, 3 resource or engine error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charnum/algebra_spec.hpp"
#include "charnum/closed_forms.hpp"
#include "charnum/engine.hpp"
#include "charnum/verify.hpp"

using nlohmann::json;
using namespace charnum;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string spec_text;
  std::string primes = "random:2";
  std::string seed_text;
  int jobs = 1;
  std::string format = "json";
  std::string validate = "shallow";
  std::uint64_t max_pairs = EngineConfig{}.budget.max_pair_reductions;
  std::uint64_t max_ops = EngineConfig{}.budget.max_monomial_ops;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_spec = true) {
  if (with_spec)
    cmd->add_option("--spec,spec", o.spec_text,
                    "algebra spec: file path, inline JSON, or shorthand like chain(4)");
  cmd->add_option("--prime", o.primes, "prime list p[,p2] or random:2 (default)");
  cmd->add_option("--seed", o.seed_text, "64-bit seed; default CHARNUM_SEED or 0");
  cmd->add_option("--jobs", o.jobs, "parallel index computations");
  cmd->add_option("--format", o.format, "text|json (default json)");
  cmd->add_option("--validate", o.validate, "shallow|deep");
  cmd->add_option("--max-pairs", o.max_pairs, "pair reduction budget per basis computation");
  cmd->add_option("--max-ops", o.max_ops, "monomial operation budget per basis computation");
}

std::uint64_t resolve_seed(const CommonOpts& o) {
  std::string text = o.seed_text;
  if (text.empty()) {
    const char* env = std::getenv("CHARNUM_SEED");
    if (env) text = env;
  }
  if (text.empty()) return 0;
  try {
    return std::stoull(text);
  } catch (...) {
    throw InputError("seed must be a 64-bit unsigned integer, got: " + text);
  }
}

EngineConfig build_config(const CommonOpts& o) {
  EngineConfig cfg;
  cfg.seed = resolve_seed(o);
  cfg.jobs = o.jobs;
  if (o.validate == "deep")
    cfg.deep_validate = true;
  else if (o.validate != "shallow")
    throw InputError("--validate must be shallow or deep");
  cfg.budget.max_pair_reductions = o.max_pairs;
  cfg.budget.max_monomial_ops = o.max_ops;
  if (o.primes != "random:2" && !o.primes.empty()) {
    std::stringstream ss(o.primes);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        cfg.primes.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      } catch (...) {
        throw InputError("bad prime: " + part);
      }
    }
  }
  return cfg;
}

AlgebraSpec load_spec(const std::string& text) {
  if (text.empty()) throw InputError("missing --spec");
  std::ifstream file(text);
  if (file.good()) {
    std::stringstream ss;
    ss << file.rdbuf();
    return AlgebraSpec::parse(ss.str());
  }
  return AlgebraSpec::parse(text);
}

CharIndex parse_index(const std::string& text) {
  CharIndex b;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      b.push_back(std::stoi(part));
    } catch (...) {
      throw InputError("bad index entry: " + part);
    }
  }
  if (b.empty()) throw InputError("empty --index");
  return b;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json value_json(const CharIndex& b, const CharValue& v) {
  json j;
  j["index"] = b;
  j["value"] = v.value.get_str();
  j["method"] = v.method_name();
  j["primes"] = v.primes;
  j["agreement"] = v.agreement;
  j["truncated"] = v.truncated;
  return j;
}

json sequence_json(const CharSequence& seq) {
  json j;
  auto nums = json::array();
  for (const auto& v : seq.values) nums.push_back(v.value.get_str());
  j["numbers"] = nums;
  j["symmetric"] = seq.symmetric();
  j["log_concave"] = seq.log_concave();
  auto vals = json::array();
  for (const auto& v : seq.values) {
    json item;
    item["value"] = v.value.get_str();
    item["method"] = v.method_name();
    item["primes"] = v.primes;
    item["agreement"] = v.agreement;
    item["truncated"] = v.truncated;
    vals.push_back(item);
  }
  j["values"] = vals;
  return j;
}

/// One run record wraps every command's output; identical spec + seed +
/// primes reproduce it byte for byte apart from the timestamp field.
class Record {
public:
  Record(const std::string& command, const EngineConfig& cfg)
      : start_(std::chrono::steady_clock::now()) {
    rec_["command"] = command;
    rec_["artifact_version"] = kVersion;
    rec_["seed"] = std::to_string(cfg.seed);
    rec_["primes"] = cfg.resolved_primes();
    rec_["config"] = {{"max_retries", cfg.max_retries},
                      {"budget_pair_reductions", std::to_string(cfg.budget.max_pair_reductions)},
                      {"budget_monomial_ops", std::to_string(cfg.budget.max_monomial_ops)},
                      {"validate", cfg.deep_validate ? "deep" : "shallow"},
                      {"jobs", cfg.jobs}};
  }

  void set_spec(const AlgebraSpec& spec) {
    rec_["spec"] = spec.to_json();
    rec_["spec_digest"] = spec.digest();
  }

  json& results() { return rec_["results"]; }

  int finish(const std::string& format, const std::string& text_form, int exit_code = 0) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    rec_["timestamp"] = {{"started_utc", utc_now()}, {"elapsed_ms", ms}};
    if (format == "json")
      std::cout << rec_.dump(2) << std::endl;
    else
      std::cout << text_form;
    return exit_code;
  }

private:
  std::chrono::steady_clock::time_point start_;
  json rec_;
};

int cmd_info(const CommonOpts& o) {
  EngineConfig cfg = build_config(o);
  AlgebraSpec spec = load_spec(o.spec_text);
  Record rec("info", cfg);
  rec.set_spec(spec);

  PrimeField F(cfg.resolved_primes().front());
  FiniteAlgebra A = spec.instantiate(F);
  SymmetricPencil P = SymmetricPencil::from_algebra(A);
  auto gor = classify_gorenstein(spec.algebra_factory(), cfg, {false, false});

  json& res = rec.results();
  res["dim"] = A.dim();
  res["basis"] = A.labels();
  res["local"] = A.is_local();
  res["gorenstein"] = gor.gorenstein;
  res["unit"] = [&] {
    auto arr = json::array();
    for (auto u : A.unit()) arr.push_back(F.to_string(u));
    return arr;
  }();
  json pencil;
  pencil["size"] = P.size();
  pencil["variables"] = P.variables();
  auto rows = json::array();
  for (int i = 0; i < P.size(); ++i) {
    auto row = json::array();
    for (int j = 0; j < P.size(); ++j) row.push_back(P.entry(i, j).to_string());
    rows.push_back(row);
  }
  pencil["entries"] = rows;
  res["pencil"] = pencil;

  std::ostringstream text;
  text << "dimension: " << A.dim() << "\n";
  text << "basis:";
  for (const auto& l : A.labels()) text << " " << l;
  text << "\nlocal: " << (A.is_local() ? "yes" : "no");
  text << "\ngorenstein: " << (gor.gorenstein ? "yes" : "no") << "\n";
  text << "multiplication table:\n";
  for (int i = 0; i < P.size(); ++i) {
    text << "  [";
    for (int j = 0; j < P.size(); ++j)
      text << (j ? ", " : "") << P.entry(i, j).to_string();
    text << "]\n";
  }
  return rec.finish(o.format, text.str());
}

int cmd_charnum(const CommonOpts& o, const std::string& index_text) {
  EngineConfig cfg = build_config(o);
  AlgebraSpec spec = load_spec(o.spec_text);
  CharIndex b = parse_index(index_text);
  Record rec("charnum", cfg);
  rec.set_spec(spec);
  CharValue v = characteristic_number(spec.pencil_factory(), b, cfg);
  rec.results() = value_json(b, v);
  std::ostringstream text;
  text << "c_" << verify_detail::index_string(b) << " = " << v.value
       << (v.truncated ? "  (formally zero: index beyond the generic rank)" : "") << "\n";
  return rec.finish(o.format, text.str());
}

int cmd_sequence(const CommonOpts& o) {
  EngineConfig cfg = build_config(o);
  AlgebraSpec spec = load_spec(o.spec_text);
  Record rec("sequence", cfg);
  rec.set_spec(spec);
  CharSequence seq = characteristic_sequence(spec.pencil_factory(), cfg);
  rec.results() = sequence_json(seq);
  std::ostringstream text;
  text << "characteristic sequence: " << verify_detail::seq_string(seq.numbers()) << "\n";
  return rec.finish(o.format, text.str());
}

int cmd_multidegree(const CommonOpts& o) {
  EngineConfig cfg = build_config(o);
  AlgebraSpec spec = load_spec(o.spec_text);
  Record rec("multidegree", cfg);
  rec.set_spec(spec);
  MultidegreeTable table = multidegree(spec.pencil_factory(), cfg);
  json& res = rec.results();
  res["d"] = table.d;
  res["positions"] = table.positions;
  auto vals = json::array();
  for (const auto& [b, v] : table.values) vals.push_back(value_json(b, v));
  res["values"] = vals;
  auto poly = json::array();
  for (const auto& [b, c] : Engine::weighted_polynomial(table)) {
    json item;
    item["index"] = b;
    item["coefficient"] = c.get_str();
    poly.push_back(item);
  }
  res["polynomial"] = poly;
  // measured, not asserted: full index-reversal symmetry of the table
  res["index_reversal_symmetric"] = measure_reversal_symmetry(table);

  std::ostringstream text;
  text << "multidegree (" << table.values.size() << " indices):\n";
  for (const auto& [b, v] : table.values)
    text << "  c_" << verify_detail::index_string(b) << " = " << v.value
         << (v.truncated ? "  (formally zero)" : "") << "\n";
  text << "index reversal symmetry (measured): "
       << (measure_reversal_symmetry(table) ? "yes" : "no") << "\n";
  return rec.finish(o.format, text.str());
}

int cmd_eulerian(const CommonOpts& o, int n, const std::string& index_text) {
  EngineConfig cfg = build_config(o);
  Record rec("eulerian", cfg);
  json& res = rec.results();
  std::ostringstream text;
  if (!index_text.empty()) {
    CharIndex a = parse_index(index_text);
    mpz_class v = mixed_eulerian(a);
    res["index"] = a;
    res["value"] = v.get_str();
    text << "e_" << verify_detail::index_string(a) << " = " << v << "\n";
  } else {
    if (n <= 0) throw InputError("eulerian needs n >= 1 (or --index)");
    auto comps = weak_compositions(n, n);
    const auto& tab = MixedEulerian::table(n);
    res["n"] = n;
    auto vals = json::array();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      json item;
      item["index"] = comps[i];
      item["value"] = tab[i].get_str();
      vals.push_back(item);
    }
    res["values"] = vals;
    text << "mixed eulerian numbers for n = " << n << " (" << comps.size() << " entries):\n";
    for (std::size_t i = 0; i < comps.size(); ++i)
      text << "  e_" << verify_detail::index_string(comps[i]) << " = " << tab[i] << "\n";
  }
  return rec.finish(o.format, text.str());
}

int cmd_classify(const CommonOpts& o) {
  EngineConfig cfg = build_config(o);
  AlgebraSpec spec = load_spec(o.spec_text);
  Record rec("classify", cfg);
  rec.set_spec(spec);
  json& res = rec.results();

  auto gor = classify_gorenstein(spec.algebra_factory(), cfg);
  json g;
  g["verdict"] = gor.gorenstein;
  g["determinant_route"] = gor.det_route;
  if (gor.last_route) g["last_number_route"] = *gor.last_route;
  if (gor.last_value) g["last_number"] = gor.last_value->value.get_str();
  if (gor.symmetry_route) g["symmetry_route"] = *gor.symmetry_route;
  if (gor.sequence) {
    auto nums = json::array();
    for (const auto& v : gor.sequence->values) nums.push_back(v.value.get_str());
    g["sequence"] = nums;
  }
  res["gorenstein"] = g;

  std::ostringstream text;
  text << "gorenstein: " << (gor.gorenstein ? "yes" : "no") << " (all routes agree)\n";

  PrimeField F(cfg.resolved_primes().front());
  FiniteAlgebra A = spec.instantiate(F);
  if (A.is_local() && A.dim() >= 3) {
    auto ci = classify_complete_intersection(spec.algebra_factory(), cfg);
    json c;
    c["verdict"] = ci.complete_intersection;
    c["value"] = ci.value.get_str();
    c["bound"] = ci.bound.get_str();
    c["slack"] = ci.slack.get_str();
    res["complete_intersection"] = c;
    text << "complete intersection: " << (ci.complete_intersection ? "yes" : "no") << " (value "
         << ci.value << ", bound " << ci.bound << ")\n";
  } else {
    res["complete_intersection"] = {
        {"skipped", A.is_local() ? "dimension below 3" : "algebra is not local"}};
    text << "complete intersection: skipped ("
         << (A.is_local() ? "dimension below 3" : "algebra is not local") << ")\n";
  }
  return rec.finish(o.format, text.str());
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
  EngineConfig cfg = build_config(o);
  Record rec("verify", cfg);
  std::vector<VerifyCheck> checks;
  if (!o.spec_text.empty()) {
    AlgebraSpec spec = load_spec(o.spec_text);
    rec.set_spec(spec);
    checks = run_spec_checks(spec, cfg);
  } else {
    checks = run_suite_checks(suite.empty() ? "core" : suite, cfg);
  }
  std::size_t failed = 0;
  auto arr = json::array();
  std::ostringstream text;
  for (const auto& c : checks) {
    json item;
    item["name"] = c.name;
    item["pass"] = c.pass;
    item["detail"] = c.detail;
    arr.push_back(item);
    if (!c.pass) ++failed;
    text << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  }
  rec.results()["checks"] = arr;
  rec.results()["passed"] = checks.size() - failed;
  rec.results()["failed"] = failed;
  text << (failed ? "FAILED" : "OK") << " (" << (checks.size() - failed) << "/" << checks.size()
       << " checks)\n";
  return rec.finish(o.format, text.str(), failed ? 1 : 0);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact characteristic numbers of finite algebras"};
  app.require_subcommand(1);

  CommonOpts info_o, charnum_o, seq_o, multi_o, euler_o, classify_o, verify_o;
  std::string index_text, euler_index, suite;
  int euler_n = 0;

  add_common(app.add_subcommand("info", "dimension, basis, locality, pencil"), info_o);

  auto* c_charnum =
      app.add_subcommand("charnum", "one characteristic number at --index");
  add_common(c_charnum, charnum_o);
  c_charnum->add_option("--index", index_text, "comma-separated exponents b_1,..,b_{m-1}")
      ->required();

  add_common(app.add_subcommand("sequence", "characteristic sequence"), seq_o);
  add_common(app.add_subcommand("multidegree", "all characteristic numbers"), multi_o);

  auto* c_euler = app.add_subcommand("eulerian", "mixed eulerian numbers");
  add_common(c_euler, euler_o, false);
  c_euler->add_option("n", euler_n, "table size n");
  c_euler->add_option("--index", euler_index, "single index a_1,..,a_n");

  add_common(app.add_subcommand("classify", "gorenstein and complete intersection verdicts"),
             classify_o);

  auto* c_verify = app.add_subcommand("verify", "run the verification checks");
  add_common(c_verify, verify_o);
  c_verify->add_option("--suite", suite, "core|full (when no spec is given)");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("info")) return cmd_info(info_o);
  if (app.got_subcommand("charnum")) return cmd_charnum(charnum_o, index_text);
  if (app.got_subcommand("sequence")) return cmd_sequence(seq_o);
  if (app.got_subcommand("multidegree")) return cmd_multidegree(multi_o);
  if (app.got_subcommand("eulerian")) return cmd_eulerian(euler_o, euler_n, euler_index);
  if (app.got_subcommand("classify")) return cmd_classify(classify_o);
  if (app.got_subcommand("verify")) return cmd_verify(verify_o, suite);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InputError& e) {
    json err = {{"error", {{"kind", "input"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << std::endl;
    return 2;
  } catch (const ResourceLimitError& e) {
    json err = {{"error", {{"kind", "resource"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << std::endl;
    return 3;
  } catch (const std::exception& e) {
    json err = {{"error", {{"kind", "engine"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << std::endl;
    return 3;
  }
}
