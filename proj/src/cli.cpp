#include "ksep/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ksep/criteria.hpp"
#include "ksep/format.hpp"
#include "ksep/oracle.hpp"
#include "ksep/state_io.hpp"
#include "ksep/threshold.hpp"

namespace ksep::cli {

namespace {

constexpr int kSchema = 1;

struct Options {
  std::optional<std::string> state_file;
  std::optional<std::string> family;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> a;
  std::string criterion = "t1";
  std::optional<int> k;
  std::optional<std::string> basis_file;
  std::string method = "closed";
  double tol = 1e-10;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::optional<std::string> grid;
  int points = 11;
  std::optional<std::string> artifact;
};

/// Flat JSON object whose numbers are rendered by format_real.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double v) { return add_raw(key, format_real(v)); }
  JsonObject& add(const std::string& key, int v) { return add_raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, std::size_t v) { return add_raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, bool v) { return add_raw(key, v ? "true" : "false"); }
  JsonObject& add(const std::string& key, const std::string& v) { return add_raw(key, nlohmann::json(v).dump()); }
  JsonObject& add(const std::string& key, const char* v) { return add(key, std::string(v)); }
  JsonObject& add_null(const std::string& key) { return add_raw(key, "null"); }
  JsonObject& add_raw(const std::string& key, std::string raw) {
    fields_.emplace_back(key, std::move(raw));
    return *this;
  }

  std::string dump() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ", ";
      out += nlohmann::json(fields_[i].first).dump() + ": " + fields_[i].second;
    }
    return out + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

JsonObject header(const char* command) {
  JsonObject obj;
  obj.add("schema", kSchema).add("command", command);
  return obj;
}

struct Source {
  int n = 0;
  std::optional<NoiseFamily> family;
  std::optional<DensityMatrix> fixed;
  std::optional<int> dicke_m;
};

Source load_source(const Options& opt) {
  if (opt.state_file && opt.family) fail(ErrorKind::parameter, "give either --state or --family, not both");
  Source src;
  if (opt.family) {
    if (*opt.family != "dicke") fail(ErrorKind::parameter, "unknown family '" + *opt.family + "' (expected dicke)");
    if (!opt.n || !opt.m) fail(ErrorKind::parameter, "--family dicke needs --n and --m");
    src.n = *opt.n;
    src.dicke_m = *opt.m;
    src.family.emplace(dicke_state(*opt.n, *opt.m));
    return src;
  }
  if (!opt.state_file) fail(ErrorKind::parameter, "a state is required: --state FILE or --family dicke");
  const std::string text = read_text_file(*opt.state_file);
  auto parsed = parse_state_file(text);
  if (auto* fam = std::get_if<NoiseFamily>(&parsed)) {
    src.n = fam->n_qubits();
    // recover m for dicke_noise files so t2 and closed forms need no --m
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("kind", "") == "dicke_noise") src.dicke_m = doc.at("m").get<int>();
    src.family.emplace(std::move(*fam));
  } else {
    auto& rho = std::get<DensityMatrix>(parsed);
    src.n = rho.n_qubits();
    src.fixed.emplace(std::move(rho));
  }
  if (opt.n && *opt.n != src.n) fail(ErrorKind::parameter, "--n disagrees with the state file width");
  return src;
}

CriterionContext build_criterion(const Options& opt, int n, std::optional<int> fallback_m) {
  if (!opt.k) fail(ErrorKind::parameter, "--k is required");
  const int k = *opt.k;
  if (opt.criterion == "t1") return CriterionContext::theorem1(n, k);
  if (opt.criterion == "t2") {
    const auto m = opt.m ? opt.m : fallback_m;
    if (!m) fail(ErrorKind::parameter, "criterion t2 needs --m");
    return CriterionContext::theorem2(n, k, *m);
  }
  if (opt.criterion == "t3") {
    if (!opt.basis_file) fail(ErrorKind::parameter, "criterion t3 needs --basis FILE");
    auto states = parse_basis_file(read_text_file(*opt.basis_file));
    auto basis = build_k_alpha(std::move(states));
    if (basis.n_qubits() != n) fail(ErrorKind::parameter, "basis width does not match the state width");
    return CriterionContext::theorem3(std::move(basis), k);
  }
  fail(ErrorKind::parameter, "unknown criterion '" + opt.criterion + "' (expected t1, t2 or t3)");
}

void add_value(JsonObject& obj, const CriterionValue& v) {
  obj.add("a_part", v.a_part).add("b_part", v.b_part).add("value", v.value).add("verdict", to_string(v.verdict));
}

int cmd_eval(const Options& opt, std::ostream& out) {
  const Source src = load_source(opt);
  const auto ctx = build_criterion(opt, src.n, src.dicke_m);
  JsonObject obj = header("eval");
  obj.add("criterion", ctx.name()).add("n", src.n).add("k", ctx.k()).add("nk", ctx.nk());
  CriterionValue value;
  if (src.family) {
    if (!opt.a) fail(ErrorKind::parameter, "noise families need --a");
    value = detect(src.family->realize(*opt.a), ctx);
    obj.add("a", *opt.a);
  } else {
    if (opt.a) fail(ErrorKind::parameter, "--a applies only to noise families");
    value = detect(*src.fixed, ctx);
  }
  add_value(obj, value);
  out << obj.dump() << '\n';
  return kExitOk;
}

int cmd_threshold(const Options& opt, std::ostream& out) {
  const Source src = load_source(opt);
  if (!src.family) fail(ErrorKind::parameter, "thresholds need a noise family, not an explicit density matrix");
  JsonObject obj = header("threshold");

  if (opt.method == "closed") {
    if (!src.dicke_m) fail(ErrorKind::parameter, "closed-form thresholds exist only for Dicke families");
    if (opt.criterion == "t3") fail(ErrorKind::parameter, "closed-form thresholds cover criteria t1 and t2");
    if (opt.criterion == "t1" && *src.dicke_m != 2) {
      fail(ErrorKind::parameter, "criterion t1 tests two-excitation patterns; use t2 for m != 2");
    }
    if (!opt.k) fail(ErrorKind::parameter, "--k is required");
    const int n = src.n, m = *src.dicke_m, k = *opt.k;
    const ThresholdResult r = dicke_threshold_result(n, m, k);
    obj.add("method", to_string(r.method)).add("n", n).add("m", m).add("k", k).add("nk", nk_theorem2(n, k, m));
    obj.add("a_star", to_string(*r.exact)).add("a_star_real", static_cast<double>(*r.exact));
    obj.add("in_range", r.a_star.has_value());
  } else if (opt.method == "bisect") {
    const auto ctx = build_criterion(opt, src.n, src.dicke_m);
    const ThresholdResult r = bisection_threshold(*src.family, ctx, opt.tol);
    obj.add("method", to_string(r.method)).add("criterion", ctx.name()).add("n", src.n).add("k", ctx.k());
    obj.add("nk", ctx.nk());
    if (r.a_star) {
      obj.add("a_star", *r.a_star);
    } else {
      obj.add_null("a_star");
    }
    obj.add("in_range", r.a_star.has_value()).add("residual", r.residual).add("tol", opt.tol);
  } else {
    fail(ErrorKind::parameter, "unknown method '" + opt.method + "' (expected closed or bisect)");
  }
  out << obj.dump() << '\n';
  return kExitOk;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::parameter, "bad grid value '" + item + "'");
    }
  }
  return grid;
}

int cmd_scan(const Options& opt, std::ostream& out) {
  const Source src = load_source(opt);
  if (!src.family) fail(ErrorKind::parameter, "scans need a noise family");
  const auto ctx = build_criterion(opt, src.n, src.dicke_m);
  const auto grid = opt.grid ? parse_grid(*opt.grid) : uniform_grid(opt.points);
  const auto points = scan(*src.family, ctx, grid);
  write_scan_csv(out, points, ctx.nk());
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!opt.n) fail(ErrorKind::parameter, "--n is required");
  const auto ctx = build_criterion(opt, *opt.n, std::nullopt);
  const auto report = soundness_scan(*opt.n, ctx.k(), ctx, opt.trials, opt.seed);

  JsonObject obj = header("verify");
  obj.add("criterion", report.criterion).add("n", report.n).add("k", report.k).add("nk", ctx.nk());
  obj.add("pure_trials", report.pure_trials).add("mixed_trials", report.mixed_trials);
  obj.add("seed", std::to_string(opt.seed)).add("max_value", report.max_value);
  obj.add("threshold", kViolationThreshold);
  if (!report.violation) {
    obj.add("status", "ok");
    out << obj.dump() << '\n';
    return kExitOk;
  }
  const std::string state = density_to_state_json(report.violation->state);
  obj.add("status", "violation").add_raw("violation", violation_json(report)).add_raw("state", state);
  if (opt.artifact) {
    std::ofstream file(*opt.artifact);
    if (!file) fail(ErrorKind::io, "cannot write " + *opt.artifact);
    file << state << '\n';
  }
  err << "soundness violation: value " << format_real(report.violation->value) << " > "
      << format_real(kViolationThreshold) << '\n';
  out << obj.dump() << '\n';
  return kExitViolation;
}

int cmd_partitions(const Options& opt, std::ostream& out) {
  if (!opt.n || !opt.k) fail(ErrorKind::parameter, "partitions needs --n and --k");
  const auto parts = enumerate_k_partitions(*opt.n, *opt.k);
  std::string list = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    list += (i ? ",\n  " : "\n  ") + nlohmann::json(parts[i].to_string()).dump();
  }
  list += parts.empty() ? "]" : "\n]";
  JsonObject obj = header("partitions");
  obj.add("n", *opt.n).add("k", *opt.k).add("count", parts.size()).add_raw("partitions", list);
  out << obj.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-nonseparability criteria for multiqubit states", "ksep"};
  app.require_subcommand(1);
  Options opt;

  auto state_opts = [&](CLI::App* sub) {
    sub->add_option("--state", opt.state_file, "state file (JSON)");
    sub->add_option("--family", opt.family, "built-in family: dicke");
    sub->add_option("--n", opt.n, "number of qubits");
    sub->add_option("--m", opt.m, "excitations (Dicke family, criterion t2)");
  };
  auto criterion_opts = [&](CLI::App* sub) {
    sub->add_option("--criterion", opt.criterion, "t1 | t2 | t3")->capture_default_str();
    sub->add_option("--k", opt.k, "separability level k");
    sub->add_option("--basis", opt.basis_file, "basis file for t3 (JSON)");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a criterion on a state");
  state_opts(eval);
  criterion_opts(eval);
  eval->add_option("--a", opt.a, "white-noise mixing parameter in [0,1]");

  auto* threshold = app.add_subcommand("threshold", "white-noise robustness threshold");
  state_opts(threshold);
  criterion_opts(threshold);
  threshold->add_option("--method", opt.method, "closed | bisect")->capture_default_str();
  threshold->add_option("--tol", opt.tol, "bisection interval width")->capture_default_str();

  auto* scan_cmd = app.add_subcommand("scan", "criterion value over a grid of a (CSV)");
  state_opts(scan_cmd);
  criterion_opts(scan_cmd);
  scan_cmd->add_option("--grid", opt.grid, "comma-separated a values");
  scan_cmd->add_option("--points", opt.points, "uniform grid size when --grid is absent")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "soundness check on random k-separable states");
  verify->add_option("--n", opt.n, "number of qubits");
  verify->add_option("--m", opt.m, "excitations for criterion t2");
  criterion_opts(verify);
  verify->add_option("--trials", opt.trials, "pure-state trials (mixed: trials/10)")->capture_default_str();
  verify->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  verify->add_option("--artifact", opt.artifact, "write a violating state to this file");

  auto* partitions = app.add_subcommand("partitions", "list the k-partitions of {1..n}");
  partitions->add_option("--n", opt.n, "number of elements");
  partitions->add_option("--k", opt.k, "number of blocks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitError;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt, out);
    if (threshold->parsed()) return cmd_threshold(opt, out);
    if (scan_cmd->parsed()) return cmd_scan(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (partitions->parsed()) return cmd_partitions(opt, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace ksep::cli
