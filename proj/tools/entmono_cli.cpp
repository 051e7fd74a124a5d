#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "entmono/io.hpp"
#include "entmono/verifier.hpp"

using namespace entmono;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;
constexpr int kDimensionMismatch = 3;

std::pair<int, int> parse_dims(const std::string& s) {
  const std::size_t x = s.find('x');
  if (x == std::string::npos) throw ParameterError("dims must look like 2x3, got '" + s + "'");
  try {
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    const int a = std::stoi(s.substr(0, x), &u1);
    const int b = std::stoi(s.substr(x + 1), &u2);
    if (u1 != x || u2 != s.size() - x - 1) throw ParameterError("");
    return {a, b};
  } catch (const std::exception&) {
    throw ParameterError("dims must look like 2x3, got '" + s + "'");
  }
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(path + ": " + e.what());
  }
  SweepConfig c = SweepConfig::defaults();
  try {
    if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("measures")) c.measures = j.at("measures").get<std::vector<std::string>>();
    if (j.contains("dims")) {
      c.dims.clear();
      for (const auto& d : j.at("dims")) {
        if (d.is_string()) {
          c.dims.push_back(parse_dims(d.get<std::string>()));
        } else {
          const auto v = d.get<std::vector<int>>();
          if (v.size() != 2) throw ParameterError("dims entries must have two factors");
          c.dims.emplace_back(v[0], v[1]);
        }
      }
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("n_kraus")) c.n_kraus = j.at("n_kraus").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("base")) c.base = base_from_string(j.at("base").get<std::string>());
    if (j.contains("optimize")) c.optimize = j.at("optimize").get<bool>();
    if (j.contains("states_per_channel")) c.states_per_channel = j.at("states_per_channel").get<int>();
    if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(path + ": " + e.what());
  }
  return c;
}

int run_measure(const std::string& state_file, const std::string& measure_id, const std::string& base_name,
                bool as_json) {
  try {
    const Measure measure = Measure::parse(measure_id);
    const Base base = base_from_string(base_name);
    const DensityMatrix rho = to_density(load_state(state_file));
    Rng rng(0);
    EvalOptions opts;
    opts.optimize = true;
    const auto e = measure.evaluate(rho, rng, opts);
    double value = e->value;
    std::string units = measure.kind() == Measure::Kind::LogNegativity ? "bits" : "dimensionless";
    if (measure.log_based()) {
      units = to_string(base);
      if (base == Base::Bits) value /= std::numbers::ln2;
    }
    if (as_json) {
      nlohmann::ordered_json j;
      j["measure_id"] = measure.id();
      j["value"] = value;
      j["units"] = units;
      j["method"] = to_string(e->method);
      j["dims"] = to_json(rho.dims());
      std::cout << j.dump() << '\n';
    } else {
      std::printf("%.12g\n", value);
    }
    return kOk;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDimensionMismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures and monotonicity verification"};
  app.require_subcommand(1);

  auto* measure_cmd = app.add_subcommand("measure", "Evaluate an entanglement measure on a state file");
  std::string state_file;
  std::string measure_id;
  std::string measure_base = "nats";
  bool as_json = false;
  measure_cmd->add_option("state_file", state_file, "JSON state file")->required();
  measure_cmd->add_option("measure_id", measure_id, "Measure id, e.g. negativity, eof, renyi:0.5")->required();
  measure_cmd->add_option("--base", measure_base, "nats or bits");
  measure_cmd->add_flag("--json", as_json, "Print a JSON object");

  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded verification sweep");
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> n_kraus;
  std::vector<std::string> dims;
  std::vector<std::string> measures;
  std::vector<std::string> checks;
  std::optional<std::string> verify_base;
  std::optional<std::string> out;
  bool optimize = false;
  std::vector<std::string> tols;
  verify_cmd->add_option("--config", config_file, "JSON sweep configuration");
  verify_cmd->add_option("--seed", seed, "Base seed");
  verify_cmd->add_option("--trials", trials, "Trials per check, dims and measure");
  verify_cmd->add_option("--n-kraus", n_kraus, "Kraus operators per channel (0: random 2-4)");
  verify_cmd->add_option("--dims", dims, "Local dimensions dAxdB (repeatable)");
  verify_cmd->add_option("--measure", measures, "Measure id (repeatable)");
  verify_cmd->add_option("--check", checks, "Check id (repeatable)");
  verify_cmd->add_option("--base", verify_base, "nats or bits");
  verify_cmd->add_option("--out", out, "Output stem; writes STEM.jsonl and STEM.csv");
  verify_cmd->add_flag("--optimize", optimize, "Evaluate roof and ree measures on mixed states");
  verify_cmd->add_option("--tol", tols, "Tolerance override CHECK=VALUE (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (*measure_cmd) return run_measure(state_file, measure_id, measure_base, as_json);

  SweepConfig config;
  try {
    config = config_file.empty() ? SweepConfig::defaults() : load_config(config_file);
    if (seed) config.seed = *seed;
    if (trials) config.trials = *trials;
    if (n_kraus) config.n_kraus = *n_kraus;
    if (!dims.empty()) {
      config.dims.clear();
      for (const auto& d : dims) config.dims.push_back(parse_dims(d));
    }
    if (!measures.empty()) config.measures = measures;
    if (!checks.empty()) config.checks = checks;
    if (verify_base) config.base = base_from_string(*verify_base);
    if (out) config.output_path = *out;
    if (optimize) config.optimize = true;
    for (const auto& t : tols) {
      const std::size_t eq = t.find('=');
      if (eq == std::string::npos) throw ParameterError("--tol expects CHECK=VALUE, got '" + t + "'");
      double v = 0.0;
      try {
        v = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParameterError("--tol value is not a number: '" + t + "'");
      }
      config.tolerances[t.substr(0, eq)] = v;
    }
    config.validate();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }

  std::cerr << "running " << config.checks.size() << " checks, " << config.trials << " trials, seed " << config.seed
            << '\n';
  std::vector<VerificationReport> reports;
  try {
    reports = run_sweep(config);
    write_reports(config.output_path, reports);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  const auto rows = summarize(reports);
  std::cout << summary_csv(rows);
  int failures = 0;
  for (const auto& row : rows) failures += row.failures;
  std::cerr << reports.size() << " reports, " << failures << " failures; wrote " << config.output_path
            << ".jsonl and " << config.output_path << ".csv\n";
  return failures == 0 ? kOk : kFail;
}
