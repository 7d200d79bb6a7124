#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mfbm/oracle.hpp"
#include "mfbm/report.hpp"
#include "mfbm/sampler.hpp"
#include "mfbm/smallball.hpp"
#include "mfbm/spectrum.hpp"
#include "mfbm/validate.hpp"

namespace {

using mfbm::report::Json;

struct RunConfig {
  std::string command;
  double h = 0.7;
  std::string n_range = "1..50";
  std::vector<double> eps_grid = {0.2, 0.1, 0.07, 0.05};
  int grid_n = 2000;
  bool with_oracle = false;
  std::int64_t samples = 100000;
  int paths = 10;
  std::uint64_t seed = 0;
  int modes = 1024;
  bool estimate = false;
  double eps = 0.3;
  std::string estimator = "path";
  std::string format = "csv";
  std::string out;
  std::string estimate_out;
  std::string out_dir;
  double tolerance_scale = 1.0;
  bool tight = false;
  bool quick = false;
  std::string report;
};

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["h"] = c.h;
  j["n_range"] = c.n_range;
  j["eps_grid"] = c.eps_grid;
  j["grid"] = c.grid_n;
  j["with_oracle"] = c.with_oracle;
  j["samples"] = c.samples;
  j["paths"] = c.paths;
  j["seed"] = c.seed;
  j["modes"] = c.modes;
  j["estimate"] = c.estimate;
  j["eps"] = c.eps;
  j["estimator"] = c.estimator;
  j["format"] = c.format;
  j["tolerance_scale"] = c.tolerance_scale;
  j["quick"] = c.quick;
  return j;
}

void config_from_json(const Json& j, RunConfig& c) {
  if (j.contains("command")) c.command = j["command"].get<std::string>();
  if (j.contains("h")) c.h = j["h"].get<double>();
  if (j.contains("n_range")) c.n_range = j["n_range"].get<std::string>();
  if (j.contains("eps_grid")) c.eps_grid = j["eps_grid"].get<std::vector<double>>();
  if (j.contains("grid")) c.grid_n = j["grid"].get<int>();
  if (j.contains("with_oracle")) c.with_oracle = j["with_oracle"].get<bool>();
  if (j.contains("samples")) c.samples = j["samples"].get<std::int64_t>();
  if (j.contains("paths")) c.paths = j["paths"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("modes")) c.modes = j["modes"].get<int>();
  if (j.contains("estimate")) c.estimate = j["estimate"].get<bool>();
  if (j.contains("eps")) c.eps = j["eps"].get<double>();
  if (j.contains("estimator")) c.estimator = j["estimator"].get<std::string>();
  if (j.contains("format")) c.format = j["format"].get<std::string>();
  if (j.contains("tolerance_scale")) c.tolerance_scale = j["tolerance_scale"].get<double>();
  if (j.contains("quick")) c.quick = j["quick"].get<bool>();
}

std::pair<int, int> parse_range(const std::string& range) {
  const auto dots = range.find("..");
  if (dots == std::string::npos) {
    const int n = std::stoi(range);
    return {n, n};
  }
  return {std::stoi(range.substr(0, dots)), std::stoi(range.substr(dots + 2))};
}

std::string resolve_path(const RunConfig& c, const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute() || c.out_dir.empty()) return name;
  return (std::filesystem::path(c.out_dir) / p).string();
}

void write_output(const RunConfig& c, const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  mfbm::report::write_file_atomic(resolve_path(c, path), content);
  std::cout << "wrote " << resolve_path(c, path) << "\n";
}

mfbm::HurstParam hurst_or_usage(double h) {
  // HurstParam itself rejects H outside (0,1) citing the precondition.
  return mfbm::HurstParam(h);
}

// ---------------------------------------------------------------------------

int cmd_eigen(const RunConfig& cfg) {
  const auto h = hurst_or_usage(cfg.h);
  const auto [first, last] = parse_range(cfg.n_range);
  if (first < 1 || last < first) throw CLI::ValidationError("--n", "bad index range");

  mfbm::EigenSequence numeric;
  if (cfg.with_oracle) {
    const mfbm::oracle::GridSpec grid(cfg.grid_n);
    const auto op = mfbm::oracle::build_covariance(h, grid, mfbm::oracle::KernelKind::mixed);
    numeric = mfbm::oracle::numeric_eigenvalues(op, std::max(last, 1));
  }

  Json rows = Json::array();
  mfbm::report::Csv csv;
  csv.header = {"n", "nu", "lambda_closed_form"};
  if (cfg.with_oracle) {
    csv.header.push_back("lambda_numeric");
    csv.header.push_back("rel_err");
  }
  for (int n = first; n <= last; ++n) {
    const auto e = mfbm::spectrum::lambda_mixed(h, n);
    Json r;
    r["n"] = n;
    r["nu"] = e.nu;
    r["lambda_closed_form"] = e.lambda;
    if (cfg.with_oracle) {
      const double num = numeric.at(n);
      r["lambda_numeric"] = num;
      r["rel_err"] = std::fabs(e.lambda - num) / num;
      csv.add_row({static_cast<double>(n), e.nu, e.lambda, num, std::fabs(e.lambda - num) / num});
    } else {
      csv.add_row({static_cast<double>(n), e.nu, e.lambda});
    }
    rows.push_back(r);
  }

  if (cfg.format == "json") {
    Json doc;
    doc["command"] = "eigen";
    doc["config"] = config_to_json(cfg);
    doc["result"] = rows;
    write_output(cfg, cfg.out, doc.dump(2) + "\n");
  } else {
    write_output(cfg, cfg.out, csv.to_string());
  }
  return 0;
}

int cmd_constants(const RunConfig& cfg) {
  const auto h = hurst_or_usage(cfg.h);
  if (h.is_half()) {
    std::cerr << "constants: H=1/2 is excluded; the stratified small-ball constants are "
                 "defined for H in (0,1) \\ {1/2}\n";
    return 2;
  }
  const auto seq = mfbm::smallball::beta_sequence(h);
  Json result;
  result["H"] = seq.h;
  result["gamma"] = seq.gamma;
  result["prefactor_exponent"] = seq.prefactor;
  result["strata"] = seq.strata;
  result["betas"] = seq.betas;
  result["exponents"] = seq.exponents;

  if (cfg.format == "csv") {
    mfbm::report::Csv csv;
    csv.header = {"k", "beta_k", "eps_exponent"};
    for (int k = 0; k <= seq.strata; ++k)
      csv.add_row({static_cast<double>(k), seq.betas[k], seq.exponents[k]});
    write_output(cfg, cfg.out, csv.to_string());
  } else {
    Json doc;
    doc["command"] = "constants";
    doc["config"] = config_to_json(cfg);
    doc["result"] = result;
    write_output(cfg, cfg.out, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_smallball(const RunConfig& cfg) {
  const auto h = hurst_or_usage(cfg.h);

  const mfbm::EigenSequence* head_ptr = nullptr;
  mfbm::EigenSequence head;
  if (cfg.grid_n > 0) {
    const mfbm::oracle::GridSpec grid(cfg.grid_n);
    const auto op = mfbm::oracle::build_covariance(h, grid, mfbm::oracle::KernelKind::mixed);
    // Keep the numeric head inside the index window where the oracle is
    // accurate; the analytic model continues the spectrum beyond it.
    head = mfbm::oracle::numeric_eigenvalues(op, std::min(cfg.grid_n / 4, 100));
    head_ptr = &head;
  }
  const auto model = mfbm::smallball::mixed_eigen_model(h, 10000, head_ptr);

  mfbm::report::Csv csv;
  csv.header = {"eps", "log_p_saddlepoint", "log_p_asymptotic", "ratio"};
  if (cfg.estimate) {
    csv.header.push_back("mc_probability");
    csv.header.push_back("mc_std_error");
  }
  Json rows = Json::array();
  for (double eps : cfg.eps_grid) {
    const auto sp = mfbm::smallball::saddlepoint_probability(eps * eps, model);
    const double asym = mfbm::smallball::asymptotic_log_probability(h, eps);
    Json r;
    r["eps"] = eps;
    r["log_p_saddlepoint"] = sp.log_probability;
    r["log_p_asymptotic"] = asym;
    r["ratio"] = asym / sp.log_probability;
    std::vector<double> row = {eps, sp.log_probability, asym, asym / sp.log_probability};
    if (cfg.estimate) {
      mfbm::sampler::MCConfig mc;
      mc.samples = cfg.samples;
      mc.seed = cfg.seed;
      mc.modes = cfg.modes;
      mc.grid_n = std::max(cfg.grid_n, 2);
      const auto est = mfbm::sampler::chisq_smallball(model, eps * eps, mc);
      r["mc_probability"] = est.probability;
      r["mc_std_error"] = est.std_error;
      r["mc_ci95"] = {est.probability - 1.96 * est.std_error,
                      est.probability + 1.96 * est.std_error};
      row.push_back(est.probability);
      row.push_back(est.std_error);
    }
    std::vector<std::string> srow;
    for (double v : row) srow.push_back(mfbm::report::format_double(v));
    csv.rows.push_back(std::move(srow));
    rows.push_back(r);
  }

  if (cfg.format == "json") {
    Json doc;
    doc["command"] = "smallball";
    doc["config"] = config_to_json(cfg);
    doc["result"] = rows;
    write_output(cfg, cfg.out, doc.dump(2) + "\n");
  } else {
    write_output(cfg, cfg.out, csv.to_string());
  }
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  mfbm::validate::Options opt;
  opt.tol_scale = cfg.tolerance_scale * (cfg.tight ? 0.5 : 1.0);
  opt.quick = cfg.quick;
  const auto results = mfbm::validate::run_all(opt);
  for (const auto& r : results)
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.seconds << "s)  "
              << r.details << "\n";
  const bool ok = mfbm::validate::all_passed(results);
  std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  if (!cfg.report.empty()) {
    Json doc = mfbm::validate::to_json(results, opt);
    doc["config"] = config_to_json(cfg);
    mfbm::report::write_file_atomic(resolve_path(cfg, cfg.report), doc.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int cmd_sample(const RunConfig& cfg) {
  const auto h = hurst_or_usage(cfg.h);
  const mfbm::oracle::GridSpec grid(cfg.grid_n);
  mfbm::sampler::MCConfig mc;
  mc.samples = std::max<std::int64_t>(cfg.paths, 100);
  mc.seed = cfg.seed;
  mc.grid_n = cfg.grid_n;

  mfbm::sampler::CholeskyPathSampler sampler(h, grid);
  mfbm::report::Csv csv;
  csv.header = {"path", "t", "value"};
  std::vector<double> path;
  for (int p = 0; p < cfg.paths; ++p) {
    sampler.sample_path(cfg.seed, static_cast<std::uint64_t>(p), path);
    for (int i = 0; i < grid.n; ++i)
      csv.add_row({static_cast<double>(p), grid.nodes[i], path[i]});
  }
  write_output(cfg, cfg.out.empty() ? "paths.csv" : cfg.out, csv.to_string());

  if (cfg.estimate) {
    mc.samples = cfg.samples;
    mfbm::sampler::MCEstimate est;
    if (cfg.estimator == "chisq") {
      mc.estimator = mfbm::sampler::Estimator::chisq_series;
      mc.modes = cfg.modes;
      const auto model = mfbm::smallball::mixed_eigen_model(h, std::max(1, cfg.modes));
      est = mfbm::sampler::chisq_smallball(model, cfg.eps * cfg.eps, mc);
    } else {
      mc.estimator = mfbm::sampler::Estimator::path_l2;
      est = mfbm::sampler::path_smallball(h, cfg.eps, mc);
    }
    Json doc;
    doc["command"] = "sample";
    doc["config"] = config_to_json(cfg);
    Json r;
    r["probability"] = est.probability;
    r["std_error"] = est.std_error;
    r["ci95"] = {est.probability - 1.96 * est.std_error, est.probability + 1.96 * est.std_error};
    r["samples"] = est.samples;
    r["seed"] = cfg.seed;
    r["truncation_tail"] = est.truncation_tail;
    doc["result"] = r;
    write_output(cfg, cfg.estimate_out.empty() ? "estimate.json" : cfg.estimate_out,
                 doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("MFBM_OUT_DIR")) cfg.out_dir = env;

  // First pass: --config / --from-report provide defaults; flags override.
  std::string config_file, from_report;
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") config_file = argv[i + 1];
    if (std::string(argv[i]) == "--from-report") from_report = argv[i + 1];
  }
  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::runtime_error("cannot open config file " + config_file);
      config_from_json(Json::parse(in), cfg);
    }
    if (!from_report.empty()) {
      std::ifstream in(from_report);
      if (!in) throw std::runtime_error("cannot open report file " + from_report);
      const Json doc = Json::parse(in);
      if (doc.contains("config")) config_from_json(doc["config"], cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Spectral toolkit for the mixed fractional Brownian motion"};
  app.set_help_flag("--help", "print help");  // frees -h / --h for the Hurst index
  app.require_subcommand(cfg.command.empty() ? 1 : 0);
  std::string ignored;
  app.add_option("--config", ignored, "JSON config file (flags override file values)");
  app.add_option("--from-report", ignored, "re-run the configuration embedded in a JSON report");
  app.add_option("--out-dir", cfg.out_dir, "output directory (default: MFBM_OUT_DIR or cwd)");
  // Usable without a subcommand when --from-report supplies the command.
  app.add_option("--out", cfg.out, "output file (stdout when omitted)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto make_sub = [&](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    sub->fallthrough();  // global options may follow the subcommand name
    return sub;
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* eigen = make_sub("eigen", "closed-form mixed eigenvalues, optional oracle check");
  eigen->add_option("--h", cfg.h, "Hurst index in (0,1)");
  eigen->add_option("--n", cfg.n_range, "index range, e.g. 1..50");
  eigen->add_flag("--validate", cfg.with_oracle, "add Nystrom oracle column");
  eigen->add_option("--grid", cfg.grid_n, "oracle grid size");
  add_common(eigen);

  auto* constants = make_sub("constants", "small-ball constants gamma, beta_0..beta_L");
  constants->add_option("--h", cfg.h, "Hurst index in (0,1), H != 1/2");
  add_common(constants);

  auto* smallball = make_sub("smallball", "saddlepoint vs asymptotic log-probabilities");
  smallball->add_option("--h", cfg.h, "Hurst index in (0,1)");
  smallball->add_option("--eps", cfg.eps_grid, "epsilon grid")->delimiter(',');
  smallball->add_option("--grid", cfg.grid_n, "Nystrom grid for the numeric head (0 = analytic only)");
  smallball->add_flag("--mc", cfg.estimate, "add a Monte Carlo estimate column");
  smallball->add_option("--samples", cfg.samples, "MC sample count");
  smallball->add_option("--modes", cfg.modes, "MC eigenvalue truncation");
  smallball->add_option("--seed", cfg.seed, "MC seed");
  add_common(smallball);

  auto* validate = make_sub("validate", "run all module property suites");
  validate->add_flag("--tight", cfg.tight, "halve all tolerances");
  validate->add_option("--tolerance-scale", cfg.tolerance_scale, "multiply all tolerances");
  validate->add_flag("--quick", cfg.quick, "CI smoke scale");
  validate->add_option("--report", cfg.report, "machine-readable JSON report path");

  auto* sample = make_sub("sample", "Cholesky paths and Monte Carlo estimates");
  sample->add_option("--h", cfg.h, "Hurst index in (0,1)");
  sample->add_option("--paths", cfg.paths, "number of exported paths");
  sample->add_option("--grid", cfg.grid_n, "grid size");
  sample->add_option("--seed", cfg.seed, "RNG seed");
  sample->add_flag("--estimate", cfg.estimate, "also estimate a small-ball probability");
  sample->add_option("--eps", cfg.eps, "epsilon for the estimate");
  sample->add_option("--samples", cfg.samples, "MC sample count");
  sample->add_option("--modes", cfg.modes, "chisq estimator truncation");
  sample->add_option("--estimator", cfg.estimator, "path or chisq")
      ->check(CLI::IsMember({"path", "chisq"}));
  sample->add_option("--estimate-out", cfg.estimate_out, "estimate JSON path");
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command = cfg.command;  // possibly from --from-report
  if (eigen->parsed()) command = "eigen";
  if (constants->parsed()) command = "constants";
  if (smallball->parsed()) command = "smallball";
  if (validate->parsed()) command = "validate";
  if (sample->parsed()) command = "sample";

  try {
    RunConfig run = cfg;
    run.command = command;
    if (command == "eigen") return cmd_eigen(run);
    if (command == "constants") return cmd_constants(run);
    if (command == "smallball") return cmd_smallball(run);
    if (command == "validate") return cmd_validate(run);
    if (command == "sample") return cmd_sample(run);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
