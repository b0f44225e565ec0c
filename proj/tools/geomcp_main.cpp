// Command-line front end: detect / simulate / evaluate / crops / validate /
// bench. Every CSV artifact is mirrored by a JSON file for programmatic use.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "geomcp/geomcp.hpp"

using nlohmann::json;

namespace {

struct DetectionFlags {
  std::string cost = "normal";
  std::string penalty = "mbic";
  std::size_t quantiles = 0;
  std::size_t minseglen = 2;
  std::size_t xi = 10;
  bool scale_mad = false;

  void attach(CLI::App* cmd, bool with_xi = true) {
    cmd->add_option("--cost", cost, "segment cost: normal | empirical")
        ->check(CLI::IsMember({"normal", "empirical"}));
    cmd->add_option("--penalty", penalty, "penalty: mbic | manual:<beta>");
    cmd->add_option("--quantiles", quantiles,
                    "quantile count for the empirical cost (0 = ceil(4 ln n))");
    cmd->add_option("--minseglen", minseglen, "minimum segment length");
    if (with_xi) cmd->add_option("--xi", xi, "reconciliation threshold in time points");
    cmd->add_flag("--scale-mad", scale_mad, "divide each series by 1.4826 * MAD first");
  }

  geomcp::CostModel cost_model() const {
    if (cost == "empirical") return geomcp::CostModel::empirical(quantiles);
    return geomcp::CostModel::normal();
  }

  geomcp::Penalty make_penalty(std::size_t n) const {
    if (penalty == "mbic") return geomcp::mbic_penalty(n);
    const std::string prefix = "manual:";
    if (penalty.rfind(prefix, 0) == 0) {
      const std::string value = penalty.substr(prefix.size());
      try {
        return geomcp::Penalty::manual(std::stod(value));
      } catch (const std::exception&) {
        throw geomcp::ConfigError("cannot parse penalty value '" + value + "'");
      }
    }
    throw geomcp::ConfigError("penalty must be 'mbic' or 'manual:<beta>', got '" + penalty + "'");
  }

  geomcp::DetectionConfig detection_config(std::size_t n) const {
    geomcp::DetectionConfig cfg;
    cfg.model = cost_model();
    cfg.penalty = make_penalty(n);
    cfg.minseglen = minseglen;
    cfg.xi = xi;
    cfg.scale_first = scale_mad;
    return cfg;
  }
};

struct ScenarioFlags {
  std::string config_path;
  std::optional<std::size_t> n, p, m, min_gap;
  std::optional<double> theta, phi, kappa;
  std::optional<std::string> change, covariance;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "scenario key=value file");
    cmd->add_option("--n", n, "time points");
    cmd->add_option("--p", p, "series");
    cmd->add_option("--theta", theta, "total mean change scale");
    cmd->add_option("--phi", phi, "total variance ratio scale");
    cmd->add_option("--kappa", kappa, "per-series change probability");
    cmd->add_option("--change", change, "change kind: mean | variance | meanvar");
    cmd->add_option("--covariance", covariance, "covariance: independent | block | random");
    cmd->add_option("--m", m, "changepoint count override");
    cmd->add_option("--min-gap", min_gap, "minimum gap between changepoints");
    cmd->add_option("--seed", seed, "RNG seed");
  }

  geomcp::ScenarioSpec build() const {
    geomcp::ScenarioSpec spec;
    if (!config_path.empty()) spec = geomcp::load_scenario_config(config_path);
    if (n) spec.n = *n;
    if (p) spec.p = *p;
    if (theta) spec.theta = *theta;
    if (phi) spec.phi = *phi;
    if (kappa) spec.kappa = *kappa;
    if (m) spec.m_override = *m;
    if (min_gap) spec.min_gap = *min_gap;
    if (seed) spec.seed = *seed;
    if (change) {
      if (*change == "mean") spec.change_kind = geomcp::ChangeKind::mean;
      else if (*change == "variance") spec.change_kind = geomcp::ChangeKind::variance;
      else if (*change == "meanvar") spec.change_kind = geomcp::ChangeKind::mean_and_variance;
      else throw geomcp::ConfigError("unknown change kind '" + *change + "'");
    }
    if (covariance) {
      if (*covariance == "independent") spec.covariance = geomcp::CovarianceKind::independent;
      else if (*covariance == "block") spec.covariance = geomcp::CovarianceKind::block_diagonal;
      else if (*covariance == "random") spec.covariance = geomcp::CovarianceKind::random_rotation;
      else throw geomcp::ConfigError("unknown covariance kind '" + *covariance + "'");
    }
    spec.validate();
    return spec;
  }
};

const char* source_name(geomcp::ChangepointSource s) {
  switch (s) {
    case geomcp::ChangepointSource::distance: return "distance";
    case geomcp::ChangepointSource::angle: return "angle";
    case geomcp::ChangepointSource::both: return "both";
  }
  return "?";
}

const char* change_name(geomcp::ChangeKind k) {
  switch (k) {
    case geomcp::ChangeKind::mean: return "mean";
    case geomcp::ChangeKind::variance: return "variance";
    case geomcp::ChangeKind::mean_and_variance: return "meanvar";
  }
  return "?";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw geomcp::InputError("cannot open output file: " + path);
  out << content;
  if (!out) throw geomcp::InputError("failed while writing " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json detection_flags_json(const DetectionFlags& f) {
  return json{{"cost", f.cost},         {"penalty", f.penalty}, {"quantiles", f.quantiles},
              {"minseglen", f.minseglen}, {"xi", f.xi},         {"scale_mad", f.scale_mad}};
}

// ---------------------------------------------------------------- detect --

int run_detect(const std::string& input, const std::string& prefix, const DetectionFlags& flags) {
  const geomcp::SeriesMatrix matrix = geomcp::load_csv(input);
  const auto cfg = flags.detection_config(matrix.rows());
  const auto result = geomcp::geomcp_detect(matrix, cfg);

  std::string csv = "index,source\n";
  for (const auto& cp : result.attributed)
    csv += std::to_string(cp.index) + "," + source_name(cp.source) + "\n";
  write_text(prefix + ".changepoints.csv", csv);

  std::string report;
  report += "input: " + input + "\n";
  report += "time points: " + std::to_string(matrix.rows()) +
            ", series: " + std::to_string(matrix.cols()) + "\n";
  report += "cost: " + flags.cost + ", penalty: " + flags.penalty +
            ", minseglen: " + std::to_string(flags.minseglen) +
            ", xi: " + std::to_string(flags.xi) + "\n";
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t x : v) s += (s.empty() ? "" : ", ") + std::to_string(x);
    return s.empty() ? std::string("(none)") : s;
  };
  report += "distance changepoints: " + list(result.distance_cpts) + "\n";
  report += "angle changepoints:    " + list(result.angle_cpts) + "\n";
  report += "reconciled:            " + list(result.reconciled) + "\n";
  write_text(prefix + ".report.txt", report);

  json j;
  j["input"] = input;
  j["config"] = detection_flags_json(flags);
  j["distance_changepoints"] = result.distance_cpts;
  j["angle_changepoints"] = result.angle_cpts;
  j["reconciled"] = result.reconciled;
  j["changepoints"] = json::array();
  for (const auto& cp : result.attributed)
    j["changepoints"].push_back({{"index", cp.index}, {"source", source_name(cp.source)}});
  write_json(prefix + ".result.json", j);

  std::cout << "detected " << result.reconciled.size() << " changepoint(s); wrote " << prefix
            << ".changepoints.csv\n";
  return 0;
}

// -------------------------------------------------------------- simulate --

int run_simulate(const ScenarioFlags& scenario, const std::string& prefix) {
  const auto spec = scenario.build();
  const auto data = geomcp::generate(spec);
  geomcp::save_csv(data.matrix, prefix + ".data.csv");
  geomcp::save_truth(data.plan, prefix + ".truth.csv");

  json j;
  j["scenario"] = {{"n", spec.n},         {"p", spec.p},
                   {"theta", spec.theta}, {"phi", spec.phi},
                   {"kappa", spec.kappa}, {"change", change_name(spec.change_kind)},
                   {"min_gap", spec.min_gap}, {"seed", spec.seed},
                   {"m", spec.changepoint_count()}};
  j["true_changepoints"] = data.plan.true_cpts;
  j["warnings"] = data.plan.warnings;
  json masks = json::array();
  for (const auto& mask : data.plan.masks) {
    json row = json::array();
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) row.push_back(i + 1);
    masks.push_back(row);
  }
  j["affected_series"] = masks;
  write_json(prefix + ".truth.json", j);

  for (const auto& w : data.plan.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "simulated " << spec.n << " x " << spec.p << " with "
            << data.plan.true_cpts.size() << " changepoint(s); wrote " << prefix << ".data.csv\n";
  return 0;
}

// -------------------------------------------------------------- evaluate --

int run_evaluate(const ScenarioFlags& scenario, const DetectionFlags& flags, std::size_t reps,
                 std::size_t threads, std::size_t tolerance, const std::string& prefix) {
  if (reps == 0) throw geomcp::ConfigError("evaluate needs --reps >= 1");
  const auto spec = scenario.build();
  const auto cfg = flags.detection_config(spec.n);

  std::vector<geomcp::EvalReport> reports(reps);
  std::vector<std::size_t> detected(reps);
  geomcp::parallel_for(reps, threads, [&](std::size_t r) {
    geomcp::ScenarioSpec local = spec;
    local.seed = 0;  // stream derived below; keep the spec seed as the base
    geomcp::Rng rng = geomcp::derive_stream(spec.seed, r);
    const auto data = geomcp::generate(local, rng);
    const auto result = geomcp::geomcp_detect(data.matrix, cfg);
    reports[r] = geomcp::tdr_fdr(data.plan.true_cpts, result.reconciled, tolerance);
    detected[r] = result.reconciled.size();
  });

  const auto summary = geomcp::summarize(reports);
  const double null_rate = geomcp::fpr(detected);
  const std::string id = std::string(change_name(spec.change_kind)) + "_k" +
                         std::to_string(spec.kappa).substr(0, 4);

  char row[512];
  std::snprintf(row, sizeof(row), "%s,%zu,%zu,%g,%g,%g,%.6f,%.6f,%.6f,%.6f\n", id.c_str(), spec.n,
                spec.p, spec.theta, spec.phi, spec.kappa, summary.tdr_mean, summary.fdr_mean,
                summary.tdr_half_width, summary.fdr_half_width);
  write_text(prefix + ".csv",
             std::string("scenario,n,p,theta,phi,kappa,tdr,fdr,tdr_ci2,fdr_ci2\n") + row);

  json j;
  j["scenario"] = id;
  j["n"] = spec.n;
  j["p"] = spec.p;
  j["theta"] = spec.theta;
  j["phi"] = spec.phi;
  j["kappa"] = spec.kappa;
  j["replications"] = reps;
  j["tolerance"] = tolerance;
  j["tdr"] = summary.tdr_mean;
  j["fdr"] = summary.fdr_mean;
  j["tdr_ci2"] = summary.tdr_half_width;
  j["fdr_ci2"] = summary.fdr_half_width;
  j["mean_detections_per_replication"] = null_rate;
  j["config"] = detection_flags_json(flags);
  json per_rep = json::array();
  for (const auto& r : reports)
    per_rep.push_back({{"tdr", r.tdr}, {"fdr", r.fdr}, {"estimates", r.est_count}});
  j["replication_detail"] = per_rep;
  write_json(prefix + ".json", j);

  std::cout << "evaluated " << reps << " replication(s): TDR " << summary.tdr_mean << " FDR "
            << summary.fdr_mean << "; wrote " << prefix << ".csv\n";
  return 0;
}

// ----------------------------------------------------------------- crops --

int run_crops(const std::string& input, const DetectionFlags& flags, double beta_min,
              double beta_max, const std::string& prefix) {
  if (flags.penalty == "mbic")
    throw geomcp::ConfigError(
        "the penalty path uses manual penalties; drop --penalty mbic and set --beta-min/--beta-max");
  const geomcp::SeriesMatrix loaded = geomcp::load_csv(input);
  const geomcp::SeriesMatrix* matrix = &loaded;
  geomcp::SeriesMatrix scaled;
  if (flags.scale_mad) {
    scaled = geomcp::scale_mad(loaded).matrix;
    matrix = &scaled;
  }
  const double n = static_cast<double>(matrix->rows());
  if (beta_min < 0.0) beta_min = std::log(n);
  if (beta_max < 0.0) beta_max = 50.0 * std::log(n);

  const auto translated = geomcp::translate(*matrix);
  const auto model = flags.cost_model();

  json j;
  j["input"] = input;
  j["beta_min"] = beta_min;
  j["beta_max"] = beta_max;
  for (const char* which : {"distance", "angle"}) {
    const geomcp::MappedSeries series = which == std::string("distance")
                                            ? geomcp::distance_map(translated)
                                            : geomcp::angle_map(translated);
    const auto path = geomcp::crops(series.values, model, beta_min, beta_max, flags.minseglen);
    const auto rows = geomcp::elbow_table(path);
    write_text(prefix + "." + which + ".csv", geomcp::elbow_table_csv(rows));
    json entries = json::array();
    for (const auto& row : rows) {
      entries.push_back({{"m", row.count},
                         {"Q", row.unpenalized_cost},
                         {"beta_lo", row.beta_lo},
                         {"beta_hi", row.beta_hi},
                         {"elbow", row.elbow}});
    }
    j[which] = entries;
    std::cout << which << ": " << path.entries.size() << " segmentation(s) on the path\n";
  }
  write_json(prefix + ".json", j);
  return 0;
}

// -------------------------------------------------------------- validate --

int run_validate(std::size_t reps, std::size_t p, std::uint64_t seed, const std::string& prefix) {
  struct Row {
    std::string id;
    std::size_t p;
    geomcp::NormalityStats stats;
    double theory_mean, theory_sd;
  };
  std::vector<Row> rows;

  {
    std::vector<double> mu(p, 0.0), sigma(p, 1.0);
    geomcp::Rng rng = geomcp::derive_stream(seed, 0);
    const auto stats = geomcp::monte_carlo_distance(mu, sigma, reps, rng);
    const auto theory = geomcp::norm_limit_moments(mu, sigma, 0.0);
    rows.push_back({"distance_null", p, stats, theory.mean, theory.sd});
  }
  {
    const std::size_t p_shift = 100;
    std::vector<double> mu(p_shift, 50.0), sigma(p_shift, 1.0);
    geomcp::Rng rng = geomcp::derive_stream(seed, 1);
    const auto stats = geomcp::monte_carlo_distance(mu, sigma, reps, rng);
    const auto theory = geomcp::norm_limit_moments(mu, sigma, 0.0);
    rows.push_back({"distance_shifted", p_shift, stats, theory.mean, theory.sd});
  }
  {
    std::vector<double> sigma(p, 1.0);
    geomcp::Rng rng = geomcp::derive_stream(seed, 2);
    rows.push_back({"sum_of_squares_unit", p,
                    geomcp::monte_carlo_sum_of_squares(sigma, reps, rng), 0.0, 1.0});
  }
  {
    std::vector<double> sigma(p);
    for (std::size_t i = 0; i < p; ++i)
      sigma[i] = 1.0 + static_cast<double>(i + 1) / static_cast<double>(p);
    geomcp::Rng rng = geomcp::derive_stream(seed, 3);
    rows.push_back({"sum_of_squares_hetero", p,
                    geomcp::monte_carlo_sum_of_squares(sigma, reps, rng), 0.0, 1.0});
  }
  {
    // exploratory: normality of the angle series on a stationary matrix
    const std::size_t rows_n = std::min<std::size_t>(reps, 5000);
    geomcp::Rng rng = geomcp::derive_stream(seed, 4);
    geomcp::ChangePlan plan;
    plan.segment_means.assign(1, std::vector<double>(p, 0.0));
    plan.segment_sds.assign(1, std::vector<double>(p, 1.0));
    const auto matrix = geomcp::generate_from_plan(rows_n, p, plan,
                                                   geomcp::CovarianceKind::independent, rng);
    const auto angles = geomcp::angle_map(geomcp::translate(matrix));
    const auto moments = geomcp::sample_moments(angles.values);
    std::vector<double> standardized(angles.values.size());
    for (std::size_t i = 0; i < standardized.size(); ++i)
      standardized[i] = (angles.values[i] - moments.mean) / moments.sd;
    const auto ks = geomcp::ks_test_standard_normal(standardized);
    geomcp::NormalityStats stats;
    stats.sample_mean = moments.mean;
    stats.sample_sd = moments.sd;
    stats.skewness = moments.skewness;
    stats.excess_kurtosis = moments.excess_kurtosis;
    stats.ks_statistic = ks.statistic;
    stats.ks_p_value = ks.p_value;
    rows.push_back({"angle_exploratory", p, stats, 0.0, 0.0});
  }

  std::string csv =
      "config,p,reps,sample_mean,sample_sd,skewness,excess_kurtosis,ks_stat,ks_p,theory_mean,"
      "theory_sd\n";
  json j = json::array();
  for (const auto& row : rows) {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.8g,%.8g,%.6g,%.6g,%.6g,%.6g,%.8g,%.8g\n",
                  row.id.c_str(), row.p, reps, row.stats.sample_mean, row.stats.sample_sd,
                  row.stats.skewness, row.stats.excess_kurtosis, row.stats.ks_statistic,
                  row.stats.ks_p_value, row.theory_mean, row.theory_sd);
    csv += buf;
    j.push_back({{"config", row.id},
                 {"p", row.p},
                 {"reps", reps},
                 {"sample_mean", row.stats.sample_mean},
                 {"sample_sd", row.stats.sample_sd},
                 {"skewness", row.stats.skewness},
                 {"excess_kurtosis", row.stats.excess_kurtosis},
                 {"ks_stat", row.stats.ks_statistic},
                 {"ks_p", row.stats.ks_p_value},
                 {"theory_mean", row.theory_mean},
                 {"theory_sd", row.theory_sd}});
  }
  write_text(prefix + ".csv", csv);
  write_json(prefix + ".json", j);
  std::cout << "wrote " << rows.size() << " validation row(s) to " << prefix << ".csv\n";
  return 0;
}

// ----------------------------------------------------------------- bench --

int run_bench(const std::vector<std::size_t>& n_list, const std::vector<std::size_t>& p_list,
              std::size_t reps, const DetectionFlags& flags, std::uint64_t seed,
              const std::string& prefix) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  std::string csv = "n,p,rep,map_ms,detect_ms,total_ms\n";
  json j = json::array();
  std::size_t stream = 0;
  for (std::size_t n : n_list) {
    for (std::size_t p : p_list) {
      for (std::size_t rep = 0; rep < reps; ++rep) {
        geomcp::ScenarioSpec spec;
        spec.n = n;
        spec.p = p;
        spec.change_kind = geomcp::ChangeKind::mean;
        geomcp::Rng rng = geomcp::derive_stream(seed, stream++);
        const auto data = geomcp::generate(spec, rng);
        const auto cfg = flags.detection_config(n);

        const auto t0 = clock::now();
        const auto translated = geomcp::translate(data.matrix);
        const auto dist = geomcp::distance_map(translated);
        const auto ang = geomcp::angle_map(translated);
        const double map_ms = ms_since(t0);

        const auto t1 = clock::now();
        const auto d_seg = geomcp::pelt(dist.values, cfg.model, cfg.penalty, cfg.minseglen);
        const auto a_seg = geomcp::pelt(ang.values, cfg.model, cfg.penalty, cfg.minseglen);
        const double detect_ms = ms_since(t1);
        (void)d_seg;
        (void)a_seg;

        char buf[160];
        std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%.4f,%.4f,%.4f\n", n, p, rep, map_ms,
                      detect_ms, map_ms + detect_ms);
        csv += buf;
        j.push_back({{"n", n},
                     {"p", p},
                     {"rep", rep},
                     {"map_ms", map_ms},
                     {"detect_ms", detect_ms},
                     {"total_ms", map_ms + detect_ms}});
      }
    }
  }
  write_text(prefix + ".csv", csv);
  write_json(prefix + ".json", j);
  std::cout << "wrote timings to " << prefix << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric two-channel changepoint detection for high-dimensional time series"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "detect changepoints in a CSV matrix");
  std::string detect_input, detect_prefix = "geomcp_detect";
  DetectionFlags detect_flags;
  detect->add_option("--input", detect_input, "input CSV (rows = time, columns = series)")
      ->required();
  detect->add_option("--output-prefix", detect_prefix, "output path prefix");
  detect_flags.attach(detect);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic scenario");
  ScenarioFlags sim_scenario;
  std::string sim_prefix = "geomcp_sim";
  sim_scenario.attach(simulate);
  simulate->add_option("--output-prefix", sim_prefix, "output path prefix");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score detection over seeded replications");
  ScenarioFlags eval_scenario;
  DetectionFlags eval_flags;
  std::size_t eval_reps = 100, eval_threads = 1, eval_tol = 10;
  std::string eval_prefix = "geomcp_eval";
  eval_scenario.attach(evaluate);
  eval_flags.attach(evaluate);
  evaluate->add_option("--reps", eval_reps, "number of replications");
  evaluate->add_option("--threads", eval_threads, "worker threads");
  evaluate->add_option("--tolerance", eval_tol, "match tolerance in time points");
  evaluate->add_option("--output-prefix", eval_prefix, "output path prefix");

  // crops
  auto* crops_cmd = app.add_subcommand("crops", "optimal segmentations over a penalty range");
  std::string crops_input, crops_prefix = "geomcp_crops";
  DetectionFlags crops_flags;
  crops_flags.penalty = "manual:0";  // penalty flag unused; path explores the range
  double beta_min = -1.0, beta_max = -1.0;
  crops_cmd->add_option("--input", crops_input, "input CSV")->required();
  crops_cmd->add_option("--beta-min", beta_min, "lower penalty (default ln n)");
  crops_cmd->add_option("--beta-max", beta_max, "upper penalty (default 50 ln n)");
  crops_cmd->add_option("--output-prefix", crops_prefix, "output path prefix");
  crops_flags.attach(crops_cmd, /*with_xi=*/false);

  // validate
  auto* validate = app.add_subcommand("validate", "Monte-Carlo checks of the mapping asymptotics");
  std::size_t val_reps = 20000, val_p = 2000;
  std::uint64_t val_seed = 20240601;
  std::string val_prefix = "geomcp_validate";
  validate->add_option("--reps", val_reps, "Monte-Carlo draws per configuration");
  validate->add_option("--p", val_p, "dimension for the asymptotic configurations");
  validate->add_option("--seed", val_seed, "RNG seed");
  validate->add_option("--output-prefix", val_prefix, "output path prefix");

  // bench
  auto* bench = app.add_subcommand("bench", "wall-time over an (n, p) grid");
  std::vector<std::size_t> bench_n{500};
  std::vector<std::size_t> bench_p{500, 1000, 2000, 4000};
  std::size_t bench_reps = 3;
  std::uint64_t bench_seed = 7;
  std::string bench_prefix = "geomcp_bench";
  DetectionFlags bench_flags;
  bench->add_option("--n-list", bench_n, "time point counts")->delimiter(',');
  bench->add_option("--p-list", bench_p, "series counts")->delimiter(',');
  bench->add_option("--reps", bench_reps, "repetitions per cell");
  bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--output-prefix", bench_prefix, "output path prefix");
  bench_flags.attach(bench, /*with_xi=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(geomcp::ErrorCode::config);
  }

  try {
    if (detect->parsed()) return run_detect(detect_input, detect_prefix, detect_flags);
    if (simulate->parsed()) return run_simulate(sim_scenario, sim_prefix);
    if (evaluate->parsed())
      return run_evaluate(eval_scenario, eval_flags, eval_reps, eval_threads, eval_tol,
                          eval_prefix);
    if (crops_cmd->parsed())
      return run_crops(crops_input, crops_flags, beta_min, beta_max, crops_prefix);
    if (validate->parsed()) return run_validate(val_reps, val_p, val_seed, val_prefix);
    if (bench->parsed())
      return run_bench(bench_n, bench_p, bench_reps, bench_flags, bench_seed, bench_prefix);
  } catch (const geomcp::Error& e) {
    std::cerr << "error [" << static_cast<int>(e.code()) << "]: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(geomcp::ErrorCode::internal);
  }
  return 0;
}
