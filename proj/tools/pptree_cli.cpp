// Copyright 2026 The pptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pptree command-line front end. Talks to the library only through pptree.h.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pptree/pptree.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ppt_status status) {
  if (status == PPT_OK) return;
  std::string msg = ppt_last_error();
  if (msg.empty()) msg = ppt_status_string(status);
  if (status == PPT_ERR_ARGUMENT) throw UsageError(msg);
  throw RuntimeError(msg);
}

struct SampleDeleter {
  void operator()(ppt_sample* s) const { ppt_sample_free(s); }
};
struct PosteriorDeleter {
  void operator()(ppt_posterior* p) const { ppt_posterior_free(p); }
};
using SamplePtr = std::unique_ptr<ppt_sample, SampleDeleter>;
using PosteriorPtr = std::unique_ptr<ppt_posterior, PosteriorDeleter>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::pair<double, double> parse_pair(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw UsageError(std::string(flag) + " expects two comma-separated numbers, got '" + text +
                     "'");
  }
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw UsageError(std::string(flag) + ": not a number: '" + s + "'");
    }
    return v;
  };
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

ppt_unit parse_unit(const std::string& u) {
  if (u == "radians") return PPT_UNIT_RADIANS;
  if (u == "degrees") return PPT_UNIT_DEGREES;
  if (u == "clock24") return PPT_UNIT_CLOCK24;
  throw UsageError("--unit must be radians, degrees or clock24");
}

// Flat key=value run record.
class Manifest {
 public:
  Manifest(std::string command, const std::vector<std::string>& args)
      : command_(std::move(command)), args_(args), start_(std::chrono::steady_clock::now()) {}

  void set(const std::string& key, const std::string& value) { config_.emplace_back(key, value); }
  void set(const std::string& key, double value) { set(key, fmt(value)); }
  void set_int(const std::string& key, long long value) { set(key, std::to_string(value)); }
  void output(const fs::path& p) { outputs_.push_back(p.string()); }

  void write(const fs::path& dir) const {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                            .count();
    std::ofstream out(dir / "manifest.txt");
    out << "command=" << command_ << "\n";
    for (std::size_t i = 0; i < args_.size(); ++i) out << "arg." << i << "=" << args_[i] << "\n";
    out << "pptree_version=" << ppt_version() << "\n";
    for (const auto& [k, v] : config_) out << "config." << k << "=" << v << "\n";
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
      out << "output." << i << "=" << outputs_[i] << "\n";
    }
    out << "elapsed_seconds=" << fmt(secs) << "\n";
    if (!out) throw RuntimeError("cannot write manifest in " + dir.string());
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

fs::path prepare_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw RuntimeError("cannot create output directory " + out);
  return fs::path(out);
}

std::ofstream open_table(const fs::path& path, Manifest& m) {
  std::ofstream out(path);
  if (!out) throw RuntimeError("cannot write " + path.string());
  m.output(path);
  return out;
}

void write_svg(const fs::path& path, const std::vector<double>& grid,
               const std::vector<double>& mean, const std::vector<double>& lower,
               const std::vector<double>& upper) {
  const double w = 640.0, h = 400.0, pad = 40.0;
  double top = 0.0;
  for (double v : upper) top = std::max(top, v);
  if (top <= 0.0) top = 1.0;
  const double two_pi = 2.0 * M_PI;
  auto x = [&](double t) { return pad + (w - 2 * pad) * t / two_pi; };
  auto y = [&](double v) { return h - pad - (h - 2 * pad) * v / top; };
  auto line = [&](const std::vector<double>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s << (i ? " " : "") << fmt(x(grid[i])) << "," << fmt(y(v[i]));
    }
    return s.str();
  };
  std::ofstream out(path);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\""
      << h - pad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
      << "\" stroke=\"black\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4\" points=\"" << line(lower)
      << "\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4\" points=\"" << line(upper)
      << "\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"" << line(mean)
      << "\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" text-anchor=\"middle\">theta</text>\n";
  out << "</svg>\n";
}

// ---------------------------------------------------------------- prior-sim

struct PriorSimOptions {
  std::string mu = "0,0";
  double alpha = 1.0;
  double delta = 1.1;
  int depth = 4;
  int paths = 10;
  int grid = 128;
  int quad = 100;
  uint64_t seed = 1;
  std::string out;
};

void run_prior_sim(const PriorSimOptions& o, Manifest& m) {
  const auto [mu1, mu2] = parse_pair(o.mu, "--mu");
  const ppt_tree_params params{o.depth, o.alpha, o.delta};
  if (o.paths < 1) throw UsageError("--paths must be positive");
  const auto dir = prepare_dir(o.out);
  const std::size_t n_grid = static_cast<std::size_t>(o.grid) + 1;
  std::vector<double> grid(n_grid);
  check(ppt_reporting_grid(o.grid, grid.data(), grid.size()));
  const std::size_t paths = static_cast<std::size_t>(o.paths);
  std::vector<double> dens(paths * n_grid), dirs(paths), conc(paths);
  std::vector<int> defined(paths);
  check(ppt_prior_sim(&params, mu1, mu2, paths, o.grid, o.quad, o.seed, dens.data(), dirs.data(),
                      conc.data(), defined.data()));

  m.set("mu1", mu1);
  m.set("mu2", mu2);
  m.set("alpha", o.alpha);
  m.set("delta", o.delta);
  m.set_int("depth", o.depth);
  m.set_int("paths", o.paths);
  m.set_int("angles_grid", o.grid);
  m.set_int("quad_L", o.quad);
  m.set("seed", std::to_string(o.seed));

  auto paths_out = open_table(dir / "density_paths.tsv", m);
  paths_out << "path\ttheta\tdensity\n";
  for (std::size_t p = 0; p < paths; ++p) {
    for (std::size_t g = 0; g < n_grid; ++g) {
      paths_out << p + 1 << "\t" << fmt(grid[g]) << "\t" << fmt(dens[p * n_grid + g]) << "\n";
    }
  }
  auto mom = open_table(dir / "moments.tsv", m);
  mom << "path\tmean_direction\tconcentration\tdirection_defined\n";
  for (std::size_t p = 0; p < paths; ++p) {
    mom << p + 1 << "\t" << (defined[p] ? fmt(dirs[p]) : "NA") << "\t" << fmt(conc[p]) << "\t"
        << defined[p] << "\n";
  }
}

// ---------------------------------------------------------------------- fit

struct FitOptions {
  std::string data;
  std::string dataset;
  std::string unit = "radians";
  std::optional<double> alpha;
  std::string alpha_prior;
  std::string mu;
  std::string mu_prior;
  int depth = 4;
  double delta = 1.1;
  int iterations = 10000;
  int burn_in = 1000;
  int thin = 5;
  double kappa = 0.5;
  double kappa_alpha = 0.5;
  int quad = 100;
  int grid = 128;
  std::string rule = "riemann";
  uint64_t seed = 1;
  std::string out;
  bool svg = false;
  bool save_trees = false;
};

SamplePtr load_sample(const std::string& data, const std::string& dataset,
                      const std::string& unit) {
  ppt_sample* raw = nullptr;
  if (!dataset.empty()) {
    check(ppt_sample_triunfo(dataset.c_str(), &raw));
  } else {
    check(ppt_sample_load(data.c_str(), parse_unit(unit), &raw));
  }
  SamplePtr s(raw);
  for (std::size_t i = 0; i < ppt_sample_warning_count(s.get()); ++i) {
    std::cerr << "warning: " << ppt_sample_warning(s.get(), i) << "\n";
  }
  return s;
}

void write_fit_outputs(ppt_posterior* post, const fs::path& dir, Manifest& m, bool svg,
                       bool save_trees) {
  const std::size_t n_grid = ppt_posterior_grid_size(post);
  std::vector<double> grid(n_grid), mean(n_grid), lower(n_grid), upper(n_grid);
  check(ppt_posterior_density(post, grid.data(), mean.data(), lower.data(), upper.data(), n_grid));
  auto dens = open_table(dir / "density.tsv", m);
  dens << "theta\tmean\tlower\tupper\n";
  for (std::size_t g = 0; g < n_grid; ++g) {
    dens << fmt(grid[g]) << "\t" << fmt(mean[g]) << "\t" << fmt(lower[g]) << "\t"
         << fmt(upper[g]) << "\n";
  }
  dens.close();

  const std::size_t draws = ppt_posterior_draw_count(post);
  std::vector<double> dirs(draws), conc(draws);
  ppt_moment_summary ms{};
  check(ppt_posterior_moments(post, &ms, dirs.data(), conc.data(), draws));
  auto mom = open_table(dir / "moments.tsv", m);
  mom << "draw\tmean_direction\tconcentration\n";
  for (std::size_t d = 0; d < draws; ++d) {
    mom << d + 1 << "\t" << (std::isfinite(dirs[d]) ? fmt(dirs[d]) : "NA") << "\t"
        << fmt(conc[d]) << "\n";
  }
  mom.close();

  ppt_diagnostics dg{};
  check(ppt_posterior_diagnostics(post, &dg));
  auto diag = open_table(dir / "diagnostics.tsv", m);
  diag << "statistic\tvalue\n";
  diag << "draws\t" << dg.draws << "\n";
  diag << "accept_rate_r_mean\t" << fmt(dg.accept_rate_r_mean) << "\n";
  diag << "accept_rate_r_min\t" << fmt(dg.accept_rate_r_min) << "\n";
  diag << "accept_rate_r_max\t" << fmt(dg.accept_rate_r_max) << "\n";
  diag << "accept_rate_alpha\t" << fmt(dg.accept_rate_alpha) << "\n";
  diag << "alpha_mean\t" << fmt(dg.alpha_mean) << "\n";
  diag << "alpha_lower\t" << fmt(dg.alpha_lower) << "\n";
  diag << "alpha_upper\t" << fmt(dg.alpha_upper) << "\n";
  diag << "mu1_mean\t" << fmt(dg.mu1_mean) << "\n";
  diag << "mu2_mean\t" << fmt(dg.mu2_mean) << "\n";
  diag << "direction_median\t" << fmt(ms.direction_median) << "\n";
  diag << "direction_lower\t" << fmt(ms.direction_lower) << "\n";
  diag << "direction_upper\t" << fmt(ms.direction_upper) << "\n";
  diag << "concentration_median\t" << fmt(ms.concentration_median) << "\n";
  diag << "concentration_lower\t" << fmt(ms.concentration_lower) << "\n";
  diag << "concentration_upper\t" << fmt(ms.concentration_upper) << "\n";
  diag << "undefined_directions\t" << ms.undefined_directions << "\n";
  diag.close();

  double lp = 0.0;
  std::size_t degenerate = 0;
  check(ppt_posterior_lpml(post, &lp, nullptr, 0, &degenerate));
  auto score = open_table(dir / "score.tsv", m);
  score << "statistic\tvalue\n";
  score << "lpml\t" << fmt(lp) << "\n";
  score << "degenerate_cpo\t" << degenerate << "\n";
  score.close();

  const auto json = dir / "posterior.json";
  check(ppt_posterior_save(post, json.string().c_str(), save_trees ? 1 : 0));
  m.output(json);

  if (svg) {
    const auto p = dir / "density.svg";
    write_svg(p, grid, mean, lower, upper);
    m.output(p);
  }
}

void run_fit(const FitOptions& o, Manifest& m) {
  if (o.data.empty() == o.dataset.empty()) {
    throw UsageError("give exactly one of --data or --dataset");
  }
  if (o.alpha && !o.alpha_prior.empty()) throw UsageError("--alpha excludes --alpha-prior");
  if (!o.mu.empty() && !o.mu_prior.empty()) throw UsageError("--mu excludes --mu-prior");
  if (o.rule != "riemann" && o.rule != "trapezoid") {
    throw UsageError("--rule must be riemann or trapezoid");
  }

  ppt_tree_params params{o.depth, o.alpha.value_or(1.0), o.delta};
  ppt_mcmc_config cfg;
  ppt_mcmc_config_default(&cfg);
  cfg.iterations = o.iterations;
  cfg.burn_in = o.burn_in;
  cfg.thin = o.thin;
  cfg.kappa = o.kappa;
  cfg.kappa_alpha = o.kappa_alpha;
  cfg.seed = o.seed;
  cfg.quad_nodes = o.quad;
  cfg.grid_angles = o.grid;
  cfg.rule = o.rule == "trapezoid" ? PPT_RULE_TRAPEZOID : PPT_RULE_RIEMANN;
  if (!o.alpha_prior.empty()) {
    const auto [c, d] = parse_pair(o.alpha_prior, "--alpha-prior");
    cfg.alpha_prior_enabled = 1;
    cfg.alpha_prior_shape = c;
    cfg.alpha_prior_rate = d;
  }
  double mu1 = 0.0, mu2 = 0.0;
  if (!o.mu.empty()) std::tie(mu1, mu2) = parse_pair(o.mu, "--mu");
  if (!o.mu_prior.empty()) {
    const auto [g0, tau] = parse_pair(o.mu_prior, "--mu-prior");
    cfg.mu_prior_enabled = 1;
    cfg.mu_prior_mean = g0;
    cfg.mu_prior_precision = tau;
    mu1 = mu2 = g0;
  }
  if (o.iterations < 1 || o.burn_in < 0 || o.thin < 1 || o.burn_in >= o.iterations) {
    throw UsageError("need iterations > burn-in >= 0 and thin >= 1");
  }

  const auto sample = load_sample(o.data, o.dataset, o.unit);
  const auto dir = prepare_dir(o.out);

  m.set("data", o.dataset.empty() ? o.data : "triunfo:" + o.dataset);
  m.set("unit", o.unit);
  m.set_int("n", static_cast<long long>(ppt_sample_size(sample.get())));
  m.set_int("depth", params.depth);
  m.set("delta", params.delta);
  if (cfg.alpha_prior_enabled) {
    m.set("alpha_prior", fmt(cfg.alpha_prior_shape) + "," + fmt(cfg.alpha_prior_rate));
  } else {
    m.set("alpha", params.alpha);
  }
  if (cfg.mu_prior_enabled) {
    m.set("mu_prior", fmt(cfg.mu_prior_mean) + "," + fmt(cfg.mu_prior_precision));
  } else {
    m.set("mu", fmt(mu1) + "," + fmt(mu2));
  }
  m.set_int("iterations", cfg.iterations);
  m.set_int("burn_in", cfg.burn_in);
  m.set_int("thin", cfg.thin);
  m.set("kappa", cfg.kappa);
  m.set("kappa_alpha", cfg.kappa_alpha);
  m.set_int("quad_L", cfg.quad_nodes);
  m.set_int("grid_angles", cfg.grid_angles);
  m.set("rule", o.rule);
  m.set("seed", std::to_string(cfg.seed));

  ppt_posterior* raw = nullptr;
  check(ppt_fit(sample.get(), &params, mu1, mu2, &cfg, &raw));
  PosteriorPtr post(raw);
  write_fit_outputs(post.get(), dir, m, o.svg, o.save_trees);
}

// -------------------------------------------------------------------- score

struct ScoreOptions {
  std::string posterior;
  bool lpml = false;
  bool bf = false;
  std::string out;
};

void run_score(const ScoreOptions& o, Manifest& m) {
  ppt_posterior* raw = nullptr;
  check(ppt_posterior_load(o.posterior.c_str(), &raw));
  PosteriorPtr post(raw);
  const bool want_lpml = o.lpml || !o.bf;
  if (o.bf && ppt_posterior_alpha_random(post.get())) {
    throw RuntimeError(
        "refusing --bf: alpha was sampled, the point-null Bayes factor needs a fixed alpha");
  }

  std::ostringstream table;
  table << "statistic\tvalue\n";
  std::vector<double> cpo;
  if (want_lpml) {
    cpo.resize(ppt_posterior_data_size(post.get()));
    double lp = 0.0;
    std::size_t degenerate = 0;
    check(ppt_posterior_lpml(post.get(), &lp, cpo.data(), cpo.size(), &degenerate));
    table << "lpml\t" << fmt(lp) << "\n";
    table << "degenerate_cpo\t" << degenerate << "\n";
  }
  if (o.bf) {
    ppt_bayes_factor bf{};
    check(ppt_posterior_bayes_factor(post.get(), &bf));
    table << "bf10\t" << fmt(bf.bf10) << "\n";
    table << "log_numerator\t" << fmt(bf.log_numerator) << "\n";
    table << "log_denominator\t" << fmt(bf.log_denominator) << "\n";
  }

  if (o.out.empty()) {
    std::cout << table.str();
    return;
  }
  const auto dir = prepare_dir(o.out);
  m.set("posterior", o.posterior);
  m.set("lpml", want_lpml ? "true" : "false");
  m.set("bf", o.bf ? "true" : "false");
  auto score = open_table(dir / "score.tsv", m);
  score << table.str();
  if (want_lpml) {
    auto c = open_table(dir / "cpo.tsv", m);
    c << "datum\tcpo\n";
    for (std::size_t i = 0; i < cpo.size(); ++i) c << i + 1 << "\t" << fmt(cpo[i]) << "\n";
  }
}

// ------------------------------------------------------------------ compare

struct CompareOptions {
  std::string first;
  std::string second;
  std::string out;
};

void run_compare(const CompareOptions& o, Manifest& m) {
  ppt_posterior* a = nullptr;
  check(ppt_posterior_load(o.first.c_str(), &a));
  PosteriorPtr pa(a);
  ppt_posterior* b = nullptr;
  check(ppt_posterior_load(o.second.c_str(), &b));
  PosteriorPtr pb(b);
  ppt_direction_diff d{};
  check(ppt_direction_difference(pa.get(), pb.get(), &d));
  std::ostringstream table;
  table << "statistic\tvalue\n";
  table << "pairs\t" << d.pairs << "\n";
  table << "difference_lower\t" << fmt(d.lower) << "\n";
  table << "difference_upper\t" << fmt(d.upper) << "\n";
  table << "prob_first_greater\t" << fmt(d.prob_greater) << "\n";
  if (o.out.empty()) {
    std::cout << table.str();
    return;
  }
  const auto dir = prepare_dir(o.out);
  m.set("first", o.first);
  m.set("second", o.second);
  auto out = open_table(dir / "direction_difference.tsv", m);
  out << table.str();
}

// ----------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string model = "mixture";
  std::string mu = "0,0";
  int n = 50;
  uint64_t seed = 1;
  std::string out;
};

void run_simulate(const SimulateOptions& o, Manifest& m) {
  if (o.n < 1) throw UsageError("--n must be positive");
  ppt_sample* raw = nullptr;
  m.set("model", o.model);
  if (o.model == "mixture") {
    check(ppt_sample_simulate_mixture(static_cast<std::size_t>(o.n), nullptr, o.seed, &raw));
    ppt_mixture_spec spec;
    ppt_mixture_spec_default(&spec);
    for (int c = 0; c < 4; ++c) {
      const std::string k = "component." + std::to_string(c + 1);
      m.set(k + ".weight", spec.weights[c]);
      m.set(k + ".location", fmt(spec.locations[c][0]) + "," + fmt(spec.locations[c][1]));
    }
  } else if (o.model == "projnormal") {
    const auto [mu1, mu2] = parse_pair(o.mu, "--mu");
    check(ppt_sample_simulate_projected_normal(static_cast<std::size_t>(o.n), mu1, mu2, o.seed,
                                               &raw));
    m.set("mu", fmt(mu1) + "," + fmt(mu2));
  } else {
    throw UsageError("--model must be mixture or projnormal");
  }
  SamplePtr sample(raw);
  m.set_int("n", o.n);
  m.set("seed", std::to_string(o.seed));
  const auto dir = prepare_dir(o.out);
  const auto path = dir / "sample.txt";
  check(ppt_sample_save(sample.get(), path.string().c_str()));
  m.output(path);
}

// --------------------------------------------------------- experiment-table1

struct Table1Options {
  int n = 500;
  uint64_t seed = 1;
  int iterations = 10000;
  int burn_in = 1000;
  int thin = 5;
  std::string out;
};

void run_table1(const Table1Options& o, Manifest& m) {
  if (o.n < 1) throw UsageError("--n must be positive");
  if (o.iterations < 1 || o.burn_in < 0 || o.thin < 1 || o.burn_in >= o.iterations) {
    throw UsageError("need iterations > burn-in >= 0 and thin >= 1");
  }
  const auto dir = prepare_dir(o.out);
  ppt_sample* raw = nullptr;
  check(ppt_sample_simulate_mixture(static_cast<std::size_t>(o.n), nullptr, o.seed, &raw));
  SamplePtr sample(raw);
  const auto data_path = dir / "data.txt";
  check(ppt_sample_save(sample.get(), data_path.string().c_str()));
  m.output(data_path);
  m.set_int("n", o.n);
  m.set("seed", std::to_string(o.seed));
  m.set_int("iterations", o.iterations);
  m.set_int("burn_in", o.burn_in);
  m.set_int("thin", o.thin);

  const double mus[3] = {0.0, 1.0, 2.0};
  const double alphas[3] = {0.5, 1.0, 2.0};
  auto table = open_table(dir / "table1.tsv", m);
  table << "mu1\tmu2\talpha\tlpml\n";
  for (double mu : mus) {
    for (double alpha : alphas) {
      ppt_tree_params params;
      ppt_tree_params_default(&params);
      params.alpha = alpha;
      ppt_mcmc_config cfg;
      ppt_mcmc_config_default(&cfg);
      cfg.iterations = o.iterations;
      cfg.burn_in = o.burn_in;
      cfg.thin = o.thin;
      cfg.seed = o.seed;
      ppt_posterior* p = nullptr;
      check(ppt_fit(sample.get(), &params, mu, mu, &cfg, &p));
      PosteriorPtr post(p);
      double lp = 0.0;
      check(ppt_posterior_lpml(post.get(), &lp, nullptr, 0, nullptr));
      table << fmt(mu) << "\t" << fmt(mu) << "\t" << fmt(alpha) << "\t" << fmt(lp) << "\n";
    }
  }
}

// ------------------------------------------------------------------- replay

std::vector<std::string> manifest_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open manifest " + path);
  std::map<int, std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("arg.", 0) != 0) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    args[std::stoi(line.substr(4, eq - 4))] = line.substr(eq + 1);
  }
  if (args.empty()) throw RuntimeError("manifest " + path + " records no command");
  std::vector<std::string> out;
  for (auto& [i, a] : args) out.push_back(a);
  return out;
}

int dispatch(std::vector<std::string> args);

int replay(const std::string& manifest, const std::string& out) {
  auto args = manifest_args(manifest);
  if (!out.empty()) {
    bool replaced = false;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--out") {
        args[i + 1] = out;
        replaced = true;
      } else if (args[i].rfind("--out=", 0) == 0) {
        args[i] = "--out=" + out;
        replaced = true;
      }
    }
    if (!replaced) args.insert(args.end(), {"--out", out});
  }
  return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Projected Polya tree models for circular data", "pptree"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppt_version()));

  PriorSimOptions ps;
  auto* prior = app.add_subcommand("prior-sim", "Sample projected densities from the prior");
  prior->add_option("--mu", ps.mu, "Centering mean x,y")->capture_default_str();
  prior->add_option("--alpha", ps.alpha)->check(CLI::PositiveNumber)->capture_default_str();
  prior->add_option("--delta", ps.delta)->check(CLI::Range(1.0 + 1e-12, 1e300))
      ->capture_default_str();
  prior->add_option("--depth", ps.depth)->check(CLI::Range(1, 20))->capture_default_str();
  prior->add_option("--paths", ps.paths)->check(CLI::PositiveNumber)->capture_default_str();
  prior->add_option("--angles-grid", ps.grid)->check(CLI::Range(64, 1 << 20))
      ->capture_default_str();
  prior->add_option("--quad-L", ps.quad)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  prior->add_option("--seed", ps.seed)->capture_default_str();
  prior->add_option("--out", ps.out, "Output directory")->required();

  FitOptions fo;
  auto* fit = app.add_subcommand("fit", "Fit a projected Polya tree by Gibbs sampling");
  auto* data_opt = fit->add_option("--data", fo.data, "Angle file");
  auto* dataset_opt = fit->add_option("--dataset", fo.dataset, "Bundled data set")
                          ->check(CLI::IsMember({"peccary", "tapir", "deer"}));
  data_opt->excludes(dataset_opt);
  fit->add_option("--unit", fo.unit)->check(CLI::IsMember({"radians", "degrees", "clock24"}))
      ->capture_default_str();
  auto* alpha_opt = fit->add_option("--alpha", fo.alpha, "Fixed precision")
                        ->check(CLI::PositiveNumber);
  auto* alpha_prior_opt = fit->add_option("--alpha-prior", fo.alpha_prior, "Gamma prior c,d");
  alpha_opt->excludes(alpha_prior_opt);
  auto* mu_opt = fit->add_option("--mu", fo.mu, "Fixed centering x,y (default 0,0)");
  auto* mu_prior_opt = fit->add_option("--mu-prior", fo.mu_prior, "Normal prior g0,tau");
  mu_opt->excludes(mu_prior_opt);
  fit->add_option("--depth", fo.depth)->check(CLI::Range(1, 20))->capture_default_str();
  fit->add_option("--delta", fo.delta)->check(CLI::Range(1.0 + 1e-12, 1e300))
      ->capture_default_str();
  fit->add_option("--iterations", fo.iterations)->capture_default_str();
  fit->add_option("--burn-in", fo.burn_in)->capture_default_str();
  fit->add_option("--thin", fo.thin)->capture_default_str();
  fit->add_option("--kappa", fo.kappa)->check(CLI::PositiveNumber)->capture_default_str();
  fit->add_option("--kappa-alpha", fo.kappa_alpha)->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--quad-L", fo.quad)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  fit->add_option("--grid-angles", fo.grid)->check(CLI::Range(64, 1 << 20))
      ->capture_default_str();
  fit->add_option("--rule", fo.rule)->check(CLI::IsMember({"riemann", "trapezoid"}))
      ->capture_default_str();
  fit->add_option("--seed", fo.seed)->capture_default_str();
  fit->add_option("--out", fo.out, "Output directory")->required();
  fit->add_flag("--svg", fo.svg, "Also write density.svg");
  fit->add_flag("--save-trees", fo.save_trees, "Store branching probabilities per draw");

  ScoreOptions so;
  auto* score = app.add_subcommand("score", "LPML and Bayes factor for a saved posterior");
  score->add_option("--posterior", so.posterior)->required();
  score->add_flag("--lpml", so.lpml);
  score->add_flag("--bf", so.bf);
  score->add_option("--out", so.out, "Output directory (default: stdout)");

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "Posterior of a mean-direction difference");
  compare->add_option("--first", co.first, "Posterior file")->required();
  compare->add_option("--second", co.second, "Posterior file")->required();
  compare->add_option("--out", co.out, "Output directory (default: stdout)");

  SimulateOptions sm;
  auto* sim = app.add_subcommand("simulate", "Simulate circular data");
  sim->add_option("--model", sm.model)->check(CLI::IsMember({"mixture", "projnormal"}))
      ->capture_default_str();
  sim->add_option("--mu", sm.mu, "Projected normal mean x,y")->capture_default_str();
  sim->add_option("--n", sm.n)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", sm.seed)->capture_default_str();
  sim->add_option("--out", sm.out, "Output directory")->required();

  Table1Options t1;
  auto* table1 = app.add_subcommand("experiment-table1", "LPML over the centering/alpha grid");
  table1->add_option("--n", t1.n)->check(CLI::PositiveNumber)->capture_default_str();
  table1->add_option("--seed", t1.seed)->capture_default_str();
  table1->add_option("--iterations", t1.iterations)->capture_default_str();
  table1->add_option("--burn-in", t1.burn_in)->capture_default_str();
  table1->add_option("--thin", t1.thin)->capture_default_str();
  table1->add_option("--out", t1.out, "Output directory")->required();

  std::string manifest_path, replay_out;
  auto* rerun = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  rerun->add_option("--manifest", manifest_path)->required();
  rerun->add_option("--out", replay_out, "Override the output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "replay") return replay(manifest_path, replay_out);

  Manifest manifest(name, args);
  std::string out_dir;
  if (name == "prior-sim") {
    run_prior_sim(ps, manifest);
    out_dir = ps.out;
  } else if (name == "fit") {
    run_fit(fo, manifest);
    out_dir = fo.out;
  } else if (name == "score") {
    run_score(so, manifest);
    out_dir = so.out;
  } else if (name == "compare") {
    run_compare(co, manifest);
    out_dir = co.out;
  } else if (name == "simulate") {
    run_simulate(sm, manifest);
    out_dir = sm.out;
  } else if (name == "experiment-table1") {
    run_table1(t1, manifest);
    out_dir = t1.out;
  }
  if (!out_dir.empty()) manifest.write(out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(std::move(args));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
