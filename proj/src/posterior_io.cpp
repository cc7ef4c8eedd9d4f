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

#include "pptree/posterior_io.hpp"

#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>

#include "json.hpp"
#include "pptree/error.hpp"

namespace pptree {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "pptree-posterior";
constexpr int kVersion = 1;

json tree_to_json(const BranchingTree& t) {
  json levels = json::array();
  for (int m = 1; m <= t.depth(); ++m) {
    json level = json::array();
    const std::int64_t side = cells_per_axis(m);
    for (std::int64_t j = 1; j <= side; ++j) {
      for (std::int64_t k = 1; k <= side; ++k) {
        const double v = t.log_branch(m, j, k);
        if (std::isfinite(v)) {
          level.push_back(v);
        } else {
          level.push_back(nullptr);
        }
      }
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

BranchingTree tree_from_json(const json& levels, int depth) {
  if (!levels.is_array() || static_cast<int>(levels.size()) != depth) {
    throw IngestionError("stored tree does not match the tree depth");
  }
  BranchingTree t(depth);
  auto log_at = [&](int m, std::int64_t j, std::int64_t k) {
    const auto& v = levels.at(m - 1).at(static_cast<std::size_t>((j - 1) * cells_per_axis(m) +
                                                                 (k - 1)));
    return v.is_null() ? -std::numeric_limits<double>::infinity() : v.get<double>();
  };
  for_each_parent(depth, [&](int m, std::int64_t j, std::int64_t k) {
    std::array<double, 4> log_y{};
    const auto cells = child_cells(j, k);
    for (std::size_t c = 0; c < 4; ++c) log_y[c] = log_at(m + 1, cells[c].first, cells[c].second);
    t.set_children_log(m, j, k, log_y);
  });
  return t;
}

const char* rule_name(RadialRule rule) {
  return rule == RadialRule::Trapezoid ? "trapezoid" : "riemann";
}

}  // namespace

void save_posterior(std::ostream& out, const PosteriorSamples& s, bool include_trees) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["params"] = {{"depth", s.params.depth}, {"alpha", s.params.alpha}, {"delta", s.params.delta}};
  doc["centering"] = {s.centering.mu1(), s.centering.mu2()};
  const McmcConfig& c = s.config;
  json config = {{"iterations", c.iterations}, {"burn_in", c.burn_in},
                 {"thin", c.thin},             {"kappa", c.kappa},
                 {"kappa_alpha", c.kappa_alpha}, {"seed", c.seed},
                 {"quad_nodes", c.quad_nodes}, {"grid_angles", c.grid_angles},
                 {"rule", rule_name(c.rule)}};
  config["alpha_prior"] =
      c.alpha_prior ? json{c.alpha_prior->shape, c.alpha_prior->rate} : json(nullptr);
  config["mu_prior"] =
      c.mu_prior ? json{c.mu_prior->mean, c.mu_prior->precision} : json(nullptr);
  doc["config"] = std::move(config);
  doc["angles"] = s.angles;
  doc["grid"] = s.grid;
  doc["accept_rate_r"] = s.accept_rate_r;
  doc["accept_rate_alpha"] = s.accept_rate_alpha;
  json draws = json::array();
  for (const auto& d : s.draws) {
    json jd = {{"iteration", d.iteration},
               {"alpha", d.alpha},
               {"mu", {d.mu.mu1(), d.mu.mu2()}},
               {"resultants", d.resultants},
               {"density_at_data", d.density_at_data},
               {"density_on_grid", d.density_on_grid}};
    if (include_trees && d.tree) jd["tree"] = tree_to_json(*d.tree);
    draws.push_back(std::move(jd));
  }
  doc["draws"] = std::move(draws);
  out << doc.dump() << '\n';
}

PosteriorSamples load_posterior(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw IngestionError("posterior file is empty");
  }
  try {
    const json doc = json::parse(text);
    if (doc.value("format", std::string{}) != kFormat) {
      throw IngestionError("not a pptree posterior document");
    }
    if (doc.at("version").get<int>() != kVersion) {
      throw IngestionError("unsupported posterior format version");
    }
    PosteriorSamples s;
    const auto& p = doc.at("params");
    s.params = {p.at("depth").get<int>(), p.at("alpha").get<double>(),
                p.at("delta").get<double>()};
    s.params.validate();
    s.centering = CenteringMeasure(doc.at("centering").at(0).get<double>(),
                                   doc.at("centering").at(1).get<double>());
    const auto& c = doc.at("config");
    s.config.iterations = c.at("iterations").get<int>();
    s.config.burn_in = c.at("burn_in").get<int>();
    s.config.thin = c.at("thin").get<int>();
    s.config.kappa = c.at("kappa").get<double>();
    s.config.kappa_alpha = c.at("kappa_alpha").get<double>();
    s.config.seed = c.at("seed").get<std::uint64_t>();
    s.config.quad_nodes = c.at("quad_nodes").get<int>();
    s.config.grid_angles = c.at("grid_angles").get<int>();
    s.config.rule = c.at("rule").get<std::string>() == "trapezoid" ? RadialRule::Trapezoid
                                                                   : RadialRule::Riemann;
    if (!c.at("alpha_prior").is_null()) {
      s.config.alpha_prior = GammaPrior{c["alpha_prior"].at(0).get<double>(),
                                        c["alpha_prior"].at(1).get<double>()};
    }
    if (!c.at("mu_prior").is_null()) {
      s.config.mu_prior = NormalPrior{c["mu_prior"].at(0).get<double>(),
                                      c["mu_prior"].at(1).get<double>()};
    }
    s.angles = doc.at("angles").get<std::vector<double>>();
    s.grid = doc.at("grid").get<std::vector<double>>();
    s.accept_rate_r = doc.at("accept_rate_r").get<std::vector<double>>();
    s.accept_rate_alpha = doc.at("accept_rate_alpha").get<double>();
    const std::size_t n = s.angles.size();
    bool all_trees = true;
    for (const auto& jd : doc.at("draws")) {
      StoredDraw d;
      d.iteration = jd.at("iteration").get<int>();
      d.alpha = jd.at("alpha").get<double>();
      d.mu = CenteringMeasure(jd.at("mu").at(0).get<double>(), jd.at("mu").at(1).get<double>());
      d.resultants = jd.at("resultants").get<std::vector<double>>();
      d.density_at_data = jd.at("density_at_data").get<std::vector<double>>();
      d.density_on_grid = jd.at("density_on_grid").get<std::vector<double>>();
      if (d.resultants.size() != n || d.density_at_data.size() != n ||
          d.density_on_grid.size() != s.grid.size()) {
        throw IngestionError("stored draw does not match the data size");
      }
      if (jd.contains("tree")) {
        d.tree = tree_from_json(jd["tree"], s.params.depth);
      } else {
        all_trees = false;
      }
      s.draws.push_back(std::move(d));
    }
    if (!all_trees) {
      for (auto& d : s.draws) d.tree.reset();
    }
    if (s.draws.empty()) throw IngestionError("posterior holds no draws");
    return s;
  } catch (const json::exception& e) {
    throw IngestionError(std::string("malformed posterior document: ") + e.what());
  } catch (const DomainError& e) {
    throw IngestionError(std::string("invalid posterior document: ") + e.what());
  }
}

}  // namespace pptree
