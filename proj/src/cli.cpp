// Copyright 2026 The osp-lab Authors. All rights reserved.
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

#include "osp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "osp/oracles.hpp"
#include "osp/rng.hpp"

namespace osp {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// %.17g round-trips every double.
std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": not a finite number: '" + s + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& s) {
  Int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ConfigError(key + ": not an integer: '" + s + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

std::vector<std::string> tokens(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

Vec to_vec(const std::string& key, const std::string& s) {
  const auto w = tokens(s);
  if (w.empty()) throw ConfigError(key + ": empty vector");
  Vec v(static_cast<Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Index>(i)) = to_double(key, w[i]);
  return v;
}

Mat to_mat(const std::string& key, const std::string& s) {
  std::vector<Vec> rows;
  std::istringstream is(s);
  for (std::string row; std::getline(is, row, ';');) rows.push_back(to_vec(key, row));
  if (rows.empty()) throw ConfigError(key + ": empty matrix");
  Mat m(static_cast<Index>(rows.size()), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ConfigError(key + ": ragged matrix rows");
    m.row(static_cast<Index>(i)) = rows[i].transpose();
  }
  return m;
}

std::string vec_text(const Vec& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + exact(v(i));
  return out;
}

std::string mat_text(const Mat& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    out += vec_text(m.row(i).transpose());
  }
  return out;
}

bool same_vec(const std::optional<Vec>& a, const std::optional<Vec>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->size() == b->size() && *a == *b);
}

std::string step_rule_name(StepRule r) {
  return r == StepRule::kExtragradientFixed ? "extragradient" : "gda_diminishing";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  int line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  RunConfig c;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  };

  c.scenario.generator_id = require("scenario.id");
  c.scenario.T = to_int<long>("scenario.T", require("scenario.T"));
  if (c.scenario.T < 1) throw ConfigError("scenario.T must be >= 1");
  if (auto v = take("scenario.H")) c.scenario.H = to_double("scenario.H", *v);
  if (auto v = take("scenario.G")) c.scenario.G = to_double("scenario.G", *v);
  if (auto v = take("scenario.pattern")) c.scenario.pattern = to_int<int>("scenario.pattern", *v);
  if (auto v = take("scenario.d1")) c.scenario.d1 = to_int<Index>("scenario.d1", *v);
  if (auto v = take("scenario.d2")) c.scenario.d2 = to_int<Index>("scenario.d2", *v);
  if (auto v = take("scenario.matrix")) c.scenario.matrix = to_mat("scenario.matrix", *v);
  if (auto v = take("scenario.budgets")) c.scenario.budgets = to_vec("scenario.budgets", *v);
  if (auto v = take("scenario.y_max")) c.scenario.y_max = to_vec("scenario.y_max", *v);
  const auto ids = scenario_ids();
  if (std::find(ids.begin(), ids.end(), c.scenario.generator_id) == ids.end()) {
    throw ConfigError("unknown scenario '" + c.scenario.generator_id + "'");
  }

  c.algorithm.id = require("algorithm.id");
  std::vector<std::string> names;
  try {
    names = algorithm_param_names(c.algorithm.id);
  } catch (const IncompatiblePairing&) {
    throw ConfigError("unknown algorithm '" + c.algorithm.id + "'");
  }
  for (const auto& n : names) {
    if (auto v = take("algorithm." + n)) c.algorithm.params[n] = to_double("algorithm." + n, *v);
  }

  if (auto v = take("solver.tol_gap")) c.algorithm.solver.tol_gap = to_double("solver.tol_gap", *v);
  if (auto v = take("solver.max_iters")) {
    c.algorithm.solver.max_iters = to_int<long>("solver.max_iters", *v);
  }
  if (auto v = take("solver.step_rule")) {
    if (*v == "extragradient") {
      c.algorithm.solver.step_rule = StepRule::kExtragradientFixed;
    } else if (*v == "gda_diminishing") {
      c.algorithm.solver.step_rule = StepRule::kGdaDiminishing;
    } else {
      throw ConfigError("solver.step_rule: expected extragradient or gda_diminishing");
    }
  }
  if (!(c.algorithm.solver.tol_gap > 0.0) || c.algorithm.solver.max_iters < 1) {
    throw ConfigError("solver: tol_gap must be > 0 and max_iters >= 1");
  }

  const auto list = take("seeds.list");
  const auto count = take("seeds.count");
  const auto master = take("seeds.master");
  if (list && (count || master)) throw ConfigError("seeds: give either list or count + master");
  if (list) {
    for (const auto& w : tokens(*list)) c.seed_list.push_back(to_int<std::uint64_t>("seeds.list", w));
    if (c.seed_list.empty()) throw ConfigError("seeds.list is empty");
  } else {
    if (!count) throw ConfigError("missing seeds.list or seeds.count");
    c.seed_count = to_int<long>("seeds.count", *count);
    if (c.seed_count < 1) throw ConfigError("seeds.count must be >= 1");
    if (master) c.master_seed = to_int<std::uint64_t>("seeds.master", *master);
  }

  if (auto v = take("output.path")) c.output_path = *v;
  if (auto v = take("output.series")) c.emit_series = to_bool("output.series", *v);
  if (auto v = take("output.series_points")) {
    c.series_points = to_int<long>("output.series_points", *v);
    if (c.series_points < 1) throw ConfigError("output.series_points must be >= 1");
  }
  if (auto v = take("output.svg")) c.emit_svg = to_bool("output.svg", *v);
  if (auto v = take("output.wall_time")) c.wall_time = to_bool("output.wall_time", *v);
  if (auto v = take("run.threads")) c.threads = to_int<int>("run.threads", *v);
  if (auto v = take("run.gap_budget")) {
    c.gap_budget = to_double("run.gap_budget", *v);
    if (!(c.gap_budget > 0.0)) throw ConfigError("run.gap_budget must be > 0");
  }

  if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  const ScenarioSpec& s = c.scenario;
  os << "scenario.id = " << s.generator_id << "\n";
  os << "scenario.T = " << s.T << "\n";
  os << "scenario.H = " << exact(s.H) << "\n";
  os << "scenario.G = " << exact(s.G) << "\n";
  os << "scenario.pattern = " << s.pattern << "\n";
  os << "scenario.d1 = " << s.d1 << "\n";
  os << "scenario.d2 = " << s.d2 << "\n";
  if (s.matrix.size() > 0) os << "scenario.matrix = " << mat_text(s.matrix) << "\n";
  if (s.budgets) os << "scenario.budgets = " << vec_text(*s.budgets) << "\n";
  if (s.y_max) os << "scenario.y_max = " << vec_text(*s.y_max) << "\n";
  os << "algorithm.id = " << c.algorithm.id << "\n";
  for (const auto& [k, v] : c.algorithm.params) os << "algorithm." << k << " = " << exact(v) << "\n";
  os << "solver.tol_gap = " << exact(c.algorithm.solver.tol_gap) << "\n";
  os << "solver.max_iters = " << c.algorithm.solver.max_iters << "\n";
  os << "solver.step_rule = " << step_rule_name(c.algorithm.solver.step_rule) << "\n";
  if (!c.seed_list.empty()) {
    os << "seeds.list =";
    for (auto v : c.seed_list) os << " " << v;
    os << "\n";
  } else {
    os << "seeds.count = " << c.seed_count << "\n";
    os << "seeds.master = " << c.master_seed << "\n";
  }
  os << "output.path = " << c.output_path << "\n";
  os << "output.series = " << (c.emit_series ? "true" : "false") << "\n";
  os << "output.series_points = " << c.series_points << "\n";
  os << "output.svg = " << (c.emit_svg ? "true" : "false") << "\n";
  os << "output.wall_time = " << (c.wall_time ? "true" : "false") << "\n";
  os << "run.threads = " << c.threads << "\n";
  os << "run.gap_budget = " << exact(c.gap_budget) << "\n";
  return os.str();
}

bool same_config(const RunConfig& a, const RunConfig& b) {
  const ScenarioSpec &s = a.scenario, &t = b.scenario;
  const bool mat = s.matrix.rows() == t.matrix.rows() && s.matrix.cols() == t.matrix.cols() &&
                   (s.matrix.size() == 0 || s.matrix == t.matrix);
  return s.generator_id == t.generator_id && s.T == t.T && s.H == t.H && s.G == t.G &&
         s.pattern == t.pattern && s.d1 == t.d1 && s.d2 == t.d2 && mat &&
         same_vec(s.budgets, t.budgets) && same_vec(s.y_max, t.y_max) &&
         a.algorithm.id == b.algorithm.id && a.algorithm.params == b.algorithm.params &&
         a.algorithm.solver.tol_gap == b.algorithm.solver.tol_gap &&
         a.algorithm.solver.max_iters == b.algorithm.solver.max_iters &&
         a.algorithm.solver.step_rule == b.algorithm.solver.step_rule &&
         a.seed_list == b.seed_list && a.seed_count == b.seed_count &&
         a.master_seed == b.master_seed && a.output_path == b.output_path &&
         a.emit_series == b.emit_series && a.series_points == b.series_points &&
         a.emit_svg == b.emit_svg && a.wall_time == b.wall_time && a.threads == b.threads &&
         a.gap_budget == b.gap_budget;
}

std::vector<std::uint64_t> resolve_seeds(const RunConfig& c) {
  if (!c.seed_list.empty()) return c.seed_list;
  std::vector<std::uint64_t> out;
  for (long k = 0; k < c.seed_count; ++k) {
    out.push_back(Rng::substream(c.master_seed, static_cast<std::uint64_t>(k)).next_u64());
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_summary_csv(std::ostream& os, const ExperimentResult& res, bool wall_time) {
  const bool knap = res.knapsack_regret.has_value();
  os << "scenario,algorithm,T,seed_count,sp_regret_mean,sp_regret_stderr,ind_x_mean,ind_y_mean,"
        "hindsight_value,wall_ms";
  if (knap) {
    os << ",r_star,knapsack_regret_mean,knapsack_regret_stderr,reward_ratio_mean,"
          "reward_ratio_stderr,violated_fraction";
  }
  os << "\n";
  os << res.spec.generator_id << "," << res.algorithm.id << "," << res.spec.T << ","
     << res.runs.size() << "," << format_number(res.sp_regret.mean) << ","
     << format_number(res.sp_regret.stderr_) << "," << format_number(res.ind_x.mean) << ","
     << format_number(res.ind_y.mean) << "," << format_number(res.hindsight_mean) << ","
     << format_number(wall_time ? res.wall_ms : 0.0);
  if (knap) {
    double violated = 0.0;
    for (const auto& r : res.runs) violated += r.knapsack->violated ? 1.0 : 0.0;
    os << "," << format_number(res.runs.front().knapsack->r_star) << ","
       << format_number(res.knapsack_regret->mean) << ","
       << format_number(res.knapsack_regret->stderr_) << ","
       << format_number(res.reward_ratio->mean) << "," << format_number(res.reward_ratio->stderr_)
       << "," << format_number(violated / static_cast<double>(res.runs.size()));
  }
  os << "\n";
}

namespace {

struct SeriesRow {
  long t = 0;
  std::vector<double> values;
};

// Seed-mean series; columns after t as named by series_header.
std::vector<SeriesRow> mean_series(const ExperimentResult& res, Index m) {
  const bool knap = res.knapsack_regret.has_value();
  const std::size_t n = res.runs.front().report.series.size();
  for (const auto& r : res.runs) {
    if (r.report.series.size() != n) throw PreconditionError("series: ragged checkpoints");
    if (knap && r.trace.rounds.empty() && n > 0) {
      throw PreconditionError("series: knapsack runs need traces");
    }
  }
  const KnapsackInstance* inst = nullptr;
  std::optional<KnapsackInstance> owned;
  if (knap) {
    owned = make_scenario(res.spec).knapsack;
    inst = &*owned;
  }
  const double seeds = static_cast<double>(res.runs.size());
  std::vector<SeriesRow> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    rows[k].t = res.runs.front().report.series[k].t;
    rows[k].values.assign(4 + (knap ? 2 + static_cast<std::size_t>(m) : 0), 0.0);
  }
  for (const auto& r : res.runs) {
    double reward = 0.0;
    Vec used = Vec::Zero(m);
    std::size_t round = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const SeriesPoint& p = r.report.series[k];
      auto& v = rows[k].values;
      v[0] += p.cum_payoff / seeds;
      v[1] += p.cum_sp_regret / seeds;
      v[2] += p.cum_ind_x / seeds;
      v[3] += p.cum_ind_y / seeds;
      if (!knap) continue;
      for (; round < static_cast<std::size_t>(p.t); ++round) {
        const KnapsackRecord& kr = *r.trace.rounds[round].knapsack;
        reward += kr.collected;
        used += kr.consumption;
      }
      v[4] += reward / seeds;
      for (Index i = 0; i < m; ++i) v[5 + i] += used(i) / inst->b(i) / seeds;
      v[5 + m] += (r.trace.rounds[round - 1].knapsack->violated ? 1.0 : 0.0) / seeds;
    }
  }
  return rows;
}

Index budget_count(const ExperimentResult& res) {
  if (!res.knapsack_regret) return 0;
  return res.runs.front().knapsack->total_consumption.size();
}

}  // namespace

void write_series_csv(std::ostream& os, const ExperimentResult& res) {
  const Index m = budget_count(res);
  os << "t,cum_payoff,cum_sp_regret,cum_ind_x,cum_ind_y";
  if (res.knapsack_regret) {
    os << ",cum_reward";
    for (Index i = 1; i <= m; ++i) os << ",budget_frac_" << i;
    os << ",violated";
  }
  os << "\n";
  for (const auto& row : mean_series(res, m)) {
    os << row.t;
    for (double v : row.values) os << "," << format_number(v);
    os << "\n";
  }
}

void write_metadata(std::ostream& os, const RunConfig& cfg, const ExperimentResult& res) {
  os << "# configuration\n" << serialize_config(cfg);
  os << "# resolved parameters: value, then the formula or 'override'\n";
  for (const auto& p : res.runs.front().params) {
    os << "param." << p.name << " = " << exact(p.value) << "  # " << p.formula << "\n";
  }
  os << "resolved.seeds =";
  for (const auto& r : res.runs) os << " " << r.seed;
  os << "\n";
  double round_gap = 0.0, hind_gap = 0.0;
  for (const auto& r : res.runs) {
    round_gap = std::max(round_gap, r.max_round_gap);
    hind_gap = std::max(hind_gap, r.report.hindsight_gap);
  }
  os << "diagnostics.max_round_gap = " << format_number(round_gap) << "\n";
  os << "diagnostics.max_hindsight_gap = " << format_number(hind_gap) << "\n";
}

void write_series_svg(std::ostream& os, const ExperimentResult& res) {
  const auto rows = mean_series(res, budget_count(res));
  const char* names[] = {"cum_sp_regret", "cum_ind_x", "cum_ind_y"};
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  const double W = 640, H = 400, pad = 50;
  double lo = 0.0, hi = 0.0, tmax = 1.0;
  for (const auto& r : rows) {
    tmax = std::max(tmax, static_cast<double>(r.t));
    for (int c = 1; c <= 3; ++c) {
      lo = std::min(lo, r.values[c]);
      hi = std::max(hi, r.values[c]);
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  auto px = [&](double t) { return pad + (W - 2 * pad) * t / tmax; };
  auto py = [&](double v) { return H - pad - (H - 2 * pad) * (v - lo) / (hi - lo); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << py(0) << "\" x2=\"" << W - pad << "\" y2=\"" << py(0)
     << "\" stroke=\"#999\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"20\" font-size=\"12\">" << res.spec.generator_id << " / "
     << res.algorithm.id << "  (y from " << format_number(lo) << " to " << format_number(hi)
     << ", t up to " << format_number(tmax) << ")</text>\n";
  for (int c = 0; c < 3; ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[c] << "\" points=\"";
    for (const auto& r : rows) os << format_number(px(r.t)) << "," << format_number(py(r.values[c + 1])) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - pad - 100 << "\" y=\"" << 40 + 15 * c << "\" font-size=\"12\" fill=\""
       << colors[c] << "\">" << names[c] << "</text>\n";
  }
  os << "</svg>\n";
}

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_code::kParseError;
  }

  ExperimentResult res;
  try {
    const bool knap = make_scenario(cfg.scenario).family == ScenarioFamily::kKnapsack;
    RunOptions opt;
    opt.threads = cfg.threads;
    opt.series_points = cfg.emit_series || cfg.emit_svg ? cfg.series_points : 0;
    opt.keep_trace = knap && opt.series_points > 0;
    res = run_experiment(cfg.scenario, cfg.algorithm, resolve_seeds(cfg), opt);
  } catch (const IncompatiblePairing& e) {
    err << "incompatible pairing: " << e.what() << "\n";
    return exit_code::kIncompatible;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_code::kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return exit_code::kParseError;
  }

  auto open = [&](const std::string& suffix, std::ofstream& f) {
    f.open(cfg.output_path + suffix, std::ios::binary);
    if (!f) err << "cannot write '" << cfg.output_path + suffix << "'\n";
    return static_cast<bool>(f);
  };
  std::ofstream summary, meta;
  if (!open("_summary.csv", summary) || !open("_meta.txt", meta)) return exit_code::kParseError;
  write_summary_csv(summary, res, cfg.wall_time);
  write_metadata(meta, cfg, res);
  if (cfg.emit_series) {
    std::ofstream series;
    if (!open("_series.csv", series)) return exit_code::kParseError;
    write_series_csv(series, res);
  }
  if (cfg.emit_svg) {
    std::ofstream svg;
    if (!open(".svg", svg)) return exit_code::kParseError;
    write_series_svg(svg, res);
  }

  out << "scenario=" << res.spec.generator_id << " algorithm=" << res.algorithm.id
      << " T=" << res.spec.T << " seeds=" << res.runs.size()
      << " sp_regret=" << format_number(res.sp_regret.mean) << " +- "
      << format_number(res.sp_regret.stderr_) << " ind_x=" << format_number(res.ind_x.mean)
      << " ind_y=" << format_number(res.ind_y.mean)
      << " hindsight=" << format_number(res.hindsight_mean);
  if (res.knapsack_regret) {
    out << " knapsack_regret=" << format_number(res.knapsack_regret->mean) << " +- "
        << format_number(res.knapsack_regret->stderr_)
        << " reward_ratio=" << format_number(res.reward_ratio->mean);
  }
  out << " wall_ms=" << format_number(res.wall_ms) << "\n";

  // Solver accuracy is part of the result: a loose solve invalidates it.
  int code = exit_code::kOk;
  for (const auto& r : res.runs) {
    const double worst = std::max(r.max_round_gap, r.report.hindsight_gap);
    if (worst > cfg.gap_budget) {
      err << "non-convergence: seed " << r.seed << " round gap "
          << format_number(r.max_round_gap) << ", hindsight gap "
          << format_number(r.report.hindsight_gap) << " exceed run.gap_budget "
          << format_number(cfg.gap_budget) << "\n";
      code = exit_code::kNonConvergence;
    }
  }
  return code;
}

int cmd_oracle_check(std::ostream& out, const oracle::SuiteOptions& opt) {
  const auto results = oracle::run_suite(opt);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  error " << format_number(r.error)
        << " tol " << format_number(r.tolerance);
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << "\n";
    if (!r.passed) failed.push_back(r.name);
  }
  if (failed.empty()) {
    out << "all " << results.size() << " oracles passed\n";
    return exit_code::kOk;
  }
  out << failed.size() << " oracle(s) failed:\n";
  for (const auto& f : failed) out << "  " << f << "\n";
  return exit_code::kOracleFailure;
}

int cmd_list_scenarios(std::ostream& out) {
  for (const auto& s : scenario_ids()) out << s << "\n";
  return exit_code::kOk;
}

int cmd_list_algorithms(std::ostream& out) {
  for (const auto& a : algorithm_ids()) {
    out << a;
    for (const auto& p : algorithm_param_names(a)) out << " " << p;
    out << "\n";
  }
  return exit_code::kOk;
}

}  // namespace osp
