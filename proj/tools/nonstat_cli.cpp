// Command-line front end: every subcommand reads JSON configs, writes CSV
// plus a machine-readable summary.json, and exits 0 on pass, 1 on check
// failure, 2 on usage errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nonstat/bounds.hpp"
#include "nonstat/chain.hpp"
#include "nonstat/erm.hpp"
#include "nonstat/experiments.hpp"
#include "nonstat/finite_chain.hpp"
#include "nonstat/model_io.hpp"
#include "nonstat/moments.hpp"
#include "nonstat/selection.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nonstat;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const char* ctx) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(std::string(ctx) + ": unknown key '" + key + "'");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_summary(const fs::path& dir, const json& j) {
  write_text(dir / "summary.json", j.dump(2) + "\n");
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  for (int j = 1; j <= traj.dim; ++j) os << ",x_" << j;
  os << "\n";
  for (int t = 1; t <= traj.n; ++t) {
    os << t;
    for (int j = 0; j < traj.dim; ++j) os << "," << csv_real(traj.at(t - 1, j));
    os << "\n";
  }
  return os.str();
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file");
  int dim = 0;
  for (char c : line)
    if (c == ',') ++dim;
  if (dim < 1) throw std::runtime_error("trajectory header must be t,x_1[,..]");
  Trajectory traj;
  traj.dim = dim;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // t column
    for (int j = 0; j < dim; ++j) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error("short trajectory row: " + line);
      traj.data.push_back(std::stod(cell));
    }
    ++traj.n;
  }
  if (traj.n < 1) throw std::runtime_error("trajectory has no rows");
  return traj;
}

int run_simulate(const std::string& config, int n, std::uint64_t seed,
                 std::uint64_t replicate, const std::string& out_dir) {
  const ChainModel model = load_model_file(config);
  const Trajectory traj = simulate(model, n, seed, replicate);
  write_text(fs::path(out_dir) / "trajectory.csv", trajectory_csv(traj));
  json summary;
  summary["model"] = model_to_json(model);
  summary["n"] = n;
  summary["seed"] = seed;
  summary["replicate_index"] = replicate;
  summary["pass"] = true;
  write_summary(out_dir, summary);
  return 0;
}

int run_bound(const std::string& config, const std::string& out_dir) {
  const json cfg = load_json_file(config);
  require_keys(cfg, {"family", "x_grid", "bernstein", "cramer", "mcdiarmid"},
               "bound config");
  const std::string family = cfg.at("family").get<std::string>();
  const std::vector<double> xs = cfg.at("x_grid").get<std::vector<double>>();
  std::ostringstream os;
  os << "family,x,bound_refined,bound_simple\n";
  for (double x : xs) {
    double refined, simple;
    if (family == "bernstein") {
      const BernsteinInputs in = parse_bernstein(cfg.at("bernstein"));
      refined = bernstein_tail(in, x, true);
      simple = bernstein_tail(in, x, false);
    } else if (family == "cramer") {
      const CramerInputs in = parse_cramer(cfg.at("cramer"));
      const CramerBound cb = cramer_bound(in, x);
      refined = cb.refined;
      simple = cb.loose;
    } else if (family == "mcdiarmid") {
      const McDiarmidInputs in = parse_mcdiarmid(cfg.at("mcdiarmid"));
      const RioBound rb = rio_tail(in, x);
      refined = rb.rio;
      simple = rb.mcdiarmid;
    } else {
      throw std::invalid_argument("bound: unknown family '" + family + "'");
    }
    os << family << "," << csv_real(x) << "," << csv_real(refined) << ","
       << csv_real(simple) << "\n";
  }
  write_text(fs::path(out_dir) / "bounds.csv", os.str());
  json summary;
  summary["family"] = family;
  summary["rows"] = xs.size();
  summary["pass"] = true;
  write_summary(out_dir, summary);
  return 0;
}

int run_fit_period(const std::string& traj_path, const std::string& config,
                   const std::string& out_dir) {
  const json cfg = load_json_file(config);
  require_keys(cfg, {"loss", "class", "t_max", "c1", "net_epsilon"}, "fit config");
  const Trajectory traj = read_trajectory_csv(traj_path);
  const LossSpec loss = cfg.contains("loss") ? parse_loss(cfg.at("loss")) : LossSpec{};
  PredictorClass cls;
  if (cfg.contains("class")) {
    cls = parse_predictor_class(cfg.at("class"));
  } else {
    cls.dim = traj.dim;
    cls.kind = traj.dim == 1 ? PredictorKind::scalar_ar1 : PredictorKind::var1;
  }
  const int t_max = cfg.value("t_max", 20);
  const double c1 = cfg.value("c1", 0.0);
  const double net_eps = cfg.value("net_epsilon", 0.0);

  const FitReport rep = select_period_penalized(traj, t_max, cls, loss, c1, net_eps);

  std::ostringstream os;
  os << "T,risk,penalty,objective\n";
  for (const auto& row : rep.per_t)
    os << row.t_period << "," << csv_real(row.empirical_risk) << ","
       << csv_real(row.penalty) << ","
       << csv_real(row.empirical_risk + row.penalty) << "\n";
  write_text(fs::path(out_dir) / "risk_vs_t.csv", os.str());

  json summary;
  summary["selected_t_penalized"] = rep.selected_t_penalized;
  summary["selected_t_slope"] = rep.selected_t_slope;
  summary["c_hat"] = rep.c_hat;
  json per_t = json::array();
  for (const auto& row : rep.per_t) {
    json r;
    r["T"] = row.t_period;
    r["risk"] = row.empirical_risk;
    r["penalty"] = row.penalty;
    r["erm_parameters"] = row.erm_parameters;
    per_t.push_back(r);
  }
  summary["per_t"] = per_t;
  summary["pass"] = true;
  write_summary(out_dir, summary);
  return 0;
}

int run_validate_bounds(const std::string& config, std::uint64_t seed, bool seed_set,
                        int threads, const std::string& out_dir) {
  json cfg = load_json_file(config);
  TailExperiment exp = parse_tail_experiment(cfg);
  if (seed_set) exp.base_seed = seed;
  if (threads > 0) exp.threads = threads;
  const ValidationReport rep = run_tail_experiment(exp);

  std::ostringstream os;
  os << "x,empirical_upper_freq,empirical_lower_freq,bound_refined,bound_simple,"
        "mc_stderr,pass\n";
  for (const auto& row : rep.rows)
    os << csv_real(row.x) << "," << csv_real(row.empirical_upper_freq) << ","
       << csv_real(row.empirical_lower_freq) << "," << csv_real(row.bound_refined)
       << "," << csv_real(row.bound_simple) << "," << csv_real(row.mc_stderr) << ","
       << (row.pass ? 1 : 0) << "\n";
  write_text(fs::path(out_dir) / "validation.csv", os.str());

  json summary;
  summary["centering_estimate"] = rep.centering_estimate;
  summary["centering_stderr"] = rep.centering_stderr;
  summary["rows"] = rep.rows.size();
  summary["pass"] = rep.all_pass;
  write_summary(out_dir, summary);
  return rep.all_pass ? 0 : 1;
}

int run_verify_lemma1(int chains, std::uint64_t seed, const std::string& out_dir) {
  std::ostringstream report, csv;
  csv << "chain,functional,t,point1_slack,point2_slack,point3_slack\n";
  bool all_ok = true;
  const std::vector<std::pair<const char*, Functional>> functionals = {
      {"sum", functional_sum()},
      {"sum_abs", functional_sum_abs()},
      {"max", functional_max()}};
  for (int c = 0; c < chains; ++c) {
    const FiniteChain chain = random_finite_chain(seed + static_cast<std::uint64_t>(c));
    for (const auto& [name, f] : functionals) {
      const Lemma1Report rep = check_lemma1(chain, f);
      all_ok = all_ok && rep.ok;
      report << "chain " << c << " n=" << chain.n << " rho=" << chain.rho << " f="
             << name << ": " << rep.summary() << "\n";
      for (int t = 1; t <= chain.n; ++t) {
        csv << c << "," << name << "," << t << ","
            << csv_real(rep.point1_slack_per_t[static_cast<std::size_t>(t - 1)]) << ","
            << csv_real(rep.point2_slack_per_t[static_cast<std::size_t>(t - 1)]) << ",";
        if (t >= 2)
          csv << csv_real(rep.point3_slack_per_t[static_cast<std::size_t>(t - 2)]);
        csv << "\n";
      }
    }
  }
  write_text(fs::path(out_dir) / "report.txt", report.str());
  write_text(fs::path(out_dir) / "slacks.csv", csv.str());
  json summary;
  summary["chains"] = chains;
  summary["seed"] = seed;
  summary["pass"] = all_ok;
  write_summary(out_dir, summary);
  return all_ok ? 0 : 1;
}

int run_check_moments(const std::string& config, const std::string& n_list_str,
                      int replicates, std::uint64_t seed, int threads,
                      const std::string& out_dir) {
  const ChainModel model = load_model_file(config);
  std::vector<int> n_list;
  std::istringstream ls(n_list_str);
  std::string cell;
  while (std::getline(ls, cell, ',')) n_list.push_back(std::stoi(cell));
  const MomentLemmaReport rep = check_moment_lemma(model, n_list, replicates, seed, threads);
  std::ostringstream os;
  os << "n,estimate,mc_stderr,bound,pass\n";
  for (const auto& row : rep.rows)
    os << row.n << "," << csv_real(row.estimate) << "," << csv_real(row.mc_stderr)
       << "," << csv_real(row.bound) << "," << (row.pass ? 1 : 0) << "\n";
  write_text(fs::path(out_dir) / "moments.csv", os.str());
  json summary;
  summary["replicates"] = replicates;
  summary["pass"] = rep.all_pass;
  write_summary(out_dir, summary);
  return rep.all_pass ? 0 : 1;
}

int run_reproduce_study(std::uint64_t seed, const std::string& out_dir) {
  const StudyResult study = reproduce_simulation_study(seed);
  write_text(fs::path(out_dir) / "trajectory.csv", trajectory_csv(study.traj));

  std::ostringstream acf;
  acf << "lag,acf\n";
  for (std::size_t lag = 0; lag < study.acf.size(); ++lag)
    acf << lag << "," << csv_real(study.acf[lag]) << "\n";
  write_text(fs::path(out_dir) / "acf.csv", acf.str());

  std::ostringstream risks;
  risks << "T,risk,penalty,objective\n";
  for (const auto& row : study.fit.per_t) {
    const double pen = 2.0 * study.c_hat * std::sqrt(static_cast<double>(row.t_period));
    risks << row.t_period << "," << csv_real(row.empirical_risk) << ","
          << csv_real(pen) << "," << csv_real(row.empirical_risk + pen) << "\n";
  }
  write_text(fs::path(out_dir) / "risk_vs_t.csv", risks.str());

  std::ostringstream trace;
  trace << "c,t_hat\n";
  for (const auto& [c, t] : study.fit.slope_trace)
    trace << csv_real(c) << "," << t << "\n";
  write_text(fs::path(out_dir) / "slope_trace.csv", trace.str());

  json summary;
  summary["seed"] = seed;
  summary["selected_t"] = study.selected_t;
  summary["c_hat"] = study.c_hat;
  summary["boundary_enter_4"] = study.boundary_enter_4;
  summary["boundary_enter_1"] = study.boundary_enter_1;
  summary["pass"] = true;
  write_summary(out_dir, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail inequalities and periodic autoregression for one-step "
               "contracting Markov chains"};
  app.require_subcommand(1);

  std::string config, out_dir = "out", traj_path, n_list = "2,5,10,50";
  std::uint64_t seed = 0, replicate = 0;
  int n = 100, threads = 0, replicates = 100000, chains = 20;

  auto* sim = app.add_subcommand("simulate", "Simulate a chain trajectory");
  sim->add_option("--config", config, "Model specification (JSON)")->required();
  sim->add_option("--n", n, "Trajectory length");
  sim->add_option("--seed", seed, "Base seed");
  sim->add_option("--replicate", replicate, "Replicate index");
  sim->add_option("--out", out_dir, "Output directory");

  auto* bound = app.add_subcommand("bound", "Evaluate tail bounds on an x-grid");
  bound->add_option("--config", config, "Bound inputs + x_grid (JSON)")->required();
  bound->add_option("--out", out_dir, "Output directory");

  auto* fit = app.add_subcommand("fit-period", "ERM fit and period selection");
  fit->add_option("--traj", traj_path, "Trajectory CSV (t,x_1..x_d)")->required();
  fit->add_option("--config", config, "Fit configuration (JSON)")->required();
  fit->add_option("--out", out_dir, "Output directory");

  auto* val = app.add_subcommand("validate-bounds",
                                 "Monte Carlo tail frequencies vs bounds");
  val->add_option("--config", config, "Tail experiment (JSON)")->required();
  auto* val_seed = val->add_option("--seed", seed, "Base seed override");
  val->add_option("--threads", threads, "Worker count (0 = auto)");
  val->add_option("--out", out_dir, "Output directory");

  auto* lem = app.add_subcommand("verify-lemma1",
                                 "Exact decomposition checks on finite chains");
  lem->add_option("--chains", chains, "Number of randomized chains");
  lem->add_option("--seed", seed, "Base seed");
  lem->add_option("--out", out_dir, "Output directory");

  auto* mom = app.add_subcommand("check-moments", "Moment bound vs Monte Carlo");
  mom->add_option("--config", config, "Model specification (JSON)")->required();
  mom->add_option("--n-list", n_list, "Comma-separated horizons");
  mom->add_option("--replicates", replicates, "Replicates per horizon");
  mom->add_option("--seed", seed, "Base seed");
  mom->add_option("--threads", threads, "Worker count (0 = auto)");
  mom->add_option("--out", out_dir, "Output directory");

  auto* study = app.add_subcommand("reproduce-study",
                                   "Periodic AR(1) simulation study");
  study->add_option("--seed", seed, "Base seed");
  study->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(config, n, seed, replicate, out_dir);
    if (bound->parsed()) return run_bound(config, out_dir);
    if (fit->parsed()) return run_fit_period(traj_path, config, out_dir);
    if (val->parsed())
      return run_validate_bounds(config, seed, val_seed->count() > 0, threads, out_dir);
    if (lem->parsed()) return run_verify_lemma1(chains, seed, out_dir);
    if (mom->parsed())
      return run_check_moments(config, n_list, replicates, seed, threads, out_dir);
    if (study->parsed()) return run_reproduce_study(seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
