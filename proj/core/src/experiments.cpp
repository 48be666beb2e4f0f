#include "nonstat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace nonstat {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NONSTAT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::int64_t count, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  const int workers = std::max(1, resolve_threads(threads));
  constexpr std::int64_t kChunk = 4096;
  if (workers == 1 || count <= kChunk) {
    fn(0, count);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t begin = next.fetch_add(kChunk);
        if (begin >= count) break;
        fn(begin, std::min(begin + kChunk, count));
      }
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

double eval_functional(const Trajectory& traj, TailFunctional f) {
  double s = 0.0;
  switch (f) {
    case TailFunctional::coordinate_sum:
      for (double v : traj.data) s += v;
      break;
    case TailFunctional::sum_of_norms:
      for (int t = 0; t < traj.n; ++t) {
        double r2 = 0.0;
        for (int j = 0; j < traj.dim; ++j) r2 += traj.at(t, j) * traj.at(t, j);
        s += std::sqrt(r2);
      }
      break;
  }
  return s;
}

// mean and stderr of a sample accumulated sequentially (deterministic order)
std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

std::vector<double> functional_samples(const ChainModel& model, int n,
                                       TailFunctional f, std::uint64_t base_seed,
                                       std::int64_t rep_offset, std::int64_t count,
                                       int threads) {
  std::vector<double> out(static_cast<std::size_t>(count));
  parallel_chunks(count, threads, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t r = b; r < e; ++r) {
      const Trajectory traj =
          simulate(model, n, base_seed, static_cast<std::uint64_t>(rep_offset + r));
      out[static_cast<std::size_t>(r)] = eval_functional(traj, f);
    }
  });
  return out;
}

}  // namespace

ValidationReport run_tail_experiment(const TailExperiment& exp) {
  if (exp.replicates < 10000)
    throw std::invalid_argument("run_tail_experiment: need >= 1e4 replicates");
  for (std::size_t i = 0; i < exp.x_grid.size(); ++i) {
    if (exp.x_grid[i] < 0.0 || (i > 0 && exp.x_grid[i] < exp.x_grid[i - 1]))
      throw std::invalid_argument("run_tail_experiment: x_grid must be sorted, >= 0");
  }
  exp.model.validate();

  const std::int64_t reps = exp.replicates;
  // test batch at replicate indices [0, reps); centering batch at [reps, 2 reps)
  const std::vector<double> test =
      functional_samples(exp.model, exp.n, exp.functional, exp.base_seed, 0, reps,
                         exp.threads);
  const std::vector<double> center =
      functional_samples(exp.model, exp.n, exp.functional, exp.base_seed, reps, reps,
                         exp.threads);

  ValidationReport rep;
  std::tie(rep.centering_estimate, rep.centering_stderr) = mean_stderr(center);

  for (double x : exp.x_grid) {
    ValidationRow row;
    row.x = x;
    std::int64_t up = 0, lo = 0;
    for (double fv : test) {
      const double s = fv - rep.centering_estimate;
      if (s >= x) ++up;
      if (-s >= x) ++lo;
    }
    row.empirical_upper_freq = static_cast<double>(up) / static_cast<double>(reps);
    row.empirical_lower_freq = static_cast<double>(lo) / static_cast<double>(reps);
    switch (exp.family) {
      case BoundFamily::bernstein:
        row.bound_refined = bernstein_tail(exp.bernstein, x, true);
        row.bound_simple = bernstein_tail(exp.bernstein, x, false);
        break;
      case BoundFamily::cramer: {
        const CramerBound cb = cramer_bound(exp.cramer, x);
        row.bound_refined = cb.refined;
        row.bound_simple = cb.loose;
        break;
      }
      case BoundFamily::mcdiarmid: {
        const RioBound rb = rio_tail(exp.mcdiarmid, x);
        row.bound_refined = rb.rio;
        row.bound_simple = rb.mcdiarmid;
        break;
      }
    }
    const double p = std::max(row.empirical_upper_freq, row.empirical_lower_freq);
    row.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    row.pass = p <= row.bound_refined + 3.0 * row.mc_stderr;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

MomentLemmaReport check_moment_lemma(const ChainModel& model,
                                     const std::vector<int>& n_list, int replicates,
                                     std::uint64_t base_seed, int threads) {
  model.validate();
  MomentLemmaReport rep;
  std::uint64_t salt = 0;
  for (int n : n_list) {
    std::vector<double> norms(static_cast<std::size_t>(replicates));
    const std::uint64_t seed = mix64(base_seed ^ (0x6d6f6d656e740000ULL + salt++));
    parallel_chunks(replicates, threads, [&](std::int64_t b, std::int64_t e) {
      for (std::int64_t r = b; r < e; ++r) {
        const Trajectory traj = simulate(model, n, seed, static_cast<std::uint64_t>(r));
        double r2 = 0.0;
        for (int j = 0; j < traj.dim; ++j) r2 += traj.at(n - 1, j) * traj.at(n - 1, j);
        norms[static_cast<std::size_t>(r)] = std::sqrt(r2);
      }
    });
    MomentLemmaRow row;
    row.n = n;
    std::tie(row.estimate, row.mc_stderr) = mean_stderr(norms);
    row.bound = expected_norm_bound(model, n);
    row.pass = row.estimate <= row.bound + 3.0 * row.mc_stderr;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

// empirical risk of a window of `length` states extracted after a burn-in
// that ends at a phase boundary, so the window's time origin has phase 1
double window_risk(const Trajectory& traj, int burn, int length,
                   const PredictorClass& cls,
                   const std::vector<std::vector<double>>& predictors,
                   const LossSpec& loss) {
  const int t_period = static_cast<int>(predictors.size());
  const int d = traj.dim;
  std::vector<double> pred(static_cast<std::size_t>(d)), resid(static_cast<std::size_t>(d));
  double acc = 0.0;
  for (int i = 2; i <= length; ++i) {
    const auto& p = predictors[static_cast<std::size_t>(phase_index(i, t_period) - 1)];
    cls.predict(p, traj.state(burn + i - 2), pred);
    for (int j = 0; j < d; ++j)
      resid[static_cast<std::size_t>(j)] = traj.at(burn + i - 1, j) - pred[static_cast<std::size_t>(j)];
    acc += loss.eval(std::span<const double>(resid));
  }
  return acc / static_cast<double>(length - 1);
}

}  // namespace

RiskStationarityReport check_risk_stationarity(
    const ChainModel& model, int t_period, const LossSpec& loss,
    const std::vector<std::vector<double>>& predictors, int n, int replicates,
    std::uint64_t base_seed, int threads) {
  model.validate();
  loss.validate();
  if (static_cast<int>(predictors.size()) != t_period)
    throw std::invalid_argument("check_risk_stationarity: need T predictor vectors");
  if (static_cast<int>(model.period()) != t_period &&
      t_period % static_cast<int>(model.period()) != 0)
    throw std::invalid_argument(
        "check_risk_stationarity: period must be a multiple of the model period");

  PredictorClass cls;
  cls.kind = model.kind == UpdateKind::var1 ? PredictorKind::var1 : PredictorKind::scalar_ar1;
  cls.dim = model.dimension();
  cls.rho_max = model.rho;

  int burn = std::max(128, 32 * t_period);
  burn += (t_period - burn % t_period) % t_period;  // phase boundary
  const int total = burn + n;
  const int d = model.dimension();

  std::vector<double> rn(static_cast<std::size_t>(replicates));
  std::vector<double> rt(static_cast<std::size_t>(replicates));
  // phase-wise first/second moments of two adjacent post-burn-in periods,
  // used to certify that the law has settled into its periodic regime
  std::vector<double> m1a(static_cast<std::size_t>(replicates)), m1b(m1a), m2a(m1a), m2b(m1a);
  parallel_chunks(replicates, threads, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t r = b; r < e; ++r) {
      const Trajectory traj = simulate(model, total, base_seed, static_cast<std::uint64_t>(r));
      rn[static_cast<std::size_t>(r)] = window_risk(traj, burn, n, cls, predictors, loss);
      rt[static_cast<std::size_t>(r)] =
          window_risk(traj, burn, t_period + 1, cls, predictors, loss);
      double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
      for (int j = 0; j < t_period; ++j) {
        for (int k = 0; k < d; ++k) {
          const double xa = traj.at(burn + j, k);
          const double xb = traj.at(burn - t_period + j, k);
          a1 += xa;
          b1 += xb;
          a2 += xa * xa;
          b2 += xb * xb;
        }
      }
      m1a[static_cast<std::size_t>(r)] = a1;
      m1b[static_cast<std::size_t>(r)] = b1;
      m2a[static_cast<std::size_t>(r)] = a2;
      m2b[static_cast<std::size_t>(r)] = b2;
    }
  });

  RiskStationarityReport rep;
  std::tie(rep.r_n, rep.r_n_stderr) = mean_stderr(rn);
  std::tie(rep.r_tp1, rep.r_tp1_stderr) = mean_stderr(rt);

  {
    auto [am, as] = mean_stderr(m1a);
    auto [bm, bs] = mean_stderr(m1b);
    auto [am2, as2] = mean_stderr(m2a);
    auto [bm2, bs2] = mean_stderr(m2b);
    const bool first_ok = std::abs(am - bm) <= 5.0 * std::sqrt(as * as + bs * bs) + 1e-9;
    const bool second_ok =
        std::abs(am2 - bm2) <= 5.0 * std::sqrt(as2 * as2 + bs2 * bs2) + 1e-9;
    rep.periodic_law_certified = first_ok && second_ok;
  }

  // C0 with G_X1(0) replaced by the stationary bound G_eps(0)/(1-rho);
  // this upper-bounds the warmed chain's E||X_1|| so the inequality stands
  std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
  const double ge0 = g_eps(model, zero);
  const double c0 = loss.lipschitz() * (1.0 + model.rho) *
                    (ge0 / (1.0 - model.rho) + ge0 / (1.0 - model.rho));
  rep.bound = c0 * static_cast<double>(t_period + 1) / static_cast<double>(n - 1);
  const double gap = std::abs(rep.r_n - rep.r_tp1);
  const double margin =
      3.0 * std::sqrt(rep.r_n_stderr * rep.r_n_stderr + rep.r_tp1_stderr * rep.r_tp1_stderr);
  rep.pass = gap <= rep.bound + margin;
  return rep;
}

ChainModel study_model() {
  ChainModel model;
  model.kind = UpdateKind::ar1;
  model.coeffs = {0.8, 0.5, 0.9, -0.7};
  model.rho = 0.9;
  model.noise.family = DistFamily::gaussian;
  model.noise.sigma = 1.0;
  model.init.family = DistFamily::gaussian;
  model.init.sigma = 1.0;
  model.metric = Metric::abs;
  model.id = "periodic-ar1-study";
  return model;
}

StudyResult reproduce_simulation_study(std::uint64_t seed) {
  const ChainModel model = study_model();
  const int n = 400;
  const int t_max = 20;

  StudyResult out;
  out.traj = simulate(model, n, seed, 0);

  // sample autocorrelation, lags 0..40
  {
    const int max_lag = 40;
    double mean = 0.0;
    for (double v : out.traj.data) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : out.traj.data) c0 += (v - mean) * (v - mean);
    out.acf.resize(max_lag + 1);
    for (int lag = 0; lag <= max_lag; ++lag) {
      double ck = 0.0;
      for (int t = 0; t + lag < n; ++t)
        ck += (out.traj.at(t) - mean) * (out.traj.at(t + lag) - mean);
      out.acf[static_cast<std::size_t>(lag)] = c0 > 0.0 ? ck / c0 : 0.0;
    }
  }

  PredictorClass cls;
  cls.kind = PredictorKind::scalar_ar1;
  cls.rho_max = 0.95;
  LossSpec loss;  // absolute
  out.fit = select_period_penalized(out.traj, t_max, cls, loss, /*c1=*/0.0,
                                    /*net_epsilon=*/1.0 / static_cast<double>(n));
  out.selected_t = out.fit.selected_t_slope;
  out.c_hat = out.fit.c_hat;

  // fine scan of the T_hat(c) step function for the regime boundaries
  {
    std::vector<double> risks;
    for (const auto& row : out.fit.per_t) risks.push_back(row.empirical_risk);
    out.boundary_enter_4 = 0.0;
    out.boundary_enter_1 = 0.0;
    for (double c = 0.0; c <= 1.0; c += 0.0002) {
      const int t = argmin_penalized(risks, c);
      if (out.boundary_enter_4 == 0.0 && t == 4) out.boundary_enter_4 = c;
      if (t == 1) {
        out.boundary_enter_1 = c;
        break;
      }
    }
  }
  return out;
}

}  // namespace nonstat
