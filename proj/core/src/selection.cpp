#include "nonstat/selection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nonstat {

RiskConstants risk_constants(const ChainModel& model, const LossSpec& loss,
                             const BernsteinInputs& inputs) {
  model.validate();
  loss.validate();
  const double l = loss.lipschitz();
  const double rho = model.rho;
  std::vector<double> zero(static_cast<std::size_t>(model.dimension()), 0.0);
  const double ge0 = g_eps(model, zero);
  const double gx0 = g_x1(model, zero);

  RiskConstants out;
  out.delta = inputs.delta();
  out.v_script = v_n(inputs) / std::max(1.0, static_cast<double>(inputs.n - 1));
  out.c0 = l * (1.0 + rho) * (ge0 / (1.0 - rho) + gx0);
  out.c1 = 4.0 * (1.0 + rho) * l * std::sqrt(out.v_script);
  out.c2 = 2.0 * (1.0 + rho) * l * std::sqrt(out.v_script) + 2.0 * out.delta;
  out.c3 = 3.0 * (ge0 + gx0) / (1.0 - rho);
  if (out.delta > 0.0) {
    out.c3 += out.v_script / (2.0 * out.delta);
  } else {
    out.c3_degenerate = true;
  }
  return out;
}

bool sample_size_ok(int n, int t_period, const PredictorClass& cls,
                    const LossSpec& loss, const BernsteinInputs& inputs) {
  const double delta = inputs.delta();
  if (delta == 0.0) return n >= 1;
  const double v = v_n(inputs) / std::max(1.0, static_cast<double>(inputs.n - 1));
  if (v == 0.0) return false;
  const double h = entropy(cls, 1.0 / (loss.lipschitz() * static_cast<double>(n)));
  return static_cast<double>(n) >=
         1.0 + 4.0 * delta * delta * static_cast<double>(t_period) * h / v;
}

int argmin_penalized(std::span<const double> risks, double c) {
  int best_t = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < risks.size(); ++i) {
    const double obj = risks[i] + c * std::sqrt(static_cast<double>(i + 1));
    if (obj < best) {
      best = obj;
      best_t = static_cast<int>(i + 1);
    }
  }
  return best_t;
}

SlopeResult slope_heuristic(std::span<const double> risks, double c_min,
                            double c_max, double step) {
  if (risks.empty()) throw std::invalid_argument("slope_heuristic: no risks");
  if (!(step > 0.0) || c_max < c_min)
    throw std::invalid_argument("slope_heuristic: empty grid");
  SlopeResult out;
  std::vector<double> cs;
  for (double c = c_min; c <= c_max + 0.5 * step; c += step) cs.push_back(c);
  out.trace.reserve(cs.size());
  for (double c : cs) out.trace.emplace_back(c, argmin_penalized(risks, c));

  // largest single-cell drop of sqrt(T_hat); first maximizer wins
  double best_jump = 0.0;
  std::size_t best_cell = 0;
  bool found = false;
  for (std::size_t i = 0; i + 1 < out.trace.size(); ++i) {
    const double jump = std::sqrt(static_cast<double>(out.trace[i].second)) -
                        std::sqrt(static_cast<double>(out.trace[i + 1].second));
    if (jump > best_jump) {
      best_jump = jump;
      best_cell = i;
      found = true;
    }
  }
  out.c_hat = found ? out.trace[best_cell].first + 0.5 * step : c_min;
  out.selected_t = argmin_penalized(risks, 2.0 * out.c_hat);
  return out;
}

SlopeResult slope_heuristic(std::span<const double> risks) {
  double lo = risks[0], hi = risks[0];
  for (double r : risks) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double spread = hi - lo;
  if (spread <= 0.0) {
    SlopeResult out;
    out.c_hat = 0.0;
    out.selected_t = 1;
    out.trace.emplace_back(0.0, argmin_penalized(risks, 0.0));
    return out;
  }
  const double c_max = 2.0 * spread;
  return slope_heuristic(risks, 0.0, c_max, c_max / 400.0);
}

FitReport select_period_penalized(const Trajectory& traj, int t_max,
                                  const PredictorClass& cls, const LossSpec& loss,
                                  double c1, double net_epsilon) {
  if (t_max < 1) throw std::invalid_argument("select_period_penalized: t_max must be >= 1");
  loss.validate();
  const double l = loss.lipschitz();
  const double eps = net_epsilon > 0.0
                         ? net_epsilon
                         : 1.0 / (l * static_cast<double>(traj.n));
  const CoveringNet net = build_net(cls, eps);
  const double h = entropy(cls, eps);

  FitReport rep;
  std::vector<double> risks;
  risks.reserve(static_cast<std::size_t>(t_max));
  double best_obj = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= t_max; ++t) {
    ErmResult erm = erm_fit(traj, t, net, cls, loss);
    FitReport::Row row;
    row.t_period = t;
    row.empirical_risk = erm.risk;
    row.penalty = 0.5 * c1 *
                  std::sqrt(static_cast<double>(t) * h / static_cast<double>(traj.n - 1));
    row.erm_parameters = std::move(erm.params);
    const double obj = row.empirical_risk + row.penalty;
    if (obj < best_obj) {
      best_obj = obj;
      rep.selected_t_penalized = t;
    }
    risks.push_back(row.empirical_risk);
    rep.per_t.push_back(std::move(row));
  }

  SlopeResult slope = slope_heuristic(risks);
  rep.slope_trace = std::move(slope.trace);
  rep.c_hat = slope.c_hat;
  rep.selected_t_slope = slope.selected_t;
  return rep;
}

}  // namespace nonstat
