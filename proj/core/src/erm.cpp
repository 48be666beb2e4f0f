#include "nonstat/erm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nonstat {

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

double empirical_risk(const Trajectory& traj, const PredictorClass& cls,
                      const std::vector<std::vector<double>>& predictors,
                      const LossSpec& loss) {
  if (traj.n < 2) throw std::invalid_argument("empirical_risk: trajectory length must be >= 2");
  if (predictors.empty()) throw std::invalid_argument("empirical_risk: no predictors");
  const int t_period = static_cast<int>(predictors.size());
  const int d = traj.dim;
  std::vector<double> pred(static_cast<std::size_t>(d)), resid(static_cast<std::size_t>(d));
  double acc = 0.0;
  for (int i = 2; i <= traj.n; ++i) {
    const auto& p = predictors[static_cast<std::size_t>(phase_index(i, t_period) - 1)];
    cls.predict(p, traj.state(i - 2), pred);
    for (int j = 0; j < d; ++j)
      resid[static_cast<std::size_t>(j)] = traj.at(i - 1, j) - pred[static_cast<std::size_t>(j)];
    acc += loss.eval(std::span<const double>(resid));
  }
  return acc / static_cast<double>(traj.n - 1);
}

ErmResult erm_fit(const Trajectory& traj, int t_period, const CoveringNet& net,
                  const PredictorClass& cls, const LossSpec& loss) {
  if (t_period < 1) throw std::invalid_argument("erm_fit: period must be >= 1");
  if (traj.n < 2) throw std::invalid_argument("erm_fit: trajectory length must be >= 2");
  if (net.cardinality() == 0) throw std::invalid_argument("erm_fit: empty net");
  const int d = traj.dim;

  ErmResult out;
  out.short_sample = traj.n < t_period + 1;
  out.params.resize(static_cast<std::size_t>(t_period));
  double total = 0.0;

  std::vector<double> pred(static_cast<std::size_t>(d)), resid(static_cast<std::size_t>(d));
  for (int phase = 1; phase <= t_period; ++phase) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_m = 0;
    bool any = false;
    for (std::size_t m = 0; m < net.cardinality(); ++m) {
      const auto p = net.member(m);
      double acc = 0.0;
      for (int i = phase == 1 ? t_period + 1 : phase; i <= traj.n; i += t_period) {
        if (i < 2) continue;
        cls.predict(p, traj.state(i - 2), pred);
        for (int j = 0; j < d; ++j)
          resid[static_cast<std::size_t>(j)] = traj.at(i - 1, j) - pred[static_cast<std::size_t>(j)];
        acc += loss.eval(std::span<const double>(resid));
      }
      if (!any || acc < best ||
          (acc == best && lex_less(p, net.member(best_m)))) {
        best = acc;
        best_m = m;
        any = true;
      }
    }
    const auto p = net.member(best_m);
    out.params[static_cast<std::size_t>(phase - 1)].assign(p.begin(), p.end());
    total += best;
  }
  out.risk = total / static_cast<double>(traj.n - 1);
  return out;
}

}  // namespace nonstat
