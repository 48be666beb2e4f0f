#include "nonstat/finite_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nonstat/bounds.hpp"
#include "nonstat/rng.hpp"

namespace nonstat {

namespace {
constexpr std::size_t kOutcomeCap = 1000000;
constexpr std::size_t kPairSampleCap = 512;
constexpr double kTol = 1e-9;

void check_chain(const FiniteChain& chain) {
  if (chain.n < 1 || chain.n > 12)
    throw std::invalid_argument("FiniteChain: horizon must lie in [1, 12]");
  if (chain.init_support.empty() || chain.noise_support.empty())
    throw std::invalid_argument("FiniteChain: empty support");
  double ps = 0.0;
  for (const auto& [v, p] : chain.init_support) ps += p;
  if (std::abs(ps - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteChain: init probs must sum to 1");
  ps = 0.0;
  for (const auto& [v, p] : chain.noise_support) ps += p;
  if (std::abs(ps - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteChain: noise probs must sum to 1");
  std::size_t count = chain.init_support.size();
  for (int t = 2; t <= chain.n; ++t) {
    count *= chain.noise_support.size();
    if (count > kOutcomeCap)
      throw std::invalid_argument("FiniteChain: outcome count exceeds cap");
  }
}

// reconstruct the full history path (X_1..X_k) of history h at level k
std::vector<double> history_path(const DecompositionTable& table, int k, std::size_t h) {
  std::vector<double> path(static_cast<std::size_t>(k));
  // ancestor of h at level j: divide out the trailing radix digits
  std::size_t idx = h;
  for (int j = k; j >= 1; --j) {
    path[static_cast<std::size_t>(j - 1)] = table.states[static_cast<std::size_t>(j - 1)][idx];
    if (j > 1) {
      const std::size_t radix =
          table.states[static_cast<std::size_t>(j - 1)].size() /
          table.states[static_cast<std::size_t>(j - 2)].size();
      idx /= radix;
    }
  }
  return path;
}

std::vector<std::size_t> sample_indices(std::size_t count) {
  std::vector<std::size_t> idx;
  if (count <= kPairSampleCap) {
    idx.resize(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  } else {
    idx.reserve(kPairSampleCap);
    const double stride = static_cast<double>(count) / kPairSampleCap;
    for (std::size_t i = 0; i < kPairSampleCap; ++i)
      idx.push_back(static_cast<std::size_t>(i * stride));
  }
  return idx;
}

}  // namespace

Functional functional_sum() {
  return [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  };
}

Functional functional_sum_abs() {
  return [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  };
}

Functional functional_max() {
  return [](std::span<const double> x) {
    double m = x[0];
    for (double v : x) m = std::max(m, v);
    return m;
  };
}

DecompositionTable enumerate_decomposition(const FiniteChain& chain, const Functional& f) {
  check_chain(chain);
  const std::size_t ni = chain.init_support.size();
  const std::size_t ne = chain.noise_support.size();
  const int n = chain.n;

  DecompositionTable table;
  table.n = n;
  table.states.resize(static_cast<std::size_t>(n));
  table.g.resize(static_cast<std::size_t>(n));
  table.d.resize(static_cast<std::size_t>(n));

  // forward pass: states per level
  table.states[0].resize(ni);
  for (std::size_t i = 0; i < ni; ++i) table.states[0][i] = chain.init_support[i].first;
  for (int k = 2; k <= n; ++k) {
    const auto& prev = table.states[static_cast<std::size_t>(k - 2)];
    auto& cur = table.states[static_cast<std::size_t>(k - 1)];
    cur.resize(prev.size() * ne);
    for (std::size_t h = 0; h < prev.size(); ++h)
      for (std::size_t j = 0; j < ne; ++j)
        cur[h * ne + j] = chain.update(k, prev[h], chain.noise_support[j].first);
  }

  const std::size_t leaves = table.states[static_cast<std::size_t>(n - 1)].size();
  table.outcome_count = leaves;

  // f and probabilities at the leaves
  table.g[static_cast<std::size_t>(n - 1)].resize(leaves);
  table.prob.resize(leaves);
  std::vector<double> path(static_cast<std::size_t>(n));
  for (std::size_t h = 0; h < leaves; ++h) {
    std::size_t idx = h;
    double p = 1.0;
    for (int j = n; j >= 1; --j) {
      path[static_cast<std::size_t>(j - 1)] = table.states[static_cast<std::size_t>(j - 1)][idx];
      if (j > 1) {
        p *= chain.noise_support[idx % ne].second;
        idx /= ne;
      } else {
        p *= chain.init_support[idx].second;
      }
    }
    table.g[static_cast<std::size_t>(n - 1)][h] = f(path);
    table.prob[h] = p;
  }

  // backward pass: g_k by exact conditional summation
  for (int k = n - 1; k >= 1; --k) {
    const auto& child = table.g[static_cast<std::size_t>(k)];
    auto& cur = table.g[static_cast<std::size_t>(k - 1)];
    cur.resize(child.size() / ne);
    for (std::size_t h = 0; h < cur.size(); ++h) {
      double s = 0.0;
      for (std::size_t j = 0; j < ne; ++j)
        s += chain.noise_support[j].second * child[h * ne + j];
      cur[h] = s;
    }
  }
  table.expectation = 0.0;
  for (std::size_t i = 0; i < ni; ++i)
    table.expectation += chain.init_support[i].second * table.g[0][i];

  // increments
  table.d[0].resize(ni);
  for (std::size_t i = 0; i < ni; ++i) table.d[0][i] = table.g[0][i] - table.expectation;
  for (int k = 2; k <= n; ++k) {
    const auto& cur = table.g[static_cast<std::size_t>(k - 1)];
    const auto& par = table.g[static_cast<std::size_t>(k - 2)];
    auto& dk = table.d[static_cast<std::size_t>(k - 1)];
    dk.resize(cur.size());
    for (std::size_t h = 0; h < cur.size(); ++h) dk[h] = cur[h] - par[h / ne];
  }

  table.s_n.resize(leaves);
  for (std::size_t h = 0; h < leaves; ++h)
    table.s_n[h] = table.g[static_cast<std::size_t>(n - 1)][h] - table.expectation;
  return table;
}

Lemma1Report check_lemma1(const FiniteChain& chain, const Functional& f) {
  const DecompositionTable table = enumerate_decomposition(chain, f);
  const int n = chain.n;
  const std::size_t ne = chain.noise_support.size();
  Lemma1Report rep;
  rep.point1_slack_per_t.assign(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  rep.point2_slack_per_t.assign(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  if (n >= 2)
    rep.point3_slack_per_t.assign(static_cast<std::size_t>(n - 1),
                                  -std::numeric_limits<double>::infinity());

  // telescoping and martingale residuals
  for (std::size_t h = 0; h < table.outcome_count; ++h) {
    double sum_d = 0.0;
    std::size_t idx = h;
    for (int k = n; k >= 1; --k) {
      sum_d += table.d[static_cast<std::size_t>(k - 1)][idx];
      if (k > 1) idx /= ne;
    }
    rep.max_telescope_residual =
        std::max(rep.max_telescope_residual, std::abs(table.s_n[h] - sum_d));
  }
  for (int k = 2; k <= n; ++k) {
    const auto& dk = table.d[static_cast<std::size_t>(k - 1)];
    for (std::size_t h = 0; h < dk.size() / ne; ++h) {
      double s = 0.0;
      for (std::size_t j = 0; j < ne; ++j) s += chain.noise_support[j].second * dk[h * ne + j];
      rep.max_martingale_residual = std::max(rep.max_martingale_residual, std::abs(s));
    }
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < chain.init_support.size(); ++i)
      s += chain.init_support[i].second * table.d[0][i];
    rep.max_martingale_residual = std::max(rep.max_martingale_residual, std::abs(s));
  }

  // point 1: separately-Lipschitz bound on g_t over reachable history pairs
  for (int t = 1; t <= n; ++t) {
    const double kc = k_rho(n - t, chain.rho);
    const auto& gt = table.g[static_cast<std::size_t>(t - 1)];
    const auto idxs = sample_indices(gt.size());
    std::vector<std::vector<double>> paths;
    paths.reserve(idxs.size());
    for (std::size_t h : idxs) paths.push_back(history_path(table, t, h));
    for (std::size_t a = 0; a < idxs.size(); ++a) {
      for (std::size_t b = a + 1; b < idxs.size(); ++b) {
        const double lhs = std::abs(gt[idxs[a]] - gt[idxs[b]]);
        double rhs = 0.0;
        for (int i = 1; i < t; ++i)
          rhs += std::abs(paths[a][static_cast<std::size_t>(i - 1)] -
                          paths[b][static_cast<std::size_t>(i - 1)]);
        rhs += kc * std::abs(paths[a][static_cast<std::size_t>(t - 1)] -
                             paths[b][static_cast<std::size_t>(t - 1)]);
        const double slack = lhs - rhs;
        rep.point1_slack_per_t[static_cast<std::size_t>(t - 1)] =
            std::max(rep.point1_slack_per_t[static_cast<std::size_t>(t - 1)], slack);
        if (slack > kTol) ++rep.violations;
      }
    }
  }

  // point 2: |d_1| <= K_{n-1} G_X1(X_1); |d_t| <= K_{n-t} H_t(X_{t-1}, eps_t)
  auto g_x1_of = [&](double x) {
    double s = 0.0;
    for (const auto& [v, p] : chain.init_support) s += p * std::abs(x - v);
    return s;
  };
  auto h_t_of = [&](int t, double x, double y) {
    const double fy = chain.update(t, x, y);
    double s = 0.0;
    for (const auto& [v, p] : chain.noise_support)
      s += p * std::abs(fy - chain.update(t, x, v));
    return s;
  };
  auto g_eps_of = [&](double y) {
    double s = 0.0;
    for (const auto& [v, p] : chain.noise_support) s += p * std::abs(y - v);
    return s * chain.noise_c;
  };
  {
    const double kc = k_rho(n - 1, chain.rho);
    for (std::size_t i = 0; i < chain.init_support.size(); ++i) {
      const double slack =
          std::abs(table.d[0][i]) - kc * g_x1_of(chain.init_support[i].first);
      rep.point2_slack_per_t[0] = std::max(rep.point2_slack_per_t[0], slack);
      if (slack > kTol) ++rep.violations;
    }
  }
  for (int t = 2; t <= n; ++t) {
    const double kc = k_rho(n - t, chain.rho);
    const auto& dt = table.d[static_cast<std::size_t>(t - 1)];
    const auto& prev_states = table.states[static_cast<std::size_t>(t - 2)];
    for (std::size_t h = 0; h < dt.size(); ++h) {
      const double x_prev = prev_states[h / ne];
      const double eps = chain.noise_support[h % ne].first;
      const double slack = std::abs(dt[h]) - kc * h_t_of(t, x_prev, eps);
      rep.point2_slack_per_t[static_cast<std::size_t>(t - 1)] =
          std::max(rep.point2_slack_per_t[static_cast<std::size_t>(t - 1)], slack);
      if (slack > kTol) ++rep.violations;
    }
    // point 3: H_t(x, y) <= G_eps(y) on every reachable x and support y
    for (std::size_t h = 0; h < prev_states.size(); ++h) {
      for (const auto& [y, p] : chain.noise_support) {
        const double slack = h_t_of(t, prev_states[h], y) - g_eps_of(y);
        rep.point3_slack_per_t[static_cast<std::size_t>(t - 2)] =
            std::max(rep.point3_slack_per_t[static_cast<std::size_t>(t - 2)], slack);
        if (slack > kTol) ++rep.violations;
      }
    }
  }

  rep.ok = rep.violations == 0 && rep.max_martingale_residual <= 1e-12 &&
           rep.max_telescope_residual <= 1e-12;
  return rep;
}

FiniteChain random_finite_chain(std::uint64_t seed, int max_horizon) {
  Rng rng(mix64(seed));
  FiniteChain chain;
  chain.n = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_horizon - 1));
  chain.rho = rng.uniform(0.0, 0.95);

  auto make_support = [&](std::vector<std::pair<double, double>>& sup) {
    const std::size_t size = 2 + rng.next_u64() % 2;
    double total = 0.0;
    sup.resize(size);
    for (auto& [v, p] : sup) {
      v = rng.uniform(-2.0, 2.0);
      p = rng.uniform(0.1, 1.0);
      total += p;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < size; ++i) {
      sup[i].second /= total;
      acc += sup[i].second;
    }
    sup.back().second = 1.0 - acc;  // exact unit mass
  };
  make_support(chain.init_support);
  make_support(chain.noise_support);

  std::vector<double> slopes(static_cast<std::size_t>(chain.n + 1), 0.0);
  std::vector<double> offsets(static_cast<std::size_t>(chain.n + 1), 0.0);
  for (int t = 2; t <= chain.n; ++t) {
    slopes[static_cast<std::size_t>(t)] = rng.uniform(-chain.rho, chain.rho);
    offsets[static_cast<std::size_t>(t)] = rng.uniform(-1.0, 1.0);
  }
  chain.update = [slopes, offsets](int t, double x, double e) {
    return slopes[static_cast<std::size_t>(t)] * x + offsets[static_cast<std::size_t>(t)] + e;
  };
  return chain;
}

std::string Lemma1Report::summary() const {
  std::ostringstream os;
  os << (ok ? "OK" : "VIOLATED") << " violations=" << violations
     << " martingale_residual=" << max_martingale_residual
     << " telescope_residual=" << max_telescope_residual;
  return os.str();
}

}  // namespace nonstat
