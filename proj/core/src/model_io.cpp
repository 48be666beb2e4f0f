#include "nonstat/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nonstat {

using nlohmann::json;

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

}  // namespace

DistSpec parse_dist(const json& j) {
  require_keys(j, {"family", "sigma", "halfwidth", "support", "probs", "dimension"},
               "distribution");
  DistSpec d;
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "gaussian") {
    d.family = DistFamily::gaussian;
    d.sigma = j.at("sigma").get<double>();
  } else if (fam == "uniform") {
    d.family = DistFamily::uniform;
    d.halfwidth = j.at("halfwidth").get<double>();
  } else if (fam == "discrete") {
    d.family = DistFamily::discrete;
    d.support = j.at("support").get<std::vector<double>>();
    d.probs = j.at("probs").get<std::vector<double>>();
  } else {
    throw std::invalid_argument("distribution: unknown family '" + fam + "'");
  }
  d.dimension = j.value("dimension", 1);
  d.validate();
  return d;
}

ChainModel parse_model(const json& j) {
  require_keys(j, {"kind", "coeffs", "mats", "rho", "noise_c", "noise", "init",
                   "metric", "id"},
               "model");
  ChainModel m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ar1") {
    m.kind = UpdateKind::ar1;
    m.coeffs = j.at("coeffs").get<std::vector<double>>();
  } else if (kind == "var1") {
    m.kind = UpdateKind::var1;
    m.mats = j.at("mats").get<std::vector<std::vector<double>>>();
  } else {
    throw std::invalid_argument("model: unknown kind '" + kind + "'");
  }
  m.rho = j.at("rho").get<double>();
  m.noise_c = j.value("noise_c", 1.0);
  m.noise = parse_dist(j.at("noise"));
  m.init = parse_dist(j.at("init"));
  const std::string metric = j.value("metric", std::string("abs"));
  if (metric == "abs") {
    m.metric = Metric::abs;
  } else if (metric == "euclidean") {
    m.metric = Metric::euclidean;
  } else {
    throw std::invalid_argument("model: unknown metric '" + metric + "'");
  }
  m.id = j.value("id", std::string());
  m.validate();
  return m;
}

LossSpec parse_loss(const json& j) {
  require_keys(j, {"kind", "tau", "kappa", "range_bound"}, "loss");
  LossSpec l;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "absolute") {
    l.kind = LossKind::absolute;
  } else if (kind == "quantile") {
    l.kind = LossKind::quantile;
    l.tau = j.at("tau").get<double>();
  } else if (kind == "huber") {
    l.kind = LossKind::huber;
    l.kappa = j.at("kappa").get<double>();
  } else if (kind == "squared_bounded") {
    l.kind = LossKind::squared_bounded;
    l.range_bound = j.at("range_bound").get<double>();
  } else {
    throw std::invalid_argument("loss: unknown kind '" + kind + "'");
  }
  l.validate();
  return l;
}

PredictorClass parse_predictor_class(const json& j) {
  require_keys(j, {"kind", "dim", "rho_max"}, "predictor_class");
  PredictorClass c;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "scalar_ar1") {
    c.kind = PredictorKind::scalar_ar1;
  } else if (kind == "var1") {
    c.kind = PredictorKind::var1;
    c.dim = j.at("dim").get<int>();
  } else {
    throw std::invalid_argument("predictor_class: unknown kind '" + kind + "'");
  }
  c.rho_max = j.at("rho_max").get<double>();
  c.validate();
  return c;
}

BernsteinInputs parse_bernstein(const json& j) {
  require_keys(j, {"n", "rho", "m", "v1", "v2"}, "bernstein");
  BernsteinInputs b;
  b.n = j.at("n").get<int>();
  b.rho = j.at("rho").get<double>();
  b.m = j.at("m").get<double>();
  b.v1 = j.at("v1").get<double>();
  b.v2 = j.at("v2").get<double>();
  return b;
}

CramerInputs parse_cramer(const json& j) {
  require_keys(j, {"n", "rho", "a", "k1", "k2"}, "cramer");
  CramerInputs c;
  c.n = j.at("n").get<int>();
  c.rho = j.at("rho").get<double>();
  c.a = j.at("a").get<double>();
  c.k1 = j.at("k1").get<double>();
  c.k2 = j.at("k2").get<double>();
  return c;
}

McDiarmidInputs parse_mcdiarmid(const json& j) {
  require_keys(j, {"n", "rho", "m_k"}, "mcdiarmid");
  McDiarmidInputs m;
  m.n = j.at("n").get<int>();
  m.rho = j.at("rho").get<double>();
  m.m_k = j.at("m_k").get<std::vector<double>>();
  return m;
}

TailExperiment parse_tail_experiment(const json& j) {
  require_keys(j, {"model", "functional", "n", "replicates", "x_grid", "family",
                   "bernstein", "cramer", "mcdiarmid", "base_seed", "threads"},
               "tail_experiment");
  TailExperiment e;
  e.model = parse_model(j.at("model"));
  const std::string fn = j.value("functional", std::string("coordinate_sum"));
  if (fn == "coordinate_sum") {
    e.functional = TailFunctional::coordinate_sum;
  } else if (fn == "sum_of_norms") {
    e.functional = TailFunctional::sum_of_norms;
  } else {
    throw std::invalid_argument("tail_experiment: unknown functional '" + fn + "'");
  }
  e.n = j.at("n").get<int>();
  e.replicates = j.at("replicates").get<int>();
  e.x_grid = j.at("x_grid").get<std::vector<double>>();
  for (std::size_t i = 0; i < e.x_grid.size(); ++i) {
    if (e.x_grid[i] < 0.0)
      throw std::invalid_argument("tail_experiment: x_grid values must be >= 0");
    if (i > 0 && e.x_grid[i] < e.x_grid[i - 1])
      throw std::invalid_argument("tail_experiment: x_grid must be sorted ascending");
  }
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "bernstein") {
    e.family = BoundFamily::bernstein;
    e.bernstein = parse_bernstein(j.at("bernstein"));
  } else if (fam == "cramer") {
    e.family = BoundFamily::cramer;
    e.cramer = parse_cramer(j.at("cramer"));
  } else if (fam == "mcdiarmid") {
    e.family = BoundFamily::mcdiarmid;
    e.mcdiarmid = parse_mcdiarmid(j.at("mcdiarmid"));
  } else {
    throw std::invalid_argument("tail_experiment: unknown family '" + fam + "'");
  }
  e.base_seed = j.value("base_seed", 0ULL);
  e.threads = j.value("threads", 0);
  return e;
}

json dist_to_json(const DistSpec& d) {
  json j;
  switch (d.family) {
    case DistFamily::gaussian:
      j["family"] = "gaussian";
      j["sigma"] = d.sigma;
      break;
    case DistFamily::uniform:
      j["family"] = "uniform";
      j["halfwidth"] = d.halfwidth;
      break;
    case DistFamily::discrete:
      j["family"] = "discrete";
      j["support"] = d.support;
      j["probs"] = d.probs;
      break;
  }
  j["dimension"] = d.dimension;
  return j;
}

json model_to_json(const ChainModel& m) {
  json j;
  switch (m.kind) {
    case UpdateKind::ar1:
      j["kind"] = "ar1";
      j["coeffs"] = m.coeffs;
      break;
    case UpdateKind::var1:
      j["kind"] = "var1";
      j["mats"] = m.mats;
      break;
    case UpdateKind::periodic_functional:
      throw std::invalid_argument("periodic_functional models are not serializable");
  }
  j["rho"] = m.rho;
  j["noise_c"] = m.noise_c;
  j["noise"] = dist_to_json(m.noise);
  j["init"] = dist_to_json(m.init);
  j["metric"] = m.metric == Metric::abs ? "abs" : "euclidean";
  if (!m.id.empty()) j["id"] = m.id;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

ChainModel load_model_file(const std::string& path) {
  const json j = load_json_file(path);
  if (j.contains("model")) {
    require_keys(j, {"model"}, "model file");
    return parse_model(j.at("model"));
  }
  return parse_model(j);
}

std::string csv_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace nonstat
