#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <nlohmann/json.hpp>

#include "nonstat/model_io.hpp"

using namespace nonstat;
using nlohmann::json;

TEST_CASE("parse_dist and round trip") {
  const json j = {{"family", "gaussian"}, {"sigma", 2.0}, {"dimension", 3}};
  const DistSpec d = parse_dist(j);
  CHECK(d.family == DistFamily::gaussian);
  CHECK(d.sigma == 2.0);
  CHECK(d.dimension == 3);
  const DistSpec back = parse_dist(dist_to_json(d));
  CHECK(back.family == d.family);
  CHECK(back.sigma == d.sigma);
  CHECK(back.dimension == d.dimension);
}

TEST_CASE("strict parsing rejects unknown keys and names the offender") {
  const json j = {{"family", "gaussian"}, {"sigma", 1.0}, {"sgima", 2.0}};
  try {
    parse_dist(j);
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("sgima") != std::string::npos);
  }
}

TEST_CASE("parse_model round trip") {
  json j;
  j["kind"] = "ar1";
  j["coeffs"] = {0.8, 0.5, 0.9, -0.7};
  j["rho"] = 0.9;
  j["noise"] = {{"family", "gaussian"}, {"sigma", 1.0}};
  j["init"] = {{"family", "uniform"}, {"halfwidth", 2.0}};
  j["metric"] = "abs";
  j["id"] = "demo";
  const ChainModel m = parse_model(j);
  CHECK(m.kind == UpdateKind::ar1);
  CHECK(m.coeffs.size() == 4);
  CHECK(m.rho == 0.9);
  CHECK(m.init.family == DistFamily::uniform);
  CHECK(m.init.halfwidth == 2.0);
  const ChainModel back = parse_model(model_to_json(m));
  CHECK(back.coeffs == m.coeffs);
  CHECK(back.rho == m.rho);
  CHECK(back.id == m.id);
}

TEST_CASE("parse_model rejects invariant violations") {
  json j;
  j["kind"] = "ar1";
  j["coeffs"] = {0.95};  // exceeds rho
  j["rho"] = 0.9;
  j["noise"] = {{"family", "gaussian"}, {"sigma", 1.0}};
  j["init"] = {{"family", "gaussian"}, {"sigma", 1.0}};
  CHECK_THROWS(parse_model(j));
}

TEST_CASE("parse_loss variants") {
  CHECK(parse_loss({{"kind", "absolute"}}).kind == LossKind::absolute);
  const LossSpec q = parse_loss({{"kind", "quantile"}, {"tau", 0.8}});
  CHECK(q.kind == LossKind::quantile);
  CHECK(q.lipschitz() == 0.8);
  const LossSpec h = parse_loss({{"kind", "huber"}, {"kappa", 2.5}});
  CHECK(h.lipschitz() == 2.5);
  const LossSpec s = parse_loss({{"kind", "squared_bounded"}, {"range_bound", 3.0}});
  CHECK(s.lipschitz() == 6.0);
  CHECK_THROWS(parse_loss({{"kind", "quantile"}, {"tau", 1.5}}));
  CHECK_THROWS(parse_loss({{"kind", "absolute"}, {"extra", 1}}));
}

TEST_CASE("parse_bernstein / parse_cramer / parse_mcdiarmid") {
  const BernsteinInputs b =
      parse_bernstein({{"n", 10}, {"rho", 0.5}, {"m", 1.0}, {"v1", 2.0}, {"v2", 3.0}});
  CHECK(b.n == 10);
  CHECK(b.v2 == 3.0);
  const CramerInputs c =
      parse_cramer({{"n", 3}, {"rho", 0.5}, {"a", 1.0}, {"k1", 1.0}, {"k2", 1.0}});
  CHECK(c.n == 3);
  const McDiarmidInputs m =
      parse_mcdiarmid({{"n", 2}, {"rho", 0.0}, {"m_k", {1.0, 1.0}}});
  CHECK(m.m_k.size() == 2);
  CHECK_THROWS(parse_bernstein({{"n", 10}, {"rho", 0.5}, {"m", 1.0}, {"v1", 2.0}}));
}

TEST_CASE("parse_tail_experiment") {
  json j;
  j["model"] = {{"kind", "ar1"},
                {"coeffs", {0.5}},
                {"rho", 0.5},
                {"noise", {{"family", "gaussian"}, {"sigma", 1.0}}},
                {"init", {{"family", "gaussian"}, {"sigma", 1.0}}}};
  j["functional"] = "coordinate_sum";
  j["n"] = 50;
  j["replicates"] = 10000;
  j["x_grid"] = {1.0, 2.0, 4.0};
  j["family"] = "bernstein";
  j["bernstein"] = {{"n", 50}, {"rho", 0.5}, {"m", 1.0}, {"v1", 1.0}, {"v2", 1.0}};
  j["base_seed"] = 12;
  const TailExperiment e = parse_tail_experiment(j);
  CHECK(e.n == 50);
  CHECK(e.family == BoundFamily::bernstein);
  CHECK(e.x_grid.size() == 3);
  CHECK(e.base_seed == 12);

  // unsorted grid violates the invariant
  j["x_grid"] = {2.0, 1.0};
  CHECK_THROWS(parse_tail_experiment(j));
}

TEST_CASE("csv_real formatting") {
  CHECK(csv_real(0.1) == "0.10000000000000001");
  CHECK(csv_real(1.0) == "1");
  CHECK(csv_real(-2.5) == "-2.5");
  CHECK(csv_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(csv_real(0.5).find('.') != std::string::npos);
  CHECK(csv_real(1e300) == "1.0000000000000001e+300");
}
