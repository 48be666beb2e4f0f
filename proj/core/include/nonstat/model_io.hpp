#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nonstat/bounds.hpp"
#include "nonstat/chain.hpp"
#include "nonstat/experiments.hpp"
#include "nonstat/loss.hpp"
#include "nonstat/predictor.hpp"

namespace nonstat {

// Strict JSON parsing: unknown keys are rejected with the offending key
// named in the exception message.

DistSpec parse_dist(const nlohmann::json& j);
ChainModel parse_model(const nlohmann::json& j);
LossSpec parse_loss(const nlohmann::json& j);
PredictorClass parse_predictor_class(const nlohmann::json& j);
BernsteinInputs parse_bernstein(const nlohmann::json& j);
CramerInputs parse_cramer(const nlohmann::json& j);
McDiarmidInputs parse_mcdiarmid(const nlohmann::json& j);
TailExperiment parse_tail_experiment(const nlohmann::json& j);

nlohmann::json dist_to_json(const DistSpec& d);
nlohmann::json model_to_json(const ChainModel& m);

ChainModel load_model_file(const std::string& path);
nlohmann::json load_json_file(const std::string& path);

// CSV real formatting: '.' decimal, 17 significant digits
std::string csv_real(double v);

}  // namespace nonstat
