#pragma once

#include <string>

#include "qdsp/applications.hpp"
#include "qdsp/dsp_model.hpp"

namespace qdsp {

// JSON document schema (see README for the full description):
//   {
//     "kind": "independent" | "first_order_markov" | "correlated_walk",
//     "x0": number,
//     "levels": [{"values": [..], "probs": [..]}, ...],
//     "initial_dist": [..], "transitions": [[[..]..] ..],
//     "step_values": [x_plus, x_minus],
//     "persistence_p": [..], "persistence_q": [..]
//   }

DspModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const DspModel& model);

DspModel load_model(const std::string& path);
void save_model(const DspModel& model, const std::string& path);

/// Market scenario file: mu, sigma, r, S0, t, T plus optional K, K_list and
/// n/L/P defaults the CLI picks up when flags are absent.
struct MarketScenario {
    MarketParams params;
    std::vector<double> strikes;
    int n = 4;
    int L = 100;
    double P = 100.0;
};

MarketScenario market_from_json_text(const std::string& text);
MarketScenario load_market(const std::string& path);

} // namespace qdsp
