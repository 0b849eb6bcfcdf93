#include "qdsp/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdsp/errors.hpp"

namespace qdsp {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw DomainError("model JSON: parse error");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Eigen::VectorXd vector_from(const json& arr, const std::string& what) {
    if (!arr.is_array() || arr.empty()) throw DomainError(what + ": expected a non-empty array");
    Eigen::VectorXd out(arr.size());
    Eigen::Index i = 0;
    for (const auto& x : arr) {
        if (!x.is_number()) throw DomainError(what + ": expected numbers");
        out[i++] = x.get<double>();
    }
    return out;
}

std::vector<double> std_vector_from(const json& arr, const std::string& what) {
    const Eigen::VectorXd v = vector_from(arr, what);
    return std::vector<double>(v.data(), v.data() + v.size());
}

double number_at(const json& doc, const std::string& key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
        throw DomainError("model JSON: missing numeric field '" + key + "'");
    }
    return doc[key].get<double>();
}

} // namespace

DspModel model_from_json_text(const std::string& text) {
    const json doc = parse(text);
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw DomainError("model JSON: missing 'kind'");
    }
    const std::string kind = doc["kind"].get<std::string>();
    DspModel model;
    model.x0 = doc.value("x0", 0.0);

    if (kind == "correlated_walk") {
        if (!doc.contains("step_values")) throw DomainError("model JSON: missing 'step_values'");
        const Eigen::VectorXd steps = vector_from(doc["step_values"], "step_values");
        if (steps.size() != 2) throw DomainError("model JSON: step_values must have 2 entries");
        const auto p = std_vector_from(doc.value("persistence_p", json::array()), "persistence_p");
        const auto q = std_vector_from(doc.value("persistence_q", json::array()), "persistence_q");
        return build_crw_model(model.x0, steps[0], steps[1], p, q);
    }

    if (!doc.contains("levels") || !doc["levels"].is_array() || doc["levels"].empty()) {
        throw DomainError("model JSON: missing 'levels'");
    }
    for (const auto& entry : doc["levels"]) {
        LevelSpec level;
        level.values = vector_from(entry.at("values"), "level values");
        if (entry.contains("probs")) level.probs = vector_from(entry["probs"], "level probs");
        model.levels.push_back(std::move(level));
    }

    if (kind == "independent") {
        model.kind = DspKind::Independent;
    } else if (kind == "first_order_markov" || kind == "markov") {
        model.kind = DspKind::FirstOrderMarkov;
        model.initial_dist = vector_from(doc.at("initial_dist"), "initial_dist");
        if (!doc.contains("transitions") || !doc["transitions"].is_array()) {
            throw DomainError("model JSON: missing 'transitions'");
        }
        for (const auto& mat : doc["transitions"]) {
            if (!mat.is_array() || mat.empty()) {
                throw DomainError("model JSON: transition matrices must be arrays of rows");
            }
            const std::size_t k = mat.size();
            Eigen::MatrixXd t(k, k);
            for (std::size_t a = 0; a < k; ++a) {
                const Eigen::VectorXd row = vector_from(mat[a], "transition row");
                if (static_cast<std::size_t>(row.size()) != k) {
                    throw DomainError("model JSON: transition matrices must be square");
                }
                t.row(static_cast<Eigen::Index>(a)) = row.transpose();
            }
            model.transitions.push_back(std::move(t));
        }
    } else {
        throw DomainError("model JSON: unknown kind '" + kind + "'");
    }
    model.validate();
    return model;
}

std::string model_to_json_text(const DspModel& model) {
    model.validate();
    json doc;
    doc["x0"] = model.x0;
    switch (model.kind) {
    case DspKind::Independent: {
        doc["kind"] = "independent";
        json levels = json::array();
        for (const auto& level : model.levels) {
            json entry;
            entry["values"] = std::vector<double>(level.values.data(),
                                                  level.values.data() + level.values.size());
            entry["probs"] =
                std::vector<double>(level.probs.data(), level.probs.data() + level.probs.size());
            levels.push_back(std::move(entry));
        }
        doc["levels"] = std::move(levels);
        break;
    }
    case DspKind::FirstOrderMarkov: {
        doc["kind"] = "first_order_markov";
        json levels = json::array();
        for (const auto& level : model.levels) {
            json entry;
            entry["values"] = std::vector<double>(level.values.data(),
                                                  level.values.data() + level.values.size());
            levels.push_back(std::move(entry));
        }
        doc["levels"] = std::move(levels);
        doc["initial_dist"] = std::vector<double>(
            model.initial_dist.data(), model.initial_dist.data() + model.initial_dist.size());
        json transitions = json::array();
        for (const auto& t : model.transitions) {
            json mat = json::array();
            for (Eigen::Index a = 0; a < t.rows(); ++a) {
                json row = json::array();
                for (Eigen::Index b = 0; b < t.cols(); ++b) row.push_back(t(a, b));
                mat.push_back(std::move(row));
            }
            transitions.push_back(std::move(mat));
        }
        doc["transitions"] = std::move(transitions);
        break;
    }
    case DspKind::CorrelatedWalk: {
        doc["kind"] = "correlated_walk";
        doc["step_values"] = {model.levels.front().values[1], model.levels.front().values[0]};
        doc["persistence_p"] = std::vector<double>(
            model.persistence_p.data(), model.persistence_p.data() + model.persistence_p.size());
        doc["persistence_q"] = std::vector<double>(
            model.persistence_q.data(), model.persistence_q.data() + model.persistence_q.size());
        break;
    }
    }
    return doc.dump(2);
}

DspModel load_model(const std::string& path) { return model_from_json_text(read_file(path)); }

void save_model(const DspModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write file: " + path);
    out << model_to_json_text(model) << '\n';
}

MarketScenario market_from_json_text(const std::string& text) {
    const json doc = parse(text);
    MarketScenario scenario;
    scenario.params.mu = number_at(doc, "mu");
    scenario.params.sigma = number_at(doc, "sigma");
    scenario.params.r = number_at(doc, "r");
    scenario.params.S0 = number_at(doc, "S0");
    scenario.params.t = number_at(doc, "t");
    scenario.params.T = number_at(doc, "T");
    scenario.params.K = doc.value("K", scenario.params.S0);
    if (doc.contains("K_list")) {
        scenario.strikes = std_vector_from(doc["K_list"], "K_list");
    } else if (doc.contains("K")) {
        scenario.strikes = {doc["K"].get<double>()};
    }
    scenario.n = doc.value("n", 4);
    scenario.L = doc.value("L", 100);
    scenario.P = doc.value("P", 100.0);
    scenario.params.validate();
    return scenario;
}

MarketScenario load_market(const std::string& path) {
    return market_from_json_text(read_file(path));
}

} // namespace qdsp
