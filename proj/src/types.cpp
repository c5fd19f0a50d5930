#include "rankvote/types.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rankvote {

void validate_score_vector(const ScoreVector& scores) {
    if (scores.empty()) throw std::invalid_argument("score vector is empty");
    for (double s : scores) {
        if (!std::isfinite(s)) throw std::invalid_argument("score vector has a non-finite entry");
        if (s < 0) throw std::invalid_argument("score vector has a negative entry");
    }
}

std::vector<int> Ranking::positions() const {
    std::vector<int> pos(order.size());
    for (int i = 0; i < size(); ++i) pos[static_cast<size_t>(order[i])] = i;
    return pos;
}

bool Ranking::is_permutation() const {
    std::vector<bool> seen(order.size(), false);
    for (int c : order) {
        if (c < 0 || c >= size() || seen[static_cast<size_t>(c)]) return false;
        seen[static_cast<size_t>(c)] = true;
    }
    return true;
}

Ranking ranking_from_scores(const ScoreVector& scores) {
    validate_score_vector(scores);
    Ranking r;
    r.order.resize(scores.size());
    std::iota(r.order.begin(), r.order.end(), 0);
    std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
        if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)]) {
            return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
        }
        return a < b;
    });
    return r;
}

void Profile::validate() const {
    if (m < 2) throw std::invalid_argument("profile: need at least two classes");
    if (rankings.empty()) throw std::invalid_argument("profile: need at least one ranking");
    for (const Ranking& r : rankings) {
        if (r.size() != m || !r.is_permutation()) {
            throw std::invalid_argument("profile: ranking is not a permutation of the classes");
        }
    }
    if (validation_accuracy) {
        if (static_cast<int>(validation_accuracy->size()) != num_voters()) {
            throw std::invalid_argument("profile: validation accuracies do not match voter count");
        }
        for (double a : *validation_accuracy) {
            if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
                throw std::invalid_argument("profile: validation accuracy outside [0,1]");
            }
        }
    }
    if (weights) {
        if (static_cast<int>(weights->size()) != num_voters()) {
            throw std::invalid_argument("profile: weights do not match voter count");
        }
        for (double w : *weights) {
            if (!std::isfinite(w) || w < 0.0) {
                throw std::invalid_argument("profile: weights must be finite and >= 0");
            }
        }
    }
}

nlohmann::json profile_to_json(const Profile& profile) {
    nlohmann::json j;
    j["m"] = profile.m;
    auto rankings = nlohmann::json::array();
    for (const Ranking& r : profile.rankings) rankings.push_back(r.order);
    j["rankings"] = rankings;
    j["validation_accuracy"] =
        profile.validation_accuracy ? nlohmann::json(*profile.validation_accuracy)
                                    : nlohmann::json::array();
    j["weights"] = profile.weights ? nlohmann::json(*profile.weights) : nlohmann::json();
    return j;
}

Profile profile_from_json(const nlohmann::json& j) {
    Profile p;
    p.m = j.at("m").get<int>();
    for (const auto& item : j.at("rankings")) {
        p.rankings.push_back(Ranking{item.get<std::vector<int>>()});
    }
    if (j.contains("validation_accuracy") && !j["validation_accuracy"].is_null()) {
        auto acc = j["validation_accuracy"].get<std::vector<double>>();
        if (!acc.empty()) p.validation_accuracy = std::move(acc);
    }
    if (j.contains("weights") && !j["weights"].is_null()) {
        auto w = j["weights"].get<std::vector<double>>();
        if (!w.empty()) p.weights = std::move(w);
    }
    p.validate();
    return p;
}

Profile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open profile file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed profile JSON in " + path + ": " + e.what());
    }
    try {
        return profile_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed profile JSON in " + path + ": " + e.what());
    }
}

}  // namespace rankvote
