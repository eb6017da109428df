#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "edusim/types.hpp"

namespace edusim {

// 2PL response probability, p = sigmoid(a * (theta - b)).
inline double irt_prob(double theta, double a, double b) {
    const double z = a * (theta - b);
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

struct IrtModel {
    std::map<LearnerId, double> theta;
    std::map<ExerciseId, double> disc;  // a > 0
    std::map<ExerciseId, double> diff;  // b

    bool has_item(const ExerciseId& id) const { return disc.count(id) && diff.count(id); }

    double a_of(const ExerciseId& id) const {
        auto it = disc.find(id);
        if (it == disc.end()) throw DataError("item has no discrimination parameter: " + id);
        return it->second;
    }

    double b_of(const ExerciseId& id) const {
        auto it = diff.find(id);
        if (it == diff.end()) throw DataError("item has no difficulty parameter: " + id);
        return it->second;
    }

    double prob(double th, const ExerciseId& id) const { return irt_prob(th, a_of(id), b_of(id)); }
};

// Per-concept mastery in [0, 1], EMA-updated; unseen concepts read as 0.5.
struct ProficiencyState {
    std::map<ConceptId, double> prof;
    double eta = 0.2;  // learning rate in (0, 1]

    double value(const ConceptId& c) const {
        auto it = prof.find(c);
        return it == prof.end() ? 0.5 : it->second;
    }
};

// p <- (1 - eta) * p + eta * y, clamped to [0, 1].
inline void update_proficiency(ProficiencyState& st, const ConceptId& concept, int y) {
    const double p = st.value(concept);
    const double next = (1.0 - st.eta) * p + st.eta * static_cast<double>(y);
    st.prof[concept] = std::clamp(next, 0.0, 1.0);
}

}  // namespace edusim
