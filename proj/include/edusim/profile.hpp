#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edusim/types.hpp"

namespace edusim {

struct TierBounds {
    double t1 = 1.0 / 3.0;
    double t2 = 2.0 / 3.0;
};

// low if v < t1, medium if t1 <= v < t2, high otherwise. Requires t1 < t2.
Tier tierize(double value, TierBounds bounds);

struct ProfileParams {
    TierBounds ratio_bounds{1.0 / 3.0, 2.0 / 3.0};  // activity / diversity / success rate
    TierBounds theta_bounds{-0.5, 0.5};             // ability
    int preference_m = 3;                           // top-m most frequent concepts
};

// Explicit practice styles plus the implicit ability factor.
struct LearnerProfile {
    double activity = 0.0;      // |l_u| / |E|
    double diversity = 0.0;     // |K_u| / |K|
    double success_rate = 0.0;  // sum(y) / |l_u|, 0 for an empty log
    std::vector<ConceptId> preference;
    double ability = 0.0;
    std::map<std::string, Tier> tiers;  // keys: activity, diversity, success_rate, ability
};

LearnerProfile compute_profile(const LearnerLog& log, const Dataset& ds, double ability,
                               const ProfileParams& params = {});

// Cold-start profile: ratio fields uniform in [0,1], ability from N(0,1),
// preference sampled from the concept set. Deterministic for a seed.
LearnerProfile random_profile(std::uint64_t seed, const std::vector<ConceptId>& concepts,
                              const ProfileParams& params = {});

}  // namespace edusim
