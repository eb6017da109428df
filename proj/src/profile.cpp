#include "edusim/profile.hpp"

#include <algorithm>

#include "edusim/rng.hpp"

namespace edusim {

Tier tierize(double value, TierBounds bounds) {
    if (!(bounds.t1 < bounds.t2)) throw UsageError("tier bounds require t1 < t2");
    if (value < bounds.t1) return Tier::Low;
    if (value < bounds.t2) return Tier::Medium;
    return Tier::High;
}

namespace {

// Top-m by frequency, ties broken by lexicographic concept id.
std::vector<ConceptId> top_concepts(const std::map<ConceptId, int>& counts, int m) {
    std::vector<std::pair<ConceptId, int>> items(counts.begin(), counts.end());
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    std::vector<ConceptId> out;
    for (const auto& [c, _] : items) {
        if (static_cast<int>(out.size()) >= m) break;
        out.push_back(c);
    }
    return out;
}

}  // namespace

LearnerProfile compute_profile(const LearnerLog& log, const Dataset& ds, double ability,
                               const ProfileParams& params) {
    LearnerProfile p;
    p.ability = ability;

    const auto n = static_cast<double>(log.records.size());
    if (!ds.exercises.empty()) p.activity = n / static_cast<double>(ds.exercises.size());

    std::map<ConceptId, int> concept_counts;
    int successes = 0;
    for (const auto& rec : log.records) {
        concept_counts[ds.exercise(rec.exercise_id).concept_id] += 1;
        successes += rec.correct;
    }
    if (!ds.concepts.empty()) {
        p.diversity = static_cast<double>(concept_counts.size()) / static_cast<double>(ds.concepts.size());
    }
    p.success_rate = log.records.empty() ? 0.0 : static_cast<double>(successes) / n;
    p.preference = top_concepts(concept_counts, params.preference_m);

    p.tiers["activity"] = tierize(p.activity, params.ratio_bounds);
    p.tiers["diversity"] = tierize(p.diversity, params.ratio_bounds);
    p.tiers["success_rate"] = tierize(p.success_rate, params.ratio_bounds);
    p.tiers["ability"] = tierize(p.ability, params.theta_bounds);
    return p;
}

LearnerProfile random_profile(std::uint64_t seed, const std::vector<ConceptId>& concepts,
                              const ProfileParams& params) {
    Rng rng(seed);
    LearnerProfile p;
    p.activity = rng.uniform01();
    p.diversity = rng.uniform01();
    p.success_rate = rng.uniform01();
    p.ability = rng.normal();

    std::vector<ConceptId> pool = concepts;
    rng.shuffle(pool);
    const auto m = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(params.preference_m));
    p.preference.assign(pool.begin(), pool.begin() + static_cast<long>(m));

    p.tiers["activity"] = tierize(p.activity, params.ratio_bounds);
    p.tiers["diversity"] = tierize(p.diversity, params.ratio_bounds);
    p.tiers["success_rate"] = tierize(p.success_rate, params.ratio_bounds);
    p.tiers["ability"] = tierize(p.ability, params.theta_bounds);
    return p;
}

}  // namespace edusim
