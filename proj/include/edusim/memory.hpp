#pragma once

#include <string>
#include <vector>

#include "edusim/cognition_types.hpp"
#include "edusim/types.hpp"

namespace edusim {

// One observed practice fact. The counter tracks reinforcement by later
// similar-concept observations and never drops below 1.
struct FactualEntry {
    ResponseRecord record;
    ConceptId concept_id;
    std::string text;       // exercise content at observation time
    int counter = 1;
    int observed_step = 0;  // immutable once written

    bool operator==(const FactualEntry&) const = default;
};

// Factual store plus the long-term view (reinforced copies + rolling
// summary). The short-term view is derived: the last min(s, n) entries.
struct MemoryState {
    std::vector<FactualEntry> factual;
    int short_window = 5;                  // s
    std::vector<FactualEntry> reinforced;  // long-term copies, keyed by observed_step
    std::string summary;

    std::vector<FactualEntry> short_term() const;
    int last_step() const;  // -1 when empty

    bool operator==(const MemoryState&) const = default;
};

struct Observation {
    LearnerId learner_id;
    ExerciseId exercise_id;
    ConceptId concept_id;
    std::string text;
    int correct = 0;
    int step = 0;
};

// Appends the observation with counter 1 after bumping the counter of every
// existing entry whose concept is similar to it. Steps must arrive in
// strictly increasing order.
void write_observation(MemoryState& mem, const Observation& obs, const ConceptRelation& rel);

// Copies every factual entry with counter >= F into the reinforced store
// (at most once per observed_step). Idempotent.
void promote_reinforced(MemoryState& mem, int threshold);

// Forgetting strength by age, g = 1 / (1 + e^-(n - i)).
double forgetting_strength(int age);

// Drops every reinforced entry whose g(n - i) exceeds lambda and resets the
// matching factual counter to 1. Only the long-term store is scanned.
void apply_forgetting(MemoryState& mem, int current_step, double lambda);

// Replaces the summary wholesale; nothing else changes.
void set_summary(MemoryState& mem, std::string text);

// What the agent may see: the factual store itself is never exposed.
struct ContextBundle {
    std::vector<FactualEntry> short_term;
    std::string summary;
    std::vector<FactualEntry> reinforced;
    std::map<ConceptId, Tier> proficiency_tiers;  // concepts present in the bundle
};

ContextBundle retrieve_context(const MemoryState& mem, const ProficiencyState& prof);

// Line-delimited JSON snapshot; round-trips losslessly.
std::string memory_to_jsonl(const MemoryState& mem);
MemoryState memory_from_jsonl(const std::string& text);

}  // namespace edusim
