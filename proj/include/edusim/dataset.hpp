#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "edusim/cognition_types.hpp"
#include "edusim/types.hpp"

namespace edusim {

// Dataset directory layout:
//   exercises.jsonl          {"id", "text", "concept_id"[, "irt_a", "irt_b"]}
//   logs.jsonl               {"learner_id", "exercise_id", "correct", "step"}
//   concepts.txt             one concept id per line
//   concept_relations.csv    optional, "id1,id2" per line
//   ground_truth.json        optional, written by the synthetic generator
//
// Loading cross-validates every reference and normalizes each learner's
// steps to 0..n-1. Errors carry file and line diagnostics.
Dataset load_dataset(const std::string& dir);

void save_dataset(const Dataset& ds, const std::string& dir);

// First floor(ratio * n) records (at least one) go to train, the remainder
// to test; order preserved.
std::pair<LearnerLog, LearnerLog> split_chronological(const LearnerLog& log, double ratio);

struct SyntheticSpec {
    std::uint64_t seed = 42;
    std::size_t n_learners = 100;
    std::size_t n_items = 200;
    std::size_t n_concepts = 20;
    // 0 means every learner answers every item; otherwise each learner
    // answers this many distinct items sampled at random.
    std::size_t responses_per_learner = 0;
};

struct SyntheticDataset {
    Dataset dataset;
    IrtModel ground_truth;  // true theta per learner, true a/b per item
};

// Items draw a in [0.5, 2.5] and b in [-3, 3]; learners draw theta from
// N(0,1); responses are Bernoulli(sigmoid(a * (theta - b))).
SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

void save_ground_truth(const IrtModel& truth, const std::string& dir);
bool has_ground_truth(const std::string& dir);
IrtModel load_ground_truth(const std::string& dir);

}  // namespace edusim
