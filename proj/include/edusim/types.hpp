#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace edusim {

using LearnerId = std::string;
using ExerciseId = std::string;
using ConceptId = std::string;

// Error hierarchy. The CLI maps these onto exit codes:
// UsageError -> 1, DataError -> 2, BackendError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct BackendError : Error {
    using Error::Error;
};

enum class Tier : int { Low = 0, Medium = 1, High = 2 };

inline const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Low: return "low";
        case Tier::Medium: return "medium";
        case Tier::High: return "high";
    }
    return "low";
}

inline Tier tier_from_name(const std::string& s) {
    if (s == "low") return Tier::Low;
    if (s == "medium") return Tier::Medium;
    if (s == "high") return Tier::High;
    throw DataError("unknown tier label: " + s);
}

struct Exercise {
    ExerciseId id;
    std::string text;       // free-text content, may be empty
    ConceptId concept_id;   // exactly one concept per exercise
    std::optional<double> irt_a;  // filled by calibration when present
    std::optional<double> irt_b;
};

struct ResponseRecord {
    LearnerId learner_id;
    ExerciseId exercise_id;
    int correct = 0;  // 0 or 1
    int step = 0;     // position in the learner's sequence
};

struct LearnerLog {
    LearnerId learner_id;
    std::vector<ResponseRecord> records;  // ordered by step

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

// Unordered "these concepts are similar" pairs. Identity is implicit and
// never stored.
class ConceptRelation {
  public:
    void add(const ConceptId& a, const ConceptId& b) {
        if (a == b) return;
        pairs_.insert(ordered(a, b));
    }

    bool contains(const ConceptId& a, const ConceptId& b) const {
        return pairs_.count(ordered(a, b)) > 0;
    }

    std::size_t size() const { return pairs_.size(); }
    const std::set<std::pair<ConceptId, ConceptId>>& pairs() const { return pairs_; }

  private:
    static std::pair<ConceptId, ConceptId> ordered(const ConceptId& a, const ConceptId& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    std::set<std::pair<ConceptId, ConceptId>> pairs_;
};

// true iff k1 == k2 or the pair is declared similar.
inline bool concept_similar(const ConceptId& k1, const ConceptId& k2, const ConceptRelation& rel) {
    return k1 == k2 || rel.contains(k1, k2);
}

class Dataset {
  public:
    std::vector<Exercise> exercises;      // bank, stable order
    std::map<LearnerId, LearnerLog> logs; // sorted by learner id
    std::set<ConceptId> concepts;
    ConceptRelation relations;

    void rebuild_index() {
        index_.clear();
        for (std::size_t i = 0; i < exercises.size(); ++i) index_[exercises[i].id] = i;
    }

    bool has_exercise(const ExerciseId& id) const { return index_.count(id) > 0; }

    const Exercise& exercise(const ExerciseId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw DataError("unknown exercise id: " + id);
        return exercises[it->second];
    }

    std::size_t record_count() const {
        std::size_t n = 0;
        for (const auto& [_, log] : logs) n += log.records.size();
        return n;
    }

  private:
    std::map<ExerciseId, std::size_t> index_;
};

}  // namespace edusim
