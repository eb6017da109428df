#include "edusim/memory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "edusim/cognition.hpp"

namespace edusim {

using nlohmann::json;

std::vector<FactualEntry> MemoryState::short_term() const {
    const std::size_t n = factual.size();
    const std::size_t s = static_cast<std::size_t>(std::max(short_window, 0));
    const std::size_t take = std::min(n, s);
    return {factual.end() - static_cast<long>(take), factual.end()};
}

int MemoryState::last_step() const {
    return factual.empty() ? -1 : factual.back().observed_step;
}

void write_observation(MemoryState& mem, const Observation& obs, const ConceptRelation& rel) {
    if (obs.step <= mem.last_step()) {
        throw DataError("out-of-order memory write: step " + std::to_string(obs.step) +
                        " after step " + std::to_string(mem.last_step()));
    }
    for (auto& entry : mem.factual) {
        if (concept_similar(entry.concept_id, obs.concept_id, rel)) entry.counter += 1;
    }
    FactualEntry entry;
    entry.record = ResponseRecord{obs.learner_id, obs.exercise_id, obs.correct, obs.step};
    entry.concept_id = obs.concept_id;
    entry.text = obs.text;
    entry.counter = 1;
    entry.observed_step = obs.step;
    mem.factual.push_back(std::move(entry));
}

void promote_reinforced(MemoryState& mem, int threshold) {
    if (threshold < 1) throw UsageError("promotion threshold must be >= 1");
    for (const auto& entry : mem.factual) {
        if (entry.counter < threshold) continue;
        const bool already = std::any_of(
            mem.reinforced.begin(), mem.reinforced.end(),
            [&](const FactualEntry& r) { return r.observed_step == entry.observed_step; });
        if (!already) mem.reinforced.push_back(entry);
    }
}

double forgetting_strength(int age) {
    return 1.0 / (1.0 + std::exp(-static_cast<double>(age)));
}

void apply_forgetting(MemoryState& mem, int current_step, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw UsageError("forgetting threshold must be in (0, 1)");
    std::vector<FactualEntry> kept;
    kept.reserve(mem.reinforced.size());
    for (auto& r : mem.reinforced) {
        const int age = current_step - r.observed_step;
        if (forgetting_strength(age) > lambda) {
            for (auto& f : mem.factual) {
                if (f.observed_step == r.observed_step) f.counter = 1;
            }
        } else {
            kept.push_back(std::move(r));
        }
    }
    mem.reinforced.swap(kept);
}

void set_summary(MemoryState& mem, std::string text) { mem.summary = std::move(text); }

ContextBundle retrieve_context(const MemoryState& mem, const ProficiencyState& prof) {
    ContextBundle bundle;
    bundle.short_term = mem.short_term();
    bundle.summary = mem.summary;
    bundle.reinforced = mem.reinforced;
    for (const auto& e : bundle.short_term) {
        bundle.proficiency_tiers[e.concept_id] = proficiency_tier(prof.value(e.concept_id));
    }
    for (const auto& e : bundle.reinforced) {
        bundle.proficiency_tiers[e.concept_id] = proficiency_tier(prof.value(e.concept_id));
    }
    return bundle;
}

namespace {

json entry_to_json(const FactualEntry& e) {
    return json{{"learner_id", e.record.learner_id},
                {"exercise_id", e.record.exercise_id},
                {"correct", e.record.correct},
                {"step", e.record.step},
                {"concept_id", e.concept_id},
                {"text", e.text},
                {"counter", e.counter},
                {"observed_step", e.observed_step}};
}

FactualEntry entry_from_json(const json& j) {
    FactualEntry e;
    e.record.learner_id = j.at("learner_id").get<std::string>();
    e.record.exercise_id = j.at("exercise_id").get<std::string>();
    e.record.correct = j.at("correct").get<int>();
    e.record.step = j.at("step").get<int>();
    e.concept_id = j.at("concept_id").get<std::string>();
    e.text = j.at("text").get<std::string>();
    e.counter = j.at("counter").get<int>();
    e.observed_step = j.at("observed_step").get<int>();
    return e;
}

}  // namespace

std::string memory_to_jsonl(const MemoryState& mem) {
    std::ostringstream out;
    out << json{{"kind", "header"}, {"short_window", mem.short_window}, {"summary", mem.summary}}.dump()
        << "\n";
    for (const auto& e : mem.factual) {
        json j = entry_to_json(e);
        j["kind"] = "fact";
        out << j.dump() << "\n";
    }
    for (const auto& e : mem.reinforced) {
        json j = entry_to_json(e);
        j["kind"] = "reinforced";
        out << j.dump() << "\n";
    }
    return out.str();
}

MemoryState memory_from_jsonl(const std::string& text) {
    MemoryState mem;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("memory snapshot line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "header") {
            mem.short_window = j.at("short_window").get<int>();
            mem.summary = j.at("summary").get<std::string>();
            header_seen = true;
        } else if (kind == "fact") {
            mem.factual.push_back(entry_from_json(j));
        } else if (kind == "reinforced") {
            mem.reinforced.push_back(entry_from_json(j));
        } else {
            throw DataError("memory snapshot line " + std::to_string(lineno) + ": unknown kind " + kind);
        }
    }
    if (!header_seen) throw DataError("memory snapshot has no header line");
    return mem;
}

}  // namespace edusim
