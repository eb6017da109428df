#include "edusim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edusim/rng.hpp"

namespace edusim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_or_throw(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("missing file: " + p.string());
    return in;
}

json parse_line(const fs::path& file, int lineno, const std::string& line) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw DataError(file.string() + ":" + std::to_string(lineno) + ": malformed row: " + e.what());
    }
}

std::string require_string(const json& j, const char* key, const fs::path& file, int lineno) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
        throw DataError(file.string() + ":" + std::to_string(lineno) + ": missing or empty field '" +
                        key + "'");
    }
    return j[key].get<std::string>();
}

}  // namespace

Dataset load_dataset(const std::string& dir) {
    const fs::path root(dir);
    Dataset ds;

    {
        const fs::path p = root / "concepts.txt";
        auto in = open_or_throw(p);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            ds.concepts.insert(line);
        }
        if (ds.concepts.empty()) throw DataError(p.string() + ": no concepts");
    }

    {
        const fs::path p = root / "exercises.jsonl";
        auto in = open_or_throw(p);
        std::string line;
        int lineno = 0;
        std::set<ExerciseId> ids;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const json j = parse_line(p, lineno, line);
            Exercise ex;
            ex.id = require_string(j, "id", p, lineno);
            ex.concept_id = require_string(j, "concept_id", p, lineno);
            if (j.contains("text")) ex.text = j["text"].get<std::string>();
            if (j.contains("irt_a")) {
                ex.irt_a = j["irt_a"].get<double>();
                if (!(*ex.irt_a > 0.0)) {
                    throw DataError(p.string() + ":" + std::to_string(lineno) +
                                    ": irt_a must be positive");
                }
            }
            if (j.contains("irt_b")) ex.irt_b = j["irt_b"].get<double>();
            if (!ids.insert(ex.id).second) {
                throw DataError(p.string() + ":" + std::to_string(lineno) +
                                ": duplicate exercise id: " + ex.id);
            }
            if (!ds.concepts.count(ex.concept_id)) {
                throw DataError(p.string() + ":" + std::to_string(lineno) +
                                ": exercise " + ex.id + " references unknown concept: " + ex.concept_id);
            }
            ds.exercises.push_back(std::move(ex));
        }
        if (ds.exercises.empty()) throw DataError(p.string() + ": no exercises");
        ds.rebuild_index();
    }

    {
        const fs::path p = root / "logs.jsonl";
        auto in = open_or_throw(p);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const json j = parse_line(p, lineno, line);
            ResponseRecord rec;
            rec.learner_id = require_string(j, "learner_id", p, lineno);
            rec.exercise_id = require_string(j, "exercise_id", p, lineno);
            if (!j.contains("correct") || !j["correct"].is_number_integer()) {
                throw DataError(p.string() + ":" + std::to_string(lineno) + ": missing field 'correct'");
            }
            rec.correct = j["correct"].get<int>();
            if (rec.correct != 0 && rec.correct != 1) {
                throw DataError(p.string() + ":" + std::to_string(lineno) +
                                ": correct must be 0 or 1, got " + std::to_string(rec.correct));
            }
            if (!j.contains("step") || !j["step"].is_number_integer() || j["step"].get<int>() < 0) {
                throw DataError(p.string() + ":" + std::to_string(lineno) +
                                ": step must be a non-negative integer");
            }
            rec.step = j["step"].get<int>();
            if (!ds.has_exercise(rec.exercise_id)) {
                throw DataError(p.string() + ":" + std::to_string(lineno) +
                                ": record references unknown exercise id: " + rec.exercise_id);
            }
            auto& log = ds.logs[rec.learner_id];
            log.learner_id = rec.learner_id;
            log.records.push_back(std::move(rec));
        }
        if (ds.logs.empty()) throw DataError(p.string() + ": no learners");
    }

    // Validate per-learner ordering and uniqueness, then normalize steps to
    // the strict prefix 0..n-1.
    for (auto& [lid, log] : ds.logs) {
        std::set<ExerciseId> seen;
        int prev = -1;
        for (const auto& rec : log.records) {
            if (rec.step <= prev) {
                throw DataError("logs.jsonl: learner " + lid +
                                ": steps must be strictly increasing (at exercise " +
                                rec.exercise_id + ")");
            }
            prev = rec.step;
            if (!seen.insert(rec.exercise_id).second) {
                throw DataError("logs.jsonl: learner " + lid + ": exercise " + rec.exercise_id +
                                " appears more than once");
            }
        }
        for (std::size_t i = 0; i < log.records.size(); ++i) log.records[i].step = static_cast<int>(i);
    }

    {
        const fs::path p = root / "concept_relations.csv";
        if (fs::exists(p)) {
            auto in = open_or_throw(p);
            std::string line;
            int lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos) {
                    throw DataError(p.string() + ":" + std::to_string(lineno) +
                                    ": expected two comma-separated concept ids");
                }
                const std::string a = line.substr(0, comma);
                const std::string b = line.substr(comma + 1);
                for (const auto& c : {a, b}) {
                    if (!ds.concepts.count(c)) {
                        throw DataError(p.string() + ":" + std::to_string(lineno) +
                                        ": relation references unknown concept: " + c);
                    }
                }
                ds.relations.add(a, b);  // self-pairs are dropped (identity is implicit)
            }
        }
    }

    return ds;
}

void save_dataset(const Dataset& ds, const std::string& dir) {
    const fs::path root(dir);
    fs::create_directories(root);

    {
        std::ofstream out(root / "concepts.txt");
        for (const auto& c : ds.concepts) out << c << "\n";
    }
    {
        std::ofstream out(root / "exercises.jsonl");
        for (const auto& ex : ds.exercises) {
            json j;
            j["id"] = ex.id;
            j["text"] = ex.text;
            j["concept_id"] = ex.concept_id;
            if (ex.irt_a) j["irt_a"] = *ex.irt_a;
            if (ex.irt_b) j["irt_b"] = *ex.irt_b;
            out << j.dump() << "\n";
        }
    }
    {
        std::ofstream out(root / "logs.jsonl");
        for (const auto& [lid, log] : ds.logs) {
            for (const auto& rec : log.records) {
                json j;
                j["learner_id"] = rec.learner_id;
                j["exercise_id"] = rec.exercise_id;
                j["correct"] = rec.correct;
                j["step"] = rec.step;
                out << j.dump() << "\n";
            }
        }
    }
    if (ds.relations.size() > 0) {
        std::ofstream out(root / "concept_relations.csv");
        for (const auto& [a, b] : ds.relations.pairs()) out << a << "," << b << "\n";
    }
}

std::pair<LearnerLog, LearnerLog> split_chronological(const LearnerLog& log, double ratio) {
    if (log.empty()) throw DataError("cannot split an empty log (learner " + log.learner_id + ")");
    if (!(ratio > 0.0) || ratio > 1.0) {
        throw UsageError("split ratio must be in (0, 1], got " + std::to_string(ratio));
    }
    const std::size_t n = log.records.size();
    // Tiny epsilon guards against representation error in ratio * n for
    // clean rationals like 0.29 * 100.
    auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
    n_train = std::max<std::size_t>(1, std::min(n_train, n));

    LearnerLog train{log.learner_id, {}};
    LearnerLog test{log.learner_id, {}};
    train.records.assign(log.records.begin(), log.records.begin() + static_cast<long>(n_train));
    test.records.assign(log.records.begin() + static_cast<long>(n_train), log.records.end());
    return {train, test};
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_learners < 1 || spec.n_items < 1 || spec.n_concepts < 1) {
        throw UsageError("synthetic sizes must be >= 1");
    }
    SyntheticDataset out;
    Dataset& ds = out.dataset;
    IrtModel& truth = out.ground_truth;

    const std::size_t id_width = 4;
    auto pad = [&](std::size_t i) {
        std::string s = std::to_string(i);
        if (s.size() < id_width) s.insert(0, id_width - s.size(), '0');
        return s;
    };

    for (std::size_t k = 0; k < spec.n_concepts; ++k) ds.concepts.insert("k" + pad(k));

    Rng item_rng(derive_seed(spec.seed, "items"));
    std::vector<ConceptId> concept_list(ds.concepts.begin(), ds.concepts.end());
    for (std::size_t i = 0; i < spec.n_items; ++i) {
        Exercise ex;
        ex.id = "e" + pad(i);
        ex.concept_id = concept_list[i % concept_list.size()];
        ex.text = "Exercise " + ex.id + " on concept " + ex.concept_id;
        const double a = item_rng.uniform(0.5, 2.5);
        const double b = item_rng.uniform(-3.0, 3.0);
        truth.disc[ex.id] = a;
        truth.diff[ex.id] = b;
        ds.exercises.push_back(std::move(ex));
    }
    ds.rebuild_index();

    const std::size_t per_learner =
        spec.responses_per_learner == 0 ? spec.n_items
                                        : std::min(spec.responses_per_learner, spec.n_items);

    for (std::size_t u = 0; u < spec.n_learners; ++u) {
        const LearnerId lid = "u" + pad(u);
        Rng rng(derive_seed(spec.seed, "learner/" + lid));
        const double theta = rng.normal();
        truth.theta[lid] = theta;

        LearnerLog log{lid, {}};
        auto idx = rng.sample_indices(spec.n_items, per_learner);
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const Exercise& ex = ds.exercises[idx[t]];
            const double p = irt_prob(theta, truth.disc.at(ex.id), truth.diff.at(ex.id));
            ResponseRecord rec{lid, ex.id, rng.bernoulli(p), static_cast<int>(t)};
            log.records.push_back(std::move(rec));
        }
        ds.logs[lid] = std::move(log);
    }
    return out;
}

void save_ground_truth(const IrtModel& truth, const std::string& dir) {
    fs::create_directories(dir);
    json j;
    j["theta"] = truth.theta;
    j["a"] = truth.disc;
    j["b"] = truth.diff;
    std::ofstream out(fs::path(dir) / "ground_truth.json");
    out << j.dump(2) << "\n";
}

bool has_ground_truth(const std::string& dir) {
    return fs::exists(fs::path(dir) / "ground_truth.json");
}

IrtModel load_ground_truth(const std::string& dir) {
    const fs::path p = fs::path(dir) / "ground_truth.json";
    auto in = open_or_throw(p);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(p.string() + ": malformed ground truth: " + e.what());
    }
    IrtModel m;
    m.theta = j.at("theta").get<std::map<LearnerId, double>>();
    m.disc = j.at("a").get<std::map<ExerciseId, double>>();
    m.diff = j.at("b").get<std::map<ExerciseId, double>>();
    return m;
}

}  // namespace edusim
