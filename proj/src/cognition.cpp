#include "edusim/cognition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace edusim {

using nlohmann::json;

double Irt2plObjective::softplus(double x) {
    if (x > 30.0) return x;
    return std::log1p(std::exp(x));
}

double Irt2plObjective::softplus_inverse(double y) {
    // y > 0; inverse of log(1 + e^x)
    if (y > 30.0) return y;
    return std::log(std::expm1(y));
}

Irt2plObjective::Irt2plObjective(const Dataset& ds, double l2) : l2_(l2) {
    if (ds.logs.empty()) throw DataError("cannot calibrate on an empty dataset");
    for (const auto& [lid, log] : ds.logs) {
        if (log.empty()) throw DataError("learner " + lid + " has no records");
        learner_ids_.push_back(lid);
    }
    for (const auto& ex : ds.exercises) item_ids_.push_back(ex.id);
    std::sort(item_ids_.begin(), item_ids_.end());
    n_learners_ = learner_ids_.size();
    n_items_ = item_ids_.size();

    std::map<ExerciseId, std::uint32_t> item_index;
    for (std::size_t i = 0; i < item_ids_.size(); ++i) item_index[item_ids_[i]] = static_cast<std::uint32_t>(i);

    for (std::size_t u = 0; u < learner_ids_.size(); ++u) {
        const auto& log = ds.logs.at(learner_ids_[u]);
        for (const auto& rec : log.records) {
            obs_.push_back(Obs{static_cast<std::uint32_t>(u), item_index.at(rec.exercise_id),
                               static_cast<std::int8_t>(rec.correct)});
        }
    }
}

std::vector<double> Irt2plObjective::initial_params() const {
    std::vector<double> p(n_params(), 0.0);
    const double alpha0 = softplus_inverse(1.0);  // start all items at a = 1, b = 0
    for (std::size_t i = 0; i < n_items_; ++i) p[n_learners_ + i] = alpha0;
    return p;
}

double Irt2plObjective::value(const std::vector<double>& params) const {
    double ll = 0.0;
    for (const auto& o : obs_) {
        const double theta = params[o.learner];
        const double a = softplus(params[n_learners_ + o.item]);
        const double b = params[n_learners_ + n_items_ + o.item];
        const double z = a * (theta - b);
        // log p = -log(1+e^-z), log(1-p) = -log(1+e^z); stable via log1p
        if (o.y == 1) {
            ll += z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
        } else {
            ll += z >= 0 ? -z - std::log1p(std::exp(-z)) : -std::log1p(std::exp(z));
        }
    }
    double penalty = 0.0;
    for (std::size_t u = 0; u < n_learners_; ++u) penalty += params[u] * params[u];
    for (std::size_t i = 0; i < n_items_; ++i) {
        const double a = softplus(params[n_learners_ + i]);
        const double b = params[n_learners_ + n_items_ + i];
        penalty += (a - 1.0) * (a - 1.0) + b * b;
    }
    return ll - l2_ * penalty;
}

std::vector<double> Irt2plObjective::gradient(const std::vector<double>& params) const {
    std::vector<double> g(n_params(), 0.0);
    for (const auto& o : obs_) {
        const double theta = params[o.learner];
        const double alpha = params[n_learners_ + o.item];
        const double a = softplus(alpha);
        const double b = params[n_learners_ + n_items_ + o.item];
        const double p = irt_prob(theta, a, b);
        const double resid = static_cast<double>(o.y) - p;  // d ll / d z
        // z = a (theta - b)
        g[o.learner] += a * resid;
        const double da = (theta - b) * resid;
        const double dalpha = da * irt_prob(alpha, 1.0, 0.0);  // softplus' = sigmoid
        g[n_learners_ + o.item] += dalpha;
        g[n_learners_ + n_items_ + o.item] += -a * resid;
    }
    for (std::size_t u = 0; u < n_learners_; ++u) g[u] -= 2.0 * l2_ * params[u];
    for (std::size_t i = 0; i < n_items_; ++i) {
        const double alpha = params[n_learners_ + i];
        const double a = softplus(alpha);
        g[n_learners_ + i] -= 2.0 * l2_ * (a - 1.0) * irt_prob(alpha, 1.0, 0.0);
        const double b = params[n_learners_ + n_items_ + i];
        g[n_learners_ + n_items_ + i] -= 2.0 * l2_ * b;
    }
    return g;
}

IrtModel Irt2plObjective::to_model(const std::vector<double>& params) const {
    IrtModel m;
    for (std::size_t u = 0; u < n_learners_; ++u) m.theta[learner_ids_[u]] = params[u];
    for (std::size_t i = 0; i < n_items_; ++i) {
        m.disc[item_ids_[i]] = softplus(params[n_learners_ + i]);
        m.diff[item_ids_[i]] = params[n_learners_ + n_items_ + i];
    }
    return m;
}

CalibrationResult calibrate(const Dataset& ds, const CalibrationConfig& cfg) {
    Irt2plObjective obj(ds, cfg.l2);
    std::vector<double> params = obj.initial_params();
    double current = obj.value(params);

    CalibrationResult result;
    result.objective_trace.push_back(current);

    double step = cfg.learning_rate;
    std::vector<double> trial(params.size());

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const std::vector<double> g = obj.gradient(params);

        // Backtrack until the objective does not decrease (1e-9 slack), so
        // the trace is monotone non-decreasing.
        double next = -HUGE_VAL;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t i = 0; i < params.size(); ++i) trial[i] = params[i] + step * g[i];
            next = obj.value(trial);
            if (next >= current - 1e-9) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        params.swap(trial);
        result.epochs_run = epoch + 1;
        result.objective_trace.push_back(next);
        const double improvement = next - current;
        current = next;
        step = std::min(step * 1.2, cfg.learning_rate * 8.0);
        if (improvement >= 0.0 && improvement < cfg.tol) {
            result.converged = true;
            break;
        }
    }

    result.model = obj.to_model(params);
    return result;
}

double eap_estimate(const std::vector<std::pair<double, double>>& item_params,
                    const std::vector<int>& responses, const EapConfig& cfg) {
    if (item_params.size() != responses.size()) {
        throw UsageError("eap_estimate: item/response length mismatch");
    }
    if (responses.empty()) return 0.0;  // prior mean
    if (cfg.grid_points < 2 || !(cfg.grid_lo < cfg.grid_hi)) {
        throw UsageError("eap_estimate: invalid grid");
    }

    const int n = cfg.grid_points;
    const double h = (cfg.grid_hi - cfg.grid_lo) / static_cast<double>(n - 1);

    // log posterior up to a constant, then normalize against the max
    std::vector<double> logw(n);
    double maxw = -HUGE_VAL;
    for (int gi = 0; gi < n; ++gi) {
        const double th = cfg.grid_lo + h * gi;
        double lw = -0.5 * th * th;  // N(0,1) prior kernel
        for (std::size_t k = 0; k < responses.size(); ++k) {
            const double z = item_params[k].first * (th - item_params[k].second);
            if (responses[k] == 1) {
                lw += z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
            } else {
                lw += z >= 0 ? -z - std::log1p(std::exp(-z)) : -std::log1p(std::exp(z));
            }
        }
        logw[gi] = lw;
        maxw = std::max(maxw, lw);
    }

    double num = 0.0, den = 0.0;
    for (int gi = 0; gi < n; ++gi) {
        const double th = cfg.grid_lo + h * gi;
        const double w = std::exp(logw[gi] - maxw);
        num += th * w;
        den += w;
    }
    return num / den;
}

double infer_ability(const IrtModel& model, const LearnerLog& log, const EapConfig& cfg) {
    std::vector<std::pair<double, double>> items;
    std::vector<int> responses;
    items.reserve(log.records.size());
    responses.reserve(log.records.size());
    for (const auto& rec : log.records) {
        items.emplace_back(model.a_of(rec.exercise_id), model.b_of(rec.exercise_id));
        responses.push_back(rec.correct);
    }
    return eap_estimate(items, responses, cfg);
}

Tier proficiency_tier(double p) { return tierize(p, TierBounds{1.0 / 3.0, 2.0 / 3.0}); }

void save_model(const IrtModel& model, const std::string& path) {
    json j;
    j["theta"] = model.theta;
    j["a"] = model.disc;
    j["b"] = model.diff;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << j.dump(2) << "\n";
}

IrtModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("missing model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": malformed model file: " + e.what());
    }
    IrtModel m;
    m.theta = j.at("theta").get<std::map<LearnerId, double>>();
    m.disc = j.at("a").get<std::map<ExerciseId, double>>();
    m.diff = j.at("b").get<std::map<ExerciseId, double>>();
    for (const auto& [id, a] : m.disc) {
        if (!(a > 0.0)) throw DataError(path + ": non-positive discrimination for item " + id);
    }
    return m;
}

}  // namespace edusim
