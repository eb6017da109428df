#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edusim/cognition_types.hpp"
#include "edusim/profile.hpp"
#include "edusim/types.hpp"

namespace edusim {

struct CalibrationConfig {
    double learning_rate = 0.25;
    int epochs = 500;
    double l2 = 0.01;      // penalty weight on theta^2, (a-1)^2, b^2
    double tol = 1e-6;     // stop when epoch objective improvement drops below
};

// Penalized 2PL log-likelihood over a dataset, with analytic gradients.
// Parameter layout: [theta_0..theta_{U-1}, alpha_0..alpha_{I-1}, b_0..b_{I-1}]
// where a = softplus(alpha) keeps discrimination positive.
class Irt2plObjective {
  public:
    Irt2plObjective(const Dataset& ds, double l2);

    std::size_t n_params() const { return n_learners_ + 2 * n_items_; }
    std::size_t n_learners() const { return n_learners_; }
    std::size_t n_items() const { return n_items_; }

    std::vector<double> initial_params() const;

    // Objective = sum log-likelihood - l2 * (sum theta^2 + sum (a-1)^2 + sum b^2).
    double value(const std::vector<double>& params) const;
    std::vector<double> gradient(const std::vector<double>& params) const;

    IrtModel to_model(const std::vector<double>& params) const;

    static double softplus(double x);
    static double softplus_inverse(double y);

  private:
    struct Obs {
        std::uint32_t learner;
        std::uint32_t item;
        std::int8_t y;
    };
    std::vector<Obs> obs_;
    std::vector<LearnerId> learner_ids_;
    std::vector<ExerciseId> item_ids_;
    std::size_t n_learners_ = 0;
    std::size_t n_items_ = 0;
    double l2_ = 0.01;
};

struct CalibrationResult {
    IrtModel model;
    std::vector<double> objective_trace;  // one entry per accepted epoch
    int epochs_run = 0;
    bool converged = false;
};

// Maximum-likelihood calibration by gradient ascent with a backtracking step
// so the objective never decreases across epochs.
CalibrationResult calibrate(const Dataset& ds, const CalibrationConfig& cfg = {});

struct EapConfig {
    double grid_lo = -4.0;
    double grid_hi = 4.0;
    int grid_points = 81;
};

// Posterior-mean ability on a fixed grid with an N(0,1) prior. This is the
// single estimator shared by ability inference and in-session updates.
double eap_estimate(const std::vector<std::pair<double, double>>& item_params,
                    const std::vector<int>& responses, const EapConfig& cfg = {});

// EAP over a learner's log; throws when an item lacks parameters.
double infer_ability(const IrtModel& model, const LearnerLog& log, const EapConfig& cfg = {});

Tier proficiency_tier(double p);

void save_model(const IrtModel& model, const std::string& path);
IrtModel load_model(const std::string& path);

}  // namespace edusim
