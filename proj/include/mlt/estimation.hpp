#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mlt/lt_grid.hpp"
#include "mlt/numerics.hpp"

namespace mlt::estimation {

// Outcome of one transform-matching fit. estimates are in natural coordinates
// (the model's parameter box); evaluations counts objective calls across all
// multi-start runs.
struct FitResult {
    std::vector<double> estimates;
    double objective = 0.0;
    bool converged = false;
    long evaluations = 0;
};

// Aggregated Monte-Carlo study. per_trial holds one row per successful trial
// in trial-index order; trials is the requested count and failed the number of
// trials that threw (excluded from per_trial and from all aggregates).
// mean/rmse/mae are single-pass, left-to-right reductions of per_trial, so
// recomputing them from the stored rows reproduces them bitwise.
struct MCReport {
    std::vector<double> true_params;
    std::vector<double> mean_estimates;
    std::vector<double> rmse;
    std::vector<double> mae;
    std::vector<std::vector<double>> per_trial;
    std::size_t trials = 0;
    std::size_t length = 0;
    std::uint64_t base_seed = 0;
    std::size_t failed = 0;
};

enum class Model { ML, Prabhakar, AR1 };

// (1/n) sum_i exp(-s x_i). Sample values may be negative (residual use-case),
// in which case individual terms exceed 1.
double empirical_lt(const std::vector<double>& sample, double s);

// 20 points log-spaced on [0.1/m, 10/m], m = median(|x_i|). Scales the
// abscissas to the data, since the mean may be infinite.
LTGrid default_grid(const std::vector<double>& sample);

// Unweighted least squares between the empirical transform of sample and
// model_lt(params, s) over the grid.
double objective(const std::function<double(const std::vector<double>&, double)>& model_lt,
                 const std::vector<double>& params, const std::vector<double>& sample,
                 const LTGrid& grid);

// Two-parameter fit over (alpha, sigma); multi-start Nelder-Mead in logistic/
// log coordinates. grid_override replaces default_grid(sample) when given.
FitResult fit_ml(const std::vector<double>& sample, const numerics::OptimizerSpec& spec = {},
                 const LTGrid* grid_override = nullptr);

// Three-parameter fit over (alpha, sigma, gamma), sigma kept strictly inside
// [1, 1 + alpha*gamma) by construction. Uses a median-anchored grid spanning
// eight decades: heavy-tail members decay over far more of the s-axis than a
// two-decade window, which cannot tell the three parameters apart.
FitResult fit_prabhakar(const std::vector<double>& sample,
                        const numerics::OptimizerSpec& spec = {},
                        const LTGrid* grid_override = nullptr);

// AR(1) fit over (alpha, rho) from an observed series: matches the empirical
// transform of the lag residuals e_t(rho) = y_t - rho*y_{t-1} (recomputed per
// candidate rho) against the innovation transform, on a grid frozen at the
// best multi-start initialization, plus a lag-1 pair-transform term that
// rules out the rho = 0 degeneracy a marginal-only comparison cannot see.
FitResult fit_ar1(const std::vector<double>& y, const numerics::OptimizerSpec& spec = {},
                  const LTGrid* grid_override = nullptr);

// AR(1) fit over (alpha, rho) from an iid innovation sample (exact zeros are
// the point mass and carry the rho signal). Regular, smooth estimation - this
// is the moment-matching path the simulation-study tables are built from.
FitResult fit_ar1_innovations(const std::vector<double>& eps,
                              const numerics::OptimizerSpec& spec = {},
                              const LTGrid* grid_override = nullptr);

// trials independent simulate-and-fit rounds with per-trial seed
// base_seed + trial index; aggregation is order-independent. Throws
// StudyFailure if more than 20% of trials error.
MCReport monte_carlo_study(Model model, const std::vector<double>& truth, std::size_t trials,
                           std::size_t length, std::uint64_t base_seed);

}  // namespace mlt::estimation
