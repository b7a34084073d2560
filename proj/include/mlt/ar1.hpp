#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlt/lt_grid.hpp"
#include "mlt/numerics.hpp"

namespace mlt::ar1 {

// Stationary AR(1) with heavy-tailed stationary marginals. alpha = 1 is
// excluded (the innovation density representation vanishes there) and only
// nonnegative dependence is in scope.
struct AR1Params {
    double alpha;  // in (0, 1)
    double rho;    // in [0, 1)

    AR1Params(double alpha_, double rho_);
};

// A simulated path plus the innovations that produced it. The recurrence
// y[t] = rho*y[t-1] + eps[t] (t >= 1) reconstructs y bitwise from y[0] and eps.
struct Trajectory {
    std::vector<double> y;
    std::vector<double> eps;  // eps[0] is 0 by convention (y[0] is the stationary start)
    AR1Params params;
    std::uint64_t seed;
};

// Innovation Laplace transform (1 + (rho*s)^alpha) / (1 + s^alpha).
double innovation_lt(const AR1Params& p, double s);

// Density of the continuous part of the innovation law at x > 0; the law also
// carries an atom of mass rho^alpha at 0, so this integrates to 1 - rho^alpha.
double innovation_pdf(const AR1Params& p, double x, const numerics::QuadratureSpec& spec = {});

// Exact mixture sampler: emits 0 with probability rho^alpha, otherwise a draw
// from the stationary marginal law (scale 1).
std::vector<double> sample_innovations(const AR1Params& p, std::size_t n, std::uint64_t seed);

// Simulates n steps starting from an exact stationary draw (no burn-in).
Trajectory simulate(const AR1Params& p, std::size_t n, std::uint64_t seed);

// Marginal transform as the truncated product 1/prod_{i<K}(1 + (rho^i s)^alpha).
// terms = 0 selects K automatically (next factor within 1e-15 of 1).
double marginal_lt_ml_innovations(const AR1Params& p, double s, std::size_t terms = 0);

// Joint transform of (Y_{t-1}, Y_t):
// (1 + (rho*s2)^alpha) / ((1 + s2^alpha) (1 + (s1 + rho*s2)^alpha)).
double joint_lt(const AR1Params& p, double s1, double s2);

// max over grid pairs of |joint_lt(s1,s2) - joint_lt(s2,s1)|; a strictly
// positive value witnesses that the process is not time reversible.
double reversibility_gap(const AR1Params& p, const estimation::LTGrid& grid);

}  // namespace mlt::ar1
