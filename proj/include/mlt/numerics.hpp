#pragma once

#include <functional>
#include <vector>

namespace mlt::numerics {

struct QuadratureSpec {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    int max_subdivisions{200};
};

struct OptimizerSpec {
    int max_iters{2000};
    double f_tol{1e-10};
    double x_tol{1e-8};
    int restarts{4};
};

struct MinimizeResult {
    std::vector<double> argmin;
    double value{0.0};
    bool converged{false};
    long evaluations{0};
};

// One segment of an adaptive integration job: integrand restricted to [a,b].
struct Segment {
    std::function<double(double)> f;
    double a;
    double b;
};

// Adaptive Gauss-Kronrod (G7,K15) over a list of seed segments sharing one
// error budget. Throws NonFinite on a non-finite integrand value and
// NonConvergence when the subdivision budget runs out.
double integrate_segments(const std::vector<Segment>& segments, const QuadratureSpec& spec);

// Integral of f over (0,inf), mapped as [0,1] plus the tail via y -> 1/u.
double integrate_halfline(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

// Gauss hypergeometric 2F1(a, b; b+1; -x) for a > 0, b >= 0, x >= 0,
// via the Euler integral b * int_0^1 t^(b-1) (1+x t)^(-a) dt. Valid for
// arbitrary x >= 0; no radius-of-convergence limit.
double hyp2f1_contiguous(double a, double b, double x);

// Bracketed secant/bisection hybrid. Requires a sign change on [lo, hi];
// stops when |f(x)| <= tol or the bracket width drops below tol.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol);

// Nelder-Mead simplex descent with deterministic restarts. Non-convergence
// is reported through the flag, never thrown.
MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& objective,
                        const std::vector<double>& start, const OptimizerSpec& spec = {});

}  // namespace mlt::numerics
