#include "mlt/numerics.hpp"
#include "mlt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mlt::numerics {

namespace {

// Gauss 7 / Kronrod 15 abscissas and weights on [-1, 1].
// Layout: {node, gauss weight, kronrod weight}; node 0 first, the
// remaining rows are used symmetrically at +/- node.
constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

struct Panel {
    double a;
    double b;
    double estimate;
    double error;
    int segment;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b, int segment) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double y0 = f(mid);
    if (!std::isfinite(y0)) throw NonFinite("integrand non-finite at quadrature node");
    double g7 = kGK15[0][1] * y0;
    double k15 = kGK15[0][2] * y0;

    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double y1 = f(mid + dx);
        const double y2 = f(mid - dx);
        if (!std::isfinite(y1) || !std::isfinite(y2))
            throw NonFinite("integrand non-finite at quadrature node");
        const double y = y1 + y2;
        g7 += kGK15[i][1] * y;
        k15 += kGK15[i][2] * y;
    }
    g7 *= half;
    k15 *= half;

    // Standard (200*d)^1.5 sharpening of the Kronrod error estimate.
    double err = 200.0 * std::fabs(g7 - k15);
    err *= std::sqrt(err);
    return Panel{a, b, k15, err, segment};
}

}  // namespace

double integrate_segments(const std::vector<Segment>& segments, const QuadratureSpec& spec) {
    if (spec.abs_tol <= 0.0 || spec.rel_tol <= 0.0 || spec.max_subdivisions < 1)
        throw DomainError("invalid QuadratureSpec");

    std::priority_queue<Panel> queue;
    double total = 0.0;
    double total_err = 0.0;

    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (!(seg.b > seg.a)) continue;
        Panel p = evaluate_panel(seg.f, seg.a, seg.b, static_cast<int>(i));
        total += p.estimate;
        total_err += p.error;
        queue.push(p);
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (splits >= spec.max_subdivisions)
            throw NonConvergence("quadrature subdivision budget exhausted");
        Panel worst = queue.top();
        queue.pop();
        const auto& f = segments[static_cast<std::size_t>(worst.segment)].f;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel is at floating-point resolution; accept its estimate as is.
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid, worst.segment);
        Panel right = evaluate_panel(f, mid, worst.b, worst.segment);
        total += left.estimate + right.estimate - worst.estimate;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    return total;
}

double integrate_halfline(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    // (0,1] directly; [1,inf) via y = 1/u so both endpoint behaviors
    // (origin singularity, exponential tail) are resolved adaptively.
    std::vector<Segment> segs;
    segs.push_back({f, 0.0, 1.0});
    segs.push_back({[&f](double u) { return f(1.0 / u) / (u * u); }, 0.0, 1.0});
    return integrate_segments(segs, spec);
}

double hyp2f1_contiguous(double a, double b, double x) {
    if (!(a > 0.0) || b < 0.0 || x < 0.0)
        throw DomainError("hyp2f1_contiguous requires a > 0, b >= 0, x >= 0");
    if (b == 0.0) return 1.0;  // series terminates at k=0
    if (x == 0.0) return 1.0;

    QuadratureSpec spec;
    spec.abs_tol = 1e-300;  // force relative control: values span many decades
    spec.rel_tol = 1e-11;
    spec.max_subdivisions = 500;

    std::vector<Segment> segs;
    if (b < 1.0) {
        // t = v^(1/b) removes the t^(b-1) endpoint singularity:
        // b * t^(b-1) dt = dv, so the integrand becomes (1 + x v^(1/b))^(-a).
        auto g = [a, b, x](double v) { return std::pow(1.0 + x * std::pow(v, 1.0 / b), -a); };
        const double knee = std::min(1.0, std::pow(x, -b));
        segs.push_back({g, 0.0, knee});
        if (knee < 1.0) segs.push_back({g, knee, 1.0});
    } else {
        auto g = [a, b, x](double t) { return b * std::pow(t, b - 1.0) * std::pow(1.0 + x * t, -a); };
        const double knee = std::min(1.0, 1.0 / x);
        segs.push_back({g, 0.0, knee});
        if (knee < 1.0) segs.push_back({g, knee, 1.0});
    }
    return integrate_segments(segs, spec);
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoBracket("find_root: f has the same sign at both endpoints");

    double x = lo;
    for (int iter = 0; iter < 200; ++iter) {
        // Secant proposal, falling back to bisection when it leaves the
        // bracket or stalls.
        double mid = 0.5 * (lo + hi);
        x = mid;
        const double denom = fhi - flo;
        if (denom != 0.0) {
            double sec = lo - flo * (hi - lo) / denom;
            if (sec > lo && sec < hi) x = sec;
        }
        double fx = f(x);
        if (std::fabs(fx) <= tol || (hi - lo) <= tol) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        // Guard against one-sided secant stagnation.
        if (hi - lo > 0.0 && (x == lo || x == hi)) {
            double m = 0.5 * (lo + hi);
            double fm = f(m);
            if (std::fabs(fm) <= tol || (hi - lo) <= tol) return m;
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = m;
                flo = fm;
            } else {
                hi = m;
                fhi = fm;
            }
        }
    }
    return x;
}

namespace {

struct Vertex {
    std::vector<double> x;
    double fx;
};

// One Nelder-Mead descent from a fixed starting simplex.
MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                           const std::vector<double>& start, double step,
                           const OptimizerSpec& spec, long& evals) {
    const std::size_t d = start.size();
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        double v = objective(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Vertex> simplex(d + 1);
    simplex[0] = {start, eval(start)};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> xi = start;
        xi[i] += step * std::max(1.0, std::fabs(start[i]));
        simplex[i + 1] = {std::move(xi), 0.0};
        simplex[i + 1].fx = eval(simplex[i + 1].x);
    }

    auto by_value = [](const Vertex& u, const Vertex& v) { return u.fx < v.fx; };
    bool converged = false;

    for (int iter = 0; iter < spec.max_iters; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);

        double diameter = 0.0;
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                diameter = std::max(diameter, std::fabs(simplex[i].x[j] - simplex[0].x[j]));
        const double spread = simplex[d].fx - simplex[0].fx;
        if (diameter < spec.x_tol || spread < spec.f_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i].x[j] / static_cast<double>(d);

        auto blend = [&](double coef) {
            std::vector<double> p(d);
            for (std::size_t j = 0; j < d; ++j)
                p[j] = centroid[j] + coef * (centroid[j] - simplex[d].x[j]);
            return p;
        };

        std::vector<double> reflected = blend(1.0);
        double fr = eval(reflected);
        if (fr < simplex[0].fx) {
            std::vector<double> expanded = blend(2.0);
            double fe = eval(expanded);
            if (fe < fr)
                simplex[d] = {std::move(expanded), fe};
            else
                simplex[d] = {std::move(reflected), fr};
        } else if (fr < simplex[d - 1].fx) {
            simplex[d] = {std::move(reflected), fr};
        } else {
            const bool outside = fr < simplex[d].fx;
            std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
            double fc = eval(contracted);
            if (fc < (outside ? fr : simplex[d].fx)) {
                simplex[d] = {std::move(contracted), fc};
            } else {
                for (std::size_t i = 1; i <= d; ++i) {
                    for (std::size_t j = 0; j < d; ++j)
                        simplex[i].x[j] = simplex[0].x[j] + 0.5 * (simplex[i].x[j] - simplex[0].x[j]);
                    simplex[i].fx = eval(simplex[i].x);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(), by_value);
    return MinimizeResult{simplex[0].x, simplex[0].fx, converged, 0};
}

}  // namespace

MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& objective,
                        const std::vector<double>& start, const OptimizerSpec& spec) {
    if (spec.max_iters < 1 || spec.f_tol <= 0.0 || spec.x_tol <= 0.0 || spec.restarts < 1)
        throw DomainError("invalid OptimizerSpec");
    if (start.empty()) throw DomainError("minimize: empty start vector");

    long evals = 0;
    MinimizeResult best = nelder_mead(objective, start, 0.5, spec, evals);
    // Each restart rebuilds a fresh simplex around the incumbent with a
    // smaller step; this polishes past simplex degeneracy.
    double step = 0.5;
    for (int r = 1; r < spec.restarts; ++r) {
        step *= 0.5;
        MinimizeResult next = nelder_mead(objective, best.argmin, step, spec, evals);
        if (next.value < best.value) best = next;
    }
    best.evaluations = evals;
    return best;
}

}  // namespace mlt::numerics
