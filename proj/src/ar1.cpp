#include "mlt/ar1.hpp"

#include "mlt/errors.hpp"
#include "mlt/ml_dist.hpp"
#include "mlt/rng.hpp"

#include <cmath>
#include <numbers>

namespace mlt::ar1 {

namespace {

constexpr double kPi = std::numbers::pi;

// One stationary-marginal draw (scale 1) from an already-seeded stream.
double ml_draw(SplitMix64& rng, double alpha) {
    const double x = -std::log(rng.uniform_open());
    const double s = ml_dist::quantile_S(alpha, rng.uniform_open());
    return x * std::pow(s, 1.0 / alpha);
}

}  // namespace

AR1Params::AR1Params(double alpha_, double rho_) : alpha(alpha_), rho(rho_) {
    if (!std::isfinite(alpha) || !std::isfinite(rho))
        throw DomainError("AR1Params: parameters must be finite");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("AR1Params: alpha must be in (0, 1)");
    if (rho < 0.0 || !(rho < 1.0)) throw DomainError("AR1Params: rho must be in [0, 1)");
}

double innovation_lt(const AR1Params& p, double s) {
    if (s < 0.0) throw DomainError("innovation_lt: s must be >= 0");
    return (1.0 + std::pow(p.rho * s, p.alpha)) / (1.0 + std::pow(s, p.alpha));
}

double innovation_pdf(const AR1Params& p, double x, const numerics::QuadratureSpec& spec) {
    if (!(x > 0.0)) throw DomainError("innovation_pdf: x must be > 0");
    const double a = p.alpha;
    const double sin_pa = std::sin(kPi * a);
    const double cos_pa = std::cos(kPi * a);
    const double cont_mass = 1.0 - std::pow(p.rho, a);
    const double integral = numerics::integrate_halfline(
        [x, a, sin_pa, cos_pa, cont_mass](double y) {
            const double ya = std::pow(y, a);
            return std::exp(-x * y) * ya * sin_pa * cont_mass /
                   (1.0 + ya * ya + 2.0 * ya * cos_pa);
        },
        spec);
    return integral / kPi;
}

std::vector<double> sample_innovations(const AR1Params& p, std::size_t n, std::uint64_t seed) {
    const double atom = std::pow(p.rho, p.alpha);
    SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform_open() < atom)
            out[i] = 0.0;
        else
            out[i] = ml_draw(rng, p.alpha);
    }
    return out;
}

Trajectory simulate(const AR1Params& p, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw DomainError("simulate: need at least 2 steps");
    const double atom = std::pow(p.rho, p.alpha);
    SplitMix64 rng(seed);

    Trajectory traj{std::vector<double>(n), std::vector<double>(n), p, seed};
    traj.y[0] = ml_draw(rng, p.alpha);  // exact stationary start
    traj.eps[0] = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        traj.eps[t] = rng.uniform_open() < atom ? 0.0 : ml_draw(rng, p.alpha);
        traj.y[t] = p.rho * traj.y[t - 1] + traj.eps[t];
    }
    return traj;
}

double marginal_lt_ml_innovations(const AR1Params& p, double s, std::size_t terms) {
    if (s < 0.0) throw DomainError("marginal_lt_ml_innovations: s must be >= 0");
    double prod = 1.0;
    double r = 1.0;  // rho^i
    if (terms > 0) {
        for (std::size_t i = 0; i < terms; ++i) {
            prod *= 1.0 + std::pow(r * s, p.alpha);
            r *= p.rho;
        }
    } else {
        for (std::size_t i = 0; i < 10000; ++i) {
            const double factor = std::pow(r * s, p.alpha);
            if (factor < 1e-15) break;
            prod *= 1.0 + factor;
            r *= p.rho;
        }
    }
    return 1.0 / prod;
}

double joint_lt(const AR1Params& p, double s1, double s2) {
    if (s1 < 0.0 || s2 < 0.0) throw DomainError("joint_lt: s1, s2 must be >= 0");
    const double num = 1.0 + std::pow(p.rho * s2, p.alpha);
    const double den = (1.0 + std::pow(s2, p.alpha)) * (1.0 + std::pow(s1 + p.rho * s2, p.alpha));
    return num / den;
}

double reversibility_gap(const AR1Params& p, const estimation::LTGrid& grid) {
    double gap = 0.0;
    for (double s1 : grid.points)
        for (double s2 : grid.points)
            gap = std::max(gap, std::fabs(joint_lt(p, s1, s2) - joint_lt(p, s2, s1)));
    return gap;
}

}  // namespace mlt::ar1
