#include "mlt/ml_dist.hpp"
#include "mlt/errors.hpp"
#include "mlt/rng.hpp"

#include <cmath>
#include <numbers>

namespace mlt::ml_dist {

namespace {

constexpr double kPi = std::numbers::pi;

// The common denominator y^(2a) + 1 + 2 y^a cos(pi a) equals
// (y^a + cos(pi a))^2 + sin^2(pi a), so it is bounded below by
// sin^2(pi a) > 0 on alpha in (0,1): the integrands are singularity-free.
double denom(double y_alpha, double cos_pa) {
    const double t = y_alpha + cos_pa;
    return t * t + (1.0 - cos_pa * cos_pa);
}

}  // namespace

MLParams::MLParams(double alpha_, double sigma_) : alpha(alpha_), sigma(sigma_) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("MLParams: alpha must be in (0, 1]");
    if (!(sigma > 0.0)) throw DomainError("MLParams: sigma must be > 0");
}

double lt(const MLParams& p, double s) {
    if (s < 0.0) throw DomainError("ml lt: s must be >= 0");
    if (s == 0.0) return 1.0;
    return 1.0 / (1.0 + std::pow(p.sigma * s, p.alpha));
}

double pdf(const MLParams& p, double x, const numerics::QuadratureSpec& spec) {
    if (!(x > 0.0)) throw DomainError("ml pdf: x must be > 0");
    if (p.alpha == 1.0) return std::exp(-x / p.sigma) / p.sigma;

    const double z = x / p.sigma;
    const double cos_pa = std::cos(kPi * p.alpha);
    const double a = p.alpha;
    const double integral = numerics::integrate_halfline(
        [z, a, cos_pa](double y) {
            const double ya = std::pow(y, a);
            return ya * std::exp(-z * y) / denom(ya, cos_pa);
        },
        spec);
    return std::sin(kPi * a) / kPi * integral / p.sigma;
}

double cdf(const MLParams& p, double x, const numerics::QuadratureSpec& spec) {
    if (x < 0.0) throw DomainError("ml cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (p.alpha == 1.0) return -std::expm1(-x / p.sigma);

    const double z = x / p.sigma;
    const double cos_pa = std::cos(kPi * p.alpha);
    const double a = p.alpha;
    const double integral = numerics::integrate_halfline(
        [z, a, cos_pa](double y) {
            const double ya = std::pow(y, a);
            return ya / y * std::exp(-z * y) / denom(ya, cos_pa);
        },
        spec);
    return 1.0 - std::sin(kPi * a) / kPi * integral;
}

double survival(const MLParams& p, double x, const numerics::QuadratureSpec& spec) {
    return 1.0 - cdf(p, x, spec);
}

double quantile_S(double alpha, double u) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("quantile_S: alpha must be in (0, 1)");
    if (!(u > 0.0) || !(u < 1.0)) throw DomainError("quantile_S: u must be in (0, 1)");
    // Algebraic inverse of F_S(x) = 1 + (arctan(x/sin(pi a) + cot(pi a)) - pi/2)/(pi a).
    const double pa = kPi * alpha;
    return std::sin(pa) / std::tan(pa * (1.0 - u)) - std::cos(pa);
}

std::vector<double> sample(const MLParams& p, std::size_t n, std::uint64_t seed) {
    std::vector<double> out(n);
    SplitMix64 rng(seed);
    if (p.alpha == 1.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = p.sigma * -std::log(rng.uniform_open());
        return out;
    }
    const double inv_alpha = 1.0 / p.alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -std::log(rng.uniform_open());
        const double s = quantile_S(p.alpha, rng.uniform_open());
        out[i] = p.sigma * (x * std::pow(s, inv_alpha));
    }
    return out;
}

}  // namespace mlt::ml_dist
