#include "mlt/prabhakar.hpp"

#include "mlt/errors.hpp"
#include "mlt/numerics.hpp"

#include <cmath>

namespace mlt::prabhakar {

PrabhakarParams::PrabhakarParams(double alpha_, double sigma_, double gamma_)
    : alpha(alpha_), sigma(sigma_), gamma(gamma_) {
    if (!std::isfinite(alpha) || !std::isfinite(sigma) || !std::isfinite(gamma))
        throw DomainError("PrabhakarParams: parameters must be finite");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("PrabhakarParams: alpha must be in (0, 1]");
    if (!(gamma > 0.0)) throw DomainError("PrabhakarParams: gamma must be > 0");
    if (!(sigma >= 1.0) || !(sigma < 1.0 + alpha * gamma))
        throw DomainError("PrabhakarParams: sigma must be in [1, 1 + alpha*gamma)");
}

double prabhakar_function(double alpha, double sigma, double gamma, double z) {
    if (!(alpha > 0.0) || !(sigma > 0.0) || !(gamma > 0.0))
        throw DomainError("prabhakar_function: alpha, sigma, gamma must be > 0");

    // Terms via lgamma keep intermediate magnitudes in range; long double
    // accumulation buys headroom against the alternation at negative z.
    const long double lg_gamma = std::lgamma(static_cast<long double>(gamma));
    const long double abs_z = std::fabs(static_cast<long double>(z));
    long double sum = 0.0L;
    for (int k = 0; k < 10000; ++k) {
        long double term;
        if (k == 0) {
            term = 1.0L / std::tgamma(static_cast<long double>(sigma));
        } else {
            const long double log_mag = std::lgamma(static_cast<long double>(k) + gamma) -
                                        lg_gamma - std::lgamma(static_cast<long double>(k) + 1.0L) -
                                        std::lgamma(alpha * k + static_cast<long double>(sigma)) +
                                        k * std::log(abs_z);
            term = std::exp(log_mag);
            if (z < 0.0 && (k % 2) == 1) term = -term;
        }
        sum += term;
        if (std::fabs(term) < 1e-15L * std::fabs(sum)) return static_cast<double>(sum);
        if (z == 0.0) return static_cast<double>(sum);  // only the k=0 term survives
    }
    throw NonConvergence("prabhakar_function: series did not converge within 10000 terms");
}

double laplace_exponent(const PrabhakarParams& p, double u) {
    if (!(u > 0.0)) throw DomainError("laplace_exponent: u must be > 0");
    const double b = p.gamma + (1.0 - p.sigma) / p.alpha;
    const double e = p.alpha * p.gamma - p.sigma + 1.0;
    const double ratio = std::exp(std::lgamma(p.gamma) - std::lgamma(b + 1.0));
    return std::pow(u, e) * ratio * numerics::hyp2f1_contiguous(p.gamma, b, std::pow(u, p.alpha));
}

double lt(const PrabhakarParams& p, double s) {
    if (s < 0.0) throw DomainError("prabhakar lt: s must be >= 0");
    if (s == 0.0) return 1.0;
    return std::exp(-laplace_exponent(p, s));
}

std::vector<double> sample(const PrabhakarParams& p, std::size_t n, std::uint64_t seed,
                           const lt_inversion::InversionSpec& spec) {
    return lt_inversion::sample_from_lt([&p](double s) { return lt(p, s); }, n, seed, spec);
}

}  // namespace mlt::prabhakar
