#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlt/lt_inversion.hpp"

namespace mlt::prabhakar {

// Three-parameter Mittag-Leffler law. The scale box 1 <= sigma < 1 + alpha*gamma
// is strict on the right: at the endpoint the Laplace exponent degenerates to a
// constant and no proper distribution exists.
struct PrabhakarParams {
    double alpha;
    double sigma;
    double gamma;

    PrabhakarParams(double alpha_, double sigma_, double gamma_);
};

// Three-parameter Mittag-Leffler series
//   (1/Γ(gamma)) Σ_{k>=0} Γ(k+gamma) z^k / (k! Γ(alpha k + sigma)),
// truncated once a term drops below 1e-15 of the running sum; throws
// NonConvergence if 10,000 terms do not reach that. Reliable for moderate |z|;
// large negative z is outside the supported range (catastrophic alternation).
double prabhakar_function(double alpha, double sigma, double gamma, double z);

// Laplace exponent Ψ(u) = u^e Γ(γ)/Γ(b+1) 2F1(γ, b; b+1; -u^α)
// with e = αγ - σ + 1 and b = γ + (1-σ)/α. Positive and increasing on u > 0;
// tends to Γ(γ-b) as u → ∞ when σ > 1 (which puts an atom at 0 in the law).
double laplace_exponent(const PrabhakarParams& p, double u);

// Laplace transform exp(-Ψ(s)); exactly 1 at s = 0.
double lt(const PrabhakarParams& p, double s);

// n draws via generic transform inversion (CDF recovery + quantile).
// Deterministic in (seed, n, params).
std::vector<double> sample(const PrabhakarParams& p, std::size_t n, std::uint64_t seed,
                           const lt_inversion::InversionSpec& spec = {});

}  // namespace mlt::prabhakar
