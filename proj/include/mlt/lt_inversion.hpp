#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace mlt::lt_inversion {

// Controls for Gaver-Stehfest CDF recovery and quantile bracketing.
struct InversionSpec {
    int stehfest_terms = 14;      // even, within [8, 18] (double-precision stability window)
    bool cdf_clamp = true;        // clamp the recovered CDF into [0, 1]
    double bracket_growth = 2.0;  // geometric expansion factor for quantile bracketing
    double quantile_tol = 1e-9;   // root-finding tolerance for quantiles
};

// Gaver-Stehfest weights; element i holds the weight for term i+1.
// Exposed so tests can check the Σ ζ_k / k = 1 exactness identity.
std::vector<double> stehfest_weights(int terms);

// CDF at x > 0 recovered from the Laplace transform phi of the law,
// using only real-axis evaluations phi(k ln2 / x).
double cdf_from_lt(const std::function<double(double)>& phi, double x,
                   const InversionSpec& spec = {});

// Quantile at u in (0, 1): brackets cdf_from_lt(.) - u by geometric expansion
// from x = 1 in both directions, then root-finds to quantile_tol. When the
// law has an atom at 0 with mass >= u, the downward expansion exhausts and a
// value indistinguishable from 0 (2^-100) is returned; upward exhaustion past
// 2^100 throws NoBracket, signalling a transform that is not a probability LT
// reachable at this u.
double quantile_from_lt(const std::function<double(double)>& phi, double u,
                        const InversionSpec& spec = {});

// n quantile draws at uniforms from a deterministic generator seeded by seed.
// Equals quantile_from_lt applied elementwise to the generator's stream.
std::vector<double> sample_from_lt(const std::function<double(double)>& phi, std::size_t n,
                                   std::uint64_t seed, const InversionSpec& spec = {});

}  // namespace mlt::lt_inversion
