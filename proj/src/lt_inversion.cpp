#include "mlt/lt_inversion.hpp"

#include "mlt/errors.hpp"
#include "mlt/numerics.hpp"
#include "mlt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace mlt::lt_inversion {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// Expansion limits for quantile bracketing: 2^100 upward, 2^-100 downward.
constexpr double kBracketCeil = 0x1p100;
constexpr double kBracketFloor = 0x1p-100;

void validate(const InversionSpec& spec) {
    if (spec.stehfest_terms < 8 || spec.stehfest_terms > 18 || spec.stehfest_terms % 2 != 0)
        throw DomainError("InversionSpec: stehfest_terms must be even and within [8, 18]");
    if (!(spec.bracket_growth > 1.0))
        throw DomainError("InversionSpec: bracket_growth must be > 1");
    if (!(spec.quantile_tol > 0.0))
        throw DomainError("InversionSpec: quantile_tol must be > 0");
}

// F(x) ~ sum_k zeta_k phi(k ln2/x)/k; weights are passed in so samplers can
// hoist the weight construction out of their inner loops.
double stehfest_sum(const std::function<double(double)>& phi, double x,
                    const std::vector<double>& zeta, bool clamp) {
    const double base = kLn2 / x;
    double acc = 0.0;
    for (std::size_t k = 1; k <= zeta.size(); ++k) {
        const double v = phi(static_cast<double>(k) * base);
        if (!std::isfinite(v)) throw NonFinite("cdf_from_lt: transform evaluated non-finite");
        acc += zeta[k - 1] * v / static_cast<double>(k);
    }
    if (!std::isfinite(acc)) throw NonFinite("cdf_from_lt: inversion sum non-finite");
    return clamp ? std::clamp(acc, 0.0, 1.0) : acc;
}

// Shared quantile kernel. ladder_cache, when given, memoizes the CDF at the
// bracket-expansion abscissas (exact powers of the growth factor), which
// repeat across every draw of a sampling run.
double quantile_impl(const std::function<double(double)>& phi, double u, const InversionSpec& spec,
                     const std::vector<double>& zeta, std::map<double, double>* ladder_cache) {
    auto cdf_direct = [&](double x) { return stehfest_sum(phi, x, zeta, spec.cdf_clamp); };
    auto cdf_ladder = [&](double x) {
        if (ladder_cache != nullptr) {
            auto it = ladder_cache->find(x);
            if (it != ladder_cache->end()) return it->second;
            const double v = cdf_direct(x);
            ladder_cache->emplace(x, v);
            return v;
        }
        return cdf_direct(x);
    };

    double lo = 1.0;
    double hi = 1.0;
    if (cdf_ladder(1.0) >= u) {
        lo = 1.0 / spec.bracket_growth;
        while (cdf_ladder(lo) > u) {
            hi = lo;
            lo /= spec.bracket_growth;
            if (lo < kBracketFloor) {
                // The CDF stays above u arbitrarily close to 0: a point mass
                // at the origin covers u. Report the floor, which is
                // indistinguishable from 0 at quantile_tol resolution.
                return kBracketFloor;
            }
        }
    } else {
        hi = spec.bracket_growth;
        while (cdf_ladder(hi) < u) {
            lo = hi;
            hi *= spec.bracket_growth;
            if (hi > kBracketCeil)
                throw NoBracket("quantile_from_lt: CDF never reaches u below 2^100");
        }
    }
    return numerics::find_root([&](double x) { return cdf_direct(x) - u; }, lo, hi,
                               spec.quantile_tol);
}

}  // namespace

std::vector<double> stehfest_weights(int terms) {
    if (terms < 8 || terms > 18 || terms % 2 != 0)
        throw DomainError("stehfest_weights: terms must be even and within [8, 18]");
    const int half = terms / 2;
    // Factorials up to 18! are below 2^53, hence exact in double.
    std::vector<double> fact(static_cast<std::size_t>(terms) + 1, 1.0);
    for (int i = 1; i <= terms; ++i)
        fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;

    std::vector<double> zeta(static_cast<std::size_t>(terms), 0.0);
    for (int k = 1; k <= terms; ++k) {
        double sum = 0.0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            const double num = std::pow(static_cast<double>(j), half) * fact[2 * j];
            const double den = fact[half - j] * fact[j] * fact[j - 1] * fact[k - j] * fact[2 * j - k];
            sum += num / den;
        }
        zeta[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return zeta;
}

double cdf_from_lt(const std::function<double(double)>& phi, double x, const InversionSpec& spec) {
    validate(spec);
    if (!(x > 0.0)) throw DomainError("cdf_from_lt: x must be > 0");
    return stehfest_sum(phi, x, stehfest_weights(spec.stehfest_terms), spec.cdf_clamp);
}

double quantile_from_lt(const std::function<double(double)>& phi, double u,
                        const InversionSpec& spec) {
    validate(spec);
    if (!(u > 0.0) || !(u < 1.0)) throw DomainError("quantile_from_lt: u must be in (0, 1)");
    return quantile_impl(phi, u, spec, stehfest_weights(spec.stehfest_terms), nullptr);
}

std::vector<double> sample_from_lt(const std::function<double(double)>& phi, std::size_t n,
                                   std::uint64_t seed, const InversionSpec& spec) {
    validate(spec);
    const auto zeta = stehfest_weights(spec.stehfest_terms);
    std::map<double, double> ladder_cache;
    SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = quantile_impl(phi, rng.uniform_open(), spec, zeta, &ladder_cache);
    return out;
}

}  // namespace mlt::lt_inversion
