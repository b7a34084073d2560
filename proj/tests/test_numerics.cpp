#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlt/errors.hpp"
#include "mlt/numerics.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace mlt;
using namespace mlt::numerics;

namespace {

// Power series sum_k (a)_k (b)_k / ((b+1)_k k!) (-x)^k, |x| < 1: the
// independent oracle for the integral-based evaluation at small argument.
long double hyp_series(double a, double b, double x, int terms = 200) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 0; k < terms; ++k) {
        term *= (a + k) * (b + k) / ((b + 1.0L + k) * (k + 1.0L)) * (-static_cast<long double>(x));
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("halfline quadrature reproduces known integrals") {
    CHECK(integrate_halfline([](double y) { return std::exp(-y); }) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_halfline([](double y) { return y * std::exp(-y); }) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // Gaussian integral: sqrt(pi)/2.
    CHECK(integrate_halfline([](double y) { return std::exp(-y * y); }) ==
          doctest::Approx(0.88622692545275801).epsilon(1e-10));
}

TEST_CASE("segment quadrature handles split intervals") {
    std::vector<Segment> segs;
    segs.push_back({[](double t) { return std::sin(t); }, 0.0, 1.0});
    segs.push_back({[](double t) { return std::sin(t); }, 1.0, 3.14159265358979324});
    CHECK(integrate_segments(segs, {}) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("quadrature error handling") {
    CHECK_THROWS_AS(integrate_halfline([](double) { return std::nan(""); }), NonFinite);

    QuadratureSpec starved;
    starved.max_subdivisions = 1;
    std::vector<Segment> singular;
    singular.push_back({[](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0});
    CHECK_THROWS_AS(integrate_segments(singular, starved), NonConvergence);

    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate_halfline([](double) { return 0.0; }, bad), DomainError);
}

TEST_CASE("hyp2f1 closed forms and exact cases") {
    // 2F1(1,1;2;-x) = ln(1+x)/x.
    for (double x : {0.1, 1.0, 10.0, 100.0})
        CHECK(hyp2f1_contiguous(1.0, 1.0, x) == doctest::Approx(std::log1p(x) / x).epsilon(1e-10));
    CHECK(hyp2f1_contiguous(3.5, 0.0, 5.0) == 1.0);
    CHECK(hyp2f1_contiguous(2.0, 1.5, 0.0) == 1.0);
    // b * integral of t^(b-1) (1+t)^(-3) over (0,1) with b=1 equals 3/8.
    CHECK(hyp2f1_contiguous(3.0, 1.0, 1.0) == doctest::Approx(0.375).epsilon(1e-10));
    // Endpoint-singular branch (b < 1): 0.5 * integral t^(-1/2)/(1+t) = pi/4 at x=1.
    CHECK(hyp2f1_contiguous(1.0, 0.5, 1.0) ==
          doctest::Approx(0.78539816339744831).epsilon(1e-10));
}

TEST_CASE("hyp2f1 agrees with the power series at small argument") {
    CHECK(hyp2f1_contiguous(5.0, 1.0, 0.7) ==
          doctest::Approx(static_cast<double>(hyp_series(5.0, 1.0, 0.7))).epsilon(1e-9));
    for (double a : {0.5, 1.0, 2.0, 5.0})
        for (double b : {0.25, 0.5, 1.0, 3.0})
            for (double x : {0.05, 0.2, 0.5})
                CHECK(hyp2f1_contiguous(a, b, x) ==
                      doctest::Approx(static_cast<double>(hyp_series(a, b, x))).epsilon(1e-9));
}

TEST_CASE("hyp2f1 stays accurate at very large argument") {
    // ln(1+x)/x remains the closed form far beyond the series radius.
    const double x = 1e30;
    CHECK(hyp2f1_contiguous(1.0, 1.0, x) == doctest::Approx(std::log1p(x) / x).epsilon(1e-9));
    // Large-x asymptote of the b < 1 branch: b*Beta(b, a-b)*x^(-b) for a > b.
    const double asym = 0.5 * std::exp(std::lgamma(0.5) + std::lgamma(0.5) - std::lgamma(1.0)) /
                        std::sqrt(1e20);
    CHECK(hyp2f1_contiguous(1.0, 0.5, 1e20) == doctest::Approx(asym).epsilon(1e-6));
}

TEST_CASE("hyp2f1 domain validation") {
    CHECK_THROWS_AS(hyp2f1_contiguous(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1_contiguous(1.0, -0.1, 1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1_contiguous(1.0, 1.0, -0.5), DomainError);
}

TEST_CASE("find_root locates bracketed roots") {
    CHECK(find_root([](double x) { return x - 2.0; }, 0.0, 5.0, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12) ==
          doctest::Approx(1.4142135623730951).epsilon(1e-10));
    CHECK_THROWS_AS(find_root([](double x) { return x + 10.0; }, 0.0, 1.0, 1e-10), NoBracket);

    // |f(root)| <= tol for a few monotone test functions.
    for (double target : {0.25, 0.5, 0.75}) {
        auto f = [target](double x) { return std::tanh(x) - target; };
        const double r = find_root(f, 0.0, 5.0, 1e-11);
        CHECK(std::fabs(f(r)) <= 1e-10);
    }
}

TEST_CASE("minimize solves standard problems") {
    auto quad = [](const std::vector<double>& v) { return (v[0] - 3.0) * (v[0] - 3.0); };
    MinimizeResult r = minimize(quad, {0.0});
    CHECK(r.argmin[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(r.converged);
    CHECK(r.evaluations > 0);

    auto rosenbrock = [](const std::vector<double>& v) {
        const double a = 1.0 - v[0];
        const double b = v[1] - v[0] * v[0];
        return a * a + 100.0 * b * b;
    };
    MinimizeResult rb = minimize(rosenbrock, {-1.2, 1.0});
    CHECK(rb.argmin[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rb.argmin[1] == doctest::Approx(1.0).epsilon(1e-4));

    // Shift invariance: adding a constant moves the value, not the argmin.
    auto shifted = [&](const std::vector<double>& v) { return rosenbrock(v) + 10.0; };
    MinimizeResult rs = minimize(shifted, {-1.2, 1.0});
    CHECK(std::fabs(rs.argmin[0] - rb.argmin[0]) < 1e-6);
    CHECK(std::fabs(rs.argmin[1] - rb.argmin[1]) < 1e-6);
    CHECK(rs.value == doctest::Approx(rb.value + 10.0).epsilon(1e-9));
}

TEST_CASE("minimize sanitizes non-finite objective values") {
    // A pole near the path must not derail the descent.
    auto obj = [](const std::vector<double>& v) {
        if (v[0] < -1.0) return std::numeric_limits<double>::quiet_NaN();
        return (v[0] - 2.0) * (v[0] - 2.0);
    };
    MinimizeResult r = minimize(obj, {0.0});
    CHECK(r.argmin[0] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("minimize validates its inputs") {
    OptimizerSpec bad;
    bad.restarts = 0;
    auto f = [](const std::vector<double>& v) { return v[0] * v[0]; };
    CHECK_THROWS_AS(minimize(f, {1.0}, bad), DomainError);
    CHECK_THROWS_AS(minimize(f, {}), DomainError);
}
