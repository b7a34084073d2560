#pragma once

#include <stdexcept>
#include <string>

namespace mlt {

// Argument outside the documented domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Iteration/subdivision budget exhausted before reaching tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// An integrand or transform evaluated to NaN/Inf.
struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& msg) : std::runtime_error(msg) {}
};

// Root bracketing failed (no sign change found).
struct NoBracket : std::runtime_error {
    explicit NoBracket(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptySample : std::invalid_argument {
    explicit EmptySample(const std::string& msg) : std::invalid_argument(msg) {}
};

// Sample that cannot support grid construction (e.g. zero median).
struct DegenerateSample : std::invalid_argument {
    explicit DegenerateSample(const std::string& msg) : std::invalid_argument(msg) {}
};

// Time series unusable for fitting (e.g. constant).
struct DegenerateSeries : std::invalid_argument {
    explicit DegenerateSeries(const std::string& msg) : std::invalid_argument(msg) {}
};

// Monte-Carlo study aborted because too many trials errored.
struct StudyFailure : std::runtime_error {
    explicit StudyFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mlt
