#pragma once

#include <stdexcept>
#include <string>

namespace fracdecay {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an iterative evaluation cannot reach the requested tolerance;
// carries the bound it did achieve.
struct accuracy_error : std::runtime_error {
    double achieved;
    accuracy_error(const std::string& what, double achieved_bound)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved_bound) + ")"),
          achieved(achieved_bound) {}
};

// A validated mathematical invariant failed; the message carries the witness.
struct invariant_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fracdecay
