#pragma once

#include <stdexcept>
#include <string>

namespace hb {

// Thrown on malformed user input (bad rank, non-coprime slope, ...). CLI exit 2.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an identity that must hold by theorem fails. CLI exit 3.
struct internal_invariant_error : std::runtime_error {
    explicit internal_invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an enumeration would exceed its work budget. CLI exit 4.
struct budget_exceeded : std::runtime_error {
    long long estimate;
    budget_exceeded(const std::string& msg, long long est)
        : std::runtime_error(msg), estimate(est) {}
};

// Thrown when randomized data landed in a degenerate position and the caller
// should retry with a fresh seed.
struct nongeneric_data : std::runtime_error {
    explicit nongeneric_data(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hb
