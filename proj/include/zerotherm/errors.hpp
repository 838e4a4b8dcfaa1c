#pragma once

#include <stdexcept>
#include <string>

namespace zerotherm {

// An iterative scheme (quadrature panels, eigenbasis doubling, level truncation)
// exhausted its budget before reaching tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// Z2 + delta1Z lost positivity: the first-order corrected partition function is
// meaningless at this temperature (below the validity boundary).
struct ApproximationBreakdown : std::runtime_error {
    explicit ApproximationBreakdown(const std::string& msg) : std::runtime_error(msg) {}
};

// Root search found no sign change inside its (grown) bracket.
struct NoCrossing : std::runtime_error {
    explicit NoCrossing(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zerotherm
