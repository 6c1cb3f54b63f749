#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Amplitude reached an outermost site of a guarded lattice; the finite
/// window no longer emulates the infinite line.
class BoundaryViolation : public std::runtime_error {
public:
    explicit BoundaryViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Post-selection onto the resource state annihilated the whole state.
class PostSelectZeroProbability : public std::runtime_error {
public:
    explicit PostSelectZeroProbability(const std::string& what) : std::runtime_error(what) {}
};

/// Distributions or states defined on different lattices were combined.
class LatticeMismatch : public std::invalid_argument {
public:
    explicit LatticeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Input unusable for a fit: too few samples, nonpositive variances, ...
class DegenerateInput : public std::invalid_argument {
public:
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qwalk
