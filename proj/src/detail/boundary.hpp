#pragma once

#include <cmath>
#include <span>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/state.hpp"

namespace qwalk::detail {

/// Largest |amplitude| tolerated on a guarded edge site. Permutation moves
/// keep exact zeros there; the DFT route leaves O(machine eps) residue.
inline constexpr double kEdgeAmplitudeTol = 1e-12;

/// Same bound for probability weights (squared amplitudes).
inline constexpr double kEdgeProbabilityTol = kEdgeAmplitudeTol * kEdgeAmplitudeTol;

/// Guarded lattices must keep their outermost sites empty. `rows` is the
/// number of internal-basis components stacked over the position axis.
inline void require_empty_edges(std::span<const Complex> amp, const Lattice& lat,
                                int rows, const char* context) {
    if (lat.boundary() != Boundary::Guarded) return;
    const int n = lat.size();
    for (int r = 0; r < rows; ++r) {
        const auto lo = std::abs(amp[static_cast<std::size_t>(r) * n]);
        const auto hi = std::abs(amp[static_cast<std::size_t>(r) * n + n - 1]);
        if (lo > kEdgeAmplitudeTol || hi > kEdgeAmplitudeTol)
            throw BoundaryViolation(std::string(context) +
                                    ": amplitude on an outermost guarded site");
    }
}

}  // namespace qwalk::detail
