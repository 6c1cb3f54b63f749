#pragma once

#include <array>

#include "qwalk/state.hpp"

namespace qwalk {

/// Angles of the three-parameter SU(2) coin.
struct CoinParams {
    double xi = 0.0;
    double theta = 0.0;
    double zeta = 0.0;
};

using CoinMatrix = std::array<std::array<Complex, 2>, 2>;

/// [[ e^{i xi} cos(theta),    e^{i zeta} sin(theta) ],
///  [ e^{-i zeta} sin(theta), -e^{-i xi} cos(theta) ]]
CoinMatrix coin_matrix(const CoinParams& params);

/// Left-multiplies the coin vector at every site by coin_matrix(params).
WalkState apply_coin(const WalkState& state, const CoinParams& params);

enum class ShiftBackend {
    Permutation,    ///< direct index move
    MomentumPhase,  ///< DFT to momentum space, per-coin phases, DFT back
};

/// Coin-conditioned shift: coin 0 moves one site toward smaller x, coin 1 one
/// site toward larger x. On guarded lattices throws BoundaryViolation if any
/// amplitude above 1e-12 sits on, or would land on, an outermost site; the
/// check runs before and after every application.
WalkState apply_shift(const WalkState& state,
                      ShiftBackend backend = ShiftBackend::Permutation);

/// steps repetitions of coin followed by shift.
WalkState dtqw_evolve(const WalkState& state, const CoinParams& params, int steps,
                      ShiftBackend backend = ShiftBackend::Permutation);

/// Large-step variance law (1 - sin(theta)) * steps^2. The asymptote holds
/// for 0 < theta < pi/2; the function itself is total.
double variance_prediction(double theta, int steps);

}  // namespace qwalk
