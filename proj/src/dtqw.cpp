#include "qwalk/dtqw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "detail/boundary.hpp"
#include "detail/fourier.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

CoinMatrix coin_matrix(const CoinParams& p) {
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const Complex exi = std::exp(Complex{0.0, p.xi});
    const Complex ezeta = std::exp(Complex{0.0, p.zeta});
    CoinMatrix m;
    m[0][0] = exi * c;
    m[0][1] = ezeta * s;
    m[1][0] = std::conj(ezeta) * s;
    m[1][1] = -std::conj(exi) * c;
    return m;
}

WalkState apply_coin(const WalkState& state, const CoinParams& params) {
    const CoinMatrix m = coin_matrix(params);
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> in = state.amplitudes();
    std::vector<Complex> out(2 * n);
    for (int i = 0; i < n; ++i) {
        const Complex a0 = in[i];
        const Complex a1 = in[n + i];
        out[i] = m[0][0] * a0 + m[0][1] * a1;
        out[n + i] = m[1][0] * a0 + m[1][1] * a1;
    }
    return WalkState(lat, std::move(out));
}

namespace {

// Coin 0 moves toward smaller x, coin 1 toward larger x. Guarded lattices
// zero-fill: nothing enters from outside the window.
std::vector<Complex> shift_permutation(std::span<const Complex> in, const Lattice& lat) {
    const int n = lat.size();
    std::vector<Complex> out(2 * n, Complex{0.0, 0.0});
    if (lat.boundary() == Boundary::Periodic) {
        for (int i = 0; i < n; ++i) {
            out[i] = in[(i + 1) % n];
            out[n + (i + 1) % n] = in[n + i];
        }
    } else {
        for (int i = 0; i + 1 < n; ++i) out[i] = in[i + 1];
        for (int i = 0; i + 1 < n; ++i) out[n + i + 1] = in[n + i];
    }
    return out;
}

// The same permutation as a diagonal phase in momentum space: with the
// forward kernel e^{-2 pi i j n / N}, moving one site toward smaller x
// multiplies mode j by e^{+2 pi i j / N}, toward larger x by the conjugate.
std::vector<Complex> shift_momentum(std::span<const Complex> in, const Lattice& lat) {
    const int n = lat.size();
    std::vector<Complex> out(2 * n);
    std::vector<Complex> row(n), freq(n);
    for (int c = 0; c < 2; ++c) {
        std::copy(in.begin() + c * n, in.begin() + (c + 1) * n, row.begin());
        detail::dft_forward(row, freq);
        const double sign = (c == 0) ? +1.0 : -1.0;
        for (int j = 0; j < n; ++j) {
            const double k = 2.0 * std::numbers::pi * j / n;
            freq[j] *= std::exp(Complex{0.0, sign * k});
        }
        detail::dft_inverse(freq, row);
        std::copy(row.begin(), row.end(), out.begin() + c * n);
    }
    return out;
}

}  // namespace

WalkState apply_shift(const WalkState& state, ShiftBackend backend) {
    const Lattice& lat = state.lattice();
    detail::require_empty_edges(state.amplitudes(), lat, 2, "apply_shift");
    std::vector<Complex> out = (backend == ShiftBackend::Permutation)
                                   ? shift_permutation(state.amplitudes(), lat)
                                   : shift_momentum(state.amplitudes(), lat);
    detail::require_empty_edges(out, lat, 2, "apply_shift");
    return WalkState(lat, std::move(out));
}

WalkState dtqw_evolve(const WalkState& state, const CoinParams& params, int steps,
                      ShiftBackend backend) {
    if (steps < 0) throw std::invalid_argument("dtqw_evolve: steps must be >= 0");
    WalkState current = state;
    for (int s = 0; s < steps; ++s)
        current = apply_shift(apply_coin(current, params), backend);
    return current;
}

double variance_prediction(double theta, int steps) {
    const double n = static_cast<double>(steps);
    return (1.0 - std::sin(theta)) * n * n;
}

}  // namespace qwalk
