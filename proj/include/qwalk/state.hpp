#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

using Complex = std::complex<double>;

/// |sum of |a|^2  -  1| must stay below this for any state or distribution
/// accepted or produced by the library.
inline constexpr double kNormTolerance = 1e-12;

/// Two-component (coin) wave function over a lattice. Immutable value type.
///
/// Amplitudes are stored as [coin * lattice.size() + site_index].
class WalkState {
public:
    /// Takes ownership of the amplitude array. Throws std::invalid_argument
    /// if the length is not 2 * lattice.size() or the norm is not 1 within
    /// kNormTolerance.
    WalkState(Lattice lattice, std::vector<Complex> amplitudes);

    const Lattice& lattice() const noexcept { return lattice_; }
    Complex amplitude(int coin, int site) const;
    std::span<const Complex> amplitudes() const noexcept { return amp_; }
    double norm_squared() const noexcept;

private:
    Lattice lattice_;
    std::vector<Complex> amp_;
};

/// Position probabilities with their first two moments.
class Distribution {
public:
    /// Throws std::invalid_argument if any probability is negative or the
    /// total differs from 1 by more than kNormTolerance.
    Distribution(Lattice lattice, std::vector<double> probabilities);

    const Lattice& lattice() const noexcept { return lattice_; }
    double probability(int site) const { return prob_[lattice_.index_of(site)]; }
    const std::vector<double>& probabilities() const noexcept { return prob_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }

private:
    Lattice lattice_;
    std::vector<double> prob_;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

/// Particle at the origin with coin state cos(delta)|0> + e^{i eta} sin(delta)|1>.
WalkState initial_particle_state(double delta, double eta, const Lattice& lattice);

/// P_x = |amplitude(0, x)|^2 + |amplitude(1, x)|^2.
Distribution measure_position(const WalkState& state);

/// (1/2) sum_x |a_x - b_x|. Throws LatticeMismatch unless both distributions
/// share one lattice.
double total_variation_distance(const Distribution& a, const Distribution& b);

}  // namespace qwalk
