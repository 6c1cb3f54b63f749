#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

/// Nearest-neighbour hopping Hamiltonian gamma * (2I - A) with A the lattice
/// adjacency matrix: every interior row reads (-gamma, 2 gamma, -gamma).
/// Periodic lattices wrap the stencil, guarded ones truncate it (Dirichlet).
struct HamiltonianSpec {
    double gamma;
    Lattice lattice;
};

/// Coinless wave function over lattice sites. Immutable value type.
class PositionState {
public:
    /// Throws std::invalid_argument on wrong length or non-unit norm.
    PositionState(Lattice lattice, std::vector<Complex> amplitudes);

    const Lattice& lattice() const noexcept { return lattice_; }
    Complex amplitude(int site) const { return amp_[lattice_.index_of(site)]; }
    std::span<const Complex> amplitudes() const noexcept { return amp_; }
    double norm_squared() const noexcept;

private:
    Lattice lattice_;
    std::vector<Complex> amp_;
};

/// Unit amplitude concentrated on a single site.
PositionState delta_peak(const Lattice& lattice, int site = 0);

/// out_x = gamma * (-in_{x-1} + 2 in_x - in_{x+1}); the input need not be
/// normalized. Throws std::invalid_argument on a length mismatch.
std::vector<Complex> hamiltonian_apply(const HamiltonianSpec& spec,
                                       std::span<const Complex> amplitudes);

/// Dense real symmetric matrix of the same Hamiltonian.
Eigen::MatrixXd hamiltonian_matrix(const HamiltonianSpec& spec);

/// exp(i H t) |state>. Fourier diagonalization on periodic lattices; guarded
/// lattices use a cached eigendecomposition of the unit-rate tridiagonal
/// matrix (eigenvalues scale linearly with gamma). Requires gamma > 0 and
/// t >= 0.
PositionState ctqw_evolve(const HamiltonianSpec& spec, double t,
                          const PositionState& state);

Distribution ctqw_distribution(const HamiltonianSpec& spec, double t,
                               const PositionState& state);

Distribution measure_position(const PositionState& state);

}  // namespace qwalk
