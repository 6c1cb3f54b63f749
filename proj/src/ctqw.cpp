#include "qwalk/ctqw.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "detail/fourier.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void validate(const HamiltonianSpec& spec) {
    if (!(spec.gamma > 0.0))
        throw std::invalid_argument("HamiltonianSpec: gamma must be > 0");
}

double norm_squared_of(const std::vector<Complex>& amp) {
    double sum = 0.0;
    for (const Complex& a : amp) sum += std::norm(a);
    return sum;
}

}  // namespace

PositionState::PositionState(Lattice lattice, std::vector<Complex> amplitudes)
    : lattice_(lattice), amp_(std::move(amplitudes)) {
    if (amp_.size() != static_cast<std::size_t>(lattice_.size()))
        throw std::invalid_argument("PositionState: amplitude array must hold size() entries");
    if (std::abs(norm_squared_of(amp_) - 1.0) > kNormTolerance)
        throw std::invalid_argument("PositionState: amplitudes must have unit norm");
}

double PositionState::norm_squared() const noexcept { return norm_squared_of(amp_); }

PositionState delta_peak(const Lattice& lattice, int site) {
    std::vector<Complex> amp(lattice.size(), Complex{0.0, 0.0});
    amp[lattice.index_of(site)] = Complex{1.0, 0.0};
    return PositionState(lattice, std::move(amp));
}

std::vector<Complex> hamiltonian_apply(const HamiltonianSpec& spec,
                                       std::span<const Complex> amplitudes) {
    validate(spec);
    const Lattice& lat = spec.lattice;
    const int n = lat.size();
    if (amplitudes.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("hamiltonian_apply: amplitude length mismatch");
    const bool wrap = lat.boundary() == Boundary::Periodic;
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) {
        const Complex left = i > 0 ? amplitudes[i - 1]
                                   : (wrap ? amplitudes[n - 1] : Complex{0.0, 0.0});
        const Complex right = i + 1 < n ? amplitudes[i + 1]
                                        : (wrap ? amplitudes[0] : Complex{0.0, 0.0});
        out[i] = spec.gamma * (2.0 * amplitudes[i] - left - right);
    }
    return out;
}

Eigen::MatrixXd hamiltonian_matrix(const HamiltonianSpec& spec) {
    validate(spec);
    const int n = spec.lattice.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = 2.0 * spec.gamma;
        if (i > 0) h(i, i - 1) = -spec.gamma;
        if (i + 1 < n) h(i, i + 1) = -spec.gamma;
    }
    if (spec.lattice.boundary() == Boundary::Periodic) {
        h(0, n - 1) = -spec.gamma;
        h(n - 1, 0) = -spec.gamma;
    }
    return h;
}

namespace {

// Eigensystem of the gamma = 1 guarded window, shared across calls and
// threads; eigenvalues scale linearly with gamma so one decomposition per
// lattice size suffices.
struct GuardedEigs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // orthonormal columns
};

std::shared_ptr<const GuardedEigs> guarded_eigs(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GuardedEigs>> cache;
    std::scoped_lock lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 2.0);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    auto eigs = std::make_shared<GuardedEigs>(
        GuardedEigs{solver.eigenvalues(), solver.eigenvectors()});
    cache.emplace(n, eigs);
    return eigs;
}

}  // namespace

PositionState ctqw_evolve(const HamiltonianSpec& spec, double t, const PositionState& state) {
    validate(spec);
    if (!(state.lattice() == spec.lattice))
        throw LatticeMismatch("ctqw_evolve: state and Hamiltonian lattices differ");
    if (t < 0.0) throw std::invalid_argument("ctqw_evolve: t must be >= 0");
    const int n = spec.lattice.size();
    std::span<const Complex> in = state.amplitudes();
    std::vector<Complex> out(n);

    if (spec.lattice.boundary() == Boundary::Periodic) {
        std::vector<Complex> vec(in.begin(), in.end()), freq(n);
        detail::dft_forward(vec, freq);
        for (int j = 0; j < n; ++j) {
            const double k = 2.0 * std::numbers::pi * j / n;
            const double eig = 2.0 * spec.gamma * (1.0 - std::cos(k));
            freq[j] *= std::exp(Complex{0.0, eig * t});
        }
        detail::dft_inverse(freq, vec);
        std::copy(vec.begin(), vec.end(), out.begin());
    } else {
        auto eigs = guarded_eigs(n);
        Eigen::Map<const Eigen::VectorXcd> psi(in.data(), n);
        // Two real products per direction keep everything in BLAS-friendly
        // real arithmetic.
        Eigen::VectorXd cr = eigs->vectors.transpose() * psi.real().eval();
        Eigen::VectorXd ci = eigs->vectors.transpose() * psi.imag().eval();
        Eigen::VectorXd pr(n), pi(n);
        for (int m = 0; m < n; ++m) {
            const double phase = spec.gamma * eigs->values[m] * t;
            const double cph = std::cos(phase);
            const double sph = std::sin(phase);
            pr[m] = cr[m] * cph - ci[m] * sph;
            pi[m] = cr[m] * sph + ci[m] * cph;
        }
        Eigen::VectorXd outr = eigs->vectors * pr;
        Eigen::VectorXd outi = eigs->vectors * pi;
        for (int i = 0; i < n; ++i) out[i] = Complex{outr[i], outi[i]};
    }
    return PositionState(spec.lattice, std::move(out));
}

Distribution ctqw_distribution(const HamiltonianSpec& spec, double t,
                               const PositionState& state) {
    return measure_position(ctqw_evolve(spec, t, state));
}

Distribution measure_position(const PositionState& state) {
    const Lattice& lat = state.lattice();
    std::vector<double> prob(lat.size());
    for (int i = 0; i < lat.size(); ++i) prob[i] = std::norm(state.amplitudes()[i]);
    return Distribution(lat, std::move(prob));
}

}  // namespace qwalk
