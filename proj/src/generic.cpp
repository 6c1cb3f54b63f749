#include "qwalk/generic.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "detail/boundary.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

/// Direction of travel for a (resource, coin) pair: toward smaller x exactly
/// when the two agree.
constexpr int step_direction(int resource, int coin) {
    return resource == coin ? -1 : +1;
}

/// Projection weights below this count as a failed post-selection.
constexpr double kPostSelectMinWeight = 1e-24;

}  // namespace

std::array<Complex, 2> prepare_resource(const ResourceParams& p) {
    return {Complex{std::cos(p.theta_u), 0.0},
            std::exp(Complex{0.0, p.gamma_u}) * std::sin(p.theta_u)};
}

GenericState::GenericState(Lattice lattice, std::vector<Complex> amplitudes)
    : lattice_(lattice), amp_(std::move(amplitudes)) {
    if (amp_.size() != static_cast<std::size_t>(4 * lattice_.size()))
        throw std::invalid_argument("GenericState: amplitude array must hold 4 * size() entries");
    double sum = 0.0;
    for (const Complex& a : amp_) sum += std::norm(a);
    if (std::abs(sum - 1.0) > kNormTolerance)
        throw std::invalid_argument("GenericState: amplitudes must have unit norm");
}

Complex GenericState::amplitude(int resource, int coin, int site) const {
    if (resource != 0 && resource != 1)
        throw std::out_of_range("GenericState: resource index must be 0 or 1");
    if (coin != 0 && coin != 1)
        throw std::out_of_range("GenericState: coin index must be 0 or 1");
    const std::size_t row = static_cast<std::size_t>(resource * 2 + coin);
    return amp_[row * lattice_.size() + lattice_.index_of(site)];
}

double GenericState::norm_squared() const noexcept {
    double sum = 0.0;
    for (const Complex& a : amp_) sum += std::norm(a);
    return sum;
}

GenericState entangle_resource(const WalkState& state, const ResourceParams& params) {
    const auto res = prepare_resource(params);
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> in = state.amplitudes();
    std::vector<Complex> out(4 * n);
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 2 * n; ++k)
            out[static_cast<std::size_t>(r) * 2 * n + k] = res[r] * in[k];
    return GenericState(lat, std::move(out));
}

GenericState apply_uc(const GenericState& state) {
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> in = state.amplitudes();
    detail::require_empty_edges(in, lat, 4, "apply_uc");
    std::vector<Complex> out(4 * n, Complex{0.0, 0.0});
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const int row = (r * 2 + c) * n;
            const int dir = step_direction(r, c);
            if (lat.boundary() == Boundary::Periodic) {
                for (int i = 0; i < n; ++i) out[row + (i + dir + n) % n] = in[row + i];
            } else {
                for (int i = 0; i < n; ++i) {
                    const int j = i + dir;
                    if (0 <= j && j < n) out[row + j] = in[row + i];
                }
            }
        }
    detail::require_empty_edges(out, lat, 4, "apply_uc");
    return GenericState(lat, std::move(out));
}

GenericState generic_step(const WalkState& state, const ResourceParams& params) {
    return apply_uc(entangle_resource(state, params));
}

std::vector<TraceBranch> trace_out_resource(const GenericState& state) {
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> in = state.amplitudes();
    std::vector<TraceBranch> branches;
    for (int r = 0; r < 2; ++r) {
        double w = 0.0;
        for (int k = 0; k < 2 * n; ++k)
            w += std::norm(in[static_cast<std::size_t>(r) * 2 * n + k]);
        if (w <= 0.0) continue;
        const double inv = 1.0 / std::sqrt(w);
        std::vector<Complex> amp(2 * n);
        for (int k = 0; k < 2 * n; ++k)
            amp[k] = in[static_cast<std::size_t>(r) * 2 * n + k] * inv;
        branches.push_back(TraceBranch{w, WalkState(lat, std::move(amp))});
    }
    return branches;
}

WalkState postselect_resource(const GenericState& state, const ResourceParams& params) {
    const auto res = prepare_resource(params);
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> in = state.amplitudes();
    std::vector<Complex> amp(2 * n);
    double w = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        amp[k] = std::conj(res[0]) * in[k] + std::conj(res[1]) * in[2 * n + k];
        w += std::norm(amp[k]);
    }
    if (w <= kPostSelectMinWeight)
        throw PostSelectZeroProbability(
            "postselect_resource: projection onto the resource state has zero weight");
    const double inv = 1.0 / std::sqrt(w);
    for (Complex& a : amp) a *= inv;
    return WalkState(lat, std::move(amp));
}

std::vector<TraceBranch> generic_step_trace_out(const WalkState& state,
                                                const ResourceParams& params) {
    return trace_out_resource(generic_step(state, params));
}

WalkState generic_step_postselect(const WalkState& state, const ResourceParams& params) {
    return postselect_resource(generic_step(state, params), params);
}

namespace {

// Shared fast path for KeepCoherent and TraceOut.
//
// The embedded shift never rotates the coin, so conditioned on a coin basis
// state each step's resource register is an exact record of the direction
// taken. Registers recording different directions are orthogonal whether
// they are kept around or discarded, which collapses both policies onto the
// same classical picture: every coin component performs an independent
// +-1 random walk whose left probability is the matching resource weight.
Distribution classical_mixture_evolve(const WalkState& init, const ResourceParams& params,
                                      int steps) {
    const Lattice& lat = init.lattice();
    const int n = lat.size();
    const auto res = prepare_resource(params);
    const double weight0 = std::norm(res[0]);
    const double weight1 = std::norm(res[1]);
    // coin 0 is moved left by resource 0, coin 1 is moved left by resource 1
    const double p_left[2] = {weight0, weight1};

    std::array<std::vector<double>, 2> q;
    for (int c = 0; c < 2; ++c) {
        q[c].resize(n);
        for (int i = 0; i < n; ++i)
            q[c][i] = std::norm(init.amplitudes()[static_cast<std::size_t>(c) * n + i]);
    }

    const bool guarded = lat.boundary() == Boundary::Guarded;
    std::vector<double> next(n);
    for (int s = 0; s < steps; ++s)
        for (int c = 0; c < 2; ++c) {
            const double pl = p_left[c];
            const double pr = 1.0 - pl;
            if (guarded) {
                if (q[c][0] > detail::kEdgeProbabilityTol ||
                    q[c][n - 1] > detail::kEdgeProbabilityTol)
                    throw BoundaryViolation(
                        "generic_evolve: probability on an outermost guarded site");
                for (int i = 0; i < n; ++i) {
                    const double from_right = i + 1 < n ? q[c][i + 1] : 0.0;
                    const double from_left = i > 0 ? q[c][i - 1] : 0.0;
                    next[i] = pl * from_right + pr * from_left;
                }
                if (next[0] > detail::kEdgeProbabilityTol ||
                    next[n - 1] > detail::kEdgeProbabilityTol)
                    throw BoundaryViolation(
                        "generic_evolve: probability on an outermost guarded site");
            } else {
                for (int i = 0; i < n; ++i)
                    next[i] = pl * q[c][(i + 1) % n] + pr * q[c][(i - 1 + n) % n];
            }
            q[c].swap(next);
        }

    std::vector<double> prob(n);
    for (int i = 0; i < n; ++i) prob[i] = q[0][i] + q[1][i];
    return Distribution(lat, std::move(prob));
}

}  // namespace

Distribution generic_evolve(const WalkState& init, const ResourceParams& params,
                            DisposalPolicy policy, int steps) {
    if (steps < 0) throw std::invalid_argument("generic_evolve: steps must be >= 0");
    switch (policy) {
        case DisposalPolicy::KeepCoherent:
        case DisposalPolicy::TraceOut:
            return classical_mixture_evolve(init, params, steps);
        case DisposalPolicy::PostSelect: {
            WalkState current = init;
            for (int s = 0; s < steps; ++s)
                current = generic_step_postselect(current, params);
            return measure_position(current);
        }
    }
    throw std::logic_error("generic_evolve: unknown disposal policy");
}

Distribution measure_position(const GenericState& state) {
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> amp = state.amplitudes();
    std::vector<double> prob(n, 0.0);
    for (int row = 0; row < 4; ++row)
        for (int i = 0; i < n; ++i)
            prob[i] += std::norm(amp[static_cast<std::size_t>(row) * n + i]);
    return Distribution(lat, std::move(prob));
}

namespace {

Eigen::MatrixXcd cyclic_shift_matrix(int n, int dir) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m((i + dir + n) % n, i) = 1.0;
    return m;
}

void require_periodic(const Lattice& lattice, const char* context) {
    if (lattice.boundary() != Boundary::Periodic)
        throw std::invalid_argument(std::string(context) +
                                    ": operators are materialized on periodic lattices");
}

}  // namespace

DtqwReduction reduce_to_dtqw_operator(int resource_basis, const Lattice& lattice) {
    if (resource_basis != 0 && resource_basis != 1)
        throw std::invalid_argument("reduce_to_dtqw_operator: resource basis must be 0 or 1");
    require_periodic(lattice, "reduce_to_dtqw_operator");
    const int n = lattice.size();
    const int dim = 2 * n;

    // Columns of the embedded shift restricted to the chosen resource basis
    // state, read off by driving the real implementation with basis states.
    Eigen::MatrixXcd restriction = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<Complex> amp(4 * n, Complex{0.0, 0.0});
        amp[static_cast<std::size_t>(resource_basis) * 2 * n + col] = 1.0;
        GenericState moved = apply_uc(GenericState(lattice, std::move(amp)));
        for (int row = 0; row < dim; ++row)
            restriction(row, col) =
                moved.amplitudes()[static_cast<std::size_t>(resource_basis) * 2 * n + row];
    }

    // Reference columns come from the walk engine's own shift. Resource 1
    // reverses both coin directions, i.e. inverts the permutation, so its
    // reference is the transpose.
    Eigen::MatrixXcd reference = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<Complex> amp(2 * n, Complex{0.0, 0.0});
        amp[col] = 1.0;
        WalkState moved = apply_shift(WalkState(lattice, std::move(amp)));
        for (int row = 0; row < dim; ++row) reference(row, col) = moved.amplitudes()[row];
    }
    if (resource_basis == 1) reference = reference.transpose().eval();

    DtqwReduction out;
    out.max_abs_diff = (restriction - reference).cwiseAbs().maxCoeff();
    out.unitary = ((restriction * restriction.adjoint()) -
                   Eigen::MatrixXcd::Identity(dim, dim))
                          .cwiseAbs()
                          .maxCoeff() == 0.0;
    out.restriction = std::move(restriction);
    return out;
}

namespace {

Eigen::MatrixXcd local_hopping_generator(const ResourceParams& params, int particle_basis,
                                         int n) {
    const auto res = prepare_resource(params);
    return res[0] * cyclic_shift_matrix(n, step_direction(0, particle_basis)) +
           res[1] * cyclic_shift_matrix(n, step_direction(1, particle_basis));
}

}  // namespace

Distribution local_hamiltonian_distribution(const ResourceParams& params, int particle_basis,
                                            const Lattice& lattice, int t) {
    if (particle_basis != 0 && particle_basis != 1)
        throw std::invalid_argument("local_hamiltonian_distribution: particle basis must be 0 or 1");
    require_periodic(lattice, "local_hamiltonian_distribution");
    if (t < 0)
        throw std::invalid_argument("local_hamiltonian_distribution: t must be >= 0");
    const int n = lattice.size();
    const Eigen::MatrixXcd hl = local_hopping_generator(params, particle_basis, n);
    const Eigen::MatrixXcd u = (Complex{0.0, 1.0} * static_cast<double>(t) * hl).exp();
    const Eigen::VectorXcd evolved = u.col(lattice.index_of(0));
    std::vector<double> prob(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        prob[i] = std::norm(evolved[i]);
        sum += prob[i];
    }
    for (double& p : prob) p /= sum;
    return Distribution(lattice, std::move(prob));
}

CtqwReductionReport reduce_to_ctqw_check(const ResourceParams& params, int particle_basis,
                                         const Lattice& lattice, int max_steps) {
    if (particle_basis != 0 && particle_basis != 1)
        throw std::invalid_argument("reduce_to_ctqw_check: particle basis must be 0 or 1");
    require_periodic(lattice, "reduce_to_ctqw_check");
    if (max_steps < 1)
        throw std::invalid_argument("reduce_to_ctqw_check: max_steps must be >= 1");

    const int n = lattice.size();
    const int dim = 2 * n;
    const int dir0 = step_direction(0, particle_basis);
    const int dir1 = step_direction(1, particle_basis);

    // Product of the two resource-controlled shifts.
    Eigen::MatrixXcd f0 = Eigen::MatrixXcd::Identity(dim, dim);
    f0.block(0, 0, n, n) = cyclic_shift_matrix(n, dir0);
    Eigen::MatrixXcd f1 = Eigen::MatrixXcd::Identity(dim, dim);
    f1.block(n, n, n, n) = cyclic_shift_matrix(n, dir1);
    const Eigen::MatrixXcd product_form = f0 * f1;

    // Single exponential of the combined generator: K is the principal-branch
    // momentum operator with exp(-iK) equal to the dir0 shift, so the block
    // signs (+K, -K) reproduce both controlled factors at once. n is odd,
    // hence no mode sits on the branch cut.
    Eigen::MatrixXcd fourier(n, n);
    const double step = 2.0 * std::numbers::pi / n;
    for (int x = 0; x < n; ++x)
        for (int j = 0; j < n; ++j)
            fourier(x, j) = std::exp(Complex{0.0, step * x * j}) / std::sqrt(double(n));
    Eigen::VectorXd kappa(n);
    for (int j = 0; j < n; ++j) {
        const int folded = j <= n / 2 ? j : j - n;
        kappa[j] = step * folded * dir0;
    }
    const Eigen::MatrixXcd momentum = fourier * kappa.asDiagonal() * fourier.adjoint();
    Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(dim, dim);
    generator.block(0, 0, n, n) = momentum;
    generator.block(n, n, n, n) = -momentum;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(generator);
    Eigen::VectorXcd phases(dim);
    for (int m = 0; m < dim; ++m)
        phases[m] = std::exp(Complex{0.0, -solver.eigenvalues()[m]});
    const Eigen::MatrixXcd exponential_form =
        solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

    CtqwReductionReport report;
    report.exponential_identity_max_diff =
        (product_form - exponential_form).cwiseAbs().maxCoeff();

    // Particle prepared in the chosen coin basis state at the origin.
    std::vector<Complex> amp(2 * n, Complex{0.0, 0.0});
    amp[static_cast<std::size_t>(particle_basis) * n + lattice.index_of(0)] = 1.0;
    const WalkState init(lattice, std::move(amp));

    report.rows.reserve(max_steps);
    for (int t = 1; t <= max_steps; ++t) {
        const Distribution hl = local_hamiltonian_distribution(params, particle_basis, lattice, t);
        CtqwReductionReport::Row row;
        row.steps = t;
        row.tv_keep_coherent = total_variation_distance(
            generic_evolve(init, params, DisposalPolicy::KeepCoherent, t), hl);
        row.tv_trace_out = total_variation_distance(
            generic_evolve(init, params, DisposalPolicy::TraceOut, t), hl);
        row.tv_post_select = total_variation_distance(
            generic_evolve(init, params, DisposalPolicy::PostSelect, t), hl);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace qwalk
