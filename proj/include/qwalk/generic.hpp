#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

/// Superposition angles of the two-level resource that drives the shift.
struct ResourceParams {
    double theta_u = 0.0;
    double gamma_u = 0.0;
};

/// [cos(theta_u), e^{i gamma_u} sin(theta_u)]
std::array<Complex, 2> prepare_resource(const ResourceParams& params);

/// What happens to the consumed resource register after each step.
enum class DisposalPolicy {
    KeepCoherent,  ///< every step's register is kept; the record grows
    TraceOut,      ///< the register is discarded, leaving a branch mixture
    PostSelect,    ///< the register is projected back onto the resource state
};

/// Wave function over resource (2) x coin (2) x lattice sites, stored as
/// [(resource * 2 + coin) * lattice.size() + site_index]. Immutable.
class GenericState {
public:
    GenericState(Lattice lattice, std::vector<Complex> amplitudes);

    const Lattice& lattice() const noexcept { return lattice_; }
    Complex amplitude(int resource, int coin, int site) const;
    std::span<const Complex> amplitudes() const noexcept { return amp_; }
    double norm_squared() const noexcept;

private:
    Lattice lattice_;
    std::vector<Complex> amp_;
};

/// prepare_resource(params) tensor |state>.
GenericState entangle_resource(const WalkState& state, const ResourceParams& params);

/// Resource-embedded shift: when resource and coin agree the component moves
/// one site toward smaller x, otherwise toward larger x. Exact conditional
/// permutation; guarded edges are checked before and after, as in apply_shift.
GenericState apply_uc(const GenericState& state);

/// One physical step: entangle a fresh resource, then apply the shift.
GenericState generic_step(const WalkState& state, const ResourceParams& params);

struct TraceBranch {
    double weight;
    WalkState state;
};

/// Resource-basis measurement branches; zero-weight branches are dropped and
/// the remaining weights sum to 1.
std::vector<TraceBranch> trace_out_resource(const GenericState& state);

/// Projects the resource register onto prepare_resource(params) and
/// renormalizes. Throws PostSelectZeroProbability when the projection weight
/// vanishes.
WalkState postselect_resource(const GenericState& state, const ResourceParams& params);

/// generic_step followed by the respective disposal.
std::vector<TraceBranch> generic_step_trace_out(const WalkState& state,
                                                const ResourceParams& params);
WalkState generic_step_postselect(const WalkState& state, const ResourceParams& params);

/// Position distribution after `steps` applications of generic_step under the
/// policy. KeepCoherent and TraceOut share a per-coin classical recurrence
/// (see the implementation note); PostSelect iterates the projected step.
Distribution generic_evolve(const WalkState& init, const ResourceParams& params,
                            DisposalPolicy policy, int steps);

Distribution measure_position(const GenericState& state);

/// Restriction of the embedded shift to one resource basis state, materialized
/// column by column on a periodic lattice, together with its deviation from
/// the plain coin-conditioned shift (resource 0) or the mirrored one
/// (resource 1).
struct DtqwReduction {
    Eigen::MatrixXcd restriction;  ///< (2 * size) x (2 * size)
    double max_abs_diff = 0.0;     ///< against the reference shift matrix
    bool unitary = false;          ///< restriction * adjoint == identity, exactly
};
DtqwReduction reduce_to_dtqw_operator(int resource_basis, const Lattice& lattice);

/// Distribution of exp(i H_L t) applied to the origin peak, where H_L hops
/// with the resource amplitudes as directional weights. H_L is generally not
/// Hermitian, so the evolved vector is renormalized before measuring.
Distribution local_hamiltonian_distribution(const ResourceParams& params,
                                            int particle_basis,
                                            const Lattice& lattice, int t);

/// Coinless-limit report: checks that the product of the two conditional
/// shift exponentials equals the single exponential of their combined
/// generator, and tabulates per-policy total-variation distances between the
/// generic walk started in a coin basis state and the exp(i H_L t) evolution.
struct CtqwReductionReport {
    double exponential_identity_max_diff = 0.0;
    struct Row {
        int steps;
        double tv_keep_coherent;
        double tv_trace_out;
        double tv_post_select;
    };
    std::vector<Row> rows;
};
CtqwReductionReport reduce_to_ctqw_check(const ResourceParams& params, int particle_basis,
                                         const Lattice& lattice, int max_steps);

}  // namespace qwalk
