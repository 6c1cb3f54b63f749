#include "qwalk/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double norm_squared_of(const std::vector<Complex>& amp) {
    double sum = 0.0;
    for (const Complex& a : amp) sum += std::norm(a);
    return sum;
}

}  // namespace

WalkState::WalkState(Lattice lattice, std::vector<Complex> amplitudes)
    : lattice_(lattice), amp_(std::move(amplitudes)) {
    if (amp_.size() != static_cast<std::size_t>(2 * lattice_.size()))
        throw std::invalid_argument("WalkState: amplitude array must hold 2 * size() entries");
    if (std::abs(norm_squared_of(amp_) - 1.0) > kNormTolerance)
        throw std::invalid_argument("WalkState: amplitudes must have unit norm");
}

Complex WalkState::amplitude(int coin, int site) const {
    if (coin != 0 && coin != 1)
        throw std::out_of_range("WalkState: coin index must be 0 or 1");
    return amp_[static_cast<std::size_t>(coin) * lattice_.size() + lattice_.index_of(site)];
}

double WalkState::norm_squared() const noexcept { return norm_squared_of(amp_); }

Distribution::Distribution(Lattice lattice, std::vector<double> probabilities)
    : lattice_(lattice), prob_(std::move(probabilities)) {
    if (prob_.size() != static_cast<std::size_t>(lattice_.size()))
        throw std::invalid_argument("Distribution: needs exactly one probability per site");
    double sum = 0.0;
    for (double p : prob_) {
        if (p < 0.0) throw std::invalid_argument("Distribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
        throw std::invalid_argument("Distribution: probabilities must sum to 1");
    double second = 0.0;
    for (int i = 0; i < lattice_.size(); ++i) {
        const double x = lattice_.site_at(i);
        mean_ += x * prob_[i];
        second += x * x * prob_[i];
    }
    // The subtraction can dip a hair below zero for point masses.
    variance_ = std::max(0.0, second - mean_ * mean_);
}

WalkState initial_particle_state(double delta, double eta, const Lattice& lattice) {
    std::vector<Complex> amp(2 * lattice.size(), Complex{0.0, 0.0});
    const int origin = lattice.index_of(0);
    amp[origin] = Complex{std::cos(delta), 0.0};
    amp[lattice.size() + origin] = std::exp(Complex{0.0, eta}) * std::sin(delta);
    return WalkState(lattice, std::move(amp));
}

Distribution measure_position(const WalkState& state) {
    const Lattice& lat = state.lattice();
    const int n = lat.size();
    std::span<const Complex> amp = state.amplitudes();
    std::vector<double> prob(n, 0.0);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < n; ++i)
            prob[i] += std::norm(amp[static_cast<std::size_t>(c) * n + i]);
    return Distribution(lat, std::move(prob));
}

double total_variation_distance(const Distribution& a, const Distribution& b) {
    if (!(a.lattice() == b.lattice()))
        throw LatticeMismatch("total_variation_distance: distributions on different lattices");
    double sum = 0.0;
    for (int i = 0; i < a.lattice().size(); ++i)
        sum += std::abs(a.probabilities()[i] - b.probabilities()[i]);
    return 0.5 * sum;
}

}  // namespace qwalk
