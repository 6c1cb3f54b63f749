#pragma once

#include <stdexcept>

namespace qwalk {

enum class Boundary {
    Periodic,  ///< sites wrap around; shifts are exact cyclic permutations
    Guarded,   ///< finite window; the two outermost sites must stay empty
};

/// One-dimensional lattice of sites x in [-half_width, +half_width].
class Lattice {
public:
    Lattice(int half_width, Boundary boundary)
        : half_width_(half_width), boundary_(boundary) {
        if (half_width < 1)
            throw std::invalid_argument("Lattice: half_width must be >= 1");
    }

    int half_width() const noexcept { return half_width_; }
    Boundary boundary() const noexcept { return boundary_; }

    int size() const noexcept { return 2 * half_width_ + 1; }
    int min_site() const noexcept { return -half_width_; }
    int max_site() const noexcept { return half_width_; }

    /// Storage index of site x; sites are laid out from -half_width upward.
    int index_of(int site) const {
        if (site < min_site() || site > max_site())
            throw std::out_of_range("Lattice: site outside the lattice");
        return site + half_width_;
    }

    int site_at(int index) const {
        if (index < 0 || index >= size())
            throw std::out_of_range("Lattice: index outside the lattice");
        return index - half_width_;
    }

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    int half_width_;
    Boundary boundary_;
};

}  // namespace qwalk
