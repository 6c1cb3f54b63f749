#pragma once

#include <unsupported/Eigen/FFT>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk::detail {

/// One plan cache per thread; Eigen::FFT instances are not safe to share.
inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

/// Unnormalized forward transform, kernel e^{-2 pi i j n / N}.
inline void dft_forward(const std::vector<Complex>& in, std::vector<Complex>& out) {
    fft_engine().fwd(out, in);
}

/// Inverse transform including the 1/N factor.
inline void dft_inverse(const std::vector<Complex>& in, std::vector<Complex>& out) {
    fft_engine().inv(out, in);
}

}  // namespace qwalk::detail
