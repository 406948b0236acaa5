// SPDX-License-Identifier: Apache-2.0
//
// Time-frequency lattice description and Gabor system container. A lattice
// point (n1, n2) stands for the shift by (n1 * t_step seconds, n2 * f_step
// hertz) of a prototype pulse on a circular sampled time axis.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bfdm/types.hpp"

namespace bfdm {

struct Lattice {
    double t_step = 0.0;  ///< time spacing T in seconds
    double f_step = 0.0;  ///< frequency spacing F in hertz

    Lattice() = default;
    Lattice(double t, double f) : t_step(t), f_step(f) {
        if (!(t_step > 0.0) || !(f_step > 0.0))
            throw config_error("Lattice: steps must be positive");
    }

    double tf_product() const { return t_step * f_step; }

    /// Adjoint lattice (1/F, 1/T): the lattice on which the frame operator is
    /// inverted when computing a biorthogonal pulse for this one.
    Lattice adjoint() const { return Lattice(1.0 / f_step, 1.0 / t_step); }
};

struct LatticeIndex {
    std::int64_t n1 = 0;  ///< time index
    std::int64_t n2 = 0;  ///< frequency index
};

namespace detail {

/// Convert a duration to a whole number of samples, rejecting offsets that do
/// not land on the sampling grid (time shifts are circular and sample-exact).
inline std::int64_t to_samples(double seconds, double ts, const char* what) {
    double q = seconds / ts;
    double r = std::round(q);
    if (std::abs(q - r) > 1e-6)
        throw std::invalid_argument(std::string(what) +
                                    ": time offset is not an integer number of samples");
    return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// A family of time-frequency shifted copies of one prototype pulse.
struct GaborSystem {
    SampledSignal prototype;
    Lattice lattice;
    std::vector<LatticeIndex> index_set;

    GaborSystem(SampledSignal proto, Lattice lat, std::vector<LatticeIndex> idx)
        : prototype(std::move(proto)), lattice(lat), index_set(std::move(idx)) {
        prototype.validate();
        if (index_set.empty())
            throw config_error("GaborSystem: empty index set");
        // Every lattice time shift must be sample-exact.
        detail::to_samples(lattice.t_step, prototype.ts, "GaborSystem");
    }

    std::int64_t time_step_samples() const {
        return detail::to_samples(lattice.t_step, prototype.ts, "GaborSystem");
    }
};

/// Index set covering one time slot with `n_sub` consecutive subcarriers
/// starting at `first`.
inline std::vector<LatticeIndex> one_slot_indices(std::int64_t n_sub,
                                                  std::int64_t first = 0) {
    std::vector<LatticeIndex> idx;
    idx.reserve(static_cast<std::size_t>(n_sub));
    for (std::int64_t l = 0; l < n_sub; ++l) idx.push_back({0, first + l});
    return idx;
}

/// Rectangular index set: `n_sym` time slots by `n_sub` subcarriers.
inline std::vector<LatticeIndex> grid_indices(std::int64_t n_sym, std::int64_t n_sub,
                                              std::int64_t first_sub = 0) {
    std::vector<LatticeIndex> idx;
    idx.reserve(static_cast<std::size_t>(n_sym * n_sub));
    for (std::int64_t k = 0; k < n_sym; ++k)
        for (std::int64_t l = 0; l < n_sub; ++l) idx.push_back({k, first_sub + l});
    return idx;
}

}  // namespace bfdm
