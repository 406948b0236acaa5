// SPDX-License-Identifier: Apache-2.0
//
// Core value types shared across the bfdm library: complex sample buffers,
// time-frequency offsets and the error taxonomy used by the CLI exit codes.

#pragma once

#include <complex>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfdm {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

constexpr double pi = 3.14159265358979323846;

/// Raised when a scenario/configuration input is malformed or inconsistent.
/// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an iterative solver fails to converge or a problem is too
/// ill-conditioned to continue. The CLI maps this to exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A uniformly sampled complex baseband signal on a circular (periodized)
/// time axis. Sample n corresponds to time (n - origin_index) * ts seconds;
/// indices wrap modulo samples.size().
struct SampledSignal {
    cvec samples;
    double ts = 0.0;             ///< sampling interval in seconds
    std::int64_t origin_index = 0;  ///< index of the t = 0 sample

    SampledSignal() = default;
    SampledSignal(cvec s, double ts_, std::int64_t origin = 0)
        : samples(std::move(s)), ts(ts_), origin_index(origin) {
        validate();
    }

    void validate() const {
        if (samples.empty())
            throw config_error("SampledSignal: empty sample buffer");
        if (!(ts > 0.0))
            throw config_error("SampledSignal: sampling interval must be positive");
    }

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) * ts; }

    /// Time in seconds of sample n (unwrapped, relative to the origin).
    double time_of(std::int64_t n) const {
        return static_cast<double>(n - origin_index) * ts;
    }
};

/// A point in the time-frequency plane: nu1 in seconds, nu2 in hertz.
struct TFOffset {
    double nu1 = 0.0;  ///< time offset (seconds)
    double nu2 = 0.0;  ///< frequency offset (hertz)
};

inline double squared_norm(const cvec& x) {
    double acc = 0.0;
    for (const cplx& v : x) acc += std::norm(v);
    return acc;
}

inline double l2_norm(const cvec& x) { return std::sqrt(squared_norm(x)); }

/// Discrete inner product <x, y> = sum conj(x[n]) y[n].
inline cplx inner_product(const cvec& x, const cvec& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: length mismatch");
    cplx acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) acc += std::conj(x[n]) * y[n];
    return acc;
}

inline void scale_in_place(cvec& x, cplx s) {
    for (cplx& v : x) v *= s;
}

/// Normalize to unit discrete L2 norm; returns the scale that was applied.
inline double normalize_l2(cvec& x) {
    double nrm = l2_norm(x);
    if (nrm == 0.0)
        throw numeric_error("normalize_l2: zero vector");
    scale_in_place(x, 1.0 / nrm);
    return 1.0 / nrm;
}

/// Euclidean remainder: result always in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// True when |value - target| <= tol.
inline bool near(double value, double target, double tol) {
    return std::abs(value - target) <= tol;
}

}  // namespace bfdm
