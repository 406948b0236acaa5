// SPDX-License-Identifier: Apache-2.0
//
// Gabor analysis on a circular sampled time axis: time-frequency shifts,
// cross-ambiguity, Gram matrices and Bessel/frame bounds, frame-operator
// application for full separable lattices, conjugate-gradient inversion for
// biorthogonal (dual) pulses, and the closed-form ambiguity of the
// CP-OFDM rectangular pulse pair.
//
// Conventions. The shift operator is (S_mu x)(t) = exp(i 2 pi mu2 t) x(t -
// mu1) with t measured from the signal origin; time shifts are circular and
// sample-exact, modulations are pointwise and accept any frequency. The
// cross-ambiguity is A_{g,gamma}(mu) = <g, S_mu gamma> with the conjugation
// on g.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <optional>

#include "bfdm/fft.hpp"
#include "bfdm/io.hpp"
#include "bfdm/lattice.hpp"
#include "bfdm/rng.hpp"
#include "bfdm/types.hpp"

namespace bfdm {

/// Ratio A/B below which a lattice system is reported as not a frame.
constexpr double frame_ratio_floor = 1e-6;

/// Time-frequency shift by mu. mu.nu1 must be an integer number of samples.
inline SampledSignal tf_shift(const SampledSignal& x, const TFOffset& mu) {
    const std::int64_t L = static_cast<std::int64_t>(x.size());
    const std::int64_t d = detail::to_samples(mu.nu1, x.ts, "tf_shift");
    SampledSignal y;
    y.ts = x.ts;
    y.origin_index = x.origin_index;
    y.samples.resize(x.size());
    const double w = 2.0 * pi * mu.nu2 * x.ts;
    for (std::int64_t n = 0; n < L; ++n) {
        const double t_idx = static_cast<double>(n - x.origin_index);
        const cplx rot(std::cos(w * t_idx), std::sin(w * t_idx));
        y.samples[static_cast<std::size_t>(n)] =
            rot * x.samples[static_cast<std::size_t>(mod_floor(n - d, L))];
    }
    return y;
}

/// A_{g,gamma}(mu) = <g, S_mu gamma> evaluated by direct summation.
inline cplx cross_ambiguity(const SampledSignal& g, const SampledSignal& gamma,
                            const TFOffset& mu) {
    if (g.size() != gamma.size())
        throw std::invalid_argument("cross_ambiguity: signal length mismatch");
    if (g.ts != gamma.ts)
        throw std::invalid_argument("cross_ambiguity: sampling interval mismatch");
    if (g.origin_index != gamma.origin_index)
        throw std::invalid_argument("cross_ambiguity: origin mismatch");
    const std::int64_t L = static_cast<std::int64_t>(g.size());
    const std::int64_t d = detail::to_samples(mu.nu1, g.ts, "cross_ambiguity");
    const double w = 2.0 * pi * mu.nu2 * g.ts;
    cplx acc = 0.0;
    for (std::int64_t n = 0; n < L; ++n) {
        const double t_idx = static_cast<double>(n - g.origin_index);
        const cplx rot(std::cos(w * t_idx), std::sin(w * t_idx));
        acc += std::conj(g.samples[static_cast<std::size_t>(n)]) * rot *
               gamma.samples[static_cast<std::size_t>(mod_floor(n - d, L))];
    }
    return acc;
}

/// Cross-ambiguity evaluated at every point of the lattice torus, i.e.
/// A(k a ts, l b / (L ts)) for k in [0, L/a), l in [0, L/b), where a is the
/// lattice time step in samples and b its frequency step in DFT bins.
/// Requires a | L and b | L. Row k, column l of the result.
inline std::vector<cvec> ambiguity_on_lattice(const SampledSignal& g,
                                              const SampledSignal& gamma,
                                              const Lattice& lat) {
    if (g.size() != gamma.size() || g.ts != gamma.ts ||
        g.origin_index != gamma.origin_index)
        throw std::invalid_argument("ambiguity_on_lattice: signal mismatch");
    const std::int64_t L = static_cast<std::int64_t>(g.size());
    const std::int64_t a = detail::to_samples(lat.t_step, g.ts, "ambiguity_on_lattice");
    const double bins = lat.f_step * g.ts * static_cast<double>(L);
    const std::int64_t b = static_cast<std::int64_t>(std::round(bins));
    if (std::abs(bins - static_cast<double>(b)) > 1e-6)
        throw std::invalid_argument(
            "ambiguity_on_lattice: frequency step is not an integer number of DFT bins");
    if (a <= 0 || b <= 0 || L % a != 0 || L % b != 0)
        throw std::invalid_argument(
            "ambiguity_on_lattice: lattice steps must divide the signal length");
    const std::int64_t n_time = L / a;
    const std::int64_t n_freq = L / b;
    std::vector<cvec> out(static_cast<std::size_t>(n_time));
    cvec w(static_cast<std::size_t>(L));
    for (std::int64_t k = 0; k < n_time; ++k) {
        for (std::int64_t n = 0; n < L; ++n)
            w[static_cast<std::size_t>(n)] =
                std::conj(g.samples[static_cast<std::size_t>(n)]) *
                gamma.samples[static_cast<std::size_t>(mod_floor(n - k * a, L))];
        const cvec spectrum = fft(w);
        cvec row(static_cast<std::size_t>(n_freq));
        for (std::int64_t l = 0; l < n_freq; ++l) {
            // <g, S gamma> needs the +l*b frequency component, i.e. DFT bin
            // -l*b, with the modulation referenced to the signal origin.
            const cplx val = spectrum[static_cast<std::size_t>(mod_floor(-l * b, L))];
            const double ph = -2.0 * pi * static_cast<double>(l * b) *
                              static_cast<double>(g.origin_index) / static_cast<double>(L);
            row[static_cast<std::size_t>(l)] = val * cplx(std::cos(ph), std::sin(ph));
        }
        out[static_cast<std::size_t>(k)] = std::move(row);
    }
    return out;
}

/// Gram matrix of the system: G(m, n) = <gamma_m, gamma_n> over the index set.
inline Eigen::MatrixXcd gram_matrix(const GaborSystem& sys) {
    const std::int64_t L = static_cast<std::int64_t>(sys.prototype.size());
    const std::int64_t a = sys.time_step_samples();
    const double wstep = 2.0 * pi * sys.lattice.f_step * sys.prototype.ts;
    const auto& idx = sys.index_set;
    const auto& p = sys.prototype.samples;
    const std::int64_t o = sys.prototype.origin_index;
    const Eigen::Index m_count = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd gram(m_count, m_count);
    for (Eigen::Index i = 0; i < m_count; ++i) {
        for (Eigen::Index j = i; j < m_count; ++j) {
            const LatticeIndex mi = idx[static_cast<std::size_t>(i)];
            const LatticeIndex mj = idx[static_cast<std::size_t>(j)];
            const double w = wstep * static_cast<double>(mj.n2 - mi.n2);
            cplx acc = 0.0;
            for (std::int64_t n = 0; n < L; ++n) {
                const cplx gi = p[static_cast<std::size_t>(mod_floor(n - mi.n1 * a, L))];
                const cplx gj = p[static_cast<std::size_t>(mod_floor(n - mj.n1 * a, L))];
                const double t_idx = static_cast<double>(n - o);
                // conj(e^{i w_i t} gi) * e^{i w_j t} gj with w_j - w_i = w
                const cplx rot(std::cos(w * t_idx), std::sin(w * t_idx));
                acc += std::conj(gi) * rot * gj;
            }
            gram(i, j) = acc;
            gram(j, i) = std::conj(acc);
        }
    }
    return gram;
}

struct FrameBounds {
    double lower = 0.0;  ///< A
    double upper = 0.0;  ///< B
    bool is_frame() const { return lower >= frame_ratio_floor * upper && lower > 0.0; }
};

namespace detail {

/// Extremal eigenvalues of a Hermitian PSD operator by plain (three-term)
/// Lanczos. Extreme Ritz values of the growing tridiagonal matrix are
/// monitored until both ends stabilize. Loss of orthogonality only duplicates
/// converged extreme values, which is harmless for bound estimation.
template <typename Apply>
FrameBounds lanczos_extremes(const Apply& apply, std::size_t dim, double tol,
                             std::size_t max_iter, std::uint64_t seed = 7u) {
    Rng rng(seed);
    cvec v(dim), v_prev(dim, 0.0), w;
    for (cplx& x : v) x = rng.cgaussian();
    normalize_l2(v);

    std::vector<double> alpha, beta;  // beta[j] couples step j and j+1
    double lo_prev = 0.0, hi_prev = 0.0;
    std::size_t stable = 0;
    FrameBounds out;

    for (std::size_t j = 0; j < max_iter; ++j) {
        apply(v, w);
        if (j > 0) {
            const double b = beta.back();
            for (std::size_t n = 0; n < dim; ++n) w[n] -= b * v_prev[n];
        }
        const double a = inner_product(v, w).real();
        alpha.push_back(a);
        for (std::size_t n = 0; n < dim; ++n) w[n] -= a * v[n];
        const double b_next = l2_norm(w);

        // Ritz values of the current tridiagonal section.
        const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
        Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
        for (Eigen::Index i = 0; i < m; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
        for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()(0);
        const double hi = es.eigenvalues()(m - 1);
        out.lower = std::max(lo, 0.0);
        out.upper = hi;

        const double scale = std::max(std::abs(hi), 1e-300);
        if (j > 0 && std::abs(lo - lo_prev) <= tol * scale &&
            std::abs(hi - hi_prev) <= tol * scale) {
            if (++stable >= 3) return out;
        } else {
            stable = 0;
        }
        lo_prev = lo;
        hi_prev = hi;

        if (b_next <= 1e-14 * std::max(scale, 1.0)) return out;  // invariant subspace
        if (alpha.size() >= dim) return out;                     // exhausted the space
        beta.push_back(b_next);
        v_prev = v;
        for (std::size_t n = 0; n < dim; ++n) v[n] = w[n] / b_next;
    }
    return out;
}

}  // namespace detail

/// Bessel bound of the system: the largest eigenvalue of its Gram matrix.
inline double bessel_bound(const GaborSystem& sys, double tol = 1e-8) {
    const Eigen::MatrixXcd gram = gram_matrix(sys);
    const std::size_t dim = static_cast<std::size_t>(gram.rows());
    auto apply = [&gram](const cvec& x, cvec& y) {
        Eigen::Map<const Eigen::VectorXcd> xm(x.data(), static_cast<Eigen::Index>(x.size()));
        y.resize(x.size());
        Eigen::Map<Eigen::VectorXcd> ym(y.data(), static_cast<Eigen::Index>(y.size()));
        ym = gram * xm;
    };
    const std::size_t cap = std::min<std::size_t>(dim, 10 * sys.index_set.size());
    return detail::lanczos_extremes(apply, dim, tol, std::max<std::size_t>(cap, 2)).upper;
}

/// Frame operator of the full Gabor system on a separable lattice with time
/// step `a` samples and frequency step `b` DFT bins; requires a | L and b | L.
class FrameOperator {
public:
    FrameOperator(cvec prototype, std::int64_t a_samples, std::int64_t b_bins)
        : g_(std::move(prototype)), a_(a_samples), b_(b_bins) {
        const std::int64_t L = static_cast<std::int64_t>(g_.size());
        if (a_ <= 0 || b_ <= 0 || L % a_ != 0 || L % b_ != 0)
            throw std::invalid_argument(
                "FrameOperator: lattice steps must be positive divisors of the length");
        n_time_ = L / a_;
        n_mod_ = L / b_;  // distinct modulations; also the fold length
    }

    std::size_t dim() const { return g_.size(); }
    std::int64_t time_shifts() const { return n_time_; }
    std::int64_t modulations() const { return n_mod_; }

    /// y = S x with S f = sum_{k,m} <g_{k,m}, f> g_{k,m}. Summing the
    /// synthesis over the complete set of L/b modulations collapses the
    /// per-shift analysis/synthesis transform pair into M-periodization of the
    /// windowed signal scaled by M (Walnut representation), so no transforms
    /// are needed.
    void apply(const cvec& x, cvec& y) const {
        const std::int64_t L = static_cast<std::int64_t>(g_.size());
        const std::int64_t M = n_mod_;
        y.assign(g_.size(), 0.0);
        cvec folded(static_cast<std::size_t>(M));
        for (std::int64_t k = 0; k < n_time_; ++k) {
            const std::int64_t shift = k * a_;
            std::fill(folded.begin(), folded.end(), cplx(0.0));
            for (std::int64_t n = 0; n < L; ++n) {
                const cplx gv = g_[static_cast<std::size_t>(mod_floor(n - shift, L))];
                folded[static_cast<std::size_t>(n % M)] +=
                    std::conj(gv) * x[static_cast<std::size_t>(n)];
            }
            const double m_gain = static_cast<double>(M);
            for (std::int64_t n = 0; n < L; ++n) {
                const cplx gv = g_[static_cast<std::size_t>(mod_floor(n - shift, L))];
                y[static_cast<std::size_t>(n)] +=
                    m_gain * folded[static_cast<std::size_t>(n % M)] * gv;
            }
        }
    }

private:
    cvec g_;
    std::int64_t a_, b_, n_time_ = 0, n_mod_ = 0;
};

namespace detail {

inline FrameOperator make_frame_operator(const SampledSignal& prototype,
                                         const Lattice& lat, const char* what) {
    const std::int64_t L = static_cast<std::int64_t>(prototype.size());
    const std::int64_t a = to_samples(lat.t_step, prototype.ts, what);
    const double bins = lat.f_step * prototype.ts * static_cast<double>(L);
    const std::int64_t b = static_cast<std::int64_t>(std::round(bins));
    if (std::abs(bins - static_cast<double>(b)) > 1e-6)
        throw std::invalid_argument(std::string(what) +
                                    ": frequency step is not an integer number of DFT bins");
    return FrameOperator(prototype.samples, a, b);
}

}  // namespace detail

/// Extremal eigenvalues (A, B) of the frame operator of the full Gabor system
/// G(prototype, lattice) on the periodized axis.
inline FrameBounds frame_bounds(const SampledSignal& prototype, const Lattice& lat,
                                double tol = 1e-8, std::size_t max_iter = 400) {
    const FrameOperator op = detail::make_frame_operator(prototype, lat, "frame_bounds");
    auto apply = [&op](const cvec& x, cvec& y) { op.apply(x, y); };
    return detail::lanczos_extremes(apply, op.dim(), tol, max_iter);
}

/// Canonical biorthogonal (dual) pulse of `prototype` for signaling on `lat`:
/// the frame operator of the prototype on the adjoint lattice is inverted by
/// conjugate gradients and the result scaled so <prototype, dual> = 1, making
/// <S_m prototype, S_n dual> = delta_{mn} across the signaling lattice.
inline SampledSignal dual_pulse(const SampledSignal& prototype, const Lattice& lat,
                                double cg_tol = 1e-12, std::size_t cg_max_iter = 20000) {
    const Lattice adj = lat.adjoint();
    const FrameOperator op = detail::make_frame_operator(prototype, adj, "dual_pulse");

    const FrameBounds fb = frame_bounds(prototype, adj);
    if (!fb.is_frame())
        throw numeric_error(
            "dual_pulse: prototype is not a frame on the adjoint lattice "
            "(A = " + format_double(fb.lower) + ", B = " + format_double(fb.upper) +
            "); the system admits no biorthogonal pulse");

    const cvec& b = prototype.samples;
    const double b_norm = l2_norm(b);
    cvec x(b.size(), 0.0), r = b, p = b, sp;
    double rs = squared_norm(r);
    const double target = cg_tol * b_norm;
    std::size_t it = 0;
    while (std::sqrt(rs) > target) {
        if (++it > cg_max_iter)
            throw numeric_error("dual_pulse: conjugate gradients failed to reach " +
                                format_double(cg_tol) + " (condition estimate " +
                                format_double(fb.upper / std::max(fb.lower, 1e-300)) + ")");
        op.apply(p, sp);
        const double denom = inner_product(p, sp).real();
        if (!(denom > 0.0))
            throw numeric_error("dual_pulse: operator lost positive definiteness");
        const double alpha = rs / denom;
        for (std::size_t n = 0; n < x.size(); ++n) {
            x[n] += alpha * p[n];
            r[n] -= alpha * sp[n];
        }
        const double rs_next = squared_norm(r);
        const double beta = rs_next / rs;
        rs = rs_next;
        for (std::size_t n = 0; n < p.size(); ++n) p[n] = r[n] + beta * p[n];
    }

    const cplx gain = inner_product(b, x);
    if (std::abs(gain) < 1e-300)
        throw numeric_error("dual_pulse: degenerate prototype/dual pairing");
    scale_in_place(x, 1.0 / gain);
    return SampledSignal(std::move(x), prototype.ts, prototype.origin_index);
}

/// Closed-form cross-ambiguity of the unit-norm CP-OFDM pulse pair: transmit
/// rect (T_u + T_cp long, CP ahead of the payload) against the CP-discarding
/// receive rect (T_u long), both with unit discrete L2 norm. Evaluated as the
/// exact discrete (geometric) sum on the sampling grid ts, whose continuous
/// limit is the familiar shifted-sinc expression. At nu = 0 the value is
/// sqrt(eps) with eps = T_u / (T_u + T_cp).
inline cplx cp_ofdm_ambiguity(const TFOffset& nu, double T_u, double T_cp, double ts) {
    const std::int64_t N_u = detail::to_samples(T_u, ts, "cp_ofdm_ambiguity");
    const std::int64_t N_cp = detail::to_samples(T_cp, ts, "cp_ofdm_ambiguity");
    if (N_u <= 0 || N_cp < 0)
        throw std::invalid_argument("cp_ofdm_ambiguity: invalid durations");
    const std::int64_t d = detail::to_samples(nu.nu1, ts, "cp_ofdm_ambiguity");

    // Piecewise delay map: delays inside the CP are absorbed entirely.
    std::int64_t d_cp;
    if (d <= 0)
        d_cp = d;
    else if (d < N_cp)
        d_cp = 0;
    else
        d_cp = d - N_cp;

    const std::int64_t overlap = N_u - std::llabs(d_cp);
    if (overlap <= 0) return 0.0;

    // Overlap window in receive-pulse coordinates.
    const std::int64_t n_lo = (d >= 0) ? std::max<std::int64_t>(0, d - N_cp) : 0;
    const double theta = 2.0 * pi * nu.nu2 * ts;

    cplx dirichlet;
    if (std::abs(std::sin(0.5 * theta)) < 1e-300) {
        dirichlet = static_cast<double>(overlap);
    } else {
        const double mag = std::sin(0.5 * theta * static_cast<double>(overlap)) /
                           std::sin(0.5 * theta);
        const double ph = 0.5 * theta * static_cast<double>(overlap - 1);
        dirichlet = mag * cplx(std::cos(ph), std::sin(ph));
    }
    const double ph_lo = theta * static_cast<double>(n_lo);
    const cplx start(std::cos(ph_lo), std::sin(ph_lo));
    const double scale =
        1.0 / std::sqrt(static_cast<double>(N_u) * static_cast<double>(N_u + N_cp));
    return scale * start * dirichlet;
}

}  // namespace bfdm
