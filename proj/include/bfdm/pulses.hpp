// SPDX-License-Identifier: Apache-2.0
//
// Concrete pulse families for multicarrier signaling: the CP-OFDM rectangle
// pair, the truncated sinc^2 pulse (whose Fourier transform is the
// second-order B-spline tent) with width parameter alpha, the analytic
// frame-region classifier for the tent prototype, and the Bessel-bound sweep
// over alpha.
//
// Pair normalization convention: PulsePair.rx has unit L2 norm and
// PulsePair.tx is scaled so that <tx, rx> = 1; together with lattice
// biorthogonality this makes <tx_m, rx_n> = delta_mn exactly, so a matched
// chain has unity gain without per-subcarrier equalization.

#pragma once

#include <utility>

#include "bfdm/gabor.hpp"

namespace bfdm {

/// Tent function: the convolution of the unit box with itself. Support
/// [-1, 1], peak 1 at 0, piecewise linear.
inline double b2_frequency_prototype(double f) {
    const double v = 1.0 - std::abs(f);
    return v > 0.0 ? v : 0.0;
}

/// Parameters of the truncated sinc^2 pulse. In time the pulse is
/// g(t) = [sin(pi alpha B t) / (pi alpha B t)]^2 restricted to [c, d]; its
/// transform is the tent of half-width alpha*B, so alpha widens the pulse in
/// frequency (and narrows it in time). Zeros fall at t = k/(alpha B).
struct SplineParams {
    double bandwidth = 0.0;  ///< B in hertz; set equal to the subcarrier spacing
    double alpha = 1.0;      ///< dimensionless width scale
    double c = 0.0;          ///< truncation window start, seconds (c < 0)
    double d = 0.0;          ///< truncation window end, seconds (d > 0)

    void validate() const {
        if (!(bandwidth > 0.0)) throw config_error("SplineParams: bandwidth must be > 0");
        if (!(alpha > 0.0)) throw config_error("SplineParams: alpha must be > 0");
        if (!(c < 0.0 && d > 0.0))
            throw config_error("SplineParams: truncation window must straddle t = 0");
    }
};

/// Sampled, truncated, unit-L2-norm sinc^2 pulse on a circular frame of
/// `frame_len` samples. Sample 0 sits at time c; the peak (value 1 before
/// normalization) sits at t = 0.
inline SampledSignal spline_time_pulse(const SplineParams& p, double ts,
                                       std::int64_t frame_len) {
    p.validate();
    if (!(ts > 0.0)) throw config_error("spline_time_pulse: ts must be > 0");
    if (static_cast<double>(frame_len) * ts < (p.d - p.c) - 0.5 * ts)
        throw config_error("spline_time_pulse: truncation window exceeds the frame");
    const std::int64_t origin = std::llround(-p.c / ts);
    cvec g(static_cast<std::size_t>(frame_len), cplx(0.0));
    for (std::int64_t n = 0; n < frame_len; ++n) {
        const double t = static_cast<double>(n - origin) * ts;
        if (t < p.c || t > p.d) continue;
        const double x = p.alpha * p.bandwidth * t;
        const double s = (x == 0.0) ? 1.0 : std::sin(pi * x) / (pi * x);
        g[static_cast<std::size_t>(n)] = s * s;
    }
    normalize_l2(g);
    return SampledSignal(std::move(g), ts, origin);
}

/// A biorthogonal transmit/receive pulse pair on a signaling lattice.
struct PulsePair {
    SampledSignal tx;  ///< g: what the modulator shifts and sums
    SampledSignal rx;  ///< gamma: what the demodulator projects onto; unit norm
    Lattice lattice;
    bool rect_form = false;  ///< true for the CP-OFDM rectangle pair
    double T_u = 0.0;        ///< payload duration (rect pairs), seconds
    double T_cp = 0.0;       ///< prefix duration (rect pairs), seconds

    /// <rx, S_mu tx>, normalized so the value at mu = 0 is exactly 1.
    /// Rectangle pairs use the exact closed form; general pairs sum directly.
    cplx ambiguity(const TFOffset& mu) const {
        if (rect_form) {
            const double eps = T_u / (T_u + T_cp);
            return cp_ofdm_ambiguity(mu, T_u, T_cp, tx.ts) / std::sqrt(eps);
        }
        return cross_ambiguity(rx, tx, mu);
    }

    /// ||tx||^2; exceeds 1 for any pair with a true prefix or nontrivial dual.
    double tx_energy() const { return squared_norm(tx.samples); }
};

/// CP-OFDM rectangle pair: tx = (1/sqrt(N_u)) on [-T_cp, T_u), rx =
/// (1/sqrt(N_u)) on [0, T_u), centered on a circular frame of `frame_len`
/// samples (default 3 N_u). frame_len must be a multiple of N_u so that the
/// subcarrier spacing 1/T_u lands on the frame's DFT grid.
inline PulsePair rect_pair(double T_u, double T_cp, double ts,
                           std::int64_t frame_len = 0) {
    const std::int64_t N_u = detail::to_samples(T_u, ts, "rect_pair");
    const std::int64_t N_cp = detail::to_samples(T_cp, ts, "rect_pair");
    if (N_u <= 0 || N_cp < 0) throw config_error("rect_pair: invalid durations");
    if (frame_len == 0) frame_len = 3 * N_u;
    if (frame_len % N_u != 0)
        throw config_error("rect_pair: frame length must be a multiple of the payload");
    if (frame_len < N_u + N_cp)
        throw config_error("rect_pair: frame shorter than the extended pulse");

    const std::int64_t cp_start = (frame_len - N_u - N_cp) / 2;
    const std::int64_t origin = cp_start + N_cp;
    const double amp = 1.0 / std::sqrt(static_cast<double>(N_u));
    cvec txv(static_cast<std::size_t>(frame_len), cplx(0.0)), rxv = txv;
    for (std::int64_t n = cp_start; n < cp_start + N_cp + N_u; ++n)
        txv[static_cast<std::size_t>(n)] = amp;
    for (std::int64_t n = origin; n < origin + N_u; ++n)
        rxv[static_cast<std::size_t>(n)] = amp;

    PulsePair pair;
    pair.tx = SampledSignal(std::move(txv), ts, origin);
    pair.rx = SampledSignal(std::move(rxv), ts, origin);
    pair.lattice = Lattice((T_u + T_cp), 1.0 / T_u);
    pair.rect_form = true;
    pair.T_u = T_u;
    pair.T_cp = T_cp;
    return pair;
}

/// Spline pair: unit-norm truncated sinc^2 prototype as transmit shape and
/// its canonical biorthogonal pulse on `lat` as receive shape, renormalized
/// to the pair convention (rx unit norm, <tx, rx> = 1).
inline PulsePair make_spline_pair(const SplineParams& p, double ts,
                                  std::int64_t frame_len, const Lattice& lat) {
    SampledSignal proto = spline_time_pulse(p, ts, frame_len);
    SampledSignal dual = dual_pulse(proto, lat);
    const double s = l2_norm(dual.samples);
    scale_in_place(dual.samples, 1.0 / s);
    scale_in_place(proto.samples, s);
    PulsePair pair;
    pair.tx = std::move(proto);
    pair.rx = std::move(dual);
    pair.lattice = lat;
    return pair;
}

enum class FrameRegion { Frame, NotFrame, Indeterminate };

/// Analytic classification of the tent prototype's Gabor system on the
/// normalized lattice (a, b): known-frame region a < 2, b <= 1/2 with the
/// tabulated extension 1.1 <= a <= 1.9, b <= 1/a; known-failure region a >= 2
/// (any b > 0) or integer b > 1 (any a). Everything else is Indeterminate.
inline FrameRegion classify_frame_region(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw config_error("classify_frame_region: lattice parameters must be positive");
    const double b_round = std::round(b);
    const bool b_integer = std::abs(b - b_round) < 1e-9;
    if (a >= 2.0) return FrameRegion::NotFrame;
    if (b_integer && b_round >= 2.0) return FrameRegion::NotFrame;
    if (b <= 0.5) return FrameRegion::Frame;
    if (a >= 1.1 && a <= 1.9 && b <= 1.0 / a) return FrameRegion::Frame;
    return FrameRegion::Indeterminate;
}

/// Upper frame (Bessel) bound of the unit-norm spline transmit system on
/// `lattice`, swept over pulse widths. The truncation window is the full
/// frame, centered. Output sorted by alpha.
inline std::vector<std::pair<double, double>> bessel_vs_alpha(
    std::vector<double> alphas, const Lattice& lattice, double ts,
    std::int64_t frame_len) {
    std::sort(alphas.begin(), alphas.end());
    const double half = 0.5 * static_cast<double>(frame_len) * ts;
    std::vector<std::pair<double, double>> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw config_error("bessel_vs_alpha: alpha must be > 0");
        SplineParams p;
        p.bandwidth = lattice.f_step;
        p.alpha = alpha;
        p.c = -half;
        p.d = half;
        SampledSignal g = spline_time_pulse(p, ts, frame_len);
        out.emplace_back(alpha, frame_bounds(g, lattice).upper);
    }
    return out;
}

}  // namespace bfdm
