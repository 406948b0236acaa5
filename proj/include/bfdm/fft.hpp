// SPDX-License-Identifier: Apache-2.0
//
// Thin RAII layer over FFTW double-precision complex transforms with a
// process-wide plan cache. Plans are created with FFTW_ESTIMATE|FFTW_UNALIGNED
// so they can be executed on arbitrary std::vector buffers.

#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>

#include "bfdm/types.hpp"

namespace bfdm {
namespace detail {

class FftPlanCache {
public:
    static FftPlanCache& instance() {
        static FftPlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        cvec dummy(n);
        fftw_plan p = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(dummy.data()),
            reinterpret_cast<fftw_complex*>(dummy.data()),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw numeric_error("FFTW plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    ~FftPlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    FftPlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute_dft(const cvec& in, cvec& out, int sign) {
    if (in.empty()) throw std::invalid_argument("fft: empty input");
    out.resize(in.size());
    fftw_plan p = FftPlanCache::instance().get(in.size(), sign);
    // FFTW's execute-on-new-arrays API; in/out aliasing is allowed for 1d DFTs
    // only when in == out, which we avoid by copying first if needed.
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace detail

/// Unnormalized forward DFT: X[k] = sum_n x[n] exp(-2 pi i k n / N).
inline cvec fft(const cvec& x) {
    cvec out;
    detail::execute_dft(x, out, FFTW_FORWARD);
    return out;
}

/// Unnormalized inverse DFT: x[n] = sum_k X[k] exp(+2 pi i k n / N).
inline cvec ifft_unscaled(const cvec& x) {
    cvec out;
    detail::execute_dft(x, out, FFTW_BACKWARD);
    return out;
}

/// Inverse DFT scaled by 1/N, so ifft(fft(x)) == x.
inline cvec ifft(const cvec& x) {
    cvec out = ifft_unscaled(x);
    scale_in_place(out, 1.0 / static_cast<double>(x.size()));
    return out;
}

}  // namespace bfdm
