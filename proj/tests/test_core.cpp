// SPDX-License-Identifier: Apache-2.0
//
// Tests for the foundation layer: value types, FFT wrapper, deterministic
// RNG, CSV serialization, lattice bookkeeping and the parallel loop.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "bfdm/fft.hpp"
#include "bfdm/io.hpp"
#include "bfdm/lattice.hpp"
#include "bfdm/parallel.hpp"
#include "bfdm/rng.hpp"
#include "bfdm/types.hpp"

using namespace bfdm;

TEST_CASE("mod_floor is the Euclidean remainder") {
    CHECK(mod_floor(5, 8) == 5);
    CHECK(mod_floor(8, 8) == 0);
    CHECK(mod_floor(-1, 8) == 7);
    CHECK(mod_floor(-8, 8) == 0);
    CHECK(mod_floor(-17, 8) == 7);
    CHECK(mod_floor(0, 3) == 0);
}

TEST_CASE("inner product conjugates its first argument") {
    cvec x = {cplx(0.0, 1.0), cplx(2.0, 0.0)};
    cvec y = {cplx(1.0, 0.0), cplx(0.0, 3.0)};
    // conj(i)*1 + conj(2)*3i = -i + 6i = 5i
    cplx v = inner_product(x, y);
    CHECK(v.real() == Catch::Approx(0.0).margin(1e-15));
    CHECK(v.imag() == Catch::Approx(5.0).margin(1e-15));
    CHECK(inner_product(x, x).real() == Catch::Approx(squared_norm(x)));
    CHECK(inner_product(x, x).imag() == Catch::Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(inner_product(x, cvec{cplx(1.0)}), std::invalid_argument);
}

TEST_CASE("normalize_l2 produces unit vectors and rejects zero") {
    cvec x = {cplx(3.0, 0.0), cplx(0.0, 4.0)};
    normalize_l2(x);
    CHECK(l2_norm(x) == Catch::Approx(1.0).epsilon(1e-14));
    cvec z = {cplx(0.0), cplx(0.0)};
    CHECK_THROWS_AS(normalize_l2(z), numeric_error);
}

TEST_CASE("SampledSignal validates its invariants") {
    CHECK_THROWS_AS(SampledSignal(cvec{}, 1.0), config_error);
    CHECK_THROWS_AS(SampledSignal(cvec{cplx(1.0)}, 0.0), config_error);
    SampledSignal s(cvec(8, cplx(1.0)), 0.5, 2);
    CHECK(s.duration() == Catch::Approx(4.0));
    CHECK(s.time_of(2) == Catch::Approx(0.0));
    CHECK(s.time_of(5) == Catch::Approx(1.5));
    CHECK(s.time_of(0) == Catch::Approx(-1.0));
}

TEST_CASE("fft basics: impulse, tone, round trip, Parseval") {
    const std::size_t N = 32;

    cvec delta(N, cplx(0.0));
    delta[0] = 1.0;
    cvec D = fft(delta);
    for (std::size_t k = 0; k < N; ++k) {
        CHECK(D[k].real() == Catch::Approx(1.0).margin(1e-13));
        CHECK(D[k].imag() == Catch::Approx(0.0).margin(1e-13));
    }

    // x[n] = exp(+2 pi i 3 n / N) concentrates on bin 3 with weight N.
    cvec tone(N);
    for (std::size_t n = 0; n < N; ++n) {
        double ph = 2.0 * pi * 3.0 * static_cast<double>(n) / static_cast<double>(N);
        tone[n] = cplx(std::cos(ph), std::sin(ph));
    }
    cvec T = fft(tone);
    CHECK(std::abs(T[3] - cplx(static_cast<double>(N), 0.0)) < 1e-11);
    for (std::size_t k = 0; k < N; ++k)
        if (k != 3) CHECK(std::abs(T[k]) < 1e-11);

    Rng rng(123);
    cvec x(N);
    for (cplx& v : x) v = rng.cgaussian();
    cvec back = ifft(fft(x));
    for (std::size_t n = 0; n < N; ++n) CHECK(std::abs(back[n] - x[n]) < 1e-13);
    CHECK(squared_norm(fft(x)) ==
          Catch::Approx(static_cast<double>(N) * squared_norm(x)).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and well distributed") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);

    CHECK(substream_seed(7, 0) != substream_seed(7, 1));
    CHECK(substream_seed(7, 0) != substream_seed(8, 0));

    Rng r(2024);
    const int N = 200000;
    double sum = 0.0, sum2 = 0.0, cmod = 0.0;
    double umin = 1.0, umax = 0.0;
    for (int i = 0; i < N; ++i) {
        double g = r.gaussian();
        sum += g;
        sum2 += g * g;
        cmod += std::norm(r.cgaussian());
        double u = r.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
    }
    CHECK(std::abs(sum / N) < 0.01);
    CHECK(sum2 / N == Catch::Approx(1.0).margin(0.02));
    CHECK(cmod / N == Catch::Approx(1.0).margin(0.02));
    CHECK(umin >= 0.0);
    CHECK(umax < 1.0);

    for (int i = 0; i < 1000; ++i) CHECK(r.uniform_int(6) < 6);
}

TEST_CASE("signal CSV round trip") {
    Rng rng(5);
    cvec x(17);
    for (cplx& v : x) v = rng.cgaussian();
    std::string text = signal_to_csv(x);
    std::istringstream in(text);
    cvec y = signal_from_csv(in);
    REQUIRE(y.size() == x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        CHECK(std::abs(y[n] - x[n]) < 1e-11 * (1.0 + std::abs(x[n])));
    // Serialization of the parsed signal reproduces the text byte for byte.
    CHECK(signal_to_csv(y) == text);

    std::istringstream bad("index,re,im\n0,1.0\n");
    CHECK_THROWS_AS(signal_from_csv(bad), config_error);
    std::istringstream sparse("index,re,im\n1,1.0,0.0\n");
    CHECK_THROWS_AS(signal_from_csv(sparse), config_error);
}

TEST_CASE("result rows serialize with stable header and schema") {
    ResultRow row;
    row.experiment = "ici";
    row.waveform = "bfdm";
    row.x_name = "offset";
    row.x_value = 0.25;
    row.metric = "power";
    row.value = 1.5e-3;
    row.trials = 10;
    row.seed = 99;
    std::string csv = rows_to_csv({row});
    CHECK(csv.rfind(result_csv_header(), 0) == 0);
    CHECK(csv.find("1,ici,bfdm,offset,0.25,") != std::string::npos);
    CHECK(csv.find(",power,0.0015,10,99\n") != std::string::npos);
}

TEST_CASE("lattice adjoint swaps and inverts the steps") {
    Lattice lat(2.0e-3, 750.0);
    CHECK(lat.tf_product() == Catch::Approx(1.5));
    Lattice adj = lat.adjoint();
    CHECK(adj.t_step == Catch::Approx(1.0 / 750.0));
    CHECK(adj.f_step == Catch::Approx(500.0));
    CHECK(adj.tf_product() == Catch::Approx(1.0 / 1.5));
    CHECK_THROWS_AS(Lattice(0.0, 1.0), config_error);
    CHECK_THROWS_AS(Lattice(1.0, -2.0), config_error);
}

TEST_CASE("gabor system demands sample-exact time steps") {
    SampledSignal proto(cvec(16, cplx(1.0)), 0.5);
    CHECK_NOTHROW(GaborSystem(proto, Lattice(2.0, 0.125), one_slot_indices(4)));
    CHECK_THROWS_AS(GaborSystem(proto, Lattice(0.75, 0.125), one_slot_indices(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(GaborSystem(proto, Lattice(2.0, 0.125), {}), config_error);
    GaborSystem sys(proto, Lattice(2.0, 0.125), grid_indices(3, 4, -2));
    CHECK(sys.time_step_samples() == 4);
    REQUIRE(sys.index_set.size() == 12);
    CHECK(sys.index_set[0].n1 == 0);
    CHECK(sys.index_set[0].n2 == -2);
    CHECK(sys.index_set[11].n1 == 2);
    CHECK(sys.index_set[11].n2 == 1);
}

TEST_CASE("parallel_for covers every index exactly once") {
    const std::size_t n = 1000;
    std::vector<double> out(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        out[i] = static_cast<double>(i) * static_cast<double>(i);
    });
    for (std::size_t i = 0; i < n; ++i)
        REQUIRE(out[i] == static_cast<double>(i) * static_cast<double>(i));
}

TEST_CASE("thread count honors the environment override") {
    setenv("BFDM_THREADS", "3", 1);
    CHECK(thread_count() == 3u);
    unsetenv("BFDM_THREADS");
    CHECK(thread_count() >= 1u);
}
