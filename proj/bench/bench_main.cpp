// Timing comparison between the serial reference paths and the OpenMP paths.
// Also asserts that both produce identical results, since the parallel code
// is only trustworthy if it never changes the numbers.

#include <chrono>
#include <cstdio>
#include <functional>

#include "noisegain/field.hpp"
#include "noisegain/normlip.hpp"
#include "noisegain/pooling.hpp"
#include "noisegain/stemgain.hpp"

using namespace noisegain;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

void report(const char* name, double value_serial, double value_parallel, double ms_serial,
            double ms_parallel) {
    const bool identical = value_serial == value_parallel;
    std::printf("%-28s %10.3f ms %10.3f ms %7.2fx   %s\n", name, ms_serial, ms_parallel,
                ms_serial / ms_parallel, identical ? "identical" : "MISMATCH");
    if (!identical) {
        std::printf("  serial=%.17g parallel=%.17g\n", value_serial, value_parallel);
    }
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        double vs = 0.0;
        double vp = 0.0;
        const Kernel k = make_box_kernel(4);
        const double ms = time_ms(
            [&] { vs = stem_gain_monte_carlo(k, 512, 512, 1.0, 16, {1, 0}, Exec::serial).mean; },
            3);
        const double mp = time_ms(
            [&] { vp = stem_gain_monte_carlo(k, 512, 512, 1.0, 16, {1, 0}, Exec::parallel).mean; },
            3);
        report("stem gain MC (512^2 x16)", vs, vp, ms, mp);
    }
    {
        double vs = 0.0;
        double vp = 0.0;
        const DownsampleOp op = DownsampleOp::box(4);
        const double ms = time_ms(
            [&] {
                vs = downsample_gain_monte_carlo(op, 512, 512, 1.0, 16, {2, 0}, Exec::serial)
                         .mean;
            },
            3);
        const double mp = time_ms(
            [&] {
                vp = downsample_gain_monte_carlo(op, 512, 512, 1.0, 16, {2, 0}, Exec::parallel)
                         .mean;
            },
            3);
        report("downsample gain MC", vs, vp, ms, mp);
    }
    {
        double vs = 0.0;
        double vp = 0.0;
        const PoolWindow w = PoolWindow::uniform(36);
        const double ms = time_ms(
            [&] {
                vs = pool_error_monte_carlo(w, 1.0, PoolType::max, 200000, {3, 0}, 0,
                                            Exec::serial)
                         .mse;
            },
            3);
        const double mp = time_ms(
            [&] {
                vp = pool_error_monte_carlo(w, 1.0, PoolType::max, 200000, {3, 0}, 0,
                                            Exec::parallel)
                         .mse;
            },
            3);
        report("pool error MC (k=36, 2e5)", vs, vp, ms, mp);
    }
    {
        double vs = 0.0;
        double vp = 0.0;
        const double ms = time_ms(
            [&] { vs = abs_max_second_moment_mc(100, 1000000, {4, 0}, Exec::serial).mean; }, 3);
        const double mp = time_ms(
            [&] { vp = abs_max_second_moment_mc(100, 1000000, {4, 0}, Exec::parallel).mean; },
            3);
        report("|Z| max^2 MC (k=100, 1e6)", vs, vp, ms, mp);
    }
    {
        double vs = 0.0;
        double vp = 0.0;
        const NormConstants openai = preset_constants("OPENAI");
        const double ms = time_ms(
            [&] { vs = verify_bound(48, 3.0, openai, 32, 1e-4, {5, 0}, Exec::serial).max_measured; },
            3);
        const double mp = time_ms(
            [&] {
                vp = verify_bound(48, 3.0, openai, 32, 1e-4, {5, 0}, Exec::parallel).max_measured;
            },
            3);
        report("spectral bound (32 maps)", vs, vp, ms, mp);
    }
    {
        double vs = 0.0;
        double vp = 0.0;
        const FieldGrid f = white_noise(1024, 1024, 1.0, {6, 0});
        const double ms = time_ms([&] { vs = parseval_check(f, Exec::serial); }, 5);
        const double mp = time_ms([&] { vp = parseval_check(f, Exec::parallel); }, 5);
        report("fft2 (1024^2)", vs, vp, ms, mp);
    }
    return 0;
}
