#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "noisegain/field.hpp"
#include "noisegain/kernel.hpp"

namespace noisegain {

// Mean and sample standard deviation across Monte Carlo trials.
struct McEstimate {
    double mean = 0.0;
    double std = 0.0;
    int trials = 0;
};

// Radial low-pass envelope phi(r) = (1 + beta*k*r)^-(1+delta) fitted to a
// kernel's spectral magnitude profile.
struct EnvelopeFit {
    double beta = 0.0;
    double delta = 0.0;
    int kernel_side = 1;
    double fit_loss = 0.0;  // uniform-weight log-MSE at the returned (beta, delta)
    bool dominated = false; // envelope >= empirical magnitude at every sampled radius
};

// (radius, magnitude) samples of |K_hat| binned by the l2 norm of the
// frequency vector; radii strictly increasing, magnitudes >= 0.
struct RadialProfile {
    std::vector<double> radius;     // radius of the bin's maximizing lattice point
    std::vector<double> magnitude;  // per-bin maximum of |K_hat|
    double bin_width = 0.0;
};

// Anti-aliased downsampling: prefilter then keep every s-th sample per axis.
struct DownsampleOp {
    int factor = 1;          // s
    Kernel prefilter;        // side g(s)

    // c1*s <= g <= c2*s guard; defaults g = s.
    static DownsampleOp box(int factor, double c1 = 1.0, double c2 = 1.0);
    static DownsampleOp with_prefilter(int factor, Kernel prefilter, double c1 = 1.0,
                                       double c2 = 1.0);
};

struct ResolutionRatio {
    double factor = 1.0;        // s = res_from / res_to
    double energy_ratio = 1.0;  // s^-2
    double decibels = 0.0;      // 10 log10(energy_ratio)
};

// gamma(k) = sum of squared kernel weights (= ||K||_F^2).
double stem_gain_analytic(const Kernel& kernel);

// Same quantity through the spectrum: (1/HW) sum |K_hat|^2 on an HxW grid.
double stem_gain_spectral(const Kernel& kernel, int height, int width,
                          Exec mode = default_exec());

// Per trial t: ||K * eta||^2 / (sigma^2 H W) with eta from stream seed+t.
McEstimate stem_gain_monte_carlo(const Kernel& kernel, int height, int width, double sigma,
                                 int trials, SeedSpec seed, Exec mode = default_exec());

// Per-bin maximum of |K_hat| on a grid_side^2 grid, bins of width
// 2*pi/grid_side over the l2 frequency radius in (0, pi*sqrt(2)].
RadialProfile radial_profile(const Kernel& kernel, int grid_side,
                             double bin_width = 0.0, Exec mode = default_exec());

// Weighted log-MSE fit of the envelope over (beta, delta), then the smallest
// downward beta scaling that makes the envelope dominate the profile.
EnvelopeFit fit_envelope(const RadialProfile& profile, int kernel_side);

double envelope_value(const EnvelopeFit& fit, double radius);

// C = max_k gamma(k) * k^2; holds when the rescaled gains do not grow across
// the k range (max over the upper half <= 1.05x max over the lower half).
struct BoundCheck {
    double constant = 0.0;
    bool holds = false;
};
BoundCheck theorem1_bound_check(const std::vector<std::pair<int, double>>& gains);

FieldGrid downsample(const FieldGrid& field, const DownsampleOp& op,
                     Exec mode = default_exec());

// gamma_down(s) = ||prefilter||_F^2.
double downsample_gain_analytic(const DownsampleOp& op);

// Per trial: ||D_s eta||^2 / (sigma^2 H W / s^2).
McEstimate downsample_gain_monte_carlo(const DownsampleOp& op, int height, int width,
                                       double sigma, int trials, SeedSpec seed,
                                       Exec mode = default_exec());

ResolutionRatio resolution_ratio(int res_from, int res_to);

}  // namespace noisegain
