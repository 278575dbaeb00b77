#pragma once

#include <optional>
#include <vector>

#include "noisegain/kernel.hpp"
#include "noisegain/parallel.hpp"
#include "noisegain/rng.hpp"

namespace noisegain {

// Clean activations of one pooling window.
struct PoolWindow {
    std::vector<double> values;

    static PoolWindow uniform(int count, double value = 0.0) {
        return PoolWindow{std::vector<double>(static_cast<std::size_t>(count), value)};
    }
    int count() const { return static_cast<int>(values.size()); }
};

enum class PoolType { avg, max, nn, median };

enum class StatsMethod { closed_form, quadrature, monte_carlo };

// Bias / variance / MSE of pool(S + eta) - pool(S) under N(0, sigma^2) noise.
struct PoolStats {
    double bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    StatsMethod method = StatsMethod::closed_form;
    std::optional<double> std_error;       // std error of the MSE estimate (MC only)
    std::optional<double> bias_std_error;  // std error of the bias estimate (MC only)
};

// Gauss-Hermite rule: integrates f against exp(-x^2) on the real line.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

double pool_avg(const PoolWindow& window);
double pool_max(const PoolWindow& window);
double pool_nn(const PoolWindow& window, int index);
// Lower-median convention for odd counts; mean of the two central order
// statistics for even counts.
double pool_median(const PoolWindow& window);
double apply_pool(PoolType type, const PoolWindow& window, int nn_index = 0);

// Phi(x), absolute error <= 1e-12 (Cody's rational erfc approximation).
double std_normal_cdf(double x);

QuadratureRule gauss_hermite_rule(int order);

// E[M_k] and E[M_k^2] for M_k = max of k standard normals, via
// E[M_k^p] = k * integral z^p phi(z) Phi(z)^(k-1) dz evaluated with the
// substitution z = sqrt(2) x against the Hermite weight.
struct MaxMoments {
    double mean = 0.0;
    double second = 0.0;
};
MaxMoments max_moments(int k, int order = 64);

// Average pooling: bias 0, variance sigma^2/k.
PoolStats avg_error_stats(int k, double sigma);

// Max pooling over a uniform window: bias sigma E[M_k], MSE sigma^2 E[M_k^2].
PoolStats max_error_stats_uniform(int k, double sigma, int order = 64);

// 2 ln(2k) + 2, an upper bound for E[A_k^2] with A_k = max |Z_i|.
double abs_max_second_moment_bound(int k);

PoolStats pool_error_monte_carlo(const PoolWindow& window, double sigma, PoolType type,
                                 int trials, SeedSpec seed, int nn_index = 0,
                                 Exec mode = default_exec());

// Max-pool MSE for S = (0, -gap, ..., -gap); approaches sigma^2 as
// gap/sigma grows.
double large_gap_mse(double gap, double sigma, int k, int trials, SeedSpec seed,
                     Exec mode = default_exec());

// l2 -> l2 Lipschitz constant of the pooling map: 1/sqrt(k) for average
// pooling (exact), 1 for max / nearest-neighbor / median (attained).
double pool_lipschitz(PoolType type, int k);

// Monte Carlo estimate of E[A_k^2].
struct McMean {
    double mean = 0.0;
    double std_error = 0.0;
    int trials = 0;
};
McMean abs_max_second_moment_mc(int k, int trials, SeedSpec seed, Exec mode = default_exec());

// Variance-stabilizing transform for Poisson counts: A(y) = 2 sqrt(y + 3/8).
double anscombe(double y);

// Var[sum h_t Y_t] for Y_t ~ Poisson with locally constant intensity xbar.
double poisson_filter_variance(const Kernel& filter, double xbar);

// Salt-and-pepper average-pool error: mean q(1/2 - xbar), variance O(1/m).
struct SaltPepperError {
    double mean = 0.0;
    double variance_bound = 0.0;
};
SaltPepperError salt_pepper_avg_error(double q, double xbar, int m);

// Fraction of trials in which the median of a contaminated constant window
// equals the clean value exactly (odd windows only). Also verifies the
// 1-Lipschitz-in-l_inf property of the median on random pairs.
double median_recovery_check(double xbar, double q, int m, int trials, SeedSpec seed,
                             Exec mode = default_exec());

}  // namespace noisegain
