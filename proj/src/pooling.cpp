#include "noisegain/pooling.hpp"

#include <algorithm>
#include <cmath>

#include "noisegain/errors.hpp"

namespace noisegain {

namespace {

// erfc via W. J. Cody's rational Chebyshev approximations ("Rational
// Chebyshev approximations for the error function", Math. Comp. 1969;
// netlib specfun CALERF). Double precision, |abs err| well below 1e-14.
double erfc_cody(double x) {
    static const double a[5] = {3.1611237438705656, 113.864154151050156,
                                377.485237685302021, 3209.37758913846947,
                                0.185777706184603153};
    static const double b[4] = {23.6012909523441209, 244.024637934444173,
                                1282.61652607737228, 2844.23683343917062};
    static const double c[9] = {0.564188496988670089, 8.88314979438837594,
                                66.1191906371416295, 298.635138197400131,
                                881.95222124176909, 1712.04761263407058,
                                2051.07837782607147, 1230.33935479799725,
                                2.15311535474403846e-8};
    static const double d[8] = {15.7449261107098347, 117.693950891312499,
                                537.181101862009858, 1621.38957456669019,
                                3290.79923573345963, 4362.61909014324716,
                                3439.36767414372164, 1230.33935480374942};
    static const double p[6] = {0.305326634961232344, 0.360344899949804439,
                                0.125781726111229246, 0.0160837851487422766,
                                6.58749161529837803e-4, 0.0163153871373020978};
    static const double q[5] = {2.56852019228982242, 1.87295284992346047,
                                0.527905102951428412, 0.0605183413124413191,
                                0.00233520497626869185};
    static const double sqrpi = 0.56418958354775628695;  // 1/sqrt(pi)

    const double y = std::fabs(x);
    double result;
    if (y <= 0.46875) {
        // erfc = 1 - erf with the erf kernel rational approximation.
        const double ysq = y > 1.11e-16 ? y * y : 0.0;
        double xnum = a[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + a[i]) * ysq;
            xden = (xden + b[i]) * ysq;
        }
        return 1.0 - x * (xnum + a[3]) / (xden + b[3]);
    }
    if (y <= 4.0) {
        double xnum = c[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + c[i]) * y;
            xden = (xden + d[i]) * y;
        }
        result = (xnum + c[7]) / (xden + d[7]);
    } else if (y < 26.543) {
        const double ysq_inv = 1.0 / (y * y);
        double xnum = p[5] * ysq_inv;
        double xden = ysq_inv;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + p[i]) * ysq_inv;
            xden = (xden + q[i]) * ysq_inv;
        }
        result = ysq_inv * (xnum + p[4]) / (xden + q[4]);
        result = (sqrpi - result) / y;
    } else {
        result = 0.0;
    }
    // Scale by exp(-y^2) split as in CALERF to avoid premature underflow.
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    result *= std::exp(-ysq * ysq) * std::exp(-del);
    return x < 0.0 ? 2.0 - result : result;
}

double percentile_pair_mean(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct RunningStats {
    double mean = 0.0;
    double variance = 0.0;  // population variance of the samples
};

RunningStats moments(const std::vector<double>& xs) {
    RunningStats st;
    for (double x : xs) st.mean += x;
    st.mean /= static_cast<double>(xs.size());
    for (double x : xs) st.variance += (x - st.mean) * (x - st.mean);
    st.variance /= static_cast<double>(xs.size());
    return st;
}

}  // namespace

double pool_avg(const PoolWindow& window) {
    if (window.count() < 1) throw InvalidArgument("empty pooling window");
    double acc = 0.0;
    for (double v : window.values) acc += v;
    return acc / window.count();
}

double pool_max(const PoolWindow& window) {
    if (window.count() < 1) throw InvalidArgument("empty pooling window");
    return *std::max_element(window.values.begin(), window.values.end());
}

double pool_nn(const PoolWindow& window, int index) {
    if (index < 0 || index >= window.count()) {
        throw InvalidArgument("nearest-neighbor index out of range");
    }
    return window.values[static_cast<std::size_t>(index)];
}

double pool_median(const PoolWindow& window) {
    if (window.count() < 1) throw InvalidArgument("empty pooling window");
    return percentile_pair_mean(window.values);
}

double apply_pool(PoolType type, const PoolWindow& window, int nn_index) {
    switch (type) {
        case PoolType::avg: return pool_avg(window);
        case PoolType::max: return pool_max(window);
        case PoolType::nn: return pool_nn(window, nn_index);
        case PoolType::median: return pool_median(window);
    }
    throw InvalidArgument("unknown pool type");
}

double std_normal_cdf(double x) { return 0.5 * erfc_cody(-x * M_SQRT1_2); }

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1 || order > 128) throw InvalidArgument("order must be in [1, 128]");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    // Orthonormal-recurrence Newton iteration (Numerical Recipes gauher):
    // stable up to high orders where raw Hermite values overflow.
    const int m = (order + 1) / 2;
    const double pim4 = 0.7511255444649425;  // pi^(-1/4)
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * order) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceFailure("Newton iteration for Hermite root " +
                                     std::to_string(i) + " did not converge");
        }
        // Store roots descending in the first half, mirrored in the second.
        rule.nodes[i] = z;
        rule.nodes[order - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    // Ascending nodes.
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

MaxMoments max_moments(int k, int order) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    const QuadratureRule rule = gauss_hermite_rule(order);
    MaxMoments out;
    const double inv_sqrt_pi = 0.5641895835477563;
    double m1 = 0.0;
    double m2 = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double z = M_SQRT2 * rule.nodes[i];
        const double tail = k > 1 ? std::pow(std_normal_cdf(z), k - 1) : 1.0;
        m1 += rule.weights[i] * z * tail;
        m2 += rule.weights[i] * z * z * tail;
    }
    out.mean = k * inv_sqrt_pi * m1;
    out.second = k * inv_sqrt_pi * m2;
    return out;
}

PoolStats avg_error_stats(int k, double sigma) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (sigma < 0.0) throw InvalidRange("sigma must be >= 0");
    PoolStats st;
    st.method = StatsMethod::closed_form;
    st.bias = 0.0;
    st.variance = sigma * sigma / k;
    st.mse = st.variance;
    return st;
}

PoolStats max_error_stats_uniform(int k, double sigma, int order) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (sigma < 0.0) throw InvalidRange("sigma must be >= 0");
    const MaxMoments m = max_moments(k, order);
    PoolStats st;
    st.method = StatsMethod::quadrature;
    st.bias = sigma * m.mean;
    st.mse = sigma * sigma * m.second;
    st.variance = st.mse - st.bias * st.bias;
    return st;
}

double abs_max_second_moment_bound(int k) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    return 2.0 * std::log(2.0 * k) + 2.0;
}

PoolStats pool_error_monte_carlo(const PoolWindow& window, double sigma, PoolType type,
                                 int trials, SeedSpec seed, int nn_index, Exec mode) {
    if (trials < 100) throw InvalidArgument("need at least 100 trials");
    if (sigma < 0.0) throw InvalidRange("sigma must be >= 0");
    const double clean = apply_pool(type, window, nn_index);
    const int m = window.count();

    const std::vector<double> errors = run_trials(
        static_cast<std::size_t>(trials), mode, [&](std::size_t t) {
            Rng rng(seed.offset(t));
            PoolWindow noisy = window;
            for (int i = 0; i < m; ++i) {
                noisy.values[static_cast<std::size_t>(i)] += sigma * rng.next_gaussian();
            }
            return apply_pool(type, noisy, nn_index) - clean;
        });

    const RunningStats err = moments(errors);
    std::vector<double> sq(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) sq[i] = errors[i] * errors[i];
    const RunningStats sqerr = moments(sq);

    PoolStats st;
    st.method = StatsMethod::monte_carlo;
    st.bias = err.mean;
    st.variance = err.variance;
    st.mse = sqerr.mean;
    st.std_error = std::sqrt(sqerr.variance / trials);
    st.bias_std_error = std::sqrt(err.variance / trials);
    return st;
}

double large_gap_mse(double gap, double sigma, int k, int trials, SeedSpec seed, Exec mode) {
    if (k < 2) throw InvalidArgument("k must be >= 2");
    if (gap < 0.0) throw InvalidRange("gap must be >= 0");
    PoolWindow window = PoolWindow::uniform(k, -gap);
    window.values[0] = 0.0;
    return pool_error_monte_carlo(window, sigma, PoolType::max, trials, seed, 0, mode).mse;
}

double pool_lipschitz(PoolType type, int k) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    return type == PoolType::avg ? 1.0 / std::sqrt(static_cast<double>(k)) : 1.0;
}

McMean abs_max_second_moment_mc(int k, int trials, SeedSpec seed, Exec mode) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (trials < 2) throw InvalidArgument("need at least 2 trials");
    const std::vector<double> values = run_trials(
        static_cast<std::size_t>(trials), mode, [&](std::size_t t) {
            Rng rng(seed.offset(t));
            double peak = 0.0;
            for (int i = 0; i < k; ++i) {
                peak = std::max(peak, std::fabs(rng.next_gaussian()));
            }
            return peak * peak;
        });
    const RunningStats st = moments(values);
    McMean out;
    out.mean = st.mean;
    out.std_error = std::sqrt(st.variance / trials);
    out.trials = trials;
    return out;
}

double anscombe(double y) {
    if (y < 0.0) throw NegativeCount("Poisson counts must be >= 0");
    return 2.0 * std::sqrt(y + 0.375);
}

double poisson_filter_variance(const Kernel& filter, double xbar) {
    if (xbar < 0.0) throw NegativeCount("intensity must be >= 0");
    return xbar * filter.frobenius_sq();
}

SaltPepperError salt_pepper_avg_error(double q, double xbar, int m) {
    if (q < 0.0 || q > 1.0) throw InvalidRange("q must be in [0, 1]");
    if (xbar < 0.0 || xbar > 1.0) throw InvalidRange("xbar must be in [0, 1]");
    if (m < 1) throw InvalidArgument("m must be >= 1");
    SaltPepperError e;
    e.mean = q * (0.5 - xbar);
    e.variance_bound = 1.0 / m;  // O(1/m) witness with pixel values in [0, 1]
    return e;
}

double median_recovery_check(double xbar, double q, int m, int trials, SeedSpec seed,
                             Exec mode) {
    if (m % 2 == 0) throw EvenWindow("median recovery requires an odd window");
    if (q < 0.0 || q >= 0.5) throw InvalidRange("contamination must be in [0, 0.5)");
    if (xbar < 0.0 || xbar > 1.0) throw InvalidRange("xbar must be in [0, 1]");
    if (trials < 1) throw InvalidArgument("need at least 1 trial");

    const std::vector<double> recovered = run_trials(
        static_cast<std::size_t>(trials), mode, [&](std::size_t t) {
            Rng rng(seed.offset(t));
            PoolWindow window = PoolWindow::uniform(m, xbar);
            for (int i = 0; i < m; ++i) {
                if (rng.next_unit() < q) {
                    window.values[static_cast<std::size_t>(i)] =
                        rng.next_unit() < 0.5 ? 0.0 : 1.0;
                }
            }
            const double med = pool_median(window);
            // 1-Lipschitz in l_inf: shifting every entry by c moves the
            // median by exactly c.
            const double shift = rng.next_unit() - 0.5;
            PoolWindow shifted = window;
            for (double& v : shifted.values) v += shift;
            if (std::fabs(pool_median(shifted) - med - shift) > 1e-12) {
                throw InvalidArgument("median Lipschitz check failed");
            }
            return med == xbar ? 1.0 : 0.0;
        });
    double hits = 0.0;
    for (double r : recovered) hits += r;
    return hits / trials;
}

}  // namespace noisegain
