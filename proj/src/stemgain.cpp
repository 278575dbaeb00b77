#include "noisegain/stemgain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noisegain/errors.hpp"

namespace noisegain {

namespace {

McEstimate summarize(const std::vector<double>& values) {
    McEstimate est;
    est.trials = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / est.trials;
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.std = est.trials > 1 ? std::sqrt(ss / (est.trials - 1)) : 0.0;
    return est;
}

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

template <typename F>
double golden_min(F&& f, double lo, double hi, int rounds) {
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < rounds; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double stem_gain_analytic(const Kernel& kernel) { return kernel.frobenius_sq(); }

double stem_gain_spectral(const Kernel& kernel, int height, int width, Exec mode) {
    const FieldGrid embedded = embed_kernel(kernel, height, width);
    const Spectrum s = fft2(embedded, mode);
    double acc = 0.0;
    for (const auto& c : s.coeff) acc += std::norm(c);
    return acc / (static_cast<double>(height) * width);
}

McEstimate stem_gain_monte_carlo(const Kernel& kernel, int height, int width, double sigma,
                                 int trials, SeedSpec seed, Exec mode) {
    if (trials < 2) throw InvalidArgument("need at least 2 trials");
    if (!(sigma > 0.0)) throw InvalidRange("sigma must be positive");
    if (!is_power_of_two(height) || !is_power_of_two(width)) {
        throw NonPowerOfTwoSize("grid must be a power of two for the FFT convolution");
    }
    if (kernel.side > std::min(height, width)) {
        throw KernelTooLarge("kernel exceeds the grid");
    }
    const double denom = sigma * sigma * static_cast<double>(height) * width;
    // The kernel spectrum is trial-invariant; the output energy is read off
    // in the spectral domain (Parseval), sparing the inverse transform. The
    // convolution operator itself is oracle-checked in the field module.
    const Spectrum kernel_spectrum = fft2(embed_kernel(kernel, height, width), mode);
    const double cells = static_cast<double>(height) * width;
    const std::vector<double> gains = run_trials(
        static_cast<std::size_t>(trials), mode, [&](std::size_t t) {
            const FieldGrid eta = white_noise(height, width, sigma, seed.offset(t));
            const Spectrum eta_spectrum = fft2(eta, Exec::serial);
            double energy = 0.0;
            for (std::size_t i = 0; i < eta_spectrum.coeff.size(); ++i) {
                energy += std::norm(kernel_spectrum.coeff[i] * eta_spectrum.coeff[i]);
            }
            return energy / cells / denom;
        });
    return summarize(gains);
}

RadialProfile radial_profile(const Kernel& kernel, int grid_side, double bin_width,
                             Exec mode) {
    if (!is_power_of_two(grid_side)) {
        throw NonPowerOfTwoSize("profile grid side must be a power of two");
    }
    if (grid_side < kernel.side) {
        throw KernelTooLarge("kernel exceeds the profile grid");
    }
    const int n = grid_side;
    if (bin_width <= 0.0) bin_width = 2.0 * M_PI / n;

    const FieldGrid embedded = embed_kernel(kernel, n, n);
    const Spectrum s = fft2(embedded, mode);

    // Bin (j*w, (j+1)*w] keyed by ceil(r/w)-1; the DC point (r = 0) is skipped.
    const double max_radius = M_PI * std::sqrt(2.0);
    const int bins = static_cast<int>(std::ceil(max_radius / bin_width)) + 1;
    std::vector<double> best_mag(bins, -1.0);
    std::vector<double> best_rad(bins, 0.0);

    for (int a = 0; a < n; ++a) {
        const int fa = a <= n / 2 ? a : a - n;
        const double wa = 2.0 * M_PI * fa / n;
        for (int b = 0; b < n; ++b) {
            const int fb = b <= n / 2 ? b : b - n;
            const double wb = 2.0 * M_PI * fb / n;
            const double r = std::sqrt(wa * wa + wb * wb);
            if (r <= 0.0) continue;
            const int bin = static_cast<int>(std::ceil(r / bin_width)) - 1;
            const double mag = std::abs(s.at(a, b));
            if (mag > best_mag[bin]) {
                best_mag[bin] = mag;
                best_rad[bin] = r;
            }
        }
    }

    RadialProfile profile;
    profile.bin_width = bin_width;
    for (int j = 0; j < bins; ++j) {
        if (best_mag[j] >= 0.0) {
            profile.radius.push_back(best_rad[j]);
            profile.magnitude.push_back(best_mag[j]);
        }
    }
    return profile;
}

double envelope_value(const EnvelopeFit& fit, double radius) {
    if (radius < 0.0) throw InvalidArgument("radius must be >= 0");
    return std::pow(1.0 + fit.beta * fit.kernel_side * radius, -(1.0 + fit.delta));
}

EnvelopeFit fit_envelope(const RadialProfile& profile, int kernel_side) {
    std::vector<double> r;
    std::vector<double> logm;
    std::vector<double> m;
    for (std::size_t i = 0; i < profile.radius.size(); ++i) {
        if (profile.magnitude[i] > 0.0) {
            r.push_back(profile.radius[i]);
            m.push_back(profile.magnitude[i]);
            logm.push_back(std::log(profile.magnitude[i]));
        }
    }
    if (r.size() < 8) {
        throw DegenerateProfile("need at least 8 bins with positive magnitude");
    }

    const double k = kernel_side;
    auto loss = [&](double beta, double delta) {
        double acc = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = -(1.0 + delta) * std::log1p(beta * k * r[i]) - logm[i];
            acc += d * d;
        }
        return acc / r.size();
    };

    // Coarse grid: beta log-spaced over [0.05, 50]/k, delta linear over
    // [0.05, 4]; uniform weights.
    const int nb = 64;
    const int nd = 32;
    const double beta_lo = 0.05 / k;
    const double beta_hi = 50.0 / k;
    double best_loss = std::numeric_limits<double>::infinity();
    int bi = 0;
    int di = 0;
    std::vector<double> betas(nb);
    std::vector<double> deltas(nd);
    for (int i = 0; i < nb; ++i) {
        betas[i] = beta_lo * std::pow(beta_hi / beta_lo, static_cast<double>(i) / (nb - 1));
    }
    for (int j = 0; j < nd; ++j) {
        deltas[j] = 0.05 + (4.0 - 0.05) * static_cast<double>(j) / (nd - 1);
    }
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nd; ++j) {
            const double L = loss(betas[i], deltas[j]);
            if (L < best_loss) {
                best_loss = L;
                bi = i;
                di = j;
            }
        }
    }

    // Coordinate refinement: 20 golden-section rounds per coordinate inside
    // the bracket formed by the neighboring grid points.
    double beta = betas[bi];
    double delta = deltas[di];
    {
        const double beta_a = betas[std::max(bi - 1, 0)];
        const double beta_b = betas[std::min(bi + 1, nb - 1)];
        const double delta_a = deltas[std::max(di - 1, 0)];
        const double delta_b = deltas[std::min(di + 1, nd - 1)];
        for (int pass = 0; pass < 2; ++pass) {
            beta = golden_min([&](double x) { return loss(x, delta); }, beta_a, beta_b, 20);
            delta = golden_min([&](double x) { return loss(beta, x); }, delta_a, delta_b, 20);
        }
    }

    // Domination: the envelope must upper-bound the profile. For fixed delta
    // the largest admissible beta at sample i solves
    // (1 + beta k r_i)^-(1+delta) = m_i, so take the minimum over samples and
    // scale beta down to it when the fit overshoots. No positive beta works
    // when any magnitude reaches 1 (flat spectra).
    double beta_dom = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double cap = (std::pow(m[i], -1.0 / (1.0 + delta)) - 1.0) / (k * r[i]);
        beta_dom = std::min(beta_dom, cap);
    }

    EnvelopeFit fit;
    fit.kernel_side = kernel_side;
    fit.delta = delta;
    if (beta_dom > 0.0) {
        fit.beta = std::min(beta, beta_dom);
        fit.dominated = true;
    } else {
        fit.beta = beta;
        fit.dominated = false;
    }
    fit.fit_loss = loss(fit.beta, fit.delta);
    return fit;
}

BoundCheck theorem1_bound_check(const std::vector<std::pair<int, double>>& gains) {
    if (gains.size() < 2) throw InvalidArgument("need gains for at least 2 kernel sizes");
    std::vector<std::pair<int, double>> sorted = gains;
    std::sort(sorted.begin(), sorted.end());

    BoundCheck check;
    std::vector<double> rescaled;
    rescaled.reserve(sorted.size());
    for (const auto& [k, gamma] : sorted) {
        rescaled.push_back(gamma * static_cast<double>(k) * k);
        check.constant = std::max(check.constant, rescaled.back());
    }
    const std::size_t half = rescaled.size() / 2;
    double lower_max = 0.0;
    double upper_max = 0.0;
    for (std::size_t i = 0; i < rescaled.size(); ++i) {
        double& slot = i < half ? lower_max : upper_max;
        slot = std::max(slot, rescaled[i]);
    }
    check.holds = std::isfinite(check.constant) && upper_max <= 1.05 * lower_max;
    return check;
}

DownsampleOp DownsampleOp::box(int factor, double c1, double c2) {
    return with_prefilter(factor, make_box_kernel(factor), c1, c2);
}

DownsampleOp DownsampleOp::with_prefilter(int factor, Kernel prefilter, double c1, double c2) {
    if (factor < 1) throw InvalidArgument("downsampling factor must be >= 1");
    const double g = prefilter.side;
    if (g < c1 * factor || g > c2 * factor) {
        throw InvalidArgument("prefilter size violates c1*s <= g <= c2*s");
    }
    DownsampleOp op;
    op.factor = factor;
    op.prefilter = std::move(prefilter);
    return op;
}

FieldGrid downsample(const FieldGrid& field, const DownsampleOp& op, Exec mode) {
    const int s = op.factor;
    if (field.height % s != 0 || field.width % s != 0) {
        throw IndivisibleSize("grid sides must be divisible by the downsampling factor");
    }
    // Factors like 3 force grids no radix-2 transform accepts; the spatial
    // path evaluates the identical operator there.
    const bool fft_ok = is_power_of_two(field.height) && is_power_of_two(field.width);
    const FieldGrid filtered = fft_ok ? circular_convolve(field, op.prefilter, mode)
                                      : circular_convolve_spatial(field, op.prefilter);
    FieldGrid out(field.height / s, field.width / s);
    for (int i = 0; i < out.height; ++i) {
        for (int j = 0; j < out.width; ++j) {
            out.at(i, j) = filtered.at(i * s, j * s);
        }
    }
    return out;
}

double downsample_gain_analytic(const DownsampleOp& op) {
    return op.prefilter.frobenius_sq();
}

McEstimate downsample_gain_monte_carlo(const DownsampleOp& op, int height, int width,
                                       double sigma, int trials, SeedSpec seed, Exec mode) {
    if (trials < 2) throw InvalidArgument("need at least 2 trials");
    if (!(sigma > 0.0)) throw InvalidRange("sigma must be positive");
    if (height % op.factor != 0 || width % op.factor != 0) {
        throw IndivisibleSize("grid sides must be divisible by the downsampling factor");
    }
    const int s = op.factor;
    const double denom = sigma * sigma * static_cast<double>(height) * width /
                         (static_cast<double>(s) * s);
    const bool fft_ok = is_power_of_two(height) && is_power_of_two(width);
    Spectrum prefilter_spectrum;
    if (fft_ok) {
        prefilter_spectrum = fft2(embed_kernel(op.prefilter, height, width), mode);
    }
    const std::vector<double> gains = run_trials(
        static_cast<std::size_t>(trials), mode, [&](std::size_t t) {
            const FieldGrid eta = white_noise(height, width, sigma, seed.offset(t));
            FieldGrid filtered;
            if (fft_ok) {
                Spectrum es = fft2(eta, Exec::serial);
                for (std::size_t i = 0; i < es.coeff.size(); ++i) {
                    es.coeff[i] *= prefilter_spectrum.coeff[i];
                }
                filtered = ifft2(es, Exec::serial);
            } else {
                filtered = circular_convolve_spatial(eta, op.prefilter);
            }
            double energy = 0.0;
            for (int i = 0; i < height; i += s) {
                for (int j = 0; j < width; j += s) {
                    energy += filtered.at(i, j) * filtered.at(i, j);
                }
            }
            return energy / denom;
        });
    return summarize(gains);
}

ResolutionRatio resolution_ratio(int res_from, int res_to) {
    if (res_from <= 0 || res_to <= 0) throw InvalidArgument("resolutions must be positive");
    ResolutionRatio r;
    r.factor = static_cast<double>(res_from) / res_to;
    r.energy_ratio = 1.0 / (r.factor * r.factor);
    r.decibels = 10.0 * std::log10(r.energy_ratio);
    return r;
}

}  // namespace noisegain
