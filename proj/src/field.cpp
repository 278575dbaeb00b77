#include "noisegain/field.hpp"

#include <algorithm>
#include <cmath>

#include "noisegain/errors.hpp"

namespace noisegain {

namespace {

void check_dims(int height, int width) {
    if (height < 1 || width < 1) {
        throw InvalidArgument("grid sides must be >= 1");
    }
    if (!is_power_of_two(height) || !is_power_of_two(width)) {
        throw NonPowerOfTwoSize("grid is " + std::to_string(height) + "x" +
                                std::to_string(width) + "; the radix-2 engine needs powers of two");
    }
}

// In-place radix-2 Cooley-Tukey with bit reversal. sign = -1 forward.
void fft_1d(std::complex<double>* data, int n, std::ptrdiff_t stride, int sign) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i * stride], data[j * stride]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * M_PI / len;
        const std::complex<double> wstep(std::cos(angle), std::sin(angle));
        for (int start = 0; start < n; start += len) {
            std::complex<double> w(1.0, 0.0);
            for (int off = 0; off < len / 2; ++off) {
                std::complex<double>& a = data[(start + off) * stride];
                std::complex<double>& b = data[(start + off + len / 2) * stride];
                const std::complex<double> t = w * b;
                b = a - t;
                a += t;
                w *= wstep;
            }
        }
    }
}

// Rows then columns. Each pass is data-parallel across the other axis.
void fft_2d(std::vector<std::complex<double>>& c, int height, int width, int sign, Exec mode) {
    parallel_for(static_cast<std::size_t>(height), mode, [&](std::size_t row) {
        fft_1d(c.data() + row * width, width, 1, sign);
    });
    parallel_for(static_cast<std::size_t>(width), mode, [&](std::size_t col) {
        fft_1d(c.data() + col, height, width, sign);
    });
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double FieldGrid::sum_sq() const {
    double acc = 0.0;
    for (double v : data) acc += v * v;
    return acc;
}

Spectrum fft2(const FieldGrid& field, Exec mode) {
    check_dims(field.height, field.width);
    Spectrum s;
    s.height = field.height;
    s.width = field.width;
    s.coeff.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) s.coeff[i] = field.data[i];
    fft_2d(s.coeff, s.height, s.width, -1, mode);
    return s;
}

FieldGrid ifft2(const Spectrum& spectrum, Exec mode) {
    check_dims(spectrum.height, spectrum.width);
    const int h = spectrum.height;
    const int w = spectrum.width;

    double max_mag = 0.0;
    for (const auto& c : spectrum.coeff) max_mag = std::max(max_mag, std::abs(c));
    // Symmetry tolerance scales with the spectrum; the DC coefficient of a
    // large field is O(HW), so a raw absolute threshold would misfire.
    const double sym_tol = 1e-8 * std::max(1.0, max_mag);
    for (int a = 0; a < h; ++a) {
        for (int b = 0; b < w; ++b) {
            const std::complex<double> mirror = spectrum.at((h - a) % h, (w - b) % w);
            if (std::abs(spectrum.at(a, b) - std::conj(mirror)) > sym_tol) {
                throw AsymmetricSpectrum("spectrum is not conjugate-symmetric; inverse is not real");
            }
        }
    }

    std::vector<std::complex<double>> c = spectrum.coeff;
    fft_2d(c, h, w, +1, mode);
    const double scale = 1.0 / (static_cast<double>(h) * w);
    const double imag_tol = 1e-9 * std::max(1.0, max_mag);
    FieldGrid out(h, w);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::complex<double> v = c[i] * scale;
        if (std::abs(v.imag()) > imag_tol) {
            throw AsymmetricSpectrum("imaginary residue above tolerance in inverse transform");
        }
        out.data[i] = v.real();
    }
    return out;
}

double parseval_check(const FieldGrid& field, Exec mode) {
    const double spatial = field.sum_sq();
    if (spatial == 0.0) {
        throw ZeroField("all-zero field; Parseval ratio undefined");
    }
    const Spectrum s = fft2(field, mode);
    double spectral = 0.0;
    for (const auto& c : s.coeff) spectral += std::norm(c);
    return spectral / (static_cast<double>(field.height) * field.width) / spatial;
}

FieldGrid white_noise(int height, int width, double sigma, SeedSpec seed) {
    if (height < 1 || width < 1) throw InvalidArgument("grid sides must be >= 1");
    if (sigma < 0.0) throw InvalidRange("sigma must be >= 0");
    FieldGrid out(height, width);
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (double& v : out.data) v = sigma * rng.next_gaussian();
    return out;
}

FieldGrid embed_kernel(const Kernel& kernel, int height, int width) {
    const int k = kernel.side;
    if (k > std::min(height, width)) {
        throw KernelTooLarge("kernel side " + std::to_string(k) + " exceeds grid " +
                             std::to_string(height) + "x" + std::to_string(width));
    }
    const int center = k / 2;
    FieldGrid out(height, width);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const int row = ((i - center) % height + height) % height;
            const int col = ((j - center) % width + width) % width;
            out.at(row, col) += kernel.at(i, j);
        }
    }
    return out;
}

FieldGrid circular_convolve(const FieldGrid& field, const Kernel& kernel, Exec mode) {
    check_dims(field.height, field.width);
    const FieldGrid embedded = embed_kernel(kernel, field.height, field.width);
    Spectrum fs = fft2(field, mode);
    const Spectrum ks = fft2(embedded, mode);
    for (std::size_t i = 0; i < fs.coeff.size(); ++i) fs.coeff[i] *= ks.coeff[i];
    return ifft2(fs, mode);
}

namespace {

// Per-axis window average for the box kernel: out(p) = mean of the g samples
// at offsets p + c - g + 1 .. p + c (circular), c = floor(g/2).
void box_filter_axis(const double* in, double* out, int n, int stride, int g) {
    const int center = g / 2;
    for (int p = 0; p < n; ++p) {
        double acc = 0.0;
        for (int t = 0; t < g; ++t) {
            const int q = ((p + center - t) % n + n) % n;
            acc += in[q * stride];
        }
        out[p * stride] = acc / g;
    }
}

}  // namespace

FieldGrid circular_convolve_spatial(const FieldGrid& field, const Kernel& kernel) {
    const int h = field.height;
    const int w = field.width;
    const int k = kernel.side;
    if (k > std::min(h, w)) {
        throw KernelTooLarge("kernel side " + std::to_string(k) + " exceeds grid " +
                             std::to_string(h) + "x" + std::to_string(w));
    }
    if (kernel.kind == KernelKind::box) {
        FieldGrid rows(h, w);
        for (int y = 0; y < h; ++y) {
            box_filter_axis(field.data.data() + static_cast<std::size_t>(y) * w,
                            rows.data.data() + static_cast<std::size_t>(y) * w, w, 1, k);
        }
        FieldGrid out(h, w);
        for (int x = 0; x < w; ++x) {
            box_filter_axis(rows.data.data() + x, out.data.data() + x, h, w, k);
        }
        return out;
    }
    const int center = k / 2;
    FieldGrid out(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = 0; i < k; ++i) {
                const int sy = ((y - (i - center)) % h + h) % h;
                for (int j = 0; j < k; ++j) {
                    const int sx = ((x - (j - center)) % w + w) % w;
                    acc += kernel.at(i, j) * field.at(sy, sx);
                }
            }
            out.at(y, x) = acc;
        }
    }
    return out;
}

FieldGrid inject_image_noise(const FieldGrid& field, double std_lo, double std_hi,
                             double max_value, SeedSpec seed) {
    if (!(0.0 <= std_lo && std_lo <= std_hi)) {
        throw InvalidRange("need 0 <= std_lo <= std_hi");
    }
    if (!(max_value > 0.0)) {
        throw InvalidRange("max_value must be positive");
    }
    Rng rng(seed);
    const double scale = std_lo + (std_hi - std_lo) * rng.next_unit();
    const double noise_std = scale * max_value;
    FieldGrid out = field;
    if (noise_std == 0.0) return out;
    for (double& v : out.data) {
        v = std::clamp(v + noise_std * rng.next_gaussian(), 0.0, max_value);
    }
    return out;
}

}  // namespace noisegain
