#pragma once

#include <complex>
#include <vector>

#include "noisegain/kernel.hpp"
#include "noisegain/parallel.hpp"
#include "noisegain/rng.hpp"

namespace noisegain {

// H x W real sample grid, row-major. Image plane or noise field.
struct FieldGrid {
    int height = 0;
    int width = 0;
    std::vector<double> data;  // height * width

    FieldGrid() = default;
    FieldGrid(int h, int w, double fill = 0.0)
        : height(h), width(w), data(static_cast<std::size_t>(h) * w, fill) {}

    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return data.size(); }

    double sum_sq() const;
};

// Complex DFT coefficients on the full H x W frequency grid.
struct Spectrum {
    int height = 0;
    int width = 0;
    std::vector<std::complex<double>> coeff;

    std::complex<double>& at(int row, int col) {
        return coeff[static_cast<std::size_t>(row) * width + col];
    }
    std::complex<double> at(int row, int col) const {
        return coeff[static_cast<std::size_t>(row) * width + col];
    }
};

bool is_power_of_two(int n);

// Unnormalized forward 2D DFT (radix-2; power-of-two sides only).
Spectrum fft2(const FieldGrid& field, Exec mode = default_exec());

// Inverse of fft2. Requires a conjugate-symmetric spectrum (real inverse);
// the imaginary residue is checked and discarded.
FieldGrid ifft2(const Spectrum& spectrum, Exec mode = default_exec());

// [(1/HW) sum |f_hat|^2] / [sum |f|^2]; contract value is 1.
double parseval_check(const FieldGrid& field, Exec mode = default_exec());

// i.i.d. N(0, sigma^2) field, reproducible from the seed.
FieldGrid white_noise(int height, int width, double sigma, SeedSpec seed);

// Circular (periodic) convolution with the kernel centered at the grid
// origin; even-sided kernels center at tap floor(k/2). FFT-based; grid sides
// must be powers of two.
FieldGrid circular_convolve(const FieldGrid& field, const Kernel& kernel,
                            Exec mode = default_exec());

// Same operator evaluated in the spatial domain: the serial reference for
// circular_convolve, and the path taken for grids the radix-2 engine cannot
// handle (box kernels run separably, everything else as a direct sum).
FieldGrid circular_convolve_spatial(const FieldGrid& field, const Kernel& kernel);

// Kernel embedded on an H x W grid, cyclically shifted so its center tap
// sits at index (0,0). Shared by circular_convolve and the spectral paths.
FieldGrid embed_kernel(const Kernel& kernel, int height, int width);

// Adds Gaussian noise with a per-call uniform scale from [std_lo, std_hi]
// (fraction of max_value), then clamps to [0, max_value].
FieldGrid inject_image_noise(const FieldGrid& field, double std_lo, double std_hi,
                             double max_value, SeedSpec seed);

}  // namespace noisegain
