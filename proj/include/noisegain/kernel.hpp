#pragma once

#include <vector>

namespace noisegain {

enum class KernelKind { box, gaussian, custom };

// k x k real filter, row-major. Box and Gaussian constructors normalize to
// unit sum; custom kernels carry whatever weights the caller supplies.
struct Kernel {
    int side = 1;
    std::vector<double> weights;  // side * side, row-major
    KernelKind kind = KernelKind::custom;
    double width = 0.0;  // Gaussian width parameter; 0 otherwise

    double at(int row, int col) const { return weights[static_cast<std::size_t>(row) * side + col]; }
    double weight_sum() const;
    double frobenius_sq() const;  // sum of squared weights
};

Kernel make_box_kernel(int side);
Kernel make_gaussian_kernel(int side, double width);
Kernel make_custom_kernel(int side, std::vector<double> weights);
Kernel make_identity_kernel();

}  // namespace noisegain
