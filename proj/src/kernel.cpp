#include "noisegain/kernel.hpp"

#include <cmath>

#include "noisegain/errors.hpp"

namespace noisegain {

double Kernel::weight_sum() const {
    double acc = 0.0;
    for (double w : weights) acc += w;
    return acc;
}

double Kernel::frobenius_sq() const {
    double acc = 0.0;
    for (double w : weights) acc += w * w;
    return acc;
}

Kernel make_box_kernel(int side) {
    if (side < 1) throw InvalidArgument("kernel side must be >= 1");
    Kernel k;
    k.side = side;
    k.kind = KernelKind::box;
    k.weights.assign(static_cast<std::size_t>(side) * side,
                     1.0 / (static_cast<double>(side) * side));
    return k;
}

Kernel make_gaussian_kernel(int side, double width) {
    if (side < 1) throw InvalidArgument("kernel side must be >= 1");
    if (!(width > 0.0)) throw InvalidArgument("gaussian width must be positive");
    Kernel k;
    k.side = side;
    k.kind = KernelKind::gaussian;
    k.width = width;
    k.weights.resize(static_cast<std::size_t>(side) * side);
    const double center = (side - 1) / 2.0;
    double total = 0.0;
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            const double dy = i - center;
            const double dx = j - center;
            const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
            k.weights[static_cast<std::size_t>(i) * side + j] = w;
            total += w;
        }
    }
    for (double& w : k.weights) w /= total;
    return k;
}

Kernel make_custom_kernel(int side, std::vector<double> weights) {
    if (side < 1) throw InvalidArgument("kernel side must be >= 1");
    if (weights.size() != static_cast<std::size_t>(side) * side) {
        throw InvalidArgument("weight count does not match kernel side");
    }
    for (double w : weights) {
        if (!std::isfinite(w)) throw InvalidArgument("kernel weights must be finite");
    }
    Kernel k;
    k.side = side;
    k.kind = KernelKind::custom;
    k.weights = std::move(weights);
    return k;
}

Kernel make_identity_kernel() { return make_custom_kernel(1, {1.0}); }

}  // namespace noisegain
