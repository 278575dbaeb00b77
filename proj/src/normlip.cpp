#include "noisegain/normlip.hpp"

#include <algorithm>
#include <cmath>

#include "noisegain/errors.hpp"

namespace noisegain {

double NormConstants::sigma_min() const {
    return std::min({std[0], std[1], std[2]});
}

NormConstants preset_constants(const std::string& name) {
    if (name == "OPENAI") {
        return {"OPENAI",
                {0.48145466, 0.4578275, 0.40821073},
                {0.26862954, 0.26130258, 0.27577711}};
    }
    if (name == "INCEPTION") {
        return {"INCEPTION", {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
    }
    if (name == "IMAGENET") {
        return {"IMAGENET", {0.485, 0.456, 0.406}, {0.229, 0.224, 0.225}};
    }
    throw UnknownPreset("no preset named '" + name + "'");
}

NormConstants custom_constants(std::string name, std::array<double, 3> mean,
                               std::array<double, 3> std) {
    for (double s : std) {
        if (!(s > 0.0)) throw InvalidArgument("std components must be positive");
    }
    return {std::move(name), mean, std};
}

std::vector<FieldGrid> normalize(const std::vector<FieldGrid>& channels,
                                 const NormConstants& constants) {
    if (channels.size() != 3) throw ChannelMismatch("expected 3 channels");
    std::vector<FieldGrid> out;
    out.reserve(3);
    for (int c = 0; c < 3; ++c) {
        FieldGrid plane = channels[static_cast<std::size_t>(c)];
        const double mu = constants.mean[static_cast<std::size_t>(c)];
        const double sd = constants.std[static_cast<std::size_t>(c)];
        for (double& v : plane.data) v = (v - mu) / sd;
        out.push_back(std::move(plane));
    }
    return out;
}

double lipschitz_bound(double lz, const NormConstants& constants) {
    if (!(lz > 0.0)) throw InvalidArgument("L_z must be positive");
    return lz / constants.sigma_min();
}

double sensitivity_ratio(const NormConstants& a, const NormConstants& b) {
    return b.sigma_min() / a.sigma_min();
}

std::vector<double> LinearMap::apply(const std::vector<double>& v) const {
    std::vector<double> out(static_cast<std::size_t>(size), 0.0);
    for (int i = 0; i < size; ++i) {
        double acc = 0.0;
        const double* row = entries.data() + static_cast<std::size_t>(i) * size;
        for (int j = 0; j < size; ++j) acc += row[j] * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<double> LinearMap::apply_transposed(const std::vector<double>& v) const {
    std::vector<double> out(static_cast<std::size_t>(size), 0.0);
    for (int i = 0; i < size; ++i) {
        const double vi = v[static_cast<std::size_t>(i)];
        const double* row = entries.data() + static_cast<std::size_t>(i) * size;
        for (int j = 0; j < size; ++j) out[static_cast<std::size_t>(j)] += row[j] * vi;
    }
    return out;
}

PowerIterationResult power_iteration(const LinearMap& map, double tol, int max_iter,
                                     SeedSpec seed) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
    const int n = map.size;
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.next_gaussian();
    double norm_v = 0.0;
    for (double x : v) norm_v += x * x;
    norm_v = std::sqrt(norm_v);
    for (double& x : v) x /= norm_v;

    double lambda_prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> av = map.apply(v);
        std::vector<double> w = map.apply_transposed(av);  // A^T A v
        double lambda = 0.0;
        for (int i = 0; i < n; ++i) lambda += v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
        double norm_w = 0.0;
        for (double x : w) norm_w += x * x;
        norm_w = std::sqrt(norm_w);
        if (norm_w == 0.0) {
            return {0.0, it};  // zero map
        }
        for (std::size_t i = 0; i < w.size(); ++i) w[i] /= norm_w;
        v = std::move(w);
        if (it > 1 && std::fabs(lambda - lambda_prev) <= tol * std::fabs(lambda)) {
            return {std::sqrt(std::max(lambda, 0.0)), it};
        }
        lambda_prev = lambda;
    }
    throw NoConvergence("power iteration exhausted max_iter", max_iter);
}

LinearMap random_map_with_norm(int size, double target_norm, SeedSpec seed) {
    if (size < 2) throw InvalidArgument("map size must be >= 2");
    if (!(target_norm > 0.0)) throw InvalidArgument("target norm must be positive");
    LinearMap map;
    map.size = size;
    map.entries.resize(static_cast<std::size_t>(size) * size);
    Rng rng(seed);
    for (double& e : map.entries) e = rng.next_gaussian();
    // Separate stream for the power-iteration start vector.
    const PowerIterationResult measured =
        power_iteration(map, 1e-12, 20000, seed.offset(0x9E37));
    const double scale = target_norm / measured.norm;
    for (double& e : map.entries) e *= scale;
    return map;
}

LinearMap compose_with_normalization(const LinearMap& map, const NormConstants& constants) {
    if (map.size % 3 != 0) {
        throw LayoutMismatch("map dimension must be divisible by 3 (contiguous channel blocks)");
    }
    const int block = map.size / 3;
    LinearMap out = map;
    for (int j = 0; j < map.size; ++j) {
        const double inv_sigma = 1.0 / constants.std[static_cast<std::size_t>(j / block)];
        for (int i = 0; i < map.size; ++i) {
            out.at(i, j) *= inv_sigma;
        }
    }
    return out;
}

BoundReport verify_bound(int size, double lz, const NormConstants& constants, int num_maps,
                         double tol, SeedSpec seed, Exec mode) {
    if (num_maps < 1) throw InvalidArgument("need at least 1 map");
    const double bound = lipschitz_bound(lz, constants);

    const std::vector<double> measured = run_trials(
        static_cast<std::size_t>(num_maps), mode, [&](std::size_t t) {
            const LinearMap a = random_map_with_norm(size, lz, seed.offset(2 * t));
            const LinearMap ad = compose_with_normalization(a, constants);
            return power_iteration(ad, 1e-12, 20000, seed.offset(2 * t + 1)).norm;
        });

    BoundReport report;
    report.preset = constants.name;
    report.bound = bound;
    report.maps = num_maps;
    for (double m : measured) {
        if (m > bound * (1.0 + tol)) {
            throw BoundViolated("measured spectral norm exceeds the theorem bound");
        }
        report.max_measured = std::max(report.max_measured, m);
    }
    report.ratio = report.bound / report.max_measured;
    return report;
}

}  // namespace noisegain
