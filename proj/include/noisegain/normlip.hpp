#pragma once

#include <array>
#include <string>
#include <vector>

#include "noisegain/field.hpp"
#include "noisegain/parallel.hpp"
#include "noisegain/rng.hpp"

namespace noisegain {

// Per-channel mean/std preprocessing constants.
struct NormConstants {
    std::string name;
    std::array<double, 3> mean{};
    std::array<double, 3> std{};

    double sigma_min() const;
};

// Presets: OPENAI, INCEPTION, IMAGENET.
NormConstants preset_constants(const std::string& name);
NormConstants custom_constants(std::string name, std::array<double, 3> mean,
                               std::array<double, 3> std);

// Channel-wise (x - mu) / sigma over three equally sized planes.
std::vector<FieldGrid> normalize(const std::vector<FieldGrid>& channels,
                                 const NormConstants& constants);

// Worst-case sensitivity bound L_z / sigma_min.
double lipschitz_bound(double lz, const NormConstants& constants);

// sigma_min(b) / sigma_min(a): the factor by which a's bound exceeds b's.
double sensitivity_ratio(const NormConstants& a, const NormConstants& b);

// Dense square matrix, row-major.
struct LinearMap {
    int size = 0;
    std::vector<double> entries;

    double& at(int row, int col) { return entries[static_cast<std::size_t>(row) * size + col]; }
    double at(int row, int col) const {
        return entries[static_cast<std::size_t>(row) * size + col];
    }
    std::vector<double> apply(const std::vector<double>& v) const;
    std::vector<double> apply_transposed(const std::vector<double>& v) const;
};

struct PowerIterationResult {
    double norm = 0.0;
    int iterations = 0;
};

// Spectral norm via power iteration on the Gram matrix A^T A, seeded start,
// Rayleigh-quotient convergence test.
PowerIterationResult power_iteration(const LinearMap& map, double tol, int max_iter,
                                     SeedSpec seed);

// Gaussian entries rescaled so the measured spectral norm equals target_norm.
LinearMap random_map_with_norm(int size, double target_norm, SeedSpec seed);

// A * D with D = diag(1/sigma_channel); coordinates laid out as three
// contiguous channel blocks.
LinearMap compose_with_normalization(const LinearMap& map, const NormConstants& constants);

struct BoundReport {
    std::string preset;
    double bound = 0.0;
    double max_measured = 0.0;
    double ratio = 0.0;  // bound / max_measured
    int maps = 0;
};

// Measures ||A D||_2 for num_maps random maps with ||A||_2 = lz and checks
// each against the bound lz / sigma_min (theorem; violation means a bug).
BoundReport verify_bound(int size, double lz, const NormConstants& constants, int num_maps,
                         double tol, SeedSpec seed, Exec mode = default_exec());

}  // namespace noisegain
