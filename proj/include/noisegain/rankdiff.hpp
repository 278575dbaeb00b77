#pragma once

#include <optional>
#include <string>
#include <vector>

namespace noisegain {

// One model's accuracy observations.
struct ModelRecord {
    std::string model_id;
    double clean_acc = 0.0;
    double noisy_acc = 0.0;
    // Optional accuracy-vs-severity samples, sorted by tau, tau = 0 present
    // when non-empty.
    std::vector<std::pair<double, double>> severity_samples;
};

// Local-linear accuracy model A(tau) = p - rho*tau + r(tau), |r| <= L tau^2.
struct RobustnessProfile {
    double p = 0.0;
    double rho = 0.0;   // >= 0
    double curvature = 0.0;  // L >= 0
    double tau0 = 0.0;  // validity radius
};

struct RankEntry {
    std::string model_id;
    int rank_clean = 0;
    int rank_noisy = 0;
    int rank_diff = 0;
};

struct RankReport {
    std::vector<RankEntry> entries;  // in input order
};

enum class RankColumn { clean, noisy };

// Rank 1 = highest accuracy; ties broken by ascending model_id. The result
// is a permutation of 1..M aligned with the input order.
std::vector<int> compute_ranks(const std::vector<ModelRecord>& records, RankColumn column);

// rank_diff_i = rank_noisy(i) - rank_clean(i); sums to zero.
RankReport rank_diff(const std::vector<ModelRecord>& records);

// p from the tau=0 sample; rho = nonnegative least-squares slope of the drop
// (p - acc) vs tau through the origin; curvature = max |residual| / tau^2.
RobustnessProfile fit_profile(const ModelRecord& record);

// First-order crossing severity (p_i - p_j) / (rho_i - rho_j); absent when
// the slopes are equal.
std::optional<double> flip_threshold(const RobustnessProfile& a, const RobustnessProfile& b);

// |(p_i - p_j) - (rho_i - rho_j) tau| > (L_i + L_j) tau^2.
bool margin_holds(const RobustnessProfile& a, const RobustnessProfile& b, double tau);

// Indices j != i whose ordering with i is not first-order determined at tau.
std::vector<int> ambiguous_set(int i, const std::vector<RobustnessProfile>& profiles,
                               double tau);

struct RankDiffPrediction {
    int predicted = 0;
    int ambiguity = 0;
};

// predicted = -sum_j sgn(rho_j - rho_i) 1{rho_i != rho_j, 0 < tau*_ij <= tau};
// |actual - predicted| <= ambiguity under the local-linear accuracy model.
RankDiffPrediction predicted_rankdiff(int i, const std::vector<RobustnessProfile>& profiles,
                                      double tau);

enum class PairwiseWinner { first, second, ambiguous };

PairwiseWinner pairwise_winner(const RobustnessProfile& a, const RobustnessProfile& b,
                               double tau);

// Delimited-table I/O for the CLI: header `model_id,clean_acc,noisy_acc`
// with optional `tau=<value>` severity columns.
std::vector<ModelRecord> parse_model_table(const std::string& text);
std::string render_rank_table(const std::vector<ModelRecord>& records,
                              const RankReport& report);

}  // namespace noisegain
