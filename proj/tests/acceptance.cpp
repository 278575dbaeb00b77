// Acceptance suite: one line per criterion, nonzero exit when any fail.
// Full-scale regimes (512^2 grids, 2e5-trial pooling runs, 1e6-trial tail
// estimates), so this binary is the slow end of the test suite.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "noisegain/field.hpp"
#include "noisegain/normlip.hpp"
#include "noisegain/pooling.hpp"
#include "noisegain/rankdiff.hpp"
#include "noisegain/stemgain.hpp"
#include "oracles.hpp"

using namespace noisegain;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    std::vector<std::string> problems;
    std::string note;

    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

void finish(Criterion& c, double seconds, double limit_seconds) {
    if (limit_seconds > 0.0 && seconds > limit_seconds) {
        c.problems.push_back("runtime " + std::to_string(seconds) + "s exceeds " +
                             std::to_string(limit_seconds) + "s");
    }
    if (c.problems.empty()) {
        std::printf("PASS  %s (%.1fs)%s\n", c.label.c_str(), seconds,
                    c.note.empty() ? "" : ("  [" + c.note + "]").c_str());
    } else {
        ++g_failures;
        std::printf("FAIL  %s (%.1fs)\n", c.label.c_str(), seconds);
        for (const std::string& p : c.problems) {
            std::printf("      - %s\n", p.c_str());
        }
    }
    std::fflush(stdout);
}

template <typename Body>
void criterion(const std::string& label, double limit_seconds, Body&& body) {
    Criterion c;
    c.label = label;
    const auto start = std::chrono::steady_clock::now();
    body(c);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    finish(c, seconds, limit_seconds);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion 1 & 2: gain tables ------------------------------------------

void criterion_gain_stem(Criterion& c) {
    const int ks[] = {4, 8, 12, 16, 20, 24, 28, 32};
    std::uint64_t stream = 0;
    for (int k : ks) {
        const Kernel kern = make_box_kernel(k);
        const double expect = 1.0 / (static_cast<double>(k) * k);
        const double analytic = stem_gain_analytic(kern);
        c.expect(std::fabs(analytic - expect) <= 1e-12,
                 "analytic gamma(" + std::to_string(k) + ") = " + fmt(analytic));
        const McEstimate mc =
            stem_gain_monte_carlo(kern, 512, 512, 1.0, 100, {2024, stream});
        stream += 100;
        c.expect(std::fabs(mc.mean - expect) <= 3.0 * mc.std,
                 "k=" + std::to_string(k) + ": MC mean " + fmt(mc.mean) + " vs " +
                     fmt(expect) + " (3 std = " + fmt(3.0 * mc.std) + ")");
    }
}

void criterion_gain_downsample(Criterion& c) {
    const int ss[] = {1, 2, 3, 4, 6, 8, 12, 16};
    // 480 is divisible by every factor in the table (512 is not, e.g. by 3).
    const int grid = 480;
    std::uint64_t stream = 1u << 20;
    for (int s : ss) {
        const DownsampleOp op = DownsampleOp::box(s);
        const double expect = 1.0 / (static_cast<double>(s) * s);
        const double analytic = downsample_gain_analytic(op);
        c.expect(std::fabs(analytic - expect) <= 1e-12,
                 "analytic gamma_down(" + std::to_string(s) + ") = " + fmt(analytic));
        const McEstimate mc =
            downsample_gain_monte_carlo(op, grid, grid, 1.0, 100, {2024, stream});
        stream += 100;
        c.expect(std::fabs(mc.mean - expect) <= 3.0 * mc.std,
                 "s=" + std::to_string(s) + ": MC mean " + fmt(mc.mean) + " vs " +
                     fmt(expect) + " (3 std = " + fmt(3.0 * mc.std) + ")");
    }
}

// ---- criterion 3: pooling table ---------------------------------------------

void criterion_pooling(Criterion& c) {
    struct Row {
        int w;
        double max_bias;
        double max_mse;
    };
    const Row reference[] = {{2, 1.02938, 1.55133},
                         {3, 1.48501, 2.56262},
                         {4, 1.76599, 3.41374},
                         {5, 1.96531, 4.12097},
                         {6, 2.11812, 4.72069}};
    const double reference_avg[] = {0.25000, 0.11111, 0.06250, 0.04000, 0.02778};
    std::uint64_t stream = 1u << 21;
    int idx = 0;
    for (const Row& row : reference) {
        const int k = row.w * row.w;
        const PoolStats avg_th = avg_error_stats(k, 1.0);
        const PoolStats max_th = max_error_stats_uniform(k, 1.0, 64);
        c.expect(std::fabs(avg_th.mse - reference_avg[idx]) < 5e-5,
                 "w=" + std::to_string(row.w) + " avg theory " + fmt(avg_th.mse));
        c.expect(std::fabs(max_th.bias - row.max_bias) < 5e-5,
                 "w=" + std::to_string(row.w) + " max bias theory " + fmt(max_th.bias) +
                     " vs reference " + fmt(row.max_bias));
        c.expect(std::fabs(max_th.mse - row.max_mse) < 5e-5,
                 "w=" + std::to_string(row.w) + " max MSE theory " + fmt(max_th.mse) +
                     " vs reference " + fmt(row.max_mse));
        ++idx;

        const PoolWindow window = PoolWindow::uniform(k);
        const PoolStats avg_mc =
            pool_error_monte_carlo(window, 1.0, PoolType::avg, 200000, {2024, stream});
        stream += 200000;
        const PoolStats max_mc =
            pool_error_monte_carlo(window, 1.0, PoolType::max, 200000, {2024, stream});
        stream += 200000;
        c.expect(std::fabs(avg_mc.mse - avg_th.mse) <= 4.0 * *avg_mc.std_error,
                 "w=" + std::to_string(row.w) + " avg MSE empirical " + fmt(avg_mc.mse));
        c.expect(std::fabs(max_mc.bias - max_th.bias) <= 4.0 * *max_mc.bias_std_error,
                 "w=" + std::to_string(row.w) + " max bias empirical " + fmt(max_mc.bias));
        c.expect(std::fabs(max_mc.mse - max_th.mse) <= 4.0 * *max_mc.std_error,
                 "w=" + std::to_string(row.w) + " max MSE empirical " + fmt(max_mc.mse));
    }
}

// ---- criterion 4: spectral bound table --------------------------------------

void criterion_lipschitz(Criterion& c) {
    const NormConstants inception = preset_constants("INCEPTION");
    const NormConstants openai = preset_constants("OPENAI");
    const double b_inc = lipschitz_bound(3.0, inception);
    const double b_open = lipschitz_bound(3.0, openai);
    c.expect(std::fabs(b_inc - 6.000000) < 5e-7, "INCEPTION bound " + fmt(b_inc));
    c.expect(std::fabs(b_open - 11.480943) < 5e-7, "OPENAI bound " + fmt(b_open));

    for (const NormConstants& constants : {inception, openai}) {
        const BoundReport r = verify_bound(48, 3.0, constants, 32, 1e-4, {2024, 1u << 22});
        c.expect(r.max_measured <= r.bound * (1.0 + 1e-4),
                 constants.name + ": measured " + fmt(r.max_measured) + " above bound " +
                     fmt(r.bound));
        c.expect(r.max_measured >= 0.95 * r.bound,
                 constants.name + ": measured " + fmt(r.max_measured) +
                     " below the near-tightness floor 0.95 x " + fmt(r.bound));
    }
}

// ---- criterion 5: remark-level identities ------------------------------------

void criterion_remarks(Criterion& c) {
    const double ratio =
        sensitivity_ratio(preset_constants("OPENAI"), preset_constants("INCEPTION"));
    c.expect(ratio >= 1.913 && ratio <= 1.914, "sensitivity ratio " + fmt(ratio));

    const ResolutionRatio rr = resolution_ratio(384, 224);
    c.expect(rr.energy_ratio >= 0.336 && rr.energy_ratio <= 0.344,
             "384->224 energy ratio " + fmt(rr.energy_ratio));

    // Power-of-two sides make 1/k^2 dyadic, so the quartering is exact in
    // double precision; other sides land within an ulp.
    for (int k : {1, 2, 4, 8, 16, 32}) {
        const double q = stem_gain_analytic(make_box_kernel(2 * k)) /
                         stem_gain_analytic(make_box_kernel(k));
        c.expect(q == 0.25, "gamma(2k)/gamma(k) for k=" + std::to_string(k) + " is " + fmt(q));
    }
    for (int k : {3, 5, 6, 12}) {
        const double q = stem_gain_analytic(make_box_kernel(2 * k)) /
                         stem_gain_analytic(make_box_kernel(k));
        c.expect(std::fabs(q - 0.25) <= 1e-15,
                 "gamma(2k)/gamma(k) for k=" + std::to_string(k) + " is " + fmt(q));
    }
}

// ---- criterion 6: A_k^2 bound and the large-gap limit -------------------------

void criterion_tail_bounds(Criterion& c) {
    std::uint64_t stream = 1u << 23;
    for (int k : {1, 2, 4, 16, 100, 1000}) {
        const McMean mc = abs_max_second_moment_mc(k, 1000000, {2024, stream});
        stream += 1000000;
        const double bound = abs_max_second_moment_bound(k);
        c.expect(mc.mean <= bound, "E[A_" + std::to_string(k) + "^2] = " + fmt(mc.mean) +
                                       " vs bound " + fmt(bound));
    }
    const double mse = large_gap_mse(8.0, 1.0, 4, 200000, {2024, stream});
    c.expect(std::fabs(mse - 1.0) <= 0.05,
             "large-gap max-pool MSE " + fmt(mse) + " not within 5% of sigma^2");
}

// ---- criterion 7: radial profile regime --------------------------------------

struct SweepHit {
    double score = 1e300;  // worst |log(m/target)| across the three radii
    std::string params;
    std::array<double, 3> mags{};
    std::array<double, 3> radii{};
};

double sig3(double v) {
    if (v == 0.0) return 0.0;
    const double d = std::pow(10.0, std::floor(std::log10(std::fabs(v))) - 2);
    return std::round(v / d) * d;
}

SweepHit sweep_kernel(const std::function<Kernel(int)>& make, int k_lo, int k_hi, int k_step,
                      const std::array<double, 3>& target_r,
                      const std::array<double, 3>& target_m, const std::string& tag) {
    SweepHit best;
    for (int k = k_lo; k <= k_hi; k += k_step) {
        const Kernel kern = make(k);
        const RadialProfile profile = radial_profile(kern, 512);
        SweepHit hit;
        hit.params = tag + " k=" + std::to_string(k) +
                     (kern.kind == KernelKind::gaussian
                          ? " width=" + std::to_string(kern.width)
                          : "");
        hit.score = 0.0;
        for (int t = 0; t < 3; ++t) {
            std::size_t nearest = 0;
            for (std::size_t i = 1; i < profile.radius.size(); ++i) {
                if (std::fabs(profile.radius[i] - target_r[static_cast<std::size_t>(t)]) <
                    std::fabs(profile.radius[nearest] -
                              target_r[static_cast<std::size_t>(t)])) {
                    nearest = i;
                }
            }
            hit.radii[static_cast<std::size_t>(t)] = profile.radius[nearest];
            hit.mags[static_cast<std::size_t>(t)] = profile.magnitude[nearest];
            const double m = profile.magnitude[nearest];
            const double target = target_m[static_cast<std::size_t>(t)];
            hit.score = std::max(hit.score,
                                 m > 0 ? std::fabs(std::log(m / target)) : 1e300);
        }
        if (hit.score < best.score) best = hit;
    }
    return best;
}

void criterion_radial_regime(Criterion& c) {
    const std::array<double, 3> box_r = {0.3962, 0.7886, 1.5661};
    const std::array<double, 3> box_m = {0.0297134, 0.0129235, 0.0040941};
    const std::array<double, 3> gau_r = {0.3962, 0.7886, 1.6031};
    const std::array<double, 3> gau_m = {0.0226295, 0.0059380, 0.0007060};

    // Domination half of the criterion: fitted envelopes sit above the
    // profiles for every kernel in the sweep ranges.
    for (int k = 2; k <= 32; k += 2) {
        const RadialProfile p = radial_profile(make_box_kernel(k), 512);
        const EnvelopeFit fit = fit_envelope(p, k);
        c.expect(fit.dominated, "box k=" + std::to_string(k) + " envelope not dominated");
        if (fit.dominated) {
            for (std::size_t i = 0; i < p.radius.size(); ++i) {
                if (envelope_value(fit, p.radius[i]) < p.magnitude[i] - 1e-12) {
                    c.expect(false, "box k=" + std::to_string(k) + " domination broken at r=" +
                                        fmt(p.radius[i]));
                    break;
                }
            }
        }
    }
    for (int k : {5, 9, 13}) {
        for (double width : {0.75, 1.0, 1.5}) {
            const RadialProfile p = radial_profile(make_gaussian_kernel(k, width), 512);
            const EnvelopeFit fit = fit_envelope(p, k);
            c.expect(fit.dominated, "gaussian k=" + std::to_string(k) + " width=" + fmt(width) +
                                        " envelope not dominated");
        }
    }

    // Reproduction half: sweep kernel parameters for the tabulated
    // (radius, magnitude) pairs and require 3-significant-figure agreement.
    const SweepHit box = sweep_kernel([](int k) { return make_box_kernel(k); }, 2, 64, 1,
                                      box_r, box_m, "box");
    SweepHit gau;
    for (double width = 0.4; width <= 8.01; width += 0.2) {
        const SweepHit hit = sweep_kernel(
            [width](int k) { return make_gaussian_kernel(k, width); }, 3, 41, 2, gau_r, gau_m,
            "gaussian");
        if (hit.score < gau.score) gau = hit;
    }

    const SweepHit* hits[2] = {&box, &gau};
    const std::array<double, 3>* targets[2] = {&box_m, &gau_m};
    for (int which = 0; which < 2; ++which) {
        std::string detail = hits[which]->params + " ->";
        bool all3 = true;
        for (int t = 0; t < 3; ++t) {
            detail += " (" + fmt(hits[which]->radii[static_cast<std::size_t>(t)]) + ", " +
                      fmt(hits[which]->mags[static_cast<std::size_t>(t)]) + ")";
            all3 = all3 && sig3(hits[which]->mags[static_cast<std::size_t>(t)]) ==
                               sig3((*targets[which])[static_cast<std::size_t>(t)]);
        }
        c.expect(all3, "best sweep match " + detail +
                           " does not reproduce the tabulated magnitudes to 3 significant "
                           "figures");
    }

    // The tabulated empirical magnitudes themselves must sit below fitted
    // envelopes at the tabulated radii (they do: our profiles upper-bound
    // them, and the envelopes dominate our profiles).
    {
        const RadialProfile p = radial_profile(make_box_kernel(12), 512);
        const EnvelopeFit fit = fit_envelope(p, 12);
        for (int t = 0; t < 3; ++t) {
            c.expect(envelope_value(fit, box_r[static_cast<std::size_t>(t)]) >=
                         box_m[static_cast<std::size_t>(t)],
                     "box envelope below the tabulated magnitude at r=" +
                         fmt(box_r[static_cast<std::size_t>(t)]));
        }
    }
    {
        const RadialProfile p = radial_profile(make_gaussian_kernel(5, 1.0), 512);
        const EnvelopeFit fit = fit_envelope(p, 5);
        c.expect(envelope_value(fit, 1.6031) >= 0.0007060,
                 "gaussian envelope below the tabulated magnitude at r=1.6031");
    }
}

// ---- criterion 8: rank analytics ---------------------------------------------

struct PublishedRow {
    const char* id;
    int rank_clean;
    int rank_noisy;
};

// Published rank pairs for the 1174-model sweep.
const PublishedRow kPublished[] = {
    {"vit_small_patch16_224.augreg_in1k", 885, 547},
    {"vit_small_patch16_384.augreg_in1k", 673, 613},
    {"vit_base_patch16_224.augreg_in1k", 862, 487},
    {"vit_base_patch16_384.augreg_in1k", 676, 524},
    {"vit_base_patch32_224.augreg_in1k", 1075, 569},
    {"vit_base_patch32_384.augreg_in1k", 893, 539},
    {"vit_tiny_patch16_224.augreg_in21k_ft_in1k", 1060, 949},
    {"vit_tiny_patch16_384.augreg_in21k_ft_in1k", 921, 1078},
    {"vit_small_patch16_224.augreg_in21k_ft_in1k", 644, 479},
    {"vit_small_patch16_384.augreg_in21k_ft_in1k", 349, 484},
    {"vit_small_patch32_224.augreg_in21k_ft_in1k", 1044, 601},
    {"vit_small_patch32_384.augreg_in21k_ft_in1k", 740, 596},
    {"vit_base_patch8_224.augreg_in21k_ft_in1k", 145, 118},
    {"vit_base_patch16_224.augreg_in21k_ft_in1k", 257, 192},
    {"vit_base_patch16_384.augreg_in21k_ft_in1k", 129, 208},
    {"vit_base_patch32_224.augreg_in21k_ft_in1k", 719, 392},
    {"vit_base_patch32_384.augreg_in21k_ft_in1k", 412, 437},
    {"vit_large_patch16_224.augreg_in21k_ft_in1k", 141, 55},
    {"vit_large_patch16_384.augreg_in21k_ft_in1k", 59, 61},
    {"vit_base_patch16_224.orig_in21k_ft_in1k", 603, 513},
    {"vit_base_patch16_384.orig_in21k_ft_in1k", 302, 657},
    {"vit_base_patch8_224.augreg2_in21k_ft_in1k", 109, 67},
    {"vit_base_patch16_224.augreg2_in21k_ft_in1k", 203, 96},
    {"vit_base_patch16_224.sam_in1k", 771, 602},
    {"vit_base_patch32_224.sam_in1k", 1101, 748},
    {"vit_medium_patch16_gap_256.sw_in12k_ft_in1k", 274, 132},
    {"vit_medium_patch16_gap_384.sw_in12k_ft_in1k", 163, 106},
    {"vit_so150m_patch16_reg4_gap_256.sbb_e250_in12k_ft_in1k", 81, 38},
    {"vit_so150m_patch16_reg4_gap_384.sbb_e250_in12k_ft_in1k", 49, 44},
};

void criterion_rank_analytics(Criterion& c) {
    // Property test of the net-flip bound on synthetic systems.
    Rng rng(SeedSpec{2024, 1u << 24});
    int equality_cases = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const bool zero_curv = rep % 2 == 0;
        const int m = 2 + static_cast<int>(rng.next_u64() % 11);
        std::vector<RobustnessProfile> profiles;
        std::vector<double> remainder;
        for (int i = 0; i < m; ++i) {
            RobustnessProfile p;
            p.p = 50.0 + 40.0 * rng.next_unit();
            p.rho = 30.0 * rng.next_unit();
            p.curvature = zero_curv ? 0.0 : 8.0 * rng.next_unit();
            p.tau0 = 1.0;
            profiles.push_back(p);
            remainder.push_back(p.curvature * (2.0 * rng.next_unit() - 1.0));
        }
        for (double tau : {0.05, 0.17, 0.31, 0.59, 0.83}) {
            std::vector<ModelRecord> records;
            for (int i = 0; i < m; ++i) {
                ModelRecord r;
                r.model_id = "s" + std::to_string(i);
                r.clean_acc = profiles[static_cast<std::size_t>(i)].p;
                r.noisy_acc = profiles[static_cast<std::size_t>(i)].p -
                              profiles[static_cast<std::size_t>(i)].rho * tau +
                              remainder[static_cast<std::size_t>(i)] * tau * tau;
                records.push_back(std::move(r));
            }
            const RankReport report = rank_diff(records);
            for (int i = 0; i < m; ++i) {
                const RankDiffPrediction pred = predicted_rankdiff(i, profiles, tau);
                const int actual = report.entries[static_cast<std::size_t>(i)].rank_diff;
                if (std::abs(actual - pred.predicted) > pred.ambiguity) {
                    c.expect(false, "net-flip bound violated: rep " + std::to_string(rep) +
                                        " tau " + fmt(tau) + " model " + std::to_string(i));
                }
                if (zero_curv && actual != pred.predicted) {
                    c.expect(false, "zero-curvature equality violated at rep " +
                                        std::to_string(rep));
                }
                equality_cases += zero_curv;
            }
        }
    }
    c.expect(equality_cases > 1000, "too few equality cases exercised");

    // Published-table fixture: place the 29 rows at their published ranks in
    // a synthetic 1174-model table and check the emitted RankDiff column.
    const int total = 1174;
    std::vector<bool> clean_taken(static_cast<std::size_t>(total) + 1, false);
    std::vector<bool> noisy_taken(static_cast<std::size_t>(total) + 1, false);
    for (const PublishedRow& row : kPublished) {
        clean_taken[static_cast<std::size_t>(row.rank_clean)] = true;
        noisy_taken[static_cast<std::size_t>(row.rank_noisy)] = true;
    }
    auto acc_for_rank = [&](int rank) {
        return (static_cast<double>(total) + 1.0 - rank) * (100.0 / (total + 1.0));
    };
    std::vector<ModelRecord> records;
    for (const PublishedRow& row : kPublished) {
        ModelRecord r;
        r.model_id = row.id;
        r.clean_acc = acc_for_rank(row.rank_clean);
        r.noisy_acc = acc_for_rank(row.rank_noisy);
        records.push_back(std::move(r));
    }
    int filler = 0;
    int noisy_rank = 1;
    for (int clean_rank = 1; clean_rank <= total; ++clean_rank) {
        if (clean_taken[static_cast<std::size_t>(clean_rank)]) continue;
        while (noisy_taken[static_cast<std::size_t>(noisy_rank)]) ++noisy_rank;
        ModelRecord r;
        r.model_id = "filler_" + std::to_string(++filler);
        r.clean_acc = acc_for_rank(clean_rank);
        r.noisy_acc = acc_for_rank(noisy_rank);
        ++noisy_rank;
        records.push_back(std::move(r));
    }
    const RankReport report = rank_diff(records);
    int spot_checked = 0;
    for (std::size_t i = 0; i < std::size(kPublished); ++i) {
        const PublishedRow& row = kPublished[i];
        const RankEntry& e = report.entries[i];
        const int expect = row.rank_noisy - row.rank_clean;
        if (e.rank_clean != row.rank_clean || e.rank_noisy != row.rank_noisy ||
            e.rank_diff != expect) {
            c.expect(false, std::string(row.id) + ": got (" + std::to_string(e.rank_clean) +
                                "," + std::to_string(e.rank_noisy) + "," +
                                std::to_string(e.rank_diff) + ")");
        }
        if (expect == -506 || expect == -375 || expect == 157 || expect == 355) {
            ++spot_checked;
        }
    }
    c.expect(spot_checked == 4, "spot rows -506, -375, +157, +355 not all present");
    long long total_diff = 0;
    for (const RankEntry& e : report.entries) total_diff += e.rank_diff;
    c.expect(total_diff == 0, "RankDiff does not sum to zero");
}

// ---- criterion 9: oracle equivalence -----------------------------------------

void criterion_oracles(Criterion& c) {
    // FFT vs direct double-loop DFT.
    for (int h : {2, 4, 8, 16}) {
        for (int w : {2, 4, 8, 16}) {
            const FieldGrid f =
                white_noise(h, w, 1.0, {2024, (1u << 25) + static_cast<std::uint64_t>(h * 17 + w)});
            const Spectrum got = fft2(f);
            const auto want = oracle::direct_dft2(f);
            double scale = 0.0;
            for (const auto& v : want) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < want.size(); ++i) {
                if (std::abs(got.coeff[i] - want[i]) > 1e-9 * scale) {
                    c.expect(false, "FFT mismatch at " + std::to_string(h) + "x" +
                                        std::to_string(w));
                    break;
                }
            }
        }
    }
    // FFT convolution vs direct spatial sum.
    const FieldGrid f = white_noise(16, 16, 1.0, {2024, 1u << 26});
    for (int k : {2, 3, 5}) {
        const Kernel kern = make_box_kernel(k);
        const FieldGrid a = circular_convolve(f, kern);
        const FieldGrid b = oracle::direct_circular_convolve(f, kern);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::fabs(a.data[i] - b.data[i]) > 1e-9 * std::max(1.0, std::fabs(b.data[i]))) {
                c.expect(false, "convolution mismatch at k=" + std::to_string(k));
                break;
            }
        }
    }
    // Power iteration vs dense eigensolve.
    for (std::uint64_t s = 0; s < 5; ++s) {
        LinearMap m;
        m.size = 64;
        m.entries.resize(64 * 64);
        Rng rng(SeedSpec{2024, (1u << 27) + s});
        for (double& e : m.entries) e = rng.next_gaussian();
        const double via_power = power_iteration(m, 1e-12, 20000, {2024, (1u << 28) + s}).norm;
        const double via_jacobi = oracle::spectral_norm_via_jacobi(m);
        c.expect(std::fabs(via_power - via_jacobi) <= 1e-6 * via_jacobi,
                 "power iteration " + fmt(via_power) + " vs eigensolve " + fmt(via_jacobi));
    }
    // Quadrature E[M_2] vs the closed form.
    const MaxMoments m2 = max_moments(2, 64);
    c.expect(std::fabs(m2.mean - 1.0 / std::sqrt(M_PI)) <= 1e-6,
             "E[M_2] = " + fmt(m2.mean) + " vs 1/sqrt(pi)");
}

}  // namespace

int main() {
    std::printf("acceptance suite (threads: %d)\n", max_threads());
    criterion("criterion 1: stem gain table (k in {4..32}, 512^2, 100 trials)", 120.0,
              criterion_gain_stem);
    criterion("criterion 2: downsampling gain table (s in {1..16}, box prefilter)", 120.0,
              criterion_gain_downsample);
    criterion("criterion 3: pooling error table (w in {2..6}, 2e5 trials)", 60.0,
              criterion_pooling);
    criterion("criterion 4: normalization bound table (L_z = 3, 32 maps)", 10.0,
              criterion_lipschitz);
    criterion("criterion 5: remark identities (1.91x, 0.34x, quartering)", 0.0,
              criterion_remarks);
    criterion("criterion 6: tail bound suite (E[A_k^2], large-gap limit)", 0.0,
              criterion_tail_bounds);
    criterion("criterion 7: radial envelope regime (domination + table match)", 0.0,
              criterion_radial_regime);
    criterion("criterion 8: rank analytics (net-flip bound + published fixture)", 0.0,
              criterion_rank_analytics);
    criterion("criterion 9: oracle equivalence (FFT, convolution, spectra, quadrature)", 0.0,
              criterion_oracles);
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
