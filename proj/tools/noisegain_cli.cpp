// Command-line frontend: regenerates the simulation tables and exposes the
// rank analytics over delimited model tables.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisegain/errors.hpp"
#include "noisegain/field.hpp"
#include "noisegain/normlip.hpp"
#include "noisegain/pooling.hpp"
#include "noisegain/rankdiff.hpp"
#include "noisegain/stemgain.hpp"
#include "noisegain/table.hpp"

namespace ng = noisegain;

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    int trials = 0;  // 0: per-command default (100 for gains, 200000 for pooling)
    int grid = 512;
    double sigma = 1.0;
    int order = 64;
    std::string format = "csv";
    std::string out;
    bool serial = false;

    int trials_or(int fallback) const { return trials > 0 ? trials : fallback; }
    // Requested grid side rounded down to a multiple of the factor (and up
    // to 2 output samples per axis).
    int grid_for_factor(int s) const { return std::max(grid / s, 2) * s; }
};

ng::TableFormat parse_format(const std::string& name) {
    if (name == "csv") return ng::TableFormat::csv;
    if (name == "records") return ng::TableFormat::records;
    throw ng::InvalidArgument("format must be csv or records");
}

void emit(const ng::Table& table, const CommonOpts& opts) {
    const std::string text = table.render(parse_format(opts.format));
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw ng::InvalidArgument("cannot open output file " + opts.out);
    file << text;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "master seed for all random streams");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials");
    cmd->add_option("--grid", opts.grid, "grid side (power of two)");
    cmd->add_option("--sigma", opts.sigma, "noise standard deviation");
    cmd->add_option("--order", opts.order, "Gauss-Hermite quadrature order");
    cmd->add_option("--format", opts.format, "output format: csv or records");
    cmd->add_option("--out", opts.out, "output path (default: stdout)");
    cmd->add_flag("--serial", opts.serial, "disable OpenMP parallel loops");
}

ng::Exec exec_mode(const CommonOpts& opts) {
    return opts.serial ? ng::Exec::serial : ng::Exec::parallel;
}

// Purpose tags keep subcommand streams disjoint under one master seed.
enum : std::uint64_t {
    kStreamStem = 1ull << 32,
    kStreamDown = 2ull << 32,
    kStreamPool = 3ull << 32,
    kStreamLip = 4ull << 32,
};

ng::Table run_gain_stem(const std::vector<int>& ks, const CommonOpts& opts) {
    ng::Table table({"k", "analytic", "mc_mean", "mc_std"});
    const int trials = opts.trials_or(100);
    std::uint64_t stream = kStreamStem;
    for (int k : ks) {
        const ng::Kernel kern = ng::make_box_kernel(k);
        const double analytic = ng::stem_gain_analytic(kern);
        const ng::McEstimate mc = ng::stem_gain_monte_carlo(
            kern, opts.grid, opts.grid, opts.sigma, trials,
            {opts.seed, stream}, exec_mode(opts));
        stream += static_cast<std::uint64_t>(trials);
        table.add_row({static_cast<long long>(k), analytic, mc.mean, mc.std});
    }
    return table;
}

ng::Table run_gain_downsample(const std::vector<int>& ss, const CommonOpts& opts) {
    ng::Table table({"s", "analytic", "mc_mean", "mc_std"});
    const int trials = opts.trials_or(100);
    std::uint64_t stream = kStreamDown;
    for (int s : ss) {
        const ng::DownsampleOp op = ng::DownsampleOp::box(s);
        const double analytic = ng::downsample_gain_analytic(op);
        const int grid = opts.grid_for_factor(s);
        const ng::McEstimate mc = ng::downsample_gain_monte_carlo(
            op, grid, grid, opts.sigma, trials,
            {opts.seed, stream}, exec_mode(opts));
        stream += static_cast<std::uint64_t>(trials);
        table.add_row({static_cast<long long>(s), analytic, mc.mean, mc.std});
    }
    return table;
}

ng::Table run_envelope(const std::string& kind, int k, double width, const CommonOpts& opts) {
    const ng::Kernel kern = kind == "gaussian" ? ng::make_gaussian_kernel(k, width)
                                               : ng::make_box_kernel(k);
    const ng::RadialProfile profile =
        ng::radial_profile(kern, opts.grid, 0.0, exec_mode(opts));
    const ng::EnvelopeFit fit = ng::fit_envelope(profile, k);

    ng::Table table({"kernel", "k", "r", "empirical", "envelope", "dominated"});
    const double targets[3] = {M_PI / 8.0, M_PI / 4.0, M_PI / 2.0};
    for (double target : targets) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < profile.radius.size(); ++i) {
            if (std::fabs(profile.radius[i] - target) <
                std::fabs(profile.radius[best] - target)) {
                best = i;
            }
        }
        table.add_row({kind, static_cast<long long>(k), profile.radius[best],
                       profile.magnitude[best], ng::envelope_value(fit, profile.radius[best]),
                       static_cast<long long>(fit.dominated ? 1 : 0)});
    }
    return table;
}

ng::Table run_pooling(const std::vector<int>& ws, const CommonOpts& opts) {
    ng::Table table({"w", "k", "avg_mse_em", "avg_mse_th", "max_bias_em", "max_bias_th",
                     "max_mse_em", "max_mse_th"});
    const int trials = std::max(opts.trials_or(200000), 100);
    std::uint64_t stream = kStreamPool;
    for (int w : ws) {
        const int k = w * w;
        const ng::PoolWindow window = ng::PoolWindow::uniform(k);
        const ng::PoolStats avg_mc = ng::pool_error_monte_carlo(
            window, opts.sigma, ng::PoolType::avg, trials, {opts.seed, stream}, 0,
            exec_mode(opts));
        stream += static_cast<std::uint64_t>(trials);
        const ng::PoolStats max_mc = ng::pool_error_monte_carlo(
            window, opts.sigma, ng::PoolType::max, trials, {opts.seed, stream}, 0,
            exec_mode(opts));
        stream += static_cast<std::uint64_t>(trials);
        const ng::PoolStats avg_th = ng::avg_error_stats(k, opts.sigma);
        const ng::PoolStats max_th = ng::max_error_stats_uniform(k, opts.sigma, opts.order);
        table.add_row({static_cast<long long>(w), static_cast<long long>(k), avg_mc.mse,
                       avg_th.mse, max_mc.bias, max_th.bias, max_mc.mse, max_th.mse});
    }
    return table;
}

ng::Table run_lipschitz(const std::vector<std::string>& presets, double lz, int dim,
                        int maps, double tol, const CommonOpts& opts) {
    ng::Table table({"preset", "bound", "measured", "ratio"});
    std::uint64_t stream = kStreamLip;
    std::vector<ng::NormConstants> used;
    for (const std::string& name : presets) {
        const ng::NormConstants constants = ng::preset_constants(name);
        used.push_back(constants);
        const ng::BoundReport report = ng::verify_bound(
            dim, lz, constants, maps, tol, {opts.seed, stream}, exec_mode(opts));
        stream += 2ull * static_cast<std::uint64_t>(maps);
        table.add_row({report.preset, report.bound, report.max_measured, report.ratio});
    }
    // Pairwise bound ratios double as sensitivity ratios (L_z cancels).
    for (std::size_t a = 0; a < used.size(); ++a) {
        for (std::size_t b = 0; b < used.size(); ++b) {
            if (a == b) continue;
            if (used[a].sigma_min() < used[b].sigma_min()) {
                table.add_row({"ratio(" + used[a].name + "," + used[b].name + ")",
                               ng::lipschitz_bound(lz, used[a]),
                               ng::lipschitz_bound(lz, used[b]),
                               ng::sensitivity_ratio(used[a], used[b])});
            }
        }
    }
    return table;
}

struct RankDiffOpts {
    std::string input;
    double tau = -1.0;  // < 0: no prediction columns
};

ng::Table run_rankdiff(const RankDiffOpts& ropts) {
    std::string text;
    if (ropts.input.empty() || ropts.input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(ropts.input, std::ios::binary);
        if (!file) throw ng::InvalidArgument("cannot open input table " + ropts.input);
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    const std::vector<ng::ModelRecord> records = ng::parse_model_table(text);
    const ng::RankReport report = ng::rank_diff(records);

    const bool with_prediction = ropts.tau >= 0.0 && !records.front().severity_samples.empty();
    std::vector<std::string> columns = {"model_id", "clean_acc",  "noisy_acc",
                                        "rank_clean", "rank_noisy", "rank_diff"};
    if (with_prediction) {
        columns.push_back("predicted_rankdiff");
        columns.push_back("ambiguity");
    }
    ng::Table table(columns);

    std::vector<ng::RobustnessProfile> profiles;
    if (with_prediction) {
        for (const auto& rec : records) profiles.push_back(ng::fit_profile(rec));
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto& e = report.entries[i];
        std::vector<ng::Table::Cell> row = {r.model_id, r.clean_acc, r.noisy_acc,
                                            static_cast<long long>(e.rank_clean),
                                            static_cast<long long>(e.rank_noisy),
                                            static_cast<long long>(e.rank_diff)};
        if (with_prediction) {
            const ng::RankDiffPrediction pred =
                ng::predicted_rankdiff(static_cast<int>(i), profiles, ropts.tau);
            row.push_back(static_cast<long long>(pred.predicted));
            row.push_back(static_cast<long long>(pred.ambiguity));
        }
        table.add_row(std::move(row));
    }
    return table;
}

void run_repro_all(const CommonOpts& opts) {
    if (opts.out.empty()) {
        throw ng::InvalidArgument("repro-all needs --out <directory>");
    }
    std::filesystem::create_directories(opts.out);
    const ng::TableFormat fmt = parse_format(opts.format);
    const std::string ext = opts.format == "csv" ? ".csv" : ".jsonl";
    auto write = [&](const std::string& name, const ng::Table& table) {
        std::ofstream file(std::filesystem::path(opts.out) / (name + ext), std::ios::binary);
        file << table.render(fmt);
    };

    write("gain_stem", run_gain_stem({4, 8, 12, 16, 20, 24, 28, 32}, opts));
    write("gain_downsample", run_gain_downsample({1, 2, 3, 4, 6, 8, 12, 16}, opts));
    write("pooling", run_pooling({2, 3, 4, 5, 6}, opts));

    write("lipschitz", run_lipschitz({"INCEPTION", "OPENAI"}, 3.0, 48, 32, 1e-4, opts));

    ng::Table envelope_box = run_envelope("box", 12, 1.0, opts);
    ng::Table envelope_gauss = run_envelope("gaussian", 5, 1.0, opts);
    std::ofstream file(std::filesystem::path(opts.out) / ("envelope" + ext), std::ios::binary);
    if (fmt == ng::TableFormat::csv) {
        const std::string first = envelope_box.render(fmt);
        const std::string second = envelope_gauss.render(fmt);
        file << first << second.substr(second.find('\n') + 1);  // one header
    } else {
        file << envelope_box.render(fmt) << envelope_gauss.render(fmt);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-robustness analysis toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::vector<int> ks = {4, 8, 12, 16, 20, 24, 28, 32};
    CLI::App* gain_stem = app.add_subcommand("gain-stem", "noise gain of box stem kernels");
    add_common(gain_stem, opts);
    gain_stem->add_option("--k", ks, "kernel sides")->delimiter(',');

    std::vector<int> ss = {1, 2, 3, 4, 6, 8, 12, 16};
    CLI::App* gain_down =
        app.add_subcommand("gain-downsample", "noise gain of anti-aliased downsampling");
    add_common(gain_down, opts);
    gain_down->add_option("--s", ss, "downsampling factors")->delimiter(',');

    std::string env_kernel = "box";
    int env_k = 12;
    double env_width = 1.0;
    CLI::App* envelope =
        app.add_subcommand("envelope", "radial spectral profile and fitted envelope");
    add_common(envelope, opts);
    envelope->add_option("--kernel", env_kernel, "box or gaussian");
    envelope->add_option("--k", env_k, "kernel side");
    envelope->add_option("--width", env_width, "gaussian width");

    std::vector<int> ws = {2, 3, 4, 5, 6};
    CLI::App* pooling = app.add_subcommand("pooling", "pooling error statistics");
    add_common(pooling, opts);
    pooling->add_option("--w", ws, "window sides")->delimiter(',');

    std::vector<std::string> presets = {"INCEPTION", "OPENAI"};
    double lz = 3.0;
    int dim = 48;
    int maps = 32;
    double tol = 1e-4;
    CLI::App* lipschitz =
        app.add_subcommand("lipschitz", "normalization Lipschitz bound verification");
    add_common(lipschitz, opts);
    lipschitz->add_option("--presets", presets, "normalization presets")->delimiter(',');
    lipschitz->add_option("--lz", lz, "backbone Lipschitz constant");
    lipschitz->add_option("--dim", dim, "map dimension (multiple of 3)");
    lipschitz->add_option("--maps", maps, "number of random maps");
    lipschitz->add_option("--tol", tol, "bound slack tolerance");

    RankDiffOpts ropts;
    CLI::App* rankdiff = app.add_subcommand("rankdiff", "rank analytics over a model table");
    add_common(rankdiff, opts);
    rankdiff->add_option("--input", ropts.input, "input table path ('-' for stdin)");
    rankdiff->add_option("--tau", ropts.tau,
                         "severity for predicted-vs-actual columns (needs tau= columns)");

    CLI::App* repro = app.add_subcommand("repro-all", "regenerate all simulation tables");
    add_common(repro, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gain_stem->parsed()) {
            emit(run_gain_stem(ks, opts), opts);
        } else if (gain_down->parsed()) {
            emit(run_gain_downsample(ss, opts), opts);
        } else if (envelope->parsed()) {
            emit(run_envelope(env_kernel, env_k, env_width, opts), opts);
        } else if (pooling->parsed()) {
            emit(run_pooling(ws, opts), opts);
        } else if (lipschitz->parsed()) {
            emit(run_lipschitz(presets, lz, dim, maps, tol, opts), opts);
        } else if (rankdiff->parsed()) {
            emit(run_rankdiff(ropts), opts);
        } else if (repro->parsed()) {
            run_repro_all(opts);
        }
    } catch (const ng::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Unhandled: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
