#include "noisegain/rankdiff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "noisegain/errors.hpp"

namespace noisegain {

namespace {

void check_unique_ids(const std::vector<ModelRecord>& records) {
    std::set<std::string> seen;
    for (const auto& r : records) {
        if (!seen.insert(r.model_id).second) {
            throw DuplicateModelId("duplicate model_id '" + r.model_id + "'");
        }
    }
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::vector<int> compute_ranks(const std::vector<ModelRecord>& records, RankColumn column) {
    if (records.empty()) throw InvalidArgument("need at least one record");
    check_unique_ids(records);
    const std::size_t n = records.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto acc = [&](std::size_t i) {
        return column == RankColumn::clean ? records[i].clean_acc : records[i].noisy_acc;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (acc(a) != acc(b)) return acc(a) > acc(b);
        return records[a].model_id < records[b].model_id;
    });
    std::vector<int> ranks(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        ranks[order[pos]] = static_cast<int>(pos) + 1;
    }
    return ranks;
}

RankReport rank_diff(const std::vector<ModelRecord>& records) {
    const std::vector<int> clean = compute_ranks(records, RankColumn::clean);
    const std::vector<int> noisy = compute_ranks(records, RankColumn::noisy);
    RankReport report;
    report.entries.resize(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        report.entries[i] = {records[i].model_id, clean[i], noisy[i], noisy[i] - clean[i]};
    }
    return report;
}

RobustnessProfile fit_profile(const ModelRecord& record) {
    const auto& samples = record.severity_samples;
    if (samples.size() < 2) {
        throw InsufficientSamples("need at least 2 severity samples including tau=0");
    }
    const auto zero = std::find_if(samples.begin(), samples.end(),
                                   [](const auto& s) { return s.first == 0.0; });
    if (zero == samples.end()) {
        throw InsufficientSamples("severity samples must include tau=0");
    }

    RobustnessProfile prof;
    prof.p = zero->second;

    // Slope of the drop through the origin, clamped to rho >= 0.
    double num = 0.0;
    double den = 0.0;
    for (const auto& [tau, acc] : samples) {
        if (tau <= 0.0) continue;
        num += tau * (prof.p - acc);
        den += tau * tau;
        prof.tau0 = std::max(prof.tau0, tau);
    }
    if (den == 0.0) {
        throw InsufficientSamples("need at least one sample with tau > 0");
    }
    prof.rho = std::max(num / den, 0.0);

    for (const auto& [tau, acc] : samples) {
        if (tau <= 0.0) continue;
        const double residual = acc - (prof.p - prof.rho * tau);
        prof.curvature = std::max(prof.curvature, std::fabs(residual) / (tau * tau));
    }
    return prof;
}

std::optional<double> flip_threshold(const RobustnessProfile& a, const RobustnessProfile& b) {
    if (a.rho == b.rho) return std::nullopt;
    return (a.p - b.p) / (a.rho - b.rho);
}

bool margin_holds(const RobustnessProfile& a, const RobustnessProfile& b, double tau) {
    if (tau < 0.0) throw InvalidArgument("tau must be >= 0");
    const double first_order = (a.p - b.p) - (a.rho - b.rho) * tau;
    return std::fabs(first_order) > (a.curvature + b.curvature) * tau * tau;
}

std::vector<int> ambiguous_set(int i, const std::vector<RobustnessProfile>& profiles,
                               double tau) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(profiles.size()); ++j) {
        if (j == i) continue;
        if (!margin_holds(profiles[static_cast<std::size_t>(i)],
                          profiles[static_cast<std::size_t>(j)], tau)) {
            out.push_back(j);
        }
    }
    return out;
}

RankDiffPrediction predicted_rankdiff(int i, const std::vector<RobustnessProfile>& profiles,
                                      double tau) {
    if (tau < 0.0) throw InvalidArgument("tau must be >= 0");
    const RobustnessProfile& pi = profiles[static_cast<std::size_t>(i)];
    RankDiffPrediction out;
    for (int j = 0; j < static_cast<int>(profiles.size()); ++j) {
        if (j == i) continue;
        const RobustnessProfile& pj = profiles[static_cast<std::size_t>(j)];
        if (pi.rho != pj.rho) {
            const double tstar = (pi.p - pj.p) / (pi.rho - pj.rho);
            if (tstar > 0.0 && tstar <= tau) {
                out.predicted -= sgn(pj.rho - pi.rho);
            }
        }
    }
    out.ambiguity = static_cast<int>(ambiguous_set(i, profiles, tau).size());
    return out;
}

PairwiseWinner pairwise_winner(const RobustnessProfile& a, const RobustnessProfile& b,
                               double tau) {
    if (!margin_holds(a, b, tau)) return PairwiseWinner::ambiguous;
    const double first_order = (a.p - b.p) - (a.rho - b.rho) * tau;
    return first_order > 0.0 ? PairwiseWinner::first : PairwiseWinner::second;
}

std::vector<ModelRecord> parse_model_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw BadTable("empty table");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "model_id" || header[1] != "clean_acc" ||
        header[2] != "noisy_acc") {
        throw BadTable("header must start with model_id,clean_acc,noisy_acc");
    }
    std::vector<double> taus;
    for (std::size_t c = 3; c < header.size(); ++c) {
        if (header[c].rfind("tau=", 0) != 0) {
            throw BadTable("severity columns must be named tau=<value>");
        }
        taus.push_back(std::stod(header[c].substr(4)));
    }

    std::vector<ModelRecord> records;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw BadTable("row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(header.size()));
        }
        ModelRecord rec;
        rec.model_id = cells[0];
        rec.clean_acc = std::stod(cells[1]);
        rec.noisy_acc = std::stod(cells[2]);
        for (std::size_t c = 0; c < taus.size(); ++c) {
            rec.severity_samples.emplace_back(taus[c], std::stod(cells[3 + c]));
        }
        std::sort(rec.severity_samples.begin(), rec.severity_samples.end());
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw BadTable("table has no data rows");
    return records;
}

std::string render_rank_table(const std::vector<ModelRecord>& records,
                              const RankReport& report) {
    std::string out = "model_id,clean_acc,noisy_acc,rank_clean,rank_noisy,rank_diff\n";
    char buf[128];
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto& e = report.entries[i];
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%d,%d,%d", r.clean_acc, r.noisy_acc,
                      e.rank_clean, e.rank_noisy, e.rank_diff);
        out += r.model_id;
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace noisegain
