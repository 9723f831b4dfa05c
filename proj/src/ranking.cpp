// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace streamvec {

std::optional<RunSummary> summarize_run(const RunLog& log) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& r : log.records) {
        if (r.status != EvalStatus::ok || !r.score) continue;
        auto& [sum, n] = acc[r.dataset];
        sum += *r.score;
        ++n;
    }
    if (acc.empty()) return std::nullopt;
    RunSummary s;
    s.name = log.name;
    s.params = log.params;
    double total = 0;
    for (const auto& [ds, sn] : acc) {
        const double mean = sn.first / static_cast<double>(sn.second);
        s.dataset_means[ds] = mean;
        total += mean;
    }
    s.overall_mean = total / static_cast<double>(acc.size());
    return s;
}

RankingReport rank_runs(const std::vector<RunLog>& logs) {
    RankingReport report;
    std::set<std::string> datasets;
    std::vector<RunSummary> runs;
    for (const auto& log : logs) {
        if (auto s = summarize_run(log)) {
            for (const auto& [ds, m] : s->dataset_means) datasets.insert(ds);
            runs.push_back(std::move(*s));
        } else {
            report.excluded.push_back(log.name);
        }
    }
    std::sort(runs.begin(), runs.end(), [](const RunSummary& a, const RunSummary& b) {
        if (std::abs(a.overall_mean - b.overall_mean) > 1e-12) return a.overall_mean > b.overall_mean;
        return a.name < b.name;
    });
    report.datasets.assign(datasets.begin(), datasets.end());
    for (std::size_t i = 0; i < runs.size(); ++i) report.rows.push_back({i + 1, std::move(runs[i])});
    return report;
}

void write_ranking_tsv(const RankingReport& report, std::ostream& out) {
    static const char* kParams[] = {"model", "emb_size", "window_size", "num_ns", "context_size"};
    out << "position\tconfig";
    for (const char* p : kParams) out << '\t' << p;
    for (const auto& ds : report.datasets) out << "\tmean_" << ds;
    out << "\toverall_mean\n";
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return buf;
    };
    for (const auto& row : report.rows) {
        out << row.position << '\t' << row.run.name;
        for (const char* p : kParams) {
            const auto it = row.run.params.find(p);
            out << '\t' << (it == row.run.params.end() ? std::string("-") : it->second);
        }
        for (const auto& ds : report.datasets) {
            const auto it = row.run.dataset_means.find(ds);
            out << '\t';
            if (it == row.run.dataset_means.end())
                out << '-';
            else
                out << num(it->second);
        }
        out << '\t' << num(row.run.overall_mean) << '\n';
    }
}

} // namespace streamvec
