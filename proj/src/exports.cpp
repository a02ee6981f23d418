#include "declinekit/exports.hpp"

#include "declinekit/csv.hpp"

namespace declinekit {

namespace {

const char* bool_field(bool value) { return value ? "true" : "false"; }

}  // namespace

void write_scan_grid_csv(std::ostream& out, const ScanResult& scan) {
    out << "year,m,pr_decline,degenerate\n";
    for (std::size_t i = 0; i < scan.years.size(); ++i) {
        for (std::size_t j = 0; j < scan.thresholds.size(); ++j) {
            const auto& cell = scan.cell(i, j);
            if (!cell) continue;
            out << scan.years[i] << ',' << csv::format_double(scan.thresholds[j]) << ','
                << csv::format_double(cell->pr_decline) << ',' << bool_field(cell->degenerate)
                << '\n';
        }
    }
}

nlohmann::json scan_grid_to_json(const ScanResult& scan) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < scan.years.size(); ++i) {
        for (std::size_t j = 0; j < scan.thresholds.size(); ++j) {
            const auto& cell = scan.cell(i, j);
            if (!cell) continue;
            rows.push_back({{"year", scan.years[i]},
                            {"m", scan.thresholds[j]},
                            {"pr_decline", cell->pr_decline},
                            {"degenerate", cell->degenerate}});
        }
    }
    return rows;
}

void write_scan_average_csv(std::ostream& out,
                            const std::vector<std::pair<int, double>>& curve) {
    out << "year,mean_pr_decline\n";
    for (const auto& [year, mean] : curve)
        out << year << ',' << csv::format_double(mean) << '\n';
}

nlohmann::json scan_average_to_json(const std::vector<std::pair<int, double>>& curve) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [year, mean] : curve)
        rows.push_back({{"year", year}, {"mean_pr_decline", mean}});
    return rows;
}

void write_prediction_csv(std::ostream& out, const std::vector<PredictionRatio>& ratios) {
    out << "m,observed_p,predicted_mean,ratio,band_lo,band_hi,degenerate\n";
    for (const auto& r : ratios) {
        out << csv::format_double(r.m) << ',' << csv::format_double(r.observed_p) << ','
            << csv::format_double(r.predicted_mean) << ',' << csv::format_double(r.ratio) << ','
            << csv::format_double(r.band_lo) << ',' << csv::format_double(r.band_hi) << ','
            << bool_field(r.degenerate) << '\n';
    }
}

nlohmann::json prediction_to_json(const std::vector<PredictionRatio>& ratios) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : ratios) {
        rows.push_back({{"m", r.m},
                        {"observed_p", r.observed_p},
                        {"predicted_mean", r.predicted_mean},
                        {"ratio", r.ratio},
                        {"band_lo", r.band_lo},
                        {"band_hi", r.band_hi},
                        {"degenerate", r.degenerate}});
    }
    return rows;
}

void write_annual_series_csv(std::ostream& out, const OnsetDiagnostics& diag) {
    out << "year,count,moving_avg\n";
    for (const auto& [year, count] : diag.annual_counts)
        out << year << ',' << count << ',' << csv::format_double(diag.moving_average.at(year))
            << '\n';
}

nlohmann::json annual_series_to_json(const OnsetDiagnostics& diag) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [year, count] : diag.annual_counts)
        rows.push_back(
            {{"year", year}, {"count", count}, {"moving_avg", diag.moving_average.at(year)}});
    return rows;
}

void write_gap_table_csv(std::ostream& out, const OnsetDiagnostics& diag) {
    out << "gap,observed_prop,expected_prop\n";
    for (const auto& [gap, observed] : diag.observed_gap_props)
        out << gap << ',' << csv::format_double(observed) << ','
            << csv::format_double(diag.expected_gap_props.at(gap)) << '\n';
}

nlohmann::json gap_table_to_json(const OnsetDiagnostics& diag) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [gap, observed] : diag.observed_gap_props)
        rows.push_back({{"gap", gap},
                        {"observed_prop", observed},
                        {"expected_prop", diag.expected_gap_props.at(gap)}});
    return rows;
}

nlohmann::json summary_to_json(const SummaryStats& stats) {
    nlohmann::json obj{{"n", stats.n},
                       {"mean", stats.mean},
                       {"sd", stats.sd},
                       {"median", stats.median},
                       {"min", stats.min},
                       {"max", stats.max},
                       {"tail_fraction", stats.tail_fraction}};
    obj["skewness"] = stats.skewness ? nlohmann::json(*stats.skewness) : nlohmann::json(nullptr);
    return obj;
}

nlohmann::json decline_to_json(const DeclineEstimate& estimate) {
    return {{"t_hat", estimate.t_hat},   {"m", estimate.m},
            {"pr_decline", estimate.pr_decline}, {"n_draws", estimate.n_draws},
            {"seed", estimate.seed},     {"degenerate", estimate.degenerate}};
}

}  // namespace declinekit
