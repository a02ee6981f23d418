#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "declinekit/changepoint.hpp"
#include "declinekit/diagnostics.hpp"
#include "declinekit/inference.hpp"
#include "declinekit/prediction.hpp"
#include "declinekit/summary.hpp"

namespace declinekit {

// Plot-ready serializations. Doubles are written in shortest round-trip
// form, so identical results serialize to identical bytes. The JSON forms
// mirror the CSV columns field-for-field.

// Long form, one row per valid scan cell: year, m, pr_decline, degenerate.
void write_scan_grid_csv(std::ostream& out, const ScanResult& scan);
nlohmann::json scan_grid_to_json(const ScanResult& scan);

// Averaged series: year, mean_pr_decline.
void write_scan_average_csv(std::ostream& out,
                            const std::vector<std::pair<int, double>>& curve);
nlohmann::json scan_average_to_json(const std::vector<std::pair<int, double>>& curve);

// Per-threshold ratios: m, observed_p, predicted_mean, ratio, band_lo,
// band_hi, degenerate.
void write_prediction_csv(std::ostream& out, const std::vector<PredictionRatio>& ratios);
nlohmann::json prediction_to_json(const std::vector<PredictionRatio>& ratios);

// Annual onset series: year, count, moving_avg.
void write_annual_series_csv(std::ostream& out, const OnsetDiagnostics& diag);
nlohmann::json annual_series_to_json(const OnsetDiagnostics& diag);

// Gap table: gap, observed_prop, expected_prop.
void write_gap_table_csv(std::ostream& out, const OnsetDiagnostics& diag);
nlohmann::json gap_table_to_json(const OnsetDiagnostics& diag);

nlohmann::json summary_to_json(const SummaryStats& stats);
nlohmann::json decline_to_json(const DeclineEstimate& estimate);

}  // namespace declinekit
