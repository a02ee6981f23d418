#include "declinekit/event_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "declinekit/errors.hpp"

namespace declinekit {

namespace {
// Integer death counts place neighbouring magnitudes at least ~4e-4 apart at
// the top of the data range, so this slack cannot reclassify a real event; it
// only protects events sitting exactly on a threshold from log10 rounding.
constexpr double kMagnitudeSlack = 1e-9;
}  // namespace

SizedEventSet::SizedEventSet(std::vector<SizedEvent> records, Scale scale,
                             ThresholdKind threshold_kind)
    : records_(std::move(records)), scale_(scale), threshold_kind_(threshold_kind) {
    const bool consistent =
        (scale_ == Scale::raw_deaths && threshold_kind_ == ThresholdKind::log10_magnitude) ||
        (scale_ == Scale::per_100k && threshold_kind_ == ThresholdKind::absolute_rate);
    if (!consistent)
        throw ConfigError("SizedEventSet: scale and threshold kind are inconsistent");
    for (const auto& event : records_)
        if (!(event.size > 0.0))
            throw DataError("SizedEventSet: non-positive size in year " +
                            std::to_string(event.onset_year));
}

int SizedEventSet::first_onset_year() const {
    if (records_.empty()) throw DataError("SizedEventSet: empty set has no onset years");
    return std::min_element(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
               return a.onset_year < b.onset_year;
           })->onset_year;
}

int SizedEventSet::last_onset_year() const {
    if (records_.empty()) throw DataError("SizedEventSet: empty set has no onset years");
    return std::max_element(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
               return a.onset_year < b.onset_year;
           })->onset_year;
}

bool SizedEventSet::exceeds(const SizedEvent& event, double threshold) const {
    if (threshold_kind_ == ThresholdKind::log10_magnitude)
        return std::log10(event.size) >= threshold - kMagnitudeSlack;
    return event.size >= threshold;
}

std::vector<double> SizedEventSet::sizes() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& event : records_) out.push_back(event.size);
    return out;
}

SizedEventSet raw_event_set(const std::vector<WarRecord>& wars) {
    std::vector<SizedEvent> records;
    records.reserve(wars.size());
    for (const auto& war : wars)
        records.push_back({war.onset_year, static_cast<double>(war.battle_deaths)});
    return SizedEventSet(std::move(records), Scale::raw_deaths, ThresholdKind::log10_magnitude);
}

SizedEventSet normalize_sizes(const std::vector<WarRecord>& wars, const PopulationSeries& pop) {
    std::vector<int> missing;
    for (const auto& war : wars)
        if (!pop.contains(war.onset_year)) missing.push_back(war.onset_year);
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string list;
        for (int year : missing) {
            if (!list.empty()) list += ", ";
            list += std::to_string(year);
        }
        throw DataError("normalize_sizes: population series missing onset years: " + list);
    }

    std::vector<SizedEvent> records;
    records.reserve(wars.size());
    for (const auto& war : wars) {
        const double rate =
            static_cast<double>(war.battle_deaths) / pop.at(war.onset_year) * kPer100kFactor;
        records.push_back({war.onset_year, rate});
    }
    return SizedEventSet(std::move(records), Scale::per_100k, ThresholdKind::absolute_rate);
}

}  // namespace declinekit
