#pragma once

#include <vector>

#include "declinekit/population.hpp"
#include "declinekit/war_data.hpp"

namespace declinekit {

enum class Scale { raw_deaths, per_100k };
enum class ThresholdKind { log10_magnitude, absolute_rate };

struct SizedEvent {
    int onset_year = 0;
    double size = 0.0;
};

// Events with a size measure and the threshold convention that goes with it:
// raw death counts are compared on the log10 magnitude scale, normalized
// per-100k rates are compared directly.
class SizedEventSet {
public:
    SizedEventSet(std::vector<SizedEvent> records, Scale scale, ThresholdKind threshold_kind);

    const std::vector<SizedEvent>& records() const { return records_; }
    Scale scale() const { return scale_; }
    ThresholdKind threshold_kind() const { return threshold_kind_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    int first_onset_year() const;
    int last_onset_year() const;

    // Whether the event counts as "size at least m" under this set's
    // threshold convention (inclusive boundary).
    bool exceeds(const SizedEvent& event, double threshold) const;

    std::vector<double> sizes() const;

private:
    std::vector<SizedEvent> records_;
    Scale scale_;
    ThresholdKind threshold_kind_;
};

// Raw battle-death sizes, thresholded by log10 magnitude.
SizedEventSet raw_event_set(const std::vector<WarRecord>& wars);

// Battle-deaths per 100,000 of world population at the onset year.
inline constexpr double kPer100kFactor = 1.0e5;
SizedEventSet normalize_sizes(const std::vector<WarRecord>& wars, const PopulationSeries& pop);

}  // namespace declinekit
