#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace declinekit {

enum class PopProvenance { observed, interpolated };

// Contiguous annual world-population series. Gap years between observations
// are linearly interpolated and flagged as such.
class PopulationSeries {
public:
    PopulationSeries(std::map<int, double> values, std::map<int, PopProvenance> provenance);

    bool contains(int year) const { return values_.count(year) != 0; }
    double at(int year) const;
    PopProvenance provenance(int year) const;

    int first_year() const { return values_.begin()->first; }
    int last_year() const { return values_.rbegin()->first; }
    std::size_t size() const { return values_.size(); }

    const std::map<int, double>& values() const { return values_; }

private:
    std::map<int, double> values_;
    std::map<int, PopProvenance> provenance_;
};

// One source table: year -> population, in precedence order.
using PopulationTable = std::vector<std::pair<int, double>>;

struct PopulationBuildResult {
    PopulationSeries series;
    std::vector<std::string> warnings;
};

// Merges the source tables (earlier source wins on overlap, with a conflict
// warning when values disagree) and fills gaps over [year_lo, year_hi] by
// linear interpolation between the nearest observations. The observations
// must bracket the requested range; there is no extrapolation.
PopulationBuildResult build_population_series(const std::vector<PopulationTable>& sources,
                                              int year_lo, int year_hi);

// Reads a year,population table. Header names are configurable.
PopulationTable read_population_csv(std::istream& in, const std::string& year_column = "year",
                                    const std::string& population_column = "population",
                                    char delimiter = ',');

}  // namespace declinekit
