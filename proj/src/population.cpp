#include "declinekit/population.hpp"

#include <charconv>
#include <cmath>

#include "declinekit/csv.hpp"
#include "declinekit/errors.hpp"

namespace declinekit {

PopulationSeries::PopulationSeries(std::map<int, double> values,
                                   std::map<int, PopProvenance> provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
    if (values_.empty()) throw InternalError("PopulationSeries: empty series");
    int expected = values_.begin()->first;
    for (const auto& [year, pop] : values_) {
        if (year != expected++) throw InternalError("PopulationSeries: year gap at " +
                                                    std::to_string(year));
        if (!(pop > 0.0)) throw InternalError("PopulationSeries: non-positive population in " +
                                              std::to_string(year));
    }
}

double PopulationSeries::at(int year) const {
    const auto it = values_.find(year);
    if (it == values_.end())
        throw DataError("population series does not cover year " + std::to_string(year));
    return it->second;
}

PopProvenance PopulationSeries::provenance(int year) const {
    const auto it = provenance_.find(year);
    if (it == provenance_.end())
        throw DataError("population series does not cover year " + std::to_string(year));
    return it->second;
}

PopulationBuildResult build_population_series(const std::vector<PopulationTable>& sources,
                                              int year_lo, int year_hi) {
    if (sources.empty()) throw DataError("build_population_series: no sources given");
    if (year_lo > year_hi)
        throw ConfigError("build_population_series: year_lo " + std::to_string(year_lo) +
                          " exceeds year_hi " + std::to_string(year_hi));

    std::vector<std::string> warnings;

    // Merge observations; the earliest-listed source wins on overlapping years.
    std::map<int, double> observed;
    std::size_t source_index = 0;
    for (const auto& table : sources) {
        ++source_index;
        for (const auto& [year, pop] : table) {
            if (!(pop > 0.0))
                throw DataError("population source " + std::to_string(source_index) + ": year " +
                                std::to_string(year) + " has non-positive population");
            const auto [it, inserted] = observed.emplace(year, pop);
            if (!inserted && it->second != pop)
                warnings.push_back("year " + std::to_string(year) + ": source " +
                                   std::to_string(source_index) + " value " +
                                   csv::format_double(pop) + " ignored in favour of " +
                                   csv::format_double(it->second) +
                                   " from an earlier-listed source");
        }
    }
    if (observed.empty()) throw DataError("build_population_series: sources contain no data");
    if (observed.begin()->first > year_lo || observed.rbegin()->first < year_hi)
        throw DataError("build_population_series: observations cover [" +
                        std::to_string(observed.begin()->first) + ", " +
                        std::to_string(observed.rbegin()->first) +
                        "] which does not bracket the requested range [" +
                        std::to_string(year_lo) + ", " + std::to_string(year_hi) +
                        "]; extrapolation is not supported");

    std::map<int, double> values;
    std::map<int, PopProvenance> provenance;
    auto upper = observed.lower_bound(year_lo);  // first observation at or after year_lo
    for (int year = year_lo; year <= year_hi; ++year) {
        while (upper != observed.end() && upper->first < year) ++upper;
        if (upper != observed.end() && upper->first == year) {
            values[year] = upper->second;
            provenance[year] = PopProvenance::observed;
            continue;
        }
        const auto after = upper;
        const auto before = std::prev(upper);
        const double span = static_cast<double>(after->first - before->first);
        const double t = static_cast<double>(year - before->first) / span;
        values[year] = before->second + t * (after->second - before->second);
        provenance[year] = PopProvenance::interpolated;
    }

    return {PopulationSeries(std::move(values), std::move(provenance)), std::move(warnings)};
}

PopulationTable read_population_csv(std::istream& in, const std::string& year_column,
                                    const std::string& population_column, char delimiter) {
    csv::Reader reader(in, delimiter);
    const auto col_year = reader.column(year_column);
    const auto col_pop = reader.column(population_column);
    if (!col_year) throw SchemaError("missing required column '" + year_column + "'");
    if (!col_pop) throw SchemaError("missing required column '" + population_column + "'");

    PopulationTable table;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        const long line = reader.line_number();
        if (fields.size() <= std::max(*col_year, *col_pop))
            throw DataError("line " + std::to_string(line) + ": too few fields");
        int year = 0;
        {
            const std::string& s = fields[*col_year];
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw DataError("line " + std::to_string(line) + ": year is not an integer: '" +
                                s + "'");
        }
        double pop = 0.0;
        {
            const std::string& s = fields[*col_pop];
            try {
                std::size_t pos = 0;
                pop = std::stod(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw DataError("line " + std::to_string(line) +
                                ": population is not a number: '" + s + "'");
            }
        }
        table.emplace_back(year, pop);
    }
    return table;
}

}  // namespace declinekit
