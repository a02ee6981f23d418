#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "declinekit/changepoint.hpp"
#include "declinekit/csv.hpp"
#include "declinekit/diagnostics.hpp"
#include "declinekit/errors.hpp"
#include "declinekit/event_set.hpp"
#include "declinekit/exports.hpp"
#include "declinekit/prediction.hpp"
#include "declinekit/summary.hpp"
#include "declinekit/war_data.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace declinekit;

namespace {

constexpr int kExitMissingInput = 2;
constexpr int kExitBadData = 3;
constexpr int kExitBadConfig = 4;
constexpr int kExitInternal = 5;

struct Config {
    std::string command;
    std::string wars_path;
    std::vector<std::string> population_paths;
    std::string scale = "raw";
    int year_lo = kDefaultScanFirstYear;
    int year_hi = kDefaultScanLastYear;
    std::vector<double> thresholds;  // empty means the scale's default grid
    int n_draws = kDefaultDeclineDraws;
    std::uint64_t seed = 0;
    int split_year = kDefaultSplitYear;
    std::string out_dir = ".";
    std::string format = "csv";
    bool exclude_boundary = false;
    int threads = 0;
    // diagnose
    int window = kDefaultMovingAverageWindow;
    int gap_sims = kDefaultGapSimulations;
    bool dedupe_onsets = false;
    // simulate
    double rate = 3.0;
    std::string law = "log_uniform";
    double lo_mag = 3.0;
    double hi_mag = 7.0;
    double exponent = 2.5;
    double x_min = 1000.0;
};

// Serializes every resolved setting so a run can be replayed exactly.
json manifest_json(const Config& cfg) {
    return json{{"command", cfg.command},
                {"wars", cfg.wars_path},
                {"population", cfg.population_paths},
                {"scale", cfg.scale},
                {"years", {cfg.year_lo, cfg.year_hi}},
                {"thresholds", cfg.thresholds},
                {"n_draws", cfg.n_draws},
                {"seed", cfg.seed},
                {"split_year", cfg.split_year},
                {"out", cfg.out_dir},
                {"format", cfg.format},
                {"exclude_boundary_thresholds", cfg.exclude_boundary},
                {"threads", cfg.threads},
                {"window", cfg.window},
                {"gap_sims", cfg.gap_sims},
                {"dedupe_onsets", cfg.dedupe_onsets},
                {"rate", cfg.rate},
                {"law", cfg.law},
                {"lo_mag", cfg.lo_mag},
                {"hi_mag", cfg.hi_mag},
                {"exponent", cfg.exponent},
                {"x_min", cfg.x_min}};
}

Config config_from_manifest(const json& m) {
    Config cfg;
    cfg.command = m.at("command").get<std::string>();
    cfg.wars_path = m.at("wars").get<std::string>();
    cfg.population_paths = m.at("population").get<std::vector<std::string>>();
    cfg.scale = m.at("scale").get<std::string>();
    cfg.year_lo = m.at("years").at(0).get<int>();
    cfg.year_hi = m.at("years").at(1).get<int>();
    cfg.thresholds = m.at("thresholds").get<std::vector<double>>();
    cfg.n_draws = m.at("n_draws").get<int>();
    cfg.seed = m.at("seed").get<std::uint64_t>();
    cfg.split_year = m.at("split_year").get<int>();
    cfg.out_dir = m.at("out").get<std::string>();
    cfg.format = m.at("format").get<std::string>();
    cfg.exclude_boundary = m.at("exclude_boundary_thresholds").get<bool>();
    cfg.threads = m.at("threads").get<int>();
    cfg.window = m.at("window").get<int>();
    cfg.gap_sims = m.at("gap_sims").get<int>();
    cfg.dedupe_onsets = m.at("dedupe_onsets").get<bool>();
    cfg.rate = m.at("rate").get<double>();
    cfg.law = m.at("law").get<std::string>();
    cfg.lo_mag = m.at("lo_mag").get<double>();
    cfg.hi_mag = m.at("hi_mag").get<double>();
    cfg.exponent = m.at("exponent").get<double>();
    cfg.x_min = m.at("x_min").get<double>();
    return cfg;
}

void validate_config(const Config& cfg) {
    if (cfg.n_draws < 1) throw ConfigError("--draws must be at least 1");
    if (cfg.year_lo < kCoverageFirstYear || cfg.year_hi > kCoverageLastYear ||
        cfg.year_lo > cfg.year_hi)
        throw ConfigError("--years must satisfy " + std::to_string(kCoverageFirstYear) +
                          " <= LO <= HI <= " + std::to_string(kCoverageLastYear));
    for (std::size_t i = 1; i < cfg.thresholds.size(); ++i)
        if (!(cfg.thresholds[i - 1] < cfg.thresholds[i]))
            throw ConfigError("--thresholds must be strictly increasing");
    if (cfg.scale != "raw" && cfg.scale != "normalized")
        throw ConfigError("--scale must be raw or normalized");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("--format must be csv or json");
    if (cfg.law != "log_uniform" && cfg.law != "power_law")
        throw ConfigError("--law must be log_uniform or power_law");
    if (cfg.scale == "normalized" && cfg.command != "simulate" && cfg.command != "diagnose" &&
        cfg.population_paths.empty())
        throw ConfigError("--scale normalized requires at least one --population file");
}

// All outputs go through here: the file appears only once fully written.
void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw DataError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::ifstream open_input(const std::string& path) {
    if (!fs::exists(path)) {
        std::cerr << "error: input file not found: " << path << "\n";
        std::exit(kExitMissingInput);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(kExitMissingInput);
    }
    return in;
}

std::vector<WarRecord> load_wars(const Config& cfg) {
    if (cfg.wars_path.empty()) throw ConfigError("--wars is required for this command");
    auto in = open_input(cfg.wars_path);
    auto result = ingest_wars(in);
    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
    std::cerr << "loaded " << result.records.size() << " wars from " << cfg.wars_path << "\n";
    return std::move(result.records);
}

SizedEventSet load_events(const Config& cfg) {
    const auto wars = load_wars(cfg);
    if (cfg.scale == "raw") return raw_event_set(wars);

    std::vector<PopulationTable> sources;
    for (const auto& path : cfg.population_paths) {
        auto in = open_input(path);
        sources.push_back(read_population_csv(in));
    }
    int lo = wars.front().onset_year, hi = lo;
    for (const auto& war : wars) {
        lo = std::min(lo, war.onset_year);
        hi = std::max(hi, war.onset_year);
    }
    auto built = build_population_series(sources, lo, hi);
    for (const auto& warning : built.warnings) std::cerr << "warning: " << warning << "\n";
    return normalize_sizes(wars, built.series);
}

std::vector<double> resolved_thresholds(const Config& cfg, Scale scale) {
    return cfg.thresholds.empty() ? default_thresholds(scale) : cfg.thresholds;
}

std::string render(const json& rows) { return rows.dump(2) + "\n"; }

void run_stats(const Config& cfg) {
    const auto events = load_events(cfg);
    const auto stats = summarize(events.sizes());
    const auto obj = summary_to_json(stats);
    if (cfg.format == "json") {
        write_atomic(fs::path(cfg.out_dir) / "stats.json", render(obj));
    } else {
        std::ostringstream out;
        out << "n,mean,sd,median,min,max,skewness,tail_fraction\n";
        out << stats.n << ',' << csv::format_double(stats.mean) << ','
            << csv::format_double(stats.sd) << ',' << csv::format_double(stats.median) << ','
            << csv::format_double(stats.min) << ',' << csv::format_double(stats.max) << ','
            << (stats.skewness ? csv::format_double(*stats.skewness) : std::string()) << ','
            << csv::format_double(stats.tail_fraction) << '\n';
        write_atomic(fs::path(cfg.out_dir) / "stats.csv", out.str());
    }
    std::cout << obj.dump(2) << "\n";
}

void run_scan(const Config& cfg) {
    const auto events = load_events(cfg);
    ScanOptions options;
    options.n_draws = cfg.n_draws;
    options.seed = cfg.seed;
    options.exclude_boundary_thresholds = cfg.exclude_boundary;
    options.n_threads = cfg.threads;
    const auto scan = scan_changepoints(events, cfg.year_lo, cfg.year_hi,
                                        resolved_thresholds(cfg, events.scale()), options);
    for (const auto& warning : scan.warnings) std::cerr << "warning: " << warning << "\n";

    const auto curve = average_over_thresholds(scan);
    const auto [year, probability] = locate_changepoint(curve);

    const fs::path dir(cfg.out_dir);
    if (cfg.format == "json") {
        write_atomic(dir / "scan_grid.json", render(scan_grid_to_json(scan)));
        write_atomic(dir / "scan_average.json", render(scan_average_to_json(curve)));
    } else {
        std::ostringstream grid, average;
        write_scan_grid_csv(grid, scan);
        write_scan_average_csv(average, curve);
        write_atomic(dir / "scan_grid.csv", grid.str());
        write_atomic(dir / "scan_average.csv", average.str());
    }
    std::cout << "most likely changepoint: " << year << " (mean decline probability "
              << csv::format_double(probability) << ")\n";
}

void run_predict(const Config& cfg) {
    const auto events = load_events(cfg);
    const auto ratios = predict_proportion_ratios(
        events, cfg.split_year, resolved_thresholds(cfg, events.scale()), cfg.n_draws, cfg.seed);
    const fs::path dir(cfg.out_dir);
    if (cfg.format == "json") {
        write_atomic(dir / "prediction.json", render(prediction_to_json(ratios)));
    } else {
        std::ostringstream out;
        write_prediction_csv(out, ratios);
        write_atomic(dir / "prediction.csv", out.str());
    }
    std::cout << "wrote " << ratios.size() << " prediction rows\n";
}

void run_diagnose(const Config& cfg) {
    const auto wars = load_wars(cfg);
    auto diag = onset_frequency(wars, cfg.window);
    const auto gaps = gap_distribution(wars, cfg.gap_sims, cfg.seed, cfg.dedupe_onsets);
    diag.gaps = gaps.gaps;
    diag.lambda_hat = gaps.lambda_hat;
    diag.observed_gap_props = gaps.observed_gap_props;
    diag.expected_gap_props = gaps.expected_gap_props;

    const fs::path dir(cfg.out_dir);
    if (cfg.format == "json") {
        write_atomic(dir / "annual_series.json", render(annual_series_to_json(diag)));
        write_atomic(dir / "gap_table.json", render(gap_table_to_json(diag)));
    } else {
        std::ostringstream annual, gap_table;
        write_annual_series_csv(annual, diag);
        write_gap_table_csv(gap_table, diag);
        write_atomic(dir / "annual_series.csv", annual.str());
        write_atomic(dir / "gap_table.csv", gap_table.str());
    }
    std::cout << "mean onset rate " << csv::format_double(diag.mean_rate) << " per year, mean gap "
              << csv::format_double(diag.lambda_hat) << " years\n";
}

void run_simulate(const Config& cfg) {
    const SizeLaw law = cfg.law == "log_uniform"
                            ? SizeLaw(LogUniformLaw{cfg.lo_mag, cfg.hi_mag})
                            : SizeLaw(DiscretePowerLaw{cfg.exponent, cfg.x_min});
    const auto corpus = generate_stationary_corpus(cfg.year_lo, cfg.year_hi, cfg.rate, law, cfg.seed);

    // War-schema CSV so the corpus feeds straight back into the other
    // commands; sizes are rounded to whole deaths.
    std::ostringstream out;
    out << "id,name,type,onset_year,end_year,battle_deaths\n";
    std::size_t i = 0;
    for (const auto& event : corpus.records()) {
        out << "synthetic-" << i++ << ",,interstate," << event.onset_year << ','
            << event.onset_year << ',' << static_cast<long long>(std::llround(event.size)) << '\n';
    }
    write_atomic(fs::path(cfg.out_dir) / "corpus.csv", out.str());
    std::cout << "wrote " << corpus.size() << " synthetic events\n";
}

void dispatch(const Config& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.out_dir);
    if (cfg.command == "stats") run_stats(cfg);
    else if (cfg.command == "scan") run_scan(cfg);
    else if (cfg.command == "predict") run_predict(cfg);
    else if (cfg.command == "diagnose") run_diagnose(cfg);
    else if (cfg.command == "simulate") run_simulate(cfg);
    else throw ConfigError("unknown command " + cfg.command);
    write_atomic(fs::path(cfg.out_dir) / "manifest.json", manifest_json(cfg).dump(2) + "\n");
}

void add_common_options(CLI::App* sub, Config& cfg, bool wants_data) {
    if (wants_data) {
        sub->add_option("--wars", cfg.wars_path, "war CSV file");
        sub->add_option("--population", cfg.population_paths,
                        "population CSV file(s), in precedence order");
        sub->add_option("--scale", cfg.scale, "size scale: raw or normalized")
            ->check(CLI::IsMember({"raw", "normalized"}));
    }
    sub->add_option("--draws", cfg.n_draws, "Monte Carlo draws per estimate");
    sub->add_option("--seed", cfg.seed, "master random seed")->envname("DECLINEKIT_SEED");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
}

void add_years_option(CLI::App* sub, Config& cfg, const char* help) {
    sub->add_option_function<std::string>(
        "--years",
        [&cfg](const std::string& value) {
            if (value == "figure") {
                cfg.year_lo = kFigureScanFirstYear;
                cfg.year_hi = kFigureScanLastYear;
                return;
            }
            const auto colon = value.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--years", "expected LO:HI or a preset name");
            try {
                cfg.year_lo = std::stoi(value.substr(0, colon));
                cfg.year_hi = std::stoi(value.substr(colon + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--years", "expected integer LO:HI");
            }
        },
        help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian changepoint analysis for heavy-tailed event records"};
    app.require_subcommand(1);

    Config cfg;
    std::string manifest_path;

    auto* stats = app.add_subcommand("stats", "summary statistics of event sizes");
    add_common_options(stats, cfg, true);

    auto* scan = app.add_subcommand("scan", "decline probability over candidate changepoints");
    add_common_options(scan, cfg, true);
    add_years_option(scan, cfg,
                     "candidate year range LO:HI (default 1859:1970; 'figure' selects 1856:1989)");
    scan->add_option("--thresholds", cfg.thresholds, "size thresholds (default per scale)")
        ->delimiter(',');
    scan->add_flag("--exclude-boundary-thresholds", cfg.exclude_boundary,
                   "drop thresholds that sit outside the observed size range");

    auto* predict = app.add_subcommand("predict", "observed vs predicted exceedance ratios");
    add_common_options(predict, cfg, true);
    predict->add_option("--split-year", cfg.split_year, "last year of the training period");
    predict->add_option("--thresholds", cfg.thresholds, "size thresholds (default per scale)")
        ->delimiter(',');

    auto* diagnose = app.add_subcommand("diagnose", "onset frequency and gap diagnostics");
    add_common_options(diagnose, cfg, true);
    diagnose->add_option("--window", cfg.window, "moving average window (odd)");
    diagnose->add_option("--gap-sims", cfg.gap_sims, "Poisson replicates for expected gaps");
    diagnose->add_flag("--dedupe-onsets", cfg.dedupe_onsets,
                       "collapse shared onset years before computing gaps");

    auto* simulate = app.add_subcommand("simulate", "generate a stationary synthetic corpus");
    add_common_options(simulate, cfg, false);
    add_years_option(simulate, cfg, "corpus year span LO:HI");
    simulate->add_option("--rate", cfg.rate, "onsets per year");
    simulate->add_option("--law", cfg.law, "size law: log_uniform or power_law")
        ->check(CLI::IsMember({"log_uniform", "power_law"}));
    simulate->add_option("--lo-mag", cfg.lo_mag, "log_uniform lower magnitude");
    simulate->add_option("--hi-mag", cfg.hi_mag, "log_uniform upper magnitude");
    simulate->add_option("--exponent", cfg.exponent, "power_law exponent (> 1)");
    simulate->add_option("--x-min", cfg.x_min, "power_law size floor");
    simulate->parse_complete_callback([&cfg] {
        if (cfg.year_lo == kDefaultScanFirstYear && cfg.year_hi == kDefaultScanLastYear) {
            cfg.year_lo = kCoverageFirstYear;
            cfg.year_hi = kCoverageLastYear;
        }
    });

    auto* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
    rerun->add_option("--manifest", manifest_path, "manifest.json from a previous run")
        ->required();
    std::string rerun_out;
    rerun->add_option("--out", rerun_out, "redirect outputs to a different directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    try {
        if (rerun->parsed()) {
            auto in = open_input(manifest_path);
            json m;
            in >> m;
            Config replay = config_from_manifest(m);
            if (!rerun_out.empty()) replay.out_dir = rerun_out;
            dispatch(replay);
        } else {
            for (auto* sub : {stats, scan, predict, diagnose, simulate})
                if (sub->parsed()) cfg.command = sub->get_name();
            dispatch(cfg);
        }
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadData;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadData;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const json::exception& e) {
        std::cerr << "error: bad manifest: " << e.what() << "\n";
        return kExitBadData;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
