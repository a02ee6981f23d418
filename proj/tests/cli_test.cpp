#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "declinekit_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path capture = scratch_dir() / "capture.txt";
    const std::string cmd =
        std::string(DECLINEKIT_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

long count_lines(const std::string& text) {
    long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

// One synthetic corpus shared by the read-only test cases.
fs::path corpus_path() {
    static const fs::path path = [] {
        const fs::path dir = scratch_dir() / "fixture";
        const auto r = run_cli("simulate --years 1880:1930 --rate 2 --seed 11 --out " +
                               dir.string());
        REQUIRE(r.code == 0);
        return dir / "corpus.csv";
    }();
    return path;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("stats command writes the summary and a manifest") {
    const fs::path out = scratch_dir() / "stats_csv";
    auto r = run_cli("stats --wars " + corpus_path().string() + " --out " + out.string());
    CHECK(r.code == 0);
    const auto csv = read_file(out / "stats.csv");
    CHECK(csv.rfind("n,mean,sd,median,min,max,skewness,tail_fraction\n", 0) == 0);
    CHECK(count_lines(csv) == 2);

    const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
    CHECK(manifest.at("command") == "stats");
    CHECK(manifest.at("scale") == "raw");
    CHECK(manifest.at("n_draws") == 10000);

    const fs::path out_json = scratch_dir() / "stats_json";
    r = run_cli("stats --wars " + corpus_path().string() + " --format json --out " +
                out_json.string());
    CHECK(r.code == 0);
    const auto stats = nlohmann::json::parse(read_file(out_json / "stats.json"));
    for (const char* field :
         {"n", "mean", "sd", "median", "min", "max", "skewness", "tail_fraction"})
        CHECK(stats.contains(field));
}

TEST_CASE("scan command emits grid and average files") {
    const fs::path out = scratch_dir() / "scan_csv";
    const auto r = run_cli("scan --wars " + corpus_path().string() +
                           " --years 1890:1920 --draws 200 --seed 5 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.output.find("most likely changepoint:") != std::string::npos);

    const auto grid = read_file(out / "scan_grid.csv");
    CHECK(grid.rfind("year,m,pr_decline,degenerate\n", 0) == 0);
    const auto average = read_file(out / "scan_average.csv");
    CHECK(count_lines(average) == 1 + 31);

    const fs::path out_json = scratch_dir() / "scan_json";
    const auto rj = run_cli("scan --wars " + corpus_path().string() +
                            " --years 1890:1920 --draws 200 --seed 5 --format json --out " +
                            out_json.string());
    CHECK(rj.code == 0);
    const auto rows = nlohmann::json::parse(read_file(out_json / "scan_grid.json"));
    CHECK(rows.is_array());
    CHECK(static_cast<long>(rows.size()) == count_lines(grid) - 1);

    const fs::path out_figure = scratch_dir() / "scan_figure";
    const auto rf = run_cli("scan --wars " + corpus_path().string() +
                            " --years figure --thresholds 4,5 --draws 50 --seed 5 --out " +
                            out_figure.string());
    CHECK(rf.code == 0);
    const auto manifest = nlohmann::json::parse(read_file(out_figure / "manifest.json"));
    CHECK(manifest.at("years").at(0).get<int>() == 1856);
    CHECK(manifest.at("years").at(1).get<int>() == 1989);
}

TEST_CASE("rerun replays a manifest byte for byte") {
    const fs::path first = scratch_dir() / "replay_first";
    auto r = run_cli("scan --wars " + corpus_path().string() +
                     " --years 1890:1915 --thresholds 3.5,4,5 --draws 300 --seed 123 --out " +
                     first.string());
    REQUIRE(r.code == 0);

    const fs::path second = scratch_dir() / "replay_second";
    r = run_cli("rerun --manifest " + (first / "manifest.json").string() + " --out " +
                second.string());
    CHECK(r.code == 0);
    CHECK(read_file(first / "scan_grid.csv") == read_file(second / "scan_grid.csv"));
    CHECK(read_file(first / "scan_average.csv") == read_file(second / "scan_average.csv"));

    const fs::path sim_first = scratch_dir() / "replay_sim_first";
    r = run_cli("simulate --years 1900:1940 --rate 1.5 --seed 77 --out " + sim_first.string());
    REQUIRE(r.code == 0);
    const fs::path sim_second = scratch_dir() / "replay_sim_second";
    r = run_cli("rerun --manifest " + (sim_first / "manifest.json").string() + " --out " +
                sim_second.string());
    CHECK(r.code == 0);
    CHECK(read_file(sim_first / "corpus.csv") == read_file(sim_second / "corpus.csv"));
}

TEST_CASE("predict and diagnose commands produce their tables") {
    const fs::path out = scratch_dir() / "predict_out";
    auto r = run_cli("predict --wars " + corpus_path().string() +
                     " --split-year 1905 --draws 300 --seed 9 --out " + out.string());
    CHECK(r.code == 0);
    const auto prediction = read_file(out / "prediction.csv");
    CHECK(prediction.rfind("m,observed_p,predicted_mean,ratio,band_lo,band_hi,degenerate\n", 0) ==
          0);
    CHECK(count_lines(prediction) == 1 + 9);

    const fs::path diag_out = scratch_dir() / "diag_out";
    r = run_cli("diagnose --wars " + corpus_path().string() + " --seed 4 --gap-sims 200 --out " +
                diag_out.string());
    CHECK(r.code == 0);
    CHECK(read_file(diag_out / "annual_series.csv").rfind("year,count,moving_avg\n", 0) == 0);
    CHECK(read_file(diag_out / "gap_table.csv").rfind("gap,observed_prop,expected_prop\n", 0) ==
          0);
}

TEST_CASE("normalized scale consumes population tables in order") {
    const fs::path pop = scratch_dir() / "population.csv";
    write_text(pop,
               "year,population\n1870,1.30e9\n1900,1.60e9\n1940,2.30e9\n");
    const fs::path out = scratch_dir() / "normalized_out";
    const auto r = run_cli("scan --wars " + corpus_path().string() + " --population " +
                           pop.string() +
                           " --scale normalized --years 1890:1910 --thresholds 1,5,20"
                           " --draws 200 --seed 2 --out " +
                           out.string());
    CHECK(r.code == 0);
    const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
    CHECK(manifest.at("scale") == "normalized");
    CHECK(manifest.at("population").size() == 1);
}

TEST_CASE("exit codes distinguish missing, malformed, and misconfigured input") {
    const std::string out = " --out " + (scratch_dir() / "err_out").string();

    CHECK(run_cli("stats --wars " + (scratch_dir() / "no_such.csv").string() + out).code == 2);

    const fs::path missing_column = scratch_dir() / "missing_column.csv";
    write_text(missing_column, "id,type,onset_year\nw1,interstate,1900\n");
    auto r = run_cli("stats --wars " + missing_column.string() + out);
    CHECK(r.code == 3);
    CHECK(r.output.find("end_year") != std::string::npos);

    const fs::path bad_row = scratch_dir() / "bad_row.csv";
    write_text(bad_row,
               "id,name,type,onset_year,end_year,battle_deaths\n"
               "w1,,interstate,1700,1700,5000\n");
    CHECK(run_cli("stats --wars " + bad_row.string() + out).code == 3);

    const std::string wars = " --wars " + corpus_path().string();
    CHECK(run_cli("scan" + wars + " --years 1950:1890" + out).code == 4);
    CHECK(run_cli("scan" + wars + " --years 1700:1900" + out).code == 4);
    CHECK(run_cli("scan" + wars + " --draws 0" + out).code == 4);
    CHECK(run_cli("scan" + wars + " --scale normalized" + out).code == 4);
    CHECK(run_cli("scan" + wars + " --thresholds 5,4" + out).code == 4);
    CHECK(run_cli("scan" + wars + " --no-such-flag" + out).code == 4);
    CHECK(run_cli("rerun --manifest " + (scratch_dir() / "absent.json").string()).code == 2);
}

TEST_CASE("a failed run leaves no output files behind") {
    const fs::path out = scratch_dir() / "failed_out";
    const fs::path missing_column = scratch_dir() / "missing_column2.csv";
    write_text(missing_column, "id,type,onset_year\nw1,interstate,1900\n");
    const auto r = run_cli("scan --wars " + missing_column.string() + " --out " + out.string());
    CHECK(r.code == 3);
    CHECK((!fs::exists(out) || fs::is_empty(out)));
}

TEST_CASE("seed comes from the environment unless the flag overrides it") {
    const fs::path by_flag = scratch_dir() / "seed_flag";
    auto r = run_cli("simulate --years 1880:1910 --seed 31 --out " + by_flag.string());
    REQUIRE(r.code == 0);

    // run_cli cannot set environment variables, so invoke the binary directly.
    const fs::path by_env = scratch_dir() / "seed_env";
    const std::string env_cmd = "DECLINEKIT_SEED=31 " DECLINEKIT_CLI_PATH
                                " simulate --years 1880:1910 --out " +
                                by_env.string() + " > /dev/null 2>&1";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    CHECK(read_file(by_flag / "corpus.csv") == read_file(by_env / "corpus.csv"));

    const std::string override_cmd = "DECLINEKIT_SEED=999 " DECLINEKIT_CLI_PATH
                                     " simulate --years 1880:1910 --seed 31 --out " +
                                     (scratch_dir() / "seed_override").string() +
                                     " > /dev/null 2>&1";
    REQUIRE(std::system(override_cmd.c_str()) == 0);
    CHECK(read_file(scratch_dir() / "seed_override" / "corpus.csv") ==
          read_file(by_flag / "corpus.csv"));
}
