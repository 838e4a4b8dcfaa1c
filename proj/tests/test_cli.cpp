#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"zerotherm"};
    argv.insert(argv.end(), args.begin(), args.end());
    return zerotherm::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("zerotherm_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name) : path(temp_file(name)) {}
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("thermo emits the fixed CSV schema in grid order") {
    const TempFile out("thermo.csv");
    const int rc = cli({"thermo", "--lambda", "0.4", "--methods", "quadratic,oneloop", "--tmin",
                        "0.5", "--tmax", "5", "--tcount", "3", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const auto rows = parse_csv(slurp(out.path));
    REQUIRE(rows.size() == 7);
    const std::vector<std::string> header = {"T", "method", "F", "U", "C", "err", "flags"};
    CHECK(rows[0] == header);
    CHECK(rows[1][1] == "quadratic");
    CHECK(rows[2][1] == "oneloop");
    CHECK(std::stod(rows[1][0]) == doctest::Approx(0.5));
    CHECK(std::stod(rows[3][0]) == doctest::Approx(std::sqrt(2.5)));
    CHECK(std::stod(rows[5][0]) == doctest::Approx(5.0));
    // Same T for every method of one grid point.
    CHECK(rows[1][0] == rows[2][0]);
}

TEST_CASE("free-theory columns coincide across exact and quadratic methods") {
    const TempFile out("free.csv");
    const int rc = cli({"thermo", "--lambda", "0", "--methods", "exact,quadratic", "--tmin", "0.5",
                        "--tmax", "5", "--tcount", "4", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const auto rows = parse_csv(slurp(out.path));
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 1; i + 1 < rows.size(); i += 2) {
        const double f_exact = std::stod(rows[i][2]);
        const double f_quad = std::stod(rows[i + 1][2]);
        CHECK(std::abs(f_exact - f_quad) <= 1e-9 * std::abs(f_exact));
    }
}

TEST_CASE("identical configuration produces identical bytes") {
    const TempFile a("det_a.csv"), b("det_b.csv");
    const auto run = [&](const std::filesystem::path& p) {
        return cli({"thermo", "--lambda", "1.2", "--methods", "classical,quadratic", "--tcount",
                    "5", "--out", p.c_str()});
    };
    CHECK(run(a.path) == 0);
    CHECK(run(b.path) == 0);
    const std::string bytes = slurp(a.path);
    CHECK(bytes == slurp(b.path));
    CHECK(bytes.find('\r') == std::string::npos);
}

TEST_CASE("json output carries config, version and mirrored rows") {
    const TempFile out("thermo.json");
    const int rc = cli({"thermo", "--lambda", "0.4", "--methods", "quadratic", "--tcount", "3",
                        "--format", "json", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(out.path));
    CHECK(doc.at("version") == "0.1.0");
    CHECK(doc.at("config").at("lambda") == doctest::Approx(0.4));
    CHECK(doc.at("config").at("methods").size() == 1);
    REQUIRE(doc.at("rows").size() == 3);
    const auto& row = doc.at("rows")[0];
    for (const char* key : {"T", "method", "F", "U", "C", "err", "flags"})
        CHECK(row.contains(key));
}

TEST_CASE("config file drives a run and explicit flags override it") {
    const TempFile cfg("run.json"), out("cfg.csv");
    {
        std::ofstream f(cfg.path);
        f << R"({"lambda": 0.4, "tcount": 4, "methods": "quadratic", "tscale": "linear"})";
    }
    CHECK(cli({"thermo", "--config", cfg.path.c_str(), "--out", out.path.c_str()}) == 0);
    CHECK(parse_csv(slurp(out.path)).size() == 5);

    CHECK(cli({"thermo", "--config", cfg.path.c_str(), "--tcount", "2", "--out",
               out.path.c_str()}) == 0);
    const auto rows = parse_csv(slurp(out.path));
    CHECK(rows.size() == 3);
}

TEST_CASE("unknown config keys are rejected") {
    const TempFile cfg("bad.json");
    {
        std::ofstream f(cfg.path);
        f << R"({"lambda": 0.4, "temperature": 3})";
    }
    CHECK(cli({"thermo", "--config", cfg.path.c_str()}) == 2);
}

TEST_CASE("configuration errors exit with code 2") {
    CHECK(cli({"thermo", "--tscale", "cubic"}) == 2);
    CHECK(cli({"thermo", "--format", "yaml"}) == 2);
    CHECK(cli({"thermo", "--methods", "bogus"}) == 2);
    CHECK(cli({"thermo", "--tmin", "0"}) == 2);
    CHECK(cli({"thermo", "--lambda", "-1"}) == 2);
    CHECK(cli({"thermo", "--omega", "0", "--lambda", "0.4", "--methods", "oneloop"}) == 2);
    CHECK(cli({"thermo", "--no-such-flag", "1"}) == 2);
    CHECK(cli({}) == 2);
    CHECK(cli({"tmin"}) == 2);
}

TEST_CASE("breakdown points are flagged in the file with a clean exit") {
    const TempFile out("breakdown.csv");
    const int rc = cli({"thermo", "--lambda", "8", "--methods", "improved", "--tmin", "0.35",
                        "--tmax", "0.35", "--tcount", "1", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("breakdown") != std::string::npos);
    CHECK(text.find("nan") != std::string::npos);
}

TEST_CASE("ground-state table reports both estimates") {
    const TempFile out("gstate.csv");
    const int rc = cli({"gstate", "--lambda", "0.4", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const auto rows = parse_csv(slurp(out.path));
    REQUIRE(rows.size() == 2);
    const std::vector<std::string> header = {"lambda", "E0_exact", "E0_quadratic",
                                             "percent_error"};
    CHECK(rows[0] == header);
    CHECK(std::abs(std::stod(rows[1][1]) - 0.559) < 2e-3);
    CHECK(std::abs((std::stod(rows[1][2])) - (0.584)) < 2e-3);
    CHECK(std::abs((std::stod(rows[1][3])) - (4.5)) < 0.5);
    CHECK(cli({"gstate", "--lambda", "-0.4"}) == 2);
}

TEST_CASE("validity-boundary table is monotone over the coupling grid") {
    const TempFile out("tmin.csv");
    const int rc =
        cli({"tmin", "--lambda", "0.1,1,10,50", "--out", out.path.c_str()});
    CHECK(rc == 0);
    const auto rows = parse_csv(slurp(out.path));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"lambda", "theta_root", "t_min", "flags"});
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][2]);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(std::stod(rows[4][2]) > 0.8);
    CHECK(std::stod(rows[4][2]) < 1.5);
}

TEST_CASE("invariant suite passes on a healthy build") {
    std::ostringstream sink;
    CHECK(zerotherm::run_invariant_suite(sink));
    const std::string report = sink.str();
    CHECK(report.find("FAIL") == std::string::npos);
    CHECK(report.find("PASS gelfand-yaglom") != std::string::npos);
}
