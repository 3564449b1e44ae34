#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cwmix/cli.hpp"
#include "cwmix/model.hpp"
#include "cwmix/table.hpp"
#include "cwmix/timegrid.hpp"

using namespace cwmix;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "cwmix");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (std::string& a : args) argv.push_back(a.data());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "cwmix_test_out";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("doubles format with 17 significant digits and round-trip") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::strtod(format_double(1.0 / 3).c_str(), nullptr) == 1.0 / 3);
    CHECK(std::strtod(format_double(1e300).c_str(), nullptr) == 1e300);
}

TEST_CASE("CSV: header, quoting, and final newline") {
    ResultTable t;
    t.columns = {"name", "x"};
    t.add_row({std::string("plain"), std::int64_t{3}});
    t.add_row({std::string("comma,inside"), 0.5});
    t.add_row({std::string("quote\"inside"), 1.0});
    t.add_row({std::string("line\nbreak"), 2.0});
    const std::string csv = to_csv(t);
    CHECK(csv ==
          "name,x\n"
          "plain,3\n"
          "\"comma,inside\",0.5\n"
          "\"quote\"\"inside\",1\n"
          "\"line\nbreak\",2\n");
    ResultTable empty;
    empty.columns = {"a", "b"};
    CHECK(to_csv(empty) == "a,b\n");
    CHECK_THROWS_AS(t.add_row({std::string("too-short")}), std::invalid_argument);
}

TEST_CASE("JSON document carries meta, columns, and typed rows") {
    ResultTable t;
    t.columns = {"k", "v", "tag"};
    t.meta_json = "{\"seed\":7}";
    t.add_row({std::int64_t{2}, 0.25, std::string("x")});
    const nlohmann::json doc = nlohmann::json::parse(to_json(t));
    CHECK(doc["meta"]["seed"] == 7);
    CHECK(doc["columns"] == nlohmann::json({"k", "v", "tag"}));
    CHECK(doc["rows"][0][0] == 2);
    CHECK(doc["rows"][0][1] == 0.25);
    CHECK(doc["rows"][0][2] == "x");
    CHECK(to_json(t).back() == '\n');
}

TEST_CASE("emit writes the body and a meta sibling") {
    ResultTable t;
    t.columns = {"a"};
    t.meta_json = "{\"seed\":3}";
    t.add_row({std::int64_t{1}});
    const fs::path body = temp_dir() / "emit_check.csv";
    emit(t, body.string(), "csv", 0.125);
    CHECK(slurp(body) == "a\n1\n");
    const nlohmann::json meta = nlohmann::json::parse(slurp(body.string() + ".meta.json"));
    CHECK(meta["seed"] == 3);
    CHECK(meta["wall_time_seconds"] == 0.125);
    CHECK(meta["version"].is_string());
    CHECK_THROWS_AS(emit(t, body.string(), "yaml", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(emit(t, "/nonexistent_dir_zz/x.csv", "csv", 0.0), std::runtime_error);
}

TEST_CASE("time grid: expressions, ranges, rounding, clamping") {
    const ModelParams p10{10, 0.5};
    CHECK(parse_time_grid("0,n,2n", p10) == std::vector<std::int64_t>{0, 10, 20});
    CHECK(parse_time_grid("3.5n", p10) == std::vector<std::int64_t>{35});
    CHECK(parse_time_grid("2n,0,n,n", p10) == std::vector<std::int64_t>{0, 10, 20});
    CHECK(parse_time_grid("0-5n", p10) == std::vector<std::int64_t>{0});  // clamped

    std::vector<std::int64_t> fifty;
    for (int v = 100; v <= 1000; v += 50) fifty.push_back(v);
    CHECK(parse_time_grid("100..1000:step 50", p10) == fifty);

    const ModelParams p100{100, 0.5};
    const std::vector<std::int64_t> window =
        parse_time_grid("t_n-10n..t_n+10n:step n", p100);
    // t_n = 100 log(100) / (2 (1 - 1/2)) = 460.5...; negatives clamp to one 0.
    std::vector<std::int64_t> expected = {0};
    for (int v = 61; v <= 1461; v += 100) expected.push_back(v);
    CHECK(window == expected);
}

TEST_CASE("time grid: malformed inputs are rejected") {
    const ModelParams p{10, 0.5};
    CHECK_THROWS_AS(parse_time_grid("", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("5,,6", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("bogus", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("5x", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("..5", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("5..1", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("1..2:step 0", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("1..2:step -1", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("1..2:5", p), std::invalid_argument);  // missing 'step'
    CHECK_THROWS_AS(parse_time_grid("1..1e9:step 0.0001", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_grid("t_n", ModelParams{10, 1.0}), std::invalid_argument);
    CHECK(parse_time_grid("t_n", p).size() == 1);  // fine below criticality
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"--version"}) == 0);
    CHECK(run_cli({}) == 2);                      // missing subcommand
    CHECK(run_cli({"frobnicate"}) == 2);          // unknown subcommand
    CHECK(run_cli({"exact-tv", "--bogus"}) == 2);  // unknown flag
    // Domain errors surface as usage failures (exit 2).
    CHECK(run_cli({"exact-tv", "--beta", "1.0", "--times", "t_n",
                   "--out", (temp_dir() / "never.csv").string()}) == 2);
    CHECK(run_cli({"hitting", "--n", "200", "--beta", "0.5",
                   "--out", (temp_dir() / "never2.csv").string()}) == 2);
    // I/O failures exit 1.
    CHECK(run_cli({"stationary", "--n", "10", "--out", "/nonexistent_dir_zz/x.csv"}) == 1);
}

TEST_CASE("cli: stationary output matches the binomial law") {
    const fs::path out = temp_dir() / "stationary.csv";
    REQUIRE(run_cli({"stationary", "--n", "10", "--beta", "0", "--out", out.string()}) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.substr(0, csv.find('\n')) == "k,s,log_weight,pi");
    // Row k=3: C(10,3)/2^10 = 0.1171875.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    double pi3 = -1;
    while (std::getline(lines, line)) {
        if (line.rfind("3,", 0) == 0) {
            const size_t last = line.find_last_of(',');
            pi3 = std::strtod(line.substr(last + 1).c_str(), nullptr);
        }
    }
    CHECK(pi3 == doctest::Approx(0.1171875).epsilon(1e-12));
}

TEST_CASE("cli: seeded runs are byte-identical") {
    const fs::path a = temp_dir() / "sim_a.csv";
    const fs::path b = temp_dir() / "sim_b.csv";
    const std::vector<std::string> common = {"simulate", "--n",    "30",  "--beta", "1.2",
                                             "--steps",  "5000",   "--seed", "42",
                                             "--record-every", "500"};
    std::vector<std::string> ra = common, rb = common;
    ra.insert(ra.end(), {"--out", a.string()});
    rb.insert(rb.end(), {"--out", b.string()});
    REQUIRE(run_cli(ra) == 0);
    REQUIRE(run_cli(rb) == 0);
    const std::string csv = slurp(a);
    CHECK(csv == slurp(b));
    CHECK(csv.substr(0, csv.find('\n')) == "t,k,s");
    // meta sibling carries the resolved spec.
    const nlohmann::json meta = nlohmann::json::parse(slurp(a.string() + ".meta.json"));
    CHECK(meta["command"] == "simulate");
    CHECK(meta["seed"] == 42);
    CHECK(meta["spec"]["n"] == 30);
    CHECK(meta["wall_time_seconds"].is_number());
}

TEST_CASE("cli: config file values apply, flags win, unknown keys fail") {
    const fs::path cfg = temp_dir() / "cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"n\": 24, \"beta\": 0.25, \"times\": \"0,n\"}\n";
    }
    const fs::path out1 = temp_dir() / "cfg_run1.csv";
    REQUIRE(run_cli({"exact-tv", "--config", cfg.string(), "--out", out1.string()}) == 0);
    std::string csv = slurp(out1);
    CHECK(csv.find("\n24,0.25,0,") != std::string::npos);
    CHECK(csv.find("\n24,0.25,24,") != std::string::npos);

    const fs::path out2 = temp_dir() / "cfg_run2.csv";
    REQUIRE(run_cli({"exact-tv", "--config", cfg.string(), "--n", "16", "--out",
                     out2.string()}) == 0);
    csv = slurp(out2);
    CHECK(csv.find("\n16,0.25,0,") != std::string::npos);   // flag beats file
    CHECK(csv.find("\n16,0.25,16,") != std::string::npos);  // n symbol resolves to 16

    const fs::path bad = temp_dir() / "bad_cfg.json";
    {
        std::ofstream o(bad);
        o << "{\"n\": 24, \"bogus_key\": 1}\n";
    }
    CHECK(run_cli({"exact-tv", "--config", bad.string()}) == 2);
    const fs::path notjson = temp_dir() / "not_json.json";
    {
        std::ofstream o(notjson);
        o << "this is not json\n";
    }
    CHECK(run_cli({"exact-tv", "--config", notjson.string()}) == 2);
}

TEST_CASE("cli: couple subcommand reports stop times per replica") {
    const fs::path out = temp_dir() / "couple.csv";
    REQUIRE(run_cli({"couple", "--n", "40", "--beta", "0.5", "--kind", "grand", "--replicas",
                     "3", "--seed", "5", "--workers", "2", "--out", out.string()}) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "kind,n,beta,replica,max_steps,tau_zero,tau_mag,tau_abs,tau_coalesce");
    int rows = 0;
    for (const char c : csv) rows += (c == '\n');
    CHECK(rows == 4);  // header + 3 replicas
    CHECK(run_cli({"couple", "--kind", "nonsense"}) == 2);
}
