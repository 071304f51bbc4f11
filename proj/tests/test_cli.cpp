#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dimfibre/netsim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kTmp = DIMFIBRE_TEST_TMP;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DIMFIBRE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct TmpDir {
    TmpDir() {
        fs::remove_all(kTmp);
        fs::create_directories(kTmp);
    }
} tmp_dir;

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli("capacity --lambda 0.5 --kind k") == 0);
    CHECK(run_cli("capacity --lambda 1.5 --kind k") == 1);
    CHECK(run_cli("capacity --lambda 0.5 --kind x") == 1);
    CHECK(run_cli("bogus-subcommand") == 1);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("simulate --n 1 --state /nonexistent/state.json") == 1);
    // an unreachable tolerance exhausts the quadrature and reports code 2
    CHECK(run_cli("capacity --lambda 0.3 --mu 0.2 --kind k --tol 1e-30") == 2);
}

TEST_CASE("spectrum csv with a constant column") {
    const fs::path out = kTmp / "spectrum.csv";
    REQUIRE(run_cli("spectrum --n 4 --lambda 0.4 --mu 0 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "j,eta,eta_symbol");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line == std::to_string(rows) + ",0.4,0.4");
    }
    CHECK(rows == 4);
}

TEST_CASE("spectrum sizes with awkward grid rounding") {
    CHECK(run_cli("spectrum --n 13 --lambda 0.3 --mu 0.2") == 0);
    CHECK(run_cli("converge --mode tail --lambda 0.3 --mu 0.2 --n-list 13,26,47") == 0);
}

TEST_CASE("spectrum json matches the envelope and oracle row") {
    const fs::path out = kTmp / "spectrum.json";
    REQUIRE(run_cli("spectrum --n 4 --lambda 0.3 --mu 0.2 --format json --out " +
                    out.string()) == 0);
    const json doc = json::parse(slurp(out));
    REQUIRE(doc.contains("meta"));
    REQUIRE(doc.contains("rows"));
    CHECK(doc["meta"]["command"] == "spectrum");
    CHECK(doc["meta"]["version"] == DIMFIBRE_VERSION);
    REQUIRE(doc["rows"].size() == 4);
    CHECK(doc["rows"][0]["j"] == 1);
    CHECK(doc["rows"][3]["eta"].get<double>() > doc["rows"][0]["eta"].get<double>());
}

TEST_CASE("capacity values through the cli") {
    const fs::path out = kTmp / "capacity.json";
    REQUIRE(run_cli("capacity --lambda 0.5 --mu 0 --kind k --format json --out " +
                    out.string()) == 0);
    json doc = json::parse(slurp(out));
    CHECK(std::abs(doc["rows"][0]["value"].get<double>() - 1.0) < 1e-9);
    CHECK(doc["rows"][0]["exact"] == true);

    REQUIRE(run_cli("capacity --lambda 0.5 --mu 0 --kind q --format json --out " +
                    out.string()) == 0);
    doc = json::parse(slurp(out));
    CHECK(doc["rows"][0]["value"].get<double>() == 0.0);
}

TEST_CASE("deterministic outputs") {
    const fs::path a = kTmp / "region_a.csv";
    const fs::path b = kTmp / "region_b.csv";
    const std::string args =
        "region --kind q --grid 0.2:0.8:4 --tol 1e-6 --out ";
    REQUIRE(run_cli(args + a.string()) == 0);
    REQUIRE(run_cli(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));

    const std::string text = slurp(a);
    std::istringstream lines(text);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "lambda,mu,value,status");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 16);
}

TEST_CASE("region statuses agree with values") {
    const fs::path out = kTmp / "region.json";
    REQUIRE(run_cli("region --kind q --grid 0.1:0.9:5 --tol 1e-6 --format json --out " +
                    out.string()) == 0);
    const json doc = json::parse(slurp(out));
    for (const auto& row : doc["rows"]) {
        const double value = row["value"].get<double>();
        const std::string status = row["status"].get<std::string>();
        if (status == "zero") CHECK(value == 0.0);
        if (status == "positive") CHECK(value > 0.0);
    }
}

TEST_CASE("q2 and k region sweeps are identical in the value column") {
    const fs::path q2 = kTmp / "region_q2.csv";
    const fs::path k = kTmp / "region_k.csv";
    REQUIRE(run_cli("region --kind q2 --grid 0.2:0.8:3 --tol 1e-6 --out " + q2.string()) == 0);
    REQUIRE(run_cli("region --kind k --grid 0.2:0.8:3 --tol 1e-6 --out " + k.string()) == 0);
    std::istringstream lines_q2(slurp(q2)), lines_k(slurp(k));
    std::string row_q2, row_k;
    while (std::getline(lines_q2, row_q2) && std::getline(lines_k, row_k)) {
        CHECK(row_q2.substr(0, row_q2.rfind(',')) == row_k.substr(0, row_k.rfind(',')));
    }
}

TEST_CASE("converge finite_m emits decreasing errors") {
    const fs::path out = kTmp / "converge.json";
    REQUIRE(run_cli("converge --mode finite_m --n 4 --lambda 0.3 --mu 0.2 "
                    "--m-list 10,100,1000 --format json --out " +
                    out.string()) == 0);
    const json doc = json::parse(slurp(out));
    REQUIRE(doc["rows"].size() == 3);
    double prev = 1e100;
    for (const auto& row : doc["rows"]) {
        const double err = row["max_abs_error"].get<double>();
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("converge tail emits the report columns") {
    const fs::path out = kTmp / "tail.csv";
    REQUIRE(run_cli("converge --mode tail --lambda 0.3 --mu 0.2 --n-list 4,10,60 --out " +
                    out.string()) == 0);
    std::istringstream lines(slurp(out));
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,j_start,max_deviation,outside_fraction");
}

TEST_CASE("simulate propagates a state file") {
    const fs::path state = kTmp / "vacuum.json";
    write(state, dimfibre::to_json(dimfibre::vacuum_state(1)));
    const fs::path out = kTmp / "propagated.json";
    REQUIRE(run_cli("simulate --n 1 --lambda 0.5 --nu 1 --state " + state.string() +
                    " --out " + out.string()) == 0);
    const dimfibre::GaussianState result = dimfibre::gaussian_state_from_json(slurp(out));
    CHECK(result.n == 1);
    CHECK(std::abs(result.covariance(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(result.covariance(1, 1) - 2.0) < 1e-12);

    // malformed state file: exit 1
    write(state, "{\"n\": 2}");
    CHECK(run_cli("simulate --n 2 --lambda 0.5 --state " + state.string()) == 1);
    // mode mismatch: exit 1
    write(state, dimfibre::to_json(dimfibre::vacuum_state(2)));
    CHECK(run_cli("simulate --n 3 --lambda 0.5 --state " + state.string()) == 1);
}

TEST_CASE("config file provides defaults and flags override") {
    const fs::path cfg = kTmp / "config.json";
    write(cfg, "{\"lambda\":0.5,\"mu\":0,\"kind\":\"k\",\"format\":\"json\"}");
    const fs::path out = kTmp / "from_config.json";
    REQUIRE(run_cli("capacity --config " + cfg.string() + " --out " + out.string()) == 0);
    json doc = json::parse(slurp(out));
    CHECK(std::abs(doc["rows"][0]["value"].get<double>() - 1.0) < 1e-9);
    CHECK(doc["rows"][0]["kind"] == "k");

    // flag beats config
    REQUIRE(run_cli("capacity --config " + cfg.string() + " --kind q --out " + out.string()) ==
            0);
    doc = json::parse(slurp(out));
    CHECK(doc["rows"][0]["kind"] == "q");
    CHECK(doc["rows"][0]["value"].get<double>() == 0.0);
}
