#include "cavityqc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace cavityqc;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "cavityqc_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(field);
    return fields;
}

// Column `name` of every data row in a CSV report.
std::vector<std::string> column(const std::string& csv, const std::string& name) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    const auto header = split(line, ',');
    const auto it = std::find(header.begin(), header.end(), name);
    REQUIRE(it != header.end());
    const auto idx = static_cast<std::size_t>(it - header.begin());
    std::vector<std::string> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(split(line, ',').at(idx));
    }
    return out;
}

}  // namespace

TEST_CASE("dispersion reports the band centre at k = N/4") {
    const RunResult r = run({"dispersion"});
    REQUIRE(r.code == cli::kExitOk);
    const auto k = column(r.out, "k");
    const auto omega = column(r.out, "omega");
    REQUIRE(k.size() == 8);
    CHECK(k[2] == "2");
    CHECK(std::stod(omega[2]) == doctest::Approx(100.0).epsilon(1e-14));
    for (const auto& d : column(r.out, "abs_diff")) CHECK(std::stod(d) < 1e-10);
}

TEST_CASE("dispersion rejects an open chain") {
    const auto cfg = scratch("open.json", R"({"boundary": "open"})");
    CHECK(run({"dispersion", "--config", cfg.string()}).code == cli::kExitUsage);
}

TEST_CASE("gate with a forced outcome meets the fidelity target") {
    const RunResult r = run({"gate", "--force-outcome", "0"});
    REQUIRE(r.code == cli::kExitOk);
    const auto f = column(r.out, "two_qubit_fidelity");
    REQUIRE(f.size() == 1);
    CHECK(std::stod(f[0]) >= 0.99);
    CHECK(column(r.out, "label")[0] == "SWAP.ZZ.CP");
}

TEST_CASE("gate json output parses") {
    const RunResult r = run({"gate", "--force-outcome", "1", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["outcome"] == 1);
    CHECK(j[0]["two_qubit_fidelity"].get<double>() >= 0.99);
}

TEST_CASE("same seed gives byte-identical output") {
    const RunResult a = run({"gate", "--seed", "9"});
    const RunResult b = run({"gate", "--seed", "9"});
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
}

TEST_CASE("--out writes the report to a file") {
    const fs::path dir = fs::temp_directory_path() / "cavityqc_cli_test";
    fs::create_directories(dir);
    const fs::path path = dir / "presets.csv";
    const RunResult r = run({"presets", "--out", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(column(text, "preset") == std::vector<std::string>{"toroidal", "PBG", "stripline"});
}

TEST_CASE("config errors map to the usage exit code") {
    CHECK(run({"gate", "--config", scratch("bad_key.json", R"({"gravity": 1})").string()}).code ==
          cli::kExitUsage);
    CHECK(run({"gate", "--config", scratch("bad_json.json", "{").string()}).code == cli::kExitUsage);
    CHECK(run({"gate", "--config", scratch("mixed.json", R"({"g_over_A": 10, "absolute": {"g": 1}})").string()})
              .code == cli::kExitUsage);
    CHECK(run({"gate", "--config", "/nonexistent/cfg.json"}).code == cli::kExitUsage);
    CHECK(run({"teleport"}).code == cli::kExitUsage);
    CHECK(run({"gate", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("dimension cap maps to the resource exit code") {
    CHECK(run({"gate", "--cap-dim", "50"}).code == cli::kExitResource);
}

TEST_CASE("compile accepts an empty circuit") {
    const auto circuit = scratch("empty.circ", "");
    const RunResult r = run({"compile", circuit.string()});
    CHECK(r.code == cli::kExitOk);
}

TEST_CASE("compile and simulate a small circuit") {
    const auto circuit = scratch("cz.circ", "QUBITS 3\nCZ 0 2\nCU 2 1 0 0 1 0 1 0 0 0\n");
    const RunResult c = run({"compile", circuit.string()});
    REQUIRE(c.code == cli::kExitOk);
    CHECK(c.out.find("LAYOUT 3 vacuum") != std::string::npos);
    CHECK(c.err.find("equivalence") != std::string::npos);

    const auto cfg = scratch("plus.json", R"({"mediator_init": "plus"})");
    const RunResult s = run({"simulate", "--config", cfg.string(), circuit.string()});
    REQUIRE(s.code == cli::kExitOk);
    for (const auto& e : column(s.out, "equivalent")) CHECK(e == "true");
    CHECK(column(s.out, "equivalent").size() > 1);
}

TEST_CASE("reduce sweep reports falling infidelity") {
    const auto cfg = scratch("reduce.json", R"({"g_over_A_grid": [10, 100]})");
    const RunResult r = run({"reduce", "--config", cfg.string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto inf = column(r.out, "infidelity");
    REQUIRE(inf.size() == 2);
    CHECK(std::stod(inf[1]) < std::stod(inf[0]));
}

TEST_CASE("spectrum lists the resonant polariton ladder") {
    const RunResult r = run({"spectrum", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    int checked = 0;
    for (const auto& row : j) {
        if (row["abs_diff"].is_number()) {
            CHECK(row["abs_diff"].get<double>() < 1e-10);
            ++checked;
        }
    }
    CHECK(checked >= 3);
}
