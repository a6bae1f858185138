#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string cli_path() { return NHQM_CLI_PATH; }
std::string fixture(const std::string& name) {
    return std::string(NHQM_FIXTURE_DIR) + "/" + name;
}

int run(const std::string& args) {
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("nhqm_cli_test_" + name);
}

}  // namespace

TEST_CASE("verify exits 0 on the BR fixture, with and without --full") {
    CHECK(run("verify --config " + fixture("two_level_br.json")) == 0);
    CHECK(run("verify --full --config " + fixture("two_level_br.json")) == 0);
    CHECK(run("verify --full --config " + fixture("raw_matrix.json")) == 0);
}

TEST_CASE("verify exits 1 on the corrupted fixture") {
    CHECK(run("verify --config " + fixture("two_level_br_corrupted.json")) == 1);
    CHECK(run("verify --full --config " + fixture("two_level_br_corrupted.json")) == 1);
}

TEST_CASE("config errors exit 2") {
    CHECK(run("verify --config " + fixture("bad_config.json")) == 2);
    CHECK(run("evolve --config " + fixture("evolve_bad_time.json")) == 2);
    CHECK(run("verify --config /nonexistent/nhqm.json") == 2);
    // evolve without an evolution section
    CHECK(run("evolve --config " + fixture("two_level_br_corrupted.json")) == 2);
    CHECK(run("scan --config " + fixture("two_level_br.json")) == 2);
}

TEST_CASE("analyze runs on all input kinds") {
    CHECK(run("analyze --config " + fixture("two_level_br.json")) == 0);
    CHECK(run("analyze --config " + fixture("raw_matrix.json")) == 0);
    CHECK(run("analyze --config " + fixture("dg_theta_scan.json")) == 0);
}

TEST_CASE("evolve CSV is byte-identical across runs and ends near the limit") {
    const fs::path a = temp_file("evolve_a.csv");
    const fs::path b = temp_file("evolve_b.csv");
    CHECK(run("evolve --config " + fixture("two_level_br.json") + " --out " + a.string()) == 0);
    CHECK(run("evolve --config " + fixture("two_level_br.json") + " --out " + b.string()) == 0);
    const std::string ca = slurp(a), cb = slurp(b);
    CHECK(ca == cb);
    CHECK(!ca.empty());

    // header and final probability
    std::istringstream lines(ca);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,re_phi_0,re_phi_1,im_phi_0,im_phi_1,norm_sq,prob");
    std::string line, last;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            last = line;
            ++rows;
        }
    }
    CHECK(rows == 1001);
    const double final_prob = std::strtod(last.substr(last.rfind(',') + 1).c_str(), nullptr);
    CHECK(std::abs(final_prob - 0.1) < 1e-6);

    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("scan emits one row per grid point with the exceptional point flagged") {
    const fs::path out = temp_file("scan.csv");
    CHECK(run("scan --config " + fixture("dg_theta_scan.json") + " --out " + out.string()) == 0);
    std::istringstream lines(slurp(out));
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "param,value,discriminant,regime,im_e1,im_e2,behavior,behavior_value,status");
    std::string line;
    std::size_t rows = 0, exceptional = 0, unbroken = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.find("exceptional") != std::string::npos) ++exceptional;
        if (line.find("unbroken") != std::string::npos ||
            line.find("Unbroken") != std::string::npos)
            ++unbroken;
    }
    CHECK(rows == 21);
    // r=s=t=1: discriminant sin^2(theta) - 1 touches zero only at theta = pi/2
    CHECK(exceptional == 1);
    CHECK(unbroken == 20);
    fs::remove(out);
}
