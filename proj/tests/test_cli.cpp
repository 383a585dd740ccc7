#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lonet/io.hpp"
#include "lonet/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lonet_cli_test_" +
                std::to_string(lonet::SplitMix64(static_cast<std::uint64_t>(
                                                     std::chrono::steady_clock::now()
                                                         .time_since_epoch()
                                                         .count()))
                                   .next()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(LONET_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("generate writes one instance file per k") {
    TempDir tmp;
    const auto r = run_cli("generate --n 8 --k 1,2,3 --seed 5 --out " + tmp.path.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(tmp.path / "nk_n8_k01_s5.json"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k02_s5.json"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k03_s5.json"));

    const auto inst = lonet::read_instance(tmp.path / "nk_n8_k02_s5.json");
    REQUIRE(inst.n == 8);
    REQUIRE(inst.k == 2);
    REQUIRE(inst.seed == 5);
}

TEST_CASE("generate rejects k >= n with a nonzero exit") {
    TempDir tmp;
    const auto r = run_cli("generate --n 8 --k 8 --seed 5 --out " + tmp.path.string());
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.output.find("error") != std::string::npos);
}

TEST_CASE("the LONET_OUT_DIR environment variable sets the default output directory") {
    TempDir tmp;
    const auto r = run_cli("generate --n 6 --k 1 --seed 3");
    (void)r;  // may have written to cwd default; now force the env var
    TempDir env_tmp;
    const std::string command = "LONET_OUT_DIR=" + env_tmp.path.string() + " " +
                                std::string(LONET_CLI_PATH) + " generate --n 6 --k 1 --seed 99";
    REQUIRE(std::system(command.c_str()) == 0);
    REQUIRE(fs::exists(env_tmp.path / "nk_n6_k01_s99.json"));
}

TEST_CASE("lon pipeline produces artifacts and reports counts") {
    TempDir tmp;
    REQUIRE(run_cli("generate --n 8 --k 2 --seed 7 --out " + tmp.path.string()).exit_code == 0);
    const auto inst_path = (tmp.path / "nk_n8_k02_s7.json").string();

    const auto r = run_cli("lon --instance " + inst_path + " --operator bitflip --graphml");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("nv=") != std::string::npos);
    REQUIRE(r.output.find("ne=") != std::string::npos);
    REQUIRE(fs::exists(tmp.path / "nk_n8_k02_s7_bitflip.basins"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k02_s7_bitflip.nodes.csv"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k02_s7_bitflip.edges.csv"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k02_s7_bitflip.graphml"));
}

TEST_CASE("lon on a missing instance fails cleanly") {
    const auto r = run_cli("lon --instance /nonexistent.json --operator bitflip");
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.output.find("error") != std::string::npos);
}

TEST_CASE("full chain: generate, lon x2, mllon, metrics") {
    TempDir tmp;
    const auto out = tmp.path.string();
    REQUIRE(run_cli("generate --n 8 --k 3 --seed 11 --out " + out).exit_code == 0);
    const auto inst = (tmp.path / "nk_n8_k03_s11.json").string();
    REQUIRE(run_cli("lon --instance " + inst + " --operator bitflip").exit_code == 0);
    REQUIRE(run_cli("lon --instance " + inst + " --operator swap").exit_code == 0);

    const auto bf = (tmp.path / "nk_n8_k03_s11_bitflip.basins").string();
    const auto sw = (tmp.path / "nk_n8_k03_s11_swap.basins").string();
    const auto rm = run_cli("mllon " + bf + " " + sw + " --graphml");
    REQUIRE(rm.exit_code == 0);
    REQUIRE(fs::exists(tmp.path / "nk_n8_k03_s11_mllon.supra.csv"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k03_s11_mllon.supra.nodes.csv"));
    REQUIRE(fs::exists(tmp.path / "nk_n8_k03_s11_mllon.graphml"));

    // metrics on a single layer
    const auto r1 = run_cli("metrics " + (tmp.path / "nk_n8_k03_s11_bitflip.edges.csv").string());
    REQUIRE(r1.exit_code == 0);
    const auto mdir = tmp.path / "nk_n8_k03_s11_bitflip.metrics";
    REQUIRE(fs::exists(mdir / "metrics.json"));
    REQUIRE(fs::exists(mdir / "metrics.csv"));
    REQUIRE(fs::exists(mdir / "cumstrength.csv"));
    REQUIRE(fs::exists(mdir / "strength_basin.csv"));
    REQUIRE(fs::exists(mdir / "fitness_basin.csv"));

    // metrics on the flattened multi-layer network
    const auto r2 = run_cli("metrics " + (tmp.path / "nk_n8_k03_s11_mllon.supra.csv").string());
    REQUIRE(r2.exit_code == 0);
    REQUIRE(fs::exists(tmp.path / "nk_n8_k03_s11_mllon.metrics" / "metrics.json"));
    const auto json_text = slurp(tmp.path / "nk_n8_k03_s11_mllon.metrics" / "metrics.json");
    REQUIRE(json_text.find("\"network\": \"mllon\"") != std::string::npos);
}

TEST_CASE("mllon requires at least two inputs") {
    TempDir tmp;
    const auto out = tmp.path.string();
    REQUIRE(run_cli("generate --n 6 --k 1 --seed 2 --out " + out).exit_code == 0);
    const auto inst = (tmp.path / "nk_n6_k01_s2.json").string();
    REQUIRE(run_cli("lon --instance " + inst + " --operator bitflip").exit_code == 0);
    const auto bf = (tmp.path / "nk_n6_k01_s2_bitflip.basins").string();
    const auto r = run_cli("mllon " + bf);
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.output.find("two") != std::string::npos);
}

TEST_CASE("mllon refuses layers from different instances") {
    TempDir tmp;
    const auto out = tmp.path.string();
    REQUIRE(run_cli("generate --n 6 --k 1 --seed 2 --out " + out).exit_code == 0);
    REQUIRE(run_cli("generate --n 6 --k 1 --seed 3 --out " + out).exit_code == 0);
    const auto a = (tmp.path / "nk_n6_k01_s2.json").string();
    const auto b = (tmp.path / "nk_n6_k01_s3.json").string();
    REQUIRE(run_cli("lon --instance " + a + " --operator bitflip").exit_code == 0);
    REQUIRE(run_cli("lon --instance " + b + " --operator swap").exit_code == 0);
    const auto r = run_cli("mllon " + (tmp.path / "nk_n6_k01_s2_bitflip.basins").string() + " " +
                           (tmp.path / "nk_n6_k01_s3_swap.basins").string());
    REQUIRE(r.exit_code != 0);
}

TEST_CASE("separable instance gives the expected trivial LON") {
    TempDir tmp;
    // k=0 landscape: one optimum under bit-flip
    REQUIRE(run_cli("generate --n 8 --k 0 --seed 1 --out " + tmp.path.string()).exit_code == 0);
    const auto inst = (tmp.path / "nk_n8_k00_s1.json").string();
    const auto r = run_cli("lon --instance " + inst + " --operator bitflip");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("nv=1 ne=0") != std::string::npos);
}

TEST_CASE("sweep produces the experiment tree and consolidated tables") {
    TempDir tmp;
    const auto out = (tmp.path / "sweep").string();
    const auto r = run_cli("sweep --n 8 --k 1,3 --seed 6 --out " + out);
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(fs::path(out) / "metrics.csv"));
    REQUIRE(fs::exists(fs::path(out) / "table1.csv"));
    REQUIRE(fs::exists(fs::path(out) / "table2.csv"));
    for (const char* k : {"k01", "k03"}) {
        const auto kdir = fs::path(out) / "seed6" / k;
        REQUIRE(fs::exists(kdir / ("nk_n8_" + std::string(k) + "_s6.json")));
        REQUIRE(fs::exists(kdir / ("nk_n8_" + std::string(k) + "_s6_bitflip.basins")));
        REQUIRE(fs::exists(kdir / ("nk_n8_" + std::string(k) + "_s6_mllon.supra.csv")));
        REQUIRE(fs::exists(kdir / "metrics_bitflip" / "metrics.json"));
        REQUIRE(fs::exists(kdir / "metrics_swap" / "metrics.json"));
        REQUIRE(fs::exists(kdir / "metrics_mllon" / "metrics.json"));
    }
    // 2 k-values x 3 networks = 6 rows plus comment and header
    std::size_t lines = 0;
    std::stringstream ss(slurp(fs::path(out) / "metrics.csv"));
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#' && line.rfind("network", 0) != 0) ++lines;
    REQUIRE(lines == 6);
}

TEST_CASE("sweep reruns are byte-identical") {
    TempDir tmp;
    const auto out_a = (tmp.path / "a").string();
    const auto out_b = (tmp.path / "b").string();
    REQUIRE(run_cli("sweep --n 7 --k 2 --seed 9 --out " + out_a).exit_code == 0);
    REQUIRE(run_cli("sweep --n 7 --k 2 --seed 9 --out " + out_b).exit_code == 0);

    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(out_a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), out_a);
        REQUIRE(slurp(entry.path()) == slurp(fs::path(out_b) / rel));
        ++compared;
    }
    REQUIRE(compared > 10);
}

TEST_CASE("sweep honors formats=none by skipping graph artifacts") {
    TempDir tmp;
    const auto out = (tmp.path / "lean").string();
    REQUIRE(run_cli("sweep --n 7 --k 2 --seed 9 --formats none --out " + out).exit_code == 0);
    const auto kdir = fs::path(out) / "seed9" / "k02";
    REQUIRE_FALSE(fs::exists(kdir / "nk_n7_k02_s9_bitflip.basins"));
    REQUIRE_FALSE(fs::exists(kdir / "nk_n7_k02_s9.json"));
    REQUIRE(fs::exists(kdir / "metrics_mllon" / "metrics.json"));
    REQUIRE(fs::exists(fs::path(out) / "table2.csv"));
}
