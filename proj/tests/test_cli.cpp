#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef ORBSIEVE_BIN
#error "ORBSIEVE_BIN must point at the orbsieve executable"
#endif

namespace fs = std::filesystem;
using njson = nlohmann::json;

namespace {

struct Workdir {
    fs::path dir;
    Workdir(const std::string& name) : dir(fs::temp_directory_path() / ("orbsieve_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workdir() { fs::remove_all(dir); }
    fs::path file(const std::string& n) const { return dir / n; }
    void write(const std::string& n, const std::string& text) const {
        std::ofstream out(file(n));
        out << text;
    }
};

int run_cli(const std::string& args) {
    std::string cmd = std::string(ORBSIEVE_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

njson load_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return njson::parse(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("sieve subcommand reproduces the 1..30 worked example") {
    Workdir w("sieve");
    // from an integer file
    std::string numbers;
    for (int n = 1; n <= 30; ++n) numbers += std::to_string(n) + "\n";
    w.write("values.txt", "# 1..30\n" + numbers);
    w.write("run.conf", "input = " + w.file("values.txt").string() + "\nz = 6\n");
    int code = run_cli("sieve --config " + w.file("run.conf").string() + " --out " + w.dir.string());
    CHECK(code == 0);
    auto j = load_json(w.file("sieve.json"));
    CHECK(j["sifted_count"]["exact"] == "8");
    CHECK(j["routes_agree"] == true);
    CHECK(j["meta"]["config"]["z"] == "6");

    // and the same through a counting range
    Workdir w2("sieve_range");
    w2.write("run.conf", "range = 1 30\nz = 6\n");
    CHECK(run_cli("sieve --config " + w2.file("run.conf").string() + " --out " + w2.dir.string()) == 0);
    CHECK(load_json(w2.file("sieve.json"))["sifted_count"]["exact"] == "8");
}

TEST_CASE("strongapprox flags p = 3 as the only failure up to 13") {
    Workdir w("sa");
    w.write("run.conf", "preset = lubotzky\npmin = 2\npmax = 13\n");
    int code = run_cli("strongapprox --config " + w.file("run.conf").string() + " --out " + w.dir.string());
    CHECK(code == 0);
    auto j = load_json(w.file("strongapprox.json"));
    CHECK(j["non_surjective_primes"] == njson::array({3}));
    CHECK(j["rows"].size() == 6);
}

TEST_CASE("empty prime range is a no-op success") {
    Workdir w("empty");
    w.write("run.conf", "preset = lubotzky\n");  // pmax defaults to 0: empty range
    int code = run_cli("strongapprox --config " + w.file("run.conf").string() + " --out " + w.dir.string());
    CHECK(code == 0);
    auto j = load_json(w.file("strongapprox.json"));
    CHECK(j["rows"].empty());
    CHECK(j["primes_tested"] == 0);
}

TEST_CASE("invalid configs exit with code 2 and a line-precise message") {
    Workdir w("bad");
    w.write("bad.conf", "range = 1 30\nzz = 6\n");
    CHECK(run_cli("sieve --config " + w.file("bad.conf").string() + " --out " + w.dir.string()) == 2);
    w.write("bad2.conf", "range = 1 30\n");  // missing z
    CHECK(run_cli("sieve --config " + w.file("bad2.conf").string() + " --out " + w.dir.string()) == 2);
    CHECK(run_cli("--out " + w.dir.string()) == 2);  // no subcommand at all
    w.write("bad3.conf", "root = 1 1 1 1\nbound = 10\n");  // fails the Descartes relation
    CHECK(run_cli("apollonian --config " + w.file("bad3.conf").string() + " --out " + w.dir.string()) == 2);
    w.write("bad4.conf", "preset = custom\nambient = SL 2\ngenerator = [[1,2],[3]]\npmin = 2\npmax = 3\n");
    CHECK(run_cli("strongapprox --config " + w.file("bad4.conf").string() + " --out " + w.dir.string()) == 2);
    w.write("bad5.conf", "genus = 7\nk = 2\nn = 10\nz = 6\n");
    CHECK(run_cli("dt3m --config " + w.file("bad5.conf").string() + " --out " + w.dir.string()) == 2);
}

TEST_CASE("dt3m subcommand reports densities and the dimension fit") {
    Workdir w("dt3m");
    w.write("run.conf", "genus = 1\nk = 3 6\nn = 150\nz = 14\n");
    CHECK(run_cli("dt3m --config " + w.file("run.conf").string() + " --seed 21 --out " + w.dir.string()) == 0);
    auto j = load_json(w.file("dt3m.json"));
    CHECK(j["per_k"].size() == 2);
    REQUIRE(j["omega_densities"].size() == 6);  // p in {2,3,5,7,11,13}
    for (const auto& row : j["omega_densities"]) {
        CHECK(row["exact"] == true);
        std::uint64_t p = row["p"].get<std::uint64_t>();
        // exact density 1/(p+1)
        CHECK(row["density"]["exact"] == "1/" + std::to_string(p + 1));
    }
    double kappa = j["dimension_fit"]["kappa"].get<double>();
    CHECK(kappa > 0.4);
    CHECK(kappa < 1.6);
    std::string csv = slurp(w.file("dt3m.csv"));
    CHECK(csv.rfind("# orbsieve ", 0) == 0);
    CHECK(csv.find("k,sample,finite,torsion_order,omega_order,small_prime_divisors\n") != std::string::npos);
    CHECK(csv.find("genus=1") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
    Workdir w("det");
    w.write("run.conf", "preset = lubotzky\nx0 = 1 2\nf = product\nk = 8\nn = 400\nr = 12\nseed = 5\n");
    fs::path out_a = w.dir / "a", out_b = w.dir / "b";
    CHECK(run_cli("saturation --config " + w.file("run.conf").string() + " --out " + out_a.string() +
                  " --workers 1") == 0);
    CHECK(run_cli("saturation --config " + w.file("run.conf").string() + " --out " + out_b.string() +
                  " --workers 4") == 0);
    CHECK(slurp(out_a / "saturation.json") == slurp(out_b / "saturation.json"));
    CHECK(slurp(out_a / "saturation.csv") == slurp(out_b / "saturation.csv"));
    CHECK(slurp(out_a / "walk_k8.snapshot") == slurp(out_b / "walk_k8.snapshot"));
}

TEST_CASE("resumed walks agree with direct runs") {
    Workdir w("resume");
    w.write("short.conf", "preset = lubotzky\nx0 = 1 2\nf = product\nk = 6\nn = 200\nr = 10\nseed = 9\n");
    w.write("long.conf", "preset = lubotzky\nx0 = 1 2\nf = product\nk = 12\nn = 200\nr = 10\nseed = 9\n");
    fs::path short_out = w.dir / "short", resumed_out = w.dir / "resumed", direct_out = w.dir / "direct";
    CHECK(run_cli("saturation --config " + w.file("short.conf").string() + " --out " + short_out.string()) == 0);
    CHECK(run_cli("saturation --config " + w.file("long.conf").string() + " --out " + resumed_out.string() +
                  " --resume " + (short_out / "walk_k6.snapshot").string()) == 0);
    CHECK(run_cli("saturation --config " + w.file("long.conf").string() + " --out " + direct_out.string()) == 0);
    CHECK(slurp(resumed_out / "saturation.json") == slurp(direct_out / "saturation.json"));
}

TEST_CASE("apollonian subcommand writes the packing snapshot") {
    Workdir w("apo");
    w.write("run.conf", "root = -6 11 14 15\nbound = 100\nz = 6\n");
    CHECK(run_cli("apollonian --config " + w.file("run.conf").string() + " --out " + w.dir.string()) == 0);
    auto j = load_json(w.file("apollonian.json"));
    CHECK(j["packing"]["quadruples"].get<int>() > 1);
    std::string snap = slurp(w.file("packing.txt"));
    CHECK(snap.rfind("apollonian-packing v1 root -6 11 14 15 bound 100\n", 0) == 0);
}

TEST_CASE("spectral subcommand emits the csv table") {
    Workdir w("spec");
    w.write("run.conf", "preset = lubotzky\npmin = 2\npmax = 7\n");
    CHECK(run_cli("spectral --config " + w.file("run.conf").string() + " --out " + w.dir.string()) == 0);
    std::string csv = slurp(w.file("spectral.csv"));
    CHECK(csv.rfind("# orbsieve ", 0) == 0);  // config echo on top
    CHECK(csv.find("d,group_size,rho0,diameter,girth_lower_bound\n") != std::string::npos);
    CHECK(csv.find("\n2,6,0.6,3,6\n") != std::string::npos);
    auto j = load_json(w.file("spectral.json"));
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][1]["group_size"] == 1);  // trivial image mod 3
}

TEST_CASE("custom presets come in through the config file") {
    Workdir w("custom");
    w.write("run.conf",
            "preset = custom\n"
            "ambient = SL 2\n"
            "generator = [[1,0],[0,1]]\n"
            "generator = [[1,2],[0,1]]\n"
            "generator = [[1,-2],[0,1]]\n"
            "generator = [[1,0],[2,1]]\n"
            "generator = [[1,0],[-2,1]]\n"
            "pmin = 2\npmax = 7\n");
    CHECK(run_cli("strongapprox --config " + w.file("run.conf").string() + " --out " + w.dir.string()) == 0);
    auto j = load_json(w.file("strongapprox.json"));
    // the level-2 congruence group surjects at odd p, collapses mod 2
    CHECK(j["non_surjective_primes"] == njson::array({2}));
}
