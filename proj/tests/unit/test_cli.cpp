/// End-to-end CLI checks through the installed binary: exit codes, file
/// outputs, and byte-level determinism.

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pqg/field_io.hpp"

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("PQGINV_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path dir;
    explicit TempDir(const std::string& name) {
        dir = fs::temp_directory_path() / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string str() const { return dir.string(); }
};

} // namespace

TEST_CASE("solve: baseball cap end to end") {
    TempDir tmp("pqg_cli_solve");
    const int rc = run("solve --case baseball-cap --grid 4,4,64 --tol 1e-7 --out " +
                       tmp.str());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.dir / "solution.pqgf"));
    CHECK(fs::exists(tmp.dir / "report.json"));
    CHECK(fs::exists(tmp.dir / "phases.csv"));
    CHECK(fs::exists(tmp.dir / "interface.csv"));
    pqg::ScalarField p = pqg::read_field((tmp.dir / "solution.pqgf").string());
    CHECK(p.grid().n3 == 64);
    CHECK(p.finite());
}

TEST_CASE("solve: exit code 2 on exhausted budget, 3 on bad input") {
    TempDir tmp("pqg_cli_codes");
    CHECK(run("solve --case baseball-cap --grid 4,4,64 --max-iter 2 --tol 1e-12 --out " +
              tmp.str()) == 2);
    CHECK(run("solve --m /nonexistent.pqgf --pv /also_missing.pqgf --out " +
              tmp.str()) == 3);
    CHECK(run("solve --case no-such-case --out " + tmp.str()) == 3);
    CHECK(run("plotdata --figure bogus --out " + tmp.str()) == 3);
}

TEST_CASE("determinism: identical config + seed give identical bytes") {
    TempDir a("pqg_cli_det_a"), b("pqg_cli_det_b");
    const std::string args =
        "solve --case baseball-cap --grid 4,4,48 --tol 1e-8 --seed 7 --out ";
    REQUIRE(run(args + a.str()) == 0);
    REQUIRE(run(args + b.str()) == 0);
    for (const char* f : {"solution.pqgf", "report.json", "phases.csv"}) {
        CHECK(slurp(a.dir / f) == slurp(b.dir / f));
    }
}

TEST_CASE("exact1d + solve on emitted fields round trip") {
    TempDir tmp("pqg_cli_exact");
    REQUIRE(run("exact1d --m-profile sin --pv-profile zero --grid 4,4,64 --out " +
                tmp.str()) == 0);
    CHECK(fs::exists(tmp.dir / "M.pqgf"));
    CHECK(fs::exists(tmp.dir / "PV.pqgf"));
    CHECK(fs::exists(tmp.dir / "p_exact.pqgf"));
    CHECK(fs::exists(tmp.dir / "meta.json"));
    // feed the emitted data back into solve
    const int rc = run("solve --m " + (tmp.dir / "M.pqgf").string() + " --pv " +
                       (tmp.dir / "PV.pqgf").string() + " --tol 1e-7 --out " +
                       tmp.str());
    CHECK(rc == 0);
}

TEST_CASE("phases subcommand consumes solve output") {
    TempDir tmp("pqg_cli_phases");
    REQUIRE(run("exact1d --m-profile baseball-cap --grid 4,4,64 --out " + tmp.str()) ==
            0);
    const int rc = run("phases --p " + (tmp.dir / "p_exact.pqgf").string() + " --m " +
                       (tmp.dir / "M.pqgf").string() + " --out " + tmp.str());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.dir / "phases.json"));
    const std::string j = slurp(tmp.dir / "phases.json");
    CHECK(j.find("x3_crossings") != std::string::npos);
}

TEST_CASE("plotdata figures") {
    TempDir tmp("pqg_cli_plot");
    CHECK(run("plotdata --figure regularisation-figure --eps 0.5 --out " + tmp.str()) ==
          0);
    CHECK(run("plotdata --figure sharp-reg-figure --out " + tmp.str()) == 0);
    CHECK(run("plotdata --figure phase-figure --grid 4,4,64 --out " + tmp.str()) == 0);
    CHECK(fs::exists(tmp.dir / "regularisation.csv"));
    CHECK(fs::exists(tmp.dir / "sharp_reg.csv"));
    CHECK(fs::exists(tmp.dir / "phase.csv"));

    // branch values of the regularised minimum at x = -1 and x = 1 (eps = 0.5)
    std::ifstream is(tmp.dir / "regularisation.csv");
    std::string line;
    std::getline(is, line); // header
    bool checked_m1 = false, checked_p1 = false;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string x, m0, f1, me;
        std::getline(ss, x, ',');
        std::getline(ss, m0, ',');
        std::getline(ss, f1, ',');
        std::getline(ss, me, ',');
        const double xv = std::stod(x);
        if (std::abs(xv + 1.0) < 1e-9) {
            CHECK(std::stod(me) == doctest::Approx(-1.0));
            checked_m1 = true;
        }
        if (std::abs(xv - 1.0) < 1e-9) {
            CHECK(std::stod(me) == doctest::Approx(0.0));
            checked_p1 = true;
        }
    }
    CHECK(checked_m1);
    CHECK(checked_p1);
}

TEST_CASE("audit and sweeps emit reports") {
    TempDir tmp("pqg_cli_audit");
    CHECK(run("audit --grid 8,8,8 --trials 3 --seed 5 --out " + tmp.str()) == 0);
    CHECK(fs::exists(tmp.dir / "audit.json"));
    CHECK(run("sweep-mesh --case baseball-cap --grid 4,4,16 --n-list 32,64 --tol 1e-7 "
              "--out " +
              tmp.str()) == 0);
    CHECK(fs::exists(tmp.dir / "ratefit.json"));
    CHECK(fs::exists(tmp.dir / "sweep.csv"));
}

TEST_CASE("config file with flag override precedence") {
    TempDir tmp("pqg_cli_config");
    {
        std::ofstream cfg(tmp.dir / "run.cfg");
        cfg << "grid=4,4,32\n";
        cfg << "tol=1e-6\n";
        cfg << "out=" << tmp.str() << "\n";
    }
    // config alone
    CHECK(run("solve --case baseball-cap --config " + (tmp.dir / "run.cfg").string()) ==
          0);
    pqg::ScalarField p = pqg::read_field((tmp.dir / "solution.pqgf").string());
    CHECK(p.grid().n3 == 32);
    // flags beat the file
    CHECK(run("solve --case baseball-cap --config " + (tmp.dir / "run.cfg").string() +
              " --grid 4,4,16") == 0);
    pqg::ScalarField p2 = pqg::read_field((tmp.dir / "solution.pqgf").string());
    CHECK(p2.grid().n3 == 16);
}
