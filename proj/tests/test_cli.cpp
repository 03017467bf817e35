#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string cli = URKIT_CLI_PATH;

int run(const std::string& args, const std::string& out_file = "cli_stdout.txt") {
    const std::string cmd = cli + " " + args + " >" + out_file + " 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// file contents with the comment/manifest header stripped
std::string body(const std::string& path) {
    std::ifstream in(path);
    std::string line, out;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        out += line;
        out += "\n";
    }
    return out;
}

void write_config(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("simulate is deterministic under a fixed seed") {
    CHECK(run("simulate --alpha 1 --sigma 1 --T 200 --seed 7 --out sim_a.csv") == 0);
    CHECK(run("simulate --alpha 1 --sigma 1 --T 200 --seed 7 --out sim_b.csv") == 0);
    CHECK(body("sim_a.csv") == body("sim_b.csv"));
    CHECK(run("simulate --alpha 1 --sigma 1 --T 200 --seed 8 --out sim_c.csv") == 0);
    CHECK(body("sim_a.csv") != body("sim_c.csv"));
}

TEST_CASE("explosive alpha accepted, nonstationary error polynomial rejected") {
    CHECK(run("simulate --alpha 1.5 --T 50 --seed 1 --out sim_expl.csv") == 0);
    CHECK(run("simulate --alpha 1 --error-ar 1.2 --T 50 --seed 1 --out sim_bad.csv") == 1);
}

TEST_CASE("noiseless DGP reproduces the trend") {
    CHECK(run("simulate --gamma 1,0.5 --det ct --sigma 1e-300 --T 20 --seed 2 --out sim_d.csv") ==
          0);
    std::ifstream in("sim_d.csv");
    std::string line;
    bool header_passed = false;
    long t = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_passed) {
            header_passed = true;
            continue;
        }
        ++t;
        const auto comma = line.find(',');
        const double v = std::stod(line.substr(comma + 1));
        CHECK(v == doctest::Approx(1.0 + 0.5 * t).epsilon(1e-12));
    }
    CHECK(t == 20);
}

TEST_CASE("test subcommand round-trips simulate output") {
    CHECK(run("simulate --alpha 1 --T 200 --seed 7 --out rw.csv") == 0);
    CHECK(run("test --data rw.csv --method zeropad --det ct --k 2") == 0);
    const std::string out = slurp("cli_stdout.txt");
    CHECK(out.find("t_DF") != std::string::npos);
    CHECK(out.find("t_LM") != std::string::npos);

    CHECK(run("test --data rw.csv --method onestep --det ct --k 0", "one.txt") == 0);
    CHECK(run("test --data rw.csv --method twostep --det ct --k 0", "two.txt") == 0);
    auto grab = [](const std::string& text, const std::string& key) {
        const auto pos = text.find(key);
        REQUIRE(pos != std::string::npos);
        return text.substr(pos, text.find('\n', pos) - pos);
    };
    CHECK(grab(slurp("one.txt"), "t_DF") == grab(slurp("two.txt"), "t_DF"));
}

TEST_CASE("break spec lists lagged dummy columns in the design summary") {
    CHECK(run("simulate --alpha 1 --T 200 --seed 9 --out rw2.csv") == 0);
    CHECK(run("test --data rw2.csv --method onestep --det break:120 --k 1") == 0);
    const std::string out = slurp("cli_stdout.txt");
    CHECK(out.find("DU_l1") != std::string::npos);
    CHECK(out.find("DU_l2") != std::string::npos);
}

TEST_CASE("degenerate input exits 2, parse errors exit 1") {
    {
        std::ofstream f("line.csv");
        f << "y\n";
        for (int t = 1; t <= 50; ++t) f << t << ".0\n";
    }
    CHECK(run("test --data line.csv --method onestep --det ct --k 0") == 2);

    {
        std::ofstream f("badcell.csv");
        f << "y\n";
        for (int t = 1; t <= 20; ++t) f << (t == 12 ? std::string("oops") : std::to_string(t)) << "\n";
    }
    CHECK(run("test --data badcell.csv --method onestep --det c --k 0") == 1);
    CHECK(slurp("cli_stderr.txt").find("line 13") != std::string::npos);

    CHECK(run("test --data does_not_exist.csv") == 1);
    CHECK(run("nonsense") == 1);
}

TEST_CASE("cv subcommand produces quantile rows and is rerun-identical") {
    write_config("cv_cfg.ini",
                 "[experiment]\n"
                 "methods = onestep\n"
                 "spec = c\n"
                 "T = 100\n"
                 "k = 0\n"
                 "reps = 2000\n"
                 "seed = 1\n"
                 "quantiles = 0.01, 0.05, 0.10\n");
    CHECK(run("cv --config cv_cfg.ini --out cv_a.csv") == 0);
    CHECK(run("cv --config cv_cfg.ini --out cv_b.csv") == 0);
    CHECK(body("cv_a.csv") == body("cv_b.csv"));
    const std::string b = body("cv_a.csv");
    CHECK(b.find("onestep,t_df,0.01") != std::string::npos);
    CHECK(b.find("onestep,t_df,0.05") != std::string::npos);
    CHECK(b.find("onestep,t_df,0.1") != std::string::npos);

    // URKIT_THREADS must not change the table body
    CHECK(std::system(("URKIT_THREADS=3 " + cli +
                       " cv --config cv_cfg.ini --out cv_t.csv >/dev/null 2>&1")
                          .c_str()) == 0);
    CHECK(body("cv_t.csv") == body("cv_a.csv"));
}

TEST_CASE("experiment subcommand: variance comparison end to end") {
    write_config("var_cfg.ini",
                 "[experiment]\n"
                 "methods = twostep\n"
                 "spec = c\n"
                 "T = 100\n"
                 "k = 0\n"
                 "reps = 1000\n"
                 "seed = 3\n"
                 "[dgp_null]\n"
                 "alpha = 1\n"
                 "sigma = 1\n");
    CHECK(run("experiment --config var_cfg.ini --kind variance --out var.csv") == 0);
    const std::string b = body("var.csv");
    CHECK(b.find("sigma2,twostep") != std::string::npos);
    CHECK(b.find("sigma2,residual") != std::string::npos);
    CHECK(b.find("order_frac") != std::string::npos);
}

TEST_CASE("experiment subcommand: size/power with power-curve output") {
    write_config("sp_cfg.ini",
                 "[experiment]\n"
                 "methods = zeropad\n"
                 "spec = c\n"
                 "T = 100\n"
                 "k = 0\n"
                 "reps = 800\n"
                 "seed = 5\n"
                 "nominal_size = 0.05\n"
                 "[dgp_null]\n"
                 "alpha = 1\n"
                 "[dgp_alt]\n"
                 "alpha = 0.85\n"
                 "burn_in = 100\n");
    CHECK(run("experiment --config sp_cfg.ini --kind sizepower --out sp.csv --power-out pw.csv") ==
          0);
    CHECK(body("sp.csv").find("rate,zeropad,t_df,null") != std::string::npos);
    CHECK(body("sp.csv").find("alpha=0.85") != std::string::npos);
    CHECK(slurp("pw.csv").find("alpha,method,statistic,rate") != std::string::npos);
}

TEST_CASE("bad config exits 1 with a field-level message") {
    write_config("bad_cfg.ini",
                 "[experiment]\n"
                 "methods = onestep\n"
                 "spec = c\n"
                 "nominal_size = 2.0\n");
    CHECK(run("experiment --config bad_cfg.ini --kind sizepower") == 1);
    CHECK(slurp("cli_stderr.txt").find("nominal_size") != std::string::npos);
}
