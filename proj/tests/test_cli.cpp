#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("mlt_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = test_dir() / "stdout.txt";
    const fs::path err = test_dir() / "stderr.txt";
    const std::string cmd = std::string("\"") + MLT_CLI_PATH + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        fields.push_back(line.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return fields;
}

// Value of a "key=value" line in `text`, or empty string.
std::string value_of(const std::string& text, const std::string& key) {
    for (const auto& line : lines_of(text)) {
        if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    }
    return {};
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("sample").code == 2);                       // missing --params
    CHECK(run_cli("sample --model bogus --params 0.5,1").code == 2);
    CHECK(run_cli("fit --model ml").code == 2);               // missing --input
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("sample --help").code == 0);
}

TEST_CASE("sample: deterministic output, file and stdout agree") {
    const fs::path f1 = test_dir() / "ml_a.txt";
    const fs::path f2 = test_dir() / "ml_b.txt";
    RunResult r1 = run_cli("sample --model ml --params 0.7,2 --n 50 --seed 9 --output " + f1.string());
    RunResult r2 = run_cli("sample --model ml --params 0.7,2 --n 50 --seed 9 --output " + f2.string());
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(r1.err.find("seed=9") != std::string::npos);
    const std::string body = slurp(f1);
    CHECK(body == slurp(f2));

    RunResult rs = run_cli("sample --model ml --params 0.7,2 --n 50 --seed 9");
    REQUIRE(rs.code == 0);
    CHECK(rs.out == body);

    const auto ls = lines_of(body);
    REQUIRE(ls.size() == 50);
    for (const auto& line : ls) {
        const double v = std::strtod(line.c_str(), nullptr);
        CHECK(v > 0.0);
    }
}

TEST_CASE("sample: seeds change the draw") {
    RunResult a = run_cli("sample --model ml --params 0.7,2 --n 20 --seed 1");
    RunResult b = run_cli("sample --model ml --params 0.7,2 --n 20 --seed 2");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out != b.out);
}

TEST_CASE("sample: parameter box violations exit with code 2") {
    CHECK(run_cli("sample --model ml --params 1.5,1 --n 10").code == 2);
    CHECK(run_cli("sample --model prabhakar --params 0.5,9,1 --n 10").code == 2);
    CHECK(run_cli("sample --model ar1 --params 0.5,1.0 --n 10").code == 2);
}

TEST_CASE("sample: ar1 trajectory is a csv obeying the recurrence bitwise") {
    RunResult r = run_cli("sample --model ar1 --params 0.6,0.5 --n 40 --seed 3");
    REQUIRE(r.code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 41);
    CHECK(ls[0] == "t,y,eps");
    std::vector<double> y;
    std::vector<double> eps;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto fields = split_csv(ls[i]);
        REQUIRE(fields.size() == 3);
        CHECK(fields[0] == std::to_string(i));
        y.push_back(std::strtod(fields[1].c_str(), nullptr));
        eps.push_back(std::strtod(fields[2].c_str(), nullptr));
    }
    CHECK(eps[0] == 0.0);
    // %.17g round-trips doubles exactly, so the recurrence must hold bitwise.
    for (std::size_t t = 1; t < y.size(); ++t) CHECK(y[t] == 0.5 * y[t - 1] + eps[t]);
}

TEST_CASE("prabhakar sample: nonnegative and deterministic") {
    RunResult a = run_cli("sample --model prabhakar --params 0.8,1.4,1 --n 60 --seed 21");
    RunResult b = run_cli("sample --model prabhakar --params 0.8,1.4,1 --n 60 --seed 21");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto ls = lines_of(a.out);
    REQUIRE(ls.size() == 60);
    std::size_t zeros = 0;
    for (const auto& line : ls) {
        const double v = std::strtod(line.c_str(), nullptr);
        CHECK(v >= 0.0);
        if (v < 1e-20) ++zeros;
    }
    CHECK(zeros > 0);  // the atom at zero should show up in 60 draws (mass ~0.17)
}

TEST_CASE("fit: recovers parameters from a generated sample") {
    const fs::path data = test_dir() / "fit_data.txt";
    REQUIRE(run_cli("sample --model ml --params 0.7,1 --n 2000 --seed 5 --output " +
                    data.string()).code == 0);
    RunResult r = run_cli("fit --model ml --input " + data.string());
    REQUIRE(r.code == 0);
    const double alpha = std::strtod(value_of(r.out, "alpha").c_str(), nullptr);
    const double sigma = std::strtod(value_of(r.out, "sigma").c_str(), nullptr);
    CHECK(std::fabs(alpha - 0.7) < 0.08);
    CHECK(std::fabs(sigma - 1.0) < 0.15);
    CHECK(value_of(r.out, "converged") == "true");
    CHECK(std::strtol(value_of(r.out, "evaluations").c_str(), nullptr, 10) > 0);
    const double obj = std::strtod(value_of(r.out, "objective").c_str(), nullptr);
    CHECK(obj >= 0.0);

    // A custom abscissa grid is accepted and changes the reported objective.
    RunResult g = run_cli("fit --model ml --grid 0.2,0.5,1,2 --input " + data.string());
    REQUIRE(g.code == 0);
    CHECK(value_of(g.out, "objective") != value_of(r.out, "objective"));
}

TEST_CASE("fit: io and data errors use distinct exit codes") {
    CHECK(run_cli("fit --model ml --input /nonexistent/path.txt").code == 3);

    const fs::path bad = test_dir() / "bad.txt";
    std::ofstream(bad) << "x\n1.0\nnot-a-number\n";
    CHECK(run_cli("fit --model ml --input " + bad.string()).code == 2);

    const fs::path neg = test_dir() / "neg.txt";
    std::ofstream(neg) << "1.0\n-2.0\n3.0\n";
    CHECK(run_cli("fit --model ml --input " + neg.string()).code == 2);

    const fs::path empty = test_dir() / "empty.txt";
    std::ofstream(empty) << "# only a comment\n";
    CHECK(run_cli("fit --model ml --input " + empty.string()).code == 2);
}

TEST_CASE("fit: header and comment lines are tolerated") {
    const fs::path data = test_dir() / "headered.csv";
    {
        std::ofstream out(data);
        out << "# generated for a smoke test\n";
        out << "value\n";
        for (int i = 1; i <= 40; ++i) out << (0.1 * i) << "\n";
    }
    RunResult r = run_cli("fit --model ml --input " + data.string());
    CHECK(r.code == 0);
}

TEST_CASE("mc-study: table plus per-trial companion file") {
    const fs::path table = test_dir() / "study.csv";
    RunResult r = run_cli("mc-study --model ml --params 0.7,1 --trials 4 --n 200 --seed 11 --output " +
                          table.string());
    REQUIRE(r.code == 0);
    CHECK(r.err.find("seed=11") != std::string::npos);

    const auto tl = lines_of(slurp(table));
    REQUIRE(tl.size() == 3);
    CHECK(tl[0] == "param,true,mean_est,rmse,mae");
    const auto row_a = split_csv(tl[1]);
    const auto row_s = split_csv(tl[2]);
    REQUIRE(row_a.size() == 5);
    CHECK(row_a[0] == "alpha");
    CHECK(row_s[0] == "sigma");
    CHECK(std::strtod(row_a[1].c_str(), nullptr) == 0.7);
    const double mean_alpha = std::strtod(row_a[2].c_str(), nullptr);
    CHECK(std::fabs(mean_alpha - 0.7) < 0.15);

    const fs::path companion = test_dir() / "study.trials.csv";
    REQUIRE(fs::exists(companion));
    const auto cl = lines_of(slurp(companion));
    REQUIRE(cl.size() >= 2);
    CHECK(cl[0] == "trial,alpha,sigma");
    CHECK(cl.size() <= 5);  // header + at most 4 trials
}

TEST_CASE("mc-study: stdout mode emits the table only") {
    RunResult r = run_cli("mc-study --model ml --params 0.5,1 --trials 2 --n 150 --seed 8");
    REQUIRE(r.code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "param,true,mean_est,rmse,mae");
}

TEST_CASE("ar1 aliases match the long-form spellings") {
    const RunResult sim_alias = run_cli("ar1-sim --params 0.5,0.5 --n 60 --seed 13");
    const RunResult sim_long = run_cli("sample --model ar1 --params 0.5,0.5 --n 60 --seed 13");
    REQUIRE(sim_alias.code == 0);
    CHECK(sim_alias.out == sim_long.out);

    const fs::path traj = test_dir() / "traj.csv";
    REQUIRE(run_cli("ar1-sim --params 0.5,0.5 --n 800 --seed 14 --output " + traj.string()).code == 0);
    RunResult f1 = run_cli("ar1-fit --input " + traj.string());
    RunResult f2 = run_cli("fit --model ar1 --input " + traj.string());
    REQUIRE(f1.code == 0);
    CHECK(f1.out == f2.out);
    const double rho = std::strtod(value_of(f1.out, "rho").c_str(), nullptr);
    const double alpha = std::strtod(value_of(f1.out, "alpha").c_str(), nullptr);
    CHECK(std::fabs(rho - 0.5) < 0.15);
    CHECK(std::fabs(alpha - 0.5) < 0.15);
}

TEST_CASE("survival: header comment, curve columns, tail separation") {
    const fs::path data = test_dir() / "surv_data.txt";
    REQUIRE(run_cli("sample --model ml --params 0.65,0.55 --n 600 --seed 44 --output " +
                    data.string()).code == 0);
    RunResult r = run_cli("survival --input " + data.string());
    REQUIRE(r.code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() > 10);
    CHECK(ls[0].rfind("# alpha=", 0) == 0);
    CHECK(ls[0].find(" sigma=") != std::string::npos);
    CHECK(ls[1] == "x,log_emp_surv,log_ml_surv,log_exp_surv");

    const double alpha = std::strtod(ls[0].c_str() + 8, nullptr);
    CHECK(alpha > 0.4);
    CHECK(alpha < 0.9);

    double prev_x = 0.0;
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto fields = split_csv(ls[i]);
        REQUIRE(fields.size() == 4);
        const double x = std::strtod(fields[0].c_str(), nullptr);
        CHECK(x > prev_x);  // sorted unique support points
        prev_x = x;
        const double log_exp = std::strtod(fields[3].c_str(), nullptr);
        CHECK(log_exp <= 0.0);
    }
    // Last row: nothing is strictly above the maximum, so the empirical
    // log-survival is -inf; it must still be a parseable field.
    const auto last = split_csv(ls.back());
    CHECK(std::isinf(std::strtod(last[1].c_str(), nullptr)));

    CHECK(run_cli("survival --input /nonexistent.txt").code == 3);
    const fs::path neg = test_dir() / "surv_neg.txt";
    std::ofstream(neg) << "1.0\n-0.5\n2.0\n";
    CHECK(run_cli("survival --input " + neg.string()).code == 2);
}
