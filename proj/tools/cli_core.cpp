#include "cli_core.hpp"

#include "mlt/ar1.hpp"
#include "mlt/errors.hpp"
#include "mlt/estimation.hpp"
#include "mlt/ml_dist.hpp"
#include "mlt/prabhakar.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mlt::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string model = "ml";
    std::vector<double> params;
    std::size_t n = 1000;
    std::size_t trials = 0;  // 0 = model-specific default
    std::uint64_t seed = 42;
    std::string input;
    std::string output;
    std::vector<double> grid;
    int column = 0;  // 1-based; 0 = auto (1, or 2 for multi-column ar1 input)
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Output sink: --output path or standard output.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw IoError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish(const std::string& path) {
        stream().flush();
        if (file_.is_open() && !file_) throw IoError("failed writing output file: " + path);
    }

  private:
    std::ofstream file_;
};

bool parse_double(const std::string& field, double& value) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    value = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

// Reads one numeric column from a plain or comma-separated text file.
// '#' lines and blank lines are skipped; a leading non-numeric row is treated
// as a header. column 0 selects column 1, or column multi_default when the
// file has several columns.
std::vector<double> read_column(const std::string& path, int column, int multi_default) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);

    std::vector<double> out;
    std::string line;
    bool allow_header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }

        const int use = column > 0 ? column : (fields.size() > 1 ? multi_default : 1);
        double value = 0.0;
        const bool ok = use >= 1 && static_cast<std::size_t>(use) <= fields.size() &&
                        parse_double(fields[static_cast<std::size_t>(use) - 1], value);
        if (!ok) {
            if (allow_header) {
                allow_header = false;
                continue;
            }
            throw DomainError("malformed input line: " + line);
        }
        allow_header = false;
        out.push_back(value);
    }
    if (out.empty()) throw EmptySample("input contains no usable values");
    return out;
}

void require_params(const Config& cfg, std::size_t count) {
    if (cfg.params.size() != count)
        throw DomainError("--params needs exactly " + std::to_string(count) + " values for model '" +
                          cfg.model + "'");
}

std::optional<estimation::LTGrid> grid_override(const Config& cfg) {
    if (cfg.grid.empty()) return std::nullopt;
    return estimation::LTGrid(cfg.grid);
}

std::vector<std::string> param_names(const std::string& model) {
    if (model == "ml") return {"alpha", "sigma"};
    if (model == "prabhakar") return {"alpha", "sigma", "gamma"};
    return {"alpha", "rho"};
}

int cmd_sample(const Config& cfg) {
    std::cerr << "seed=" << cfg.seed << "\n";
    Sink sink(cfg.output);
    std::ostream& os = sink.stream();

    if (cfg.model == "ar1") {
        require_params(cfg, 2);
        const ar1::AR1Params p(cfg.params[0], cfg.params[1]);
        const ar1::Trajectory traj = ar1::simulate(p, cfg.n, cfg.seed);
        os << "t,y,eps\n";
        for (std::size_t t = 0; t < traj.y.size(); ++t)
            os << (t + 1) << ',' << fmt(traj.y[t]) << ',' << fmt(traj.eps[t]) << '\n';
    } else {
        std::vector<double> draws;
        if (cfg.model == "ml") {
            require_params(cfg, 2);
            draws = ml_dist::sample(ml_dist::MLParams(cfg.params[0], cfg.params[1]), cfg.n, cfg.seed);
        } else {
            require_params(cfg, 3);
            draws = prabhakar::sample(
                prabhakar::PrabhakarParams(cfg.params[0], cfg.params[1], cfg.params[2]), cfg.n,
                cfg.seed);
        }
        for (double v : draws) os << fmt(v) << '\n';
    }
    sink.finish(cfg.output);
    return 0;
}

int cmd_fit(const Config& cfg) {
    const auto grid = grid_override(cfg);
    const estimation::LTGrid* gp = grid ? &*grid : nullptr;

    estimation::FitResult fit;
    if (cfg.model == "ar1") {
        const std::vector<double> y = read_column(cfg.input, cfg.column, 2);
        fit = estimation::fit_ar1(y, {}, gp);
    } else {
        const std::vector<double> values = read_column(cfg.input, cfg.column, 1);
        fit = cfg.model == "ml" ? estimation::fit_ml(values, {}, gp)
                                : estimation::fit_prabhakar(values, {}, gp);
    }

    Sink sink(cfg.output);
    std::ostream& os = sink.stream();
    const auto names = param_names(cfg.model);
    for (std::size_t k = 0; k < names.size(); ++k)
        os << names[k] << '=' << fmt(fit.estimates[k]) << '\n';
    os << "objective=" << fmt(fit.objective) << '\n';
    os << "converged=" << (fit.converged ? "true" : "false") << '\n';
    os << "evaluations=" << fit.evaluations << '\n';
    sink.finish(cfg.output);
    return 0;
}

int cmd_mc_study(const Config& cfg) {
    std::cerr << "seed=" << cfg.seed << "\n";
    estimation::Model model = estimation::Model::ML;
    std::size_t trials = cfg.trials;
    if (cfg.model == "ml") {
        model = estimation::Model::ML;
        require_params(cfg, 2);
        if (trials == 0) trials = 500;
    } else if (cfg.model == "prabhakar") {
        model = estimation::Model::Prabhakar;
        require_params(cfg, 3);
        if (trials == 0) trials = 100;
    } else {
        model = estimation::Model::AR1;
        require_params(cfg, 2);
        if (trials == 0) trials = 500;
    }

    const estimation::MCReport report =
        estimation::monte_carlo_study(model, cfg.params, trials, cfg.n, cfg.seed);

    const auto names = param_names(cfg.model);
    Sink sink(cfg.output);
    std::ostream& os = sink.stream();
    os << "param,true,mean_est,rmse,mae\n";
    for (std::size_t k = 0; k < names.size(); ++k)
        os << names[k] << ',' << fmt(report.true_params[k]) << ',' << fmt(report.mean_estimates[k])
           << ',' << fmt(report.rmse[k]) << ',' << fmt(report.mae[k]) << '\n';
    sink.finish(cfg.output);

    // Per-trial companion table (successful trials, in trial order) next to
    // the main table; skipped when the table goes to standard output.
    if (!cfg.output.empty()) {
        std::filesystem::path table(cfg.output);
        std::filesystem::path companion = table.parent_path() /
            (table.stem().string() + ".trials" + table.extension().string());
        std::ofstream tf(companion);
        if (!tf) throw IoError("cannot open output file: " + companion.string());
        tf << "trial";
        for (const auto& name : names) tf << ',' << name;
        tf << '\n';
        for (std::size_t i = 0; i < report.per_trial.size(); ++i) {
            tf << i;
            for (double v : report.per_trial[i]) tf << ',' << fmt(v);
            tf << '\n';
        }
        if (!tf) throw IoError("failed writing output file: " + companion.string());
    }
    return 0;
}

int cmd_survival(const Config& cfg) {
    const std::vector<double> values = read_column(cfg.input, cfg.column, 1);
    for (double v : values)
        if (!(v > 0.0)) throw DomainError("survival: inter-arrival times must be > 0");

    std::vector<double> xs(values);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) throw DomainError("survival: input is degenerate (fewer than 2 distinct values)");

    const estimation::FitResult fit = estimation::fit_ml(values);
    const ml_dist::MLParams fitted(fit.estimates[0], fit.estimates[1]);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(values.size());
    const double rate = 1.0 / mean;
    const double n = static_cast<double>(values.size());

    // Empirical survival at x = fraction of the sample strictly greater.
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());

    Sink sink(cfg.output);
    std::ostream& os = sink.stream();
    os << "# alpha=" << fmt(fit.estimates[0]) << " sigma=" << fmt(fit.estimates[1]) << '\n';
    os << "x,log_emp_surv,log_ml_surv,log_exp_surv\n";
    for (double x : xs) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        const double emp = static_cast<double>(above) / n;
        const double ml_surv = std::clamp(ml_dist::survival(fitted, x), 0.0, 1.0);
        os << fmt(x) << ',' << fmt(std::log(emp)) << ',' << fmt(std::log(ml_surv)) << ','
           << fmt(-rate * x) << '\n';
    }
    sink.finish(cfg.output);
    return 0;
}

void add_model(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--model", cfg.model, "Model: ml, prabhakar, or ar1")
        ->check(CLI::IsMember({"ml", "prabhakar", "ar1"}));
}

}  // namespace

int run(const std::vector<std::string>& args) {
    Config cfg;
    CLI::App app{"Mittag-Leffler distribution toolkit: sampling, fitting, and study tables"};
    app.require_subcommand(1);

    CLI::App* sample = app.add_subcommand("sample", "Draw a sample (or an ar1 trajectory)");
    add_model(sample, cfg);
    sample->add_option("--params", cfg.params, "Comma-separated model parameters")
        ->required()
        ->delimiter(',');
    sample->add_option("--n", cfg.n, "Number of draws / trajectory length");
    sample->add_option("--seed", cfg.seed, "RNG seed (default 42)");
    sample->add_option("--output", cfg.output, "Output path (default: stdout)");

    CLI::App* fit = app.add_subcommand("fit", "Fit a model to a sample file");
    add_model(fit, cfg);
    fit->add_option("--input", cfg.input, "Input data file")->required();
    fit->add_option("--column", cfg.column, "1-based column of a comma-separated file");
    fit->add_option("--grid", cfg.grid, "Transform-abscissa override, comma-separated")
        ->delimiter(',');
    fit->add_option("--output", cfg.output, "Output path (default: stdout)");

    CLI::App* mc = app.add_subcommand("mc-study", "Monte-Carlo estimation study table");
    add_model(mc, cfg);
    mc->add_option("--params", cfg.params, "True parameters, comma-separated")
        ->required()
        ->delimiter(',');
    mc->add_option("--trials", cfg.trials, "Trials (default 500; 100 for prabhakar)");
    mc->add_option("--n", cfg.n, "Sample length per trial (default 1000)");
    mc->add_option("--seed", cfg.seed, "Base seed; trial i uses seed+i");
    mc->add_option("--output", cfg.output, "Table path; adds <stem>.trials<ext> companion");

    CLI::App* survival = app.add_subcommand("survival", "Survival-curve export vs exponential");
    survival->add_option("--input", cfg.input, "Positive inter-arrival times")->required();
    survival->add_option("--column", cfg.column, "1-based column of a comma-separated file");
    survival->add_option("--output", cfg.output, "Output path (default: stdout)");

    CLI::App* ar1_sim = app.add_subcommand("ar1-sim", "Alias of: sample --model ar1");
    ar1_sim->add_option("--params", cfg.params, "alpha,rho")->required()->delimiter(',');
    ar1_sim->add_option("--n", cfg.n, "Trajectory length");
    ar1_sim->add_option("--seed", cfg.seed, "RNG seed (default 42)");
    ar1_sim->add_option("--output", cfg.output, "Output path (default: stdout)");

    CLI::App* ar1_fit = app.add_subcommand("ar1-fit", "Alias of: fit --model ar1");
    ar1_fit->add_option("--input", cfg.input, "Input data file")->required();
    ar1_fit->add_option("--column", cfg.column, "1-based column (default 2 for CSV input)");
    ar1_fit->add_option("--grid", cfg.grid, "Transform-abscissa override, comma-separated")
        ->delimiter(',');
    ar1_fit->add_option("--output", cfg.output, "Output path (default: stdout)");

    std::vector<const char*> argv;
    argv.push_back("mlt");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed()) return cmd_sample(cfg);
        if (fit->parsed()) return cmd_fit(cfg);
        if (mc->parsed()) return cmd_mc_study(cfg);
        if (survival->parsed()) return cmd_survival(cfg);
        if (ar1_sim->parsed()) {
            cfg.model = "ar1";
            return cmd_sample(cfg);
        }
        if (ar1_fit->parsed()) {
            cfg.model = "ar1";
            return cmd_fit(cfg);
        }
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const StudyFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace mlt::cli
