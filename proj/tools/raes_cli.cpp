// raes command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raes/raes.h"

namespace {

struct CliFailure {
    int code;
    std::string message;
};

void check(raes_status st, int exit_code) {
    if (st != RAES_OK) throw CliFailure{exit_code, raes_last_error()};
}

// Config errors are the user's fault (exit 1); everything else is runtime (2).
void check_cfg(raes_status st) { check(st, st == RAES_ERR_CONFIG ? 1 : 2); }

struct Handles {
    raes_config* cfg = nullptr;
    raes_results* res = nullptr;
    ~Handles() {
        raes_results_destroy(res);
        raes_config_destroy(cfg);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CliFailure{1, "cannot read config file '" + path + "'"};
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string config_get(const raes_config* cfg, const char* key) {
    size_t need = 0;
    check(raes_config_get(cfg, key, nullptr, 0, &need), 2);
    std::string s(need, '\0');
    check(raes_config_get(cfg, key, s.data(), s.size(), &need), 2);
    s.resize(need - 1);
    return s;
}

// Flag name -> config key. Flags override the config file.
const std::vector<std::pair<std::string, std::string>> kFields = {
    {"algo", "algo"},           {"d", "d"},
    {"t", "t_horizon"},         {"t0", "t0"},
    {"k", "k"},                 {"delta", "delta"},
    {"c", "c"},                 {"gamma", "gamma"},
    {"noise-sigma", "noise_sigma"}, {"beta-mode", "beta_mode"},
    {"v0", "v0_spec"},          {"lambda0", "lambda0"},
    {"seeds", "n_seeds"},       {"base-seed", "base_seed"},
    {"out", "out_path"},
};

struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App* app, bool with_algo_gamma_v0) {
        app->add_option("--config", config_path, "JSON config file (same field names)");
        for (const auto& [flag, key] : kFields) {
            if (!with_algo_gamma_v0 && (flag == "algo" || flag == "gamma" || flag == "v0")) continue;
            app->add_option("--" + flag, values[flag], "sets " + key);
        }
    }

    raes_config* build(const CLI::App* app) const {
        raes_config* cfg = nullptr;
        if (!config_path.empty()) check_cfg(raes_config_from_json(slurp(config_path).c_str(), &cfg));
        else check_cfg(raes_config_create(&cfg));
        for (const auto& [flag, key] : kFields) {
            const auto opt = app->get_option_no_throw("--" + flag);
            if (opt && opt->count() > 0) {
                const raes_status st = raes_config_set(cfg, key.c_str(), values.at(flag).c_str());
                if (st != RAES_OK) {
                    raes_config_destroy(cfg);
                    check_cfg(st);
                }
            }
        }
        const raes_status st = raes_config_validate(cfg);
        if (st != RAES_OK) {
            raes_config_destroy(cfg);
            check_cfg(st);
        }
        return cfg;
    }
};

void print_record(void*, const char* algo, long seed, double final_regret, double secs,
                  uint64_t hash) {
    std::fprintf(stderr, "%s seed=%ld regret=%.6g time=%.3fs config=%016llx\n", algo, seed,
                 final_regret, secs, static_cast<unsigned long long>(hash));
}

void print_line(void*, const char* line) { std::printf("%s\n", line); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate system-side learning against a learning user"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress per-run summaries");

    ConfigFlags run_flags;
    auto* run = app.add_subcommand("run", "run one configuration and write a CSV");
    run_flags.attach(run, true);

    ConfigFlags sweep_flags;
    std::vector<std::string> algos{"raes"};
    std::vector<double> gammas{0.0};
    std::vector<std::string> v0s{"identity:1"};
    auto* sweep = app.add_subcommand("sweep", "cartesian product over algorithms, gamma and V0");
    sweep_flags.attach(sweep, false);
    sweep->add_option("--algos", algos, "algorithms")->delimiter(',');
    sweep->add_option("--gammas", gammas, "gamma values")->delimiter(',');
    sweep->add_option("--v0s", v0s, "V0 specs (repeat the flag; values contain commas)");

    std::string plot_in, plot_out = "regret.svg", plot_title = "Cumulative regret";
    auto* plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
    plot->add_option("csv", plot_in, "input CSV")->required();
    plot->add_option("--out", plot_out, "output SVG");
    plot->add_option("--title", plot_title, "chart title");

    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        Handles h;
        if (run->parsed()) {
            h.cfg = run_flags.build(run);
            check(raes_run(h.cfg, &h.res), 2);
            const std::string out = config_get(h.cfg, "out_path");
            check(raes_results_write_csv(h.res, out.c_str()), 2);
            if (!quiet) check(raes_results_records(h.res, print_record, nullptr), 2);
        } else if (sweep->parsed()) {
            h.cfg = sweep_flags.build(sweep);
            std::vector<const char*> a, v;
            for (const auto& s : algos) a.push_back(s.c_str());
            for (const auto& s : v0s) v.push_back(s.c_str());
            check_cfg(raes_sweep(h.cfg, a.data(), a.size(), gammas.data(), gammas.size(),
                                 v.data(), v.size(), &h.res));
            const std::string out = config_get(h.cfg, "out_path");
            check(raes_results_write_csv(h.res, out.c_str()), 2);
            if (!quiet) check(raes_results_records(h.res, print_record, nullptr), 2);
        } else if (plot->parsed()) {
            check(raes_results_read_csv(plot_in.c_str(), &h.res), 2);
            check(raes_results_render_svg(h.res, plot_out.c_str(), plot_title.c_str()), 2);
        } else if (selftest->parsed()) {
            int passed = 0;
            check(raes_selftest(print_line, nullptr, &passed), 2);
            if (!passed) throw CliFailure{2, "selftest failed"};
        }
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << '\n';
        if (f.code == 1) std::cerr << '\n' << app.help();
        return f.code;
    }
    return 0;
}
