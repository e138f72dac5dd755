#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raes/trace.hpp"
#include "raes/user_sim.hpp"

namespace raes {

enum class Algo { raes, aes, dbgd, doubler, sparring };

Algo parse_algo(std::string_view s);
std::string_view to_string(Algo a);

struct ExperimentConfig {
    Algo algo = Algo::raes;
    int d = 5;
    long t_horizon = 10000;
    std::optional<long> t0;         // nullopt: round(0.25 d^2 sqrt(T))
    double k = 1.05;
    double delta = 0.1;
    double c = 1.0;
    double gamma = 0.0;
    double noise_sigma = 0.1;
    BetaMode beta_mode = BetaMode::uniform_random;
    std::string v0_spec = "identity:1";
    std::optional<double> lambda0;  // nullopt: min of the V0 spectrum
    int n_seeds = 10;
    std::uint64_t base_seed = 42;
    std::string out_path = "results.csv";

    void validate() const;
    long resolved_t0() const;
    double resolved_lambda0() const;
    std::vector<double> v0_spectrum() const;

    // Sets one field from its textual form; keys use the JSON field names.
    void set(std::string_view key, std::string_view value);
    static ExperimentConfig from_json(std::string_view json);
    std::string to_json() const;
    // FNV-1a over the canonical JSON with out_path removed.
    std::uint64_t hash() const;
};

// identity:<v> | diag:<v1,...,vd> | split:<hi,lo> (first floor(d/2) entries hi)
std::vector<double> parse_v0_spec(std::string_view spec, int d);

struct RunRecord {
    std::uint64_t config_hash = 0;
    long seed = 0;
    std::string algo;
    double final_regret = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t instance_fingerprint = 0;
    std::uint64_t user_stream_fingerprint = 0;
};

// theta* comes from the instance stream of base_seed and is shared by every
// seed and algorithm; seed i uses streams (base_seed, i, role).
std::vector<RegretTrace> run_experiment(const ExperimentConfig& cfg,
                                        std::vector<RunRecord>* records = nullptr);

// Cartesian product over (algos x gammas x v0 specs). Trace labels take the
// form "<algo> gamma=<g> v0=<spec>".
std::vector<RegretTrace> run_sweep(const ExperimentConfig& base, const std::vector<Algo>& algos,
                                   const std::vector<double>& gammas,
                                   const std::vector<std::string>& v0_specs,
                                   std::vector<RunRecord>* records = nullptr);

// Pointwise mean of inst and cumulative regret; branch labels are dropped.
RegretTrace average_traces(const std::vector<RegretTrace>& traces);

// Groups traces by label, preserving first-appearance order.
std::vector<std::pair<std::string, std::vector<RegretTrace>>>
group_by_algo(const std::vector<RegretTrace>& traces);

inline constexpr std::string_view kCsvHeader = "algo,seed,t,branch,inst_regret,cum_regret";

void write_csv(const std::vector<RegretTrace>& traces, std::ostream& os);
void write_csv(const std::vector<RegretTrace>& traces, const std::string& path);
std::vector<RegretTrace> read_csv(std::istream& is);
std::vector<RegretTrace> read_csv(const std::string& path);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title = "Cumulative regret";
    std::string x_label = "t";
    std::string y_label = "cumulative regret";
    int width = 800;
    int height = 500;
    std::size_t max_points = 1000;
};

// Chart-space mapping shared by the renderer and its tests.
struct ChartFrame {
    double x_min, x_max, y_min, y_max;
    double left, top, plot_w, plot_h;
    double px(double x) const;
    double py(double y) const;
};

ChartFrame chart_frame(const std::vector<Series>& series, const ChartOptions& opt);
std::string render_svg(const std::vector<Series>& series, const ChartOptions& opt = {});
void render_svg(const std::vector<Series>& series, const std::string& path,
                const ChartOptions& opt = {});

// One averaged cumulative-regret series per trace label.
std::vector<Series> averaged_series(const std::vector<RegretTrace>& traces);

// Quick invariant suite; one line per check to `log`. Returns true if all pass.
bool run_selftest(std::ostream& log);

} // namespace raes
