#include "raes/raes.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "raes/ellipsoid.hpp"
#include "raes/error.hpp"
#include "raes/harness.hpp"

struct raes_config {
    raes::ExperimentConfig cfg;
};

struct raes_results {
    std::vector<raes::RegretTrace> traces;
    std::vector<raes::RunRecord> records;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
raes_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return RAES_OK;
    } catch (const raes::Error& e) {
        g_last_error = e.what();
        return static_cast<raes_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RAES_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RAES_ERR_INTERNAL;
    }
}

void require(bool cond, const char* what) {
    if (!cond) throw raes::Error(raes::ErrorCode::invalid_argument, what);
}

void copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
    if (needed) *needed = s.size() + 1;
    if (buf && cap > s.size()) std::memcpy(buf, s.c_str(), s.size() + 1);
    else if (buf || !needed)
        throw raes::Error(raes::ErrorCode::invalid_argument, "output buffer too small");
}

} // namespace

extern "C" {

const char* raes_last_error(void) { return g_last_error.c_str(); }

const char* raes_version(void) { return "1.0.0"; }

raes_status raes_config_create(raes_config** out) {
    return guarded([&] {
        require(out, "null output handle");
        *out = new raes_config{};
    });
}

raes_status raes_config_from_json(const char* json, raes_config** out) {
    return guarded([&] {
        require(json && out, "null argument");
        *out = new raes_config{raes::ExperimentConfig::from_json(json)};
    });
}

raes_status raes_config_set(raes_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        require(cfg && key && value, "null argument");
        cfg->cfg.set(key, value);
    });
}

raes_status raes_config_validate(const raes_config* cfg) {
    return guarded([&] {
        require(cfg, "null config");
        cfg->cfg.validate();
    });
}

raes_status raes_config_to_json(const raes_config* cfg, char* buf, size_t cap, size_t* needed) {
    return guarded([&] {
        require(cfg, "null config");
        copy_out(cfg->cfg.to_json(), buf, cap, needed);
    });
}

raes_status raes_config_get(const raes_config* cfg, const char* key, char* buf, size_t cap,
                            size_t* needed) {
    return guarded([&] {
        require(cfg && key, "null argument");
        const auto j = nlohmann::json::parse(cfg->cfg.to_json());
        if (!j.contains(key)) throw raes::ConfigError(key, "unknown field");
        const auto& v = j.at(key);
        copy_out(v.is_string() ? v.get<std::string>() : v.dump(), buf, cap, needed);
    });
}

void raes_config_destroy(raes_config* cfg) { delete cfg; }

raes_status raes_run(const raes_config* cfg, raes_results** out) {
    return guarded([&] {
        require(cfg && out, "null argument");
        auto res = std::make_unique<raes_results>();
        res->traces = raes::run_experiment(cfg->cfg, &res->records);
        *out = res.release();
    });
}

raes_status raes_sweep(const raes_config* base, const char* const* algos, size_t n_algos,
                       const double* gammas, size_t n_gammas, const char* const* v0_specs,
                       size_t n_v0_specs, raes_results** out) {
    return guarded([&] {
        require(base && out, "null argument");
        require((algos || !n_algos) && (gammas || !n_gammas) && (v0_specs || !n_v0_specs),
                "null list");
        std::vector<raes::Algo> a;
        for (size_t i = 0; i < n_algos; ++i) a.push_back(raes::parse_algo(algos[i]));
        std::vector<double> g(gammas, gammas + n_gammas);
        std::vector<std::string> v(v0_specs, v0_specs + n_v0_specs);
        auto res = std::make_unique<raes_results>();
        res->traces = raes::run_sweep(base->cfg, a, g, v, &res->records);
        *out = res.release();
    });
}

raes_status raes_results_read_csv(const char* path, raes_results** out) {
    return guarded([&] {
        require(path && out, "null argument");
        auto res = std::make_unique<raes_results>();
        res->traces = raes::read_csv(std::string(path));
        *out = res.release();
    });
}

size_t raes_results_count(const raes_results* res) { return res ? res->traces.size() : 0; }

raes_status raes_results_trace_info(const raes_results* res, size_t index, const char** algo,
                                    long* seed, size_t* length) {
    return guarded([&] {
        require(res, "null results");
        require(index < res->traces.size(), "trace index out of range");
        const auto& t = res->traces[index];
        if (algo) *algo = t.algo.c_str();
        if (seed) *seed = t.seed;
        if (length) *length = t.size();
    });
}

raes_status raes_results_cumulative(const raes_results* res, size_t index, double* out,
                                    size_t cap) {
    return guarded([&] {
        require(res && out, "null argument");
        require(index < res->traces.size(), "trace index out of range");
        const auto& c = res->traces[index].cumulative;
        require(cap >= c.size(), "output buffer too small");
        std::copy(c.begin(), c.end(), out);
    });
}

raes_status raes_results_write_csv(const raes_results* res, const char* path) {
    return guarded([&] {
        require(res && path, "null argument");
        raes::write_csv(res->traces, std::string(path));
    });
}

raes_status raes_results_render_svg(const raes_results* res, const char* path, const char* title) {
    return guarded([&] {
        require(res && path, "null argument");
        raes::ChartOptions opt;
        if (title) opt.title = title;
        raes::render_svg(raes::averaged_series(res->traces), std::string(path), opt);
    });
}

raes_status raes_results_records(const raes_results* res, raes_record_fn fn, void* user) {
    return guarded([&] {
        require(res && fn, "null argument");
        for (const auto& r : res->records)
            fn(user, r.algo.c_str(), r.seed, r.final_regret, r.wall_seconds, r.config_hash);
    });
}

void raes_results_destroy(raes_results* res) { delete res; }

raes_status raes_selftest(raes_line_fn fn, void* user, int* passed) {
    return guarded([&] {
        std::ostringstream log;
        const bool ok = raes::run_selftest(log);
        if (passed) *passed = ok ? 1 : 0;
        if (fn) {
            std::istringstream in(log.str());
            for (std::string line; std::getline(in, line);) fn(user, line.c_str());
        }
    });
}

raes_status raes_volume_ratio(double alpha, int d, double* out) {
    return guarded([&] {
        require(out, "null output");
        *out = raes::volume_ratio(alpha, d);
    });
}

} // extern "C"
