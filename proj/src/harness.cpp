#include "raes/harness.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include <json.hpp>

#include "raes/action_set.hpp"
#include "raes/baselines.hpp"
#include "raes/error.hpp"
#include "raes/raes.hpp"

namespace raes {

namespace {

double parse_double(std::string_view field, std::string_view text) {
    std::string s(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(std::string(field), "expected a real number, got '" + s + "'");
    return v;
}

long parse_long(std::string_view field, std::string_view text) {
    long v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ConfigError(std::string(field), "expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view field, std::string_view text) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ConfigError(std::string(field),
                          "expected a nonnegative integer, got '" + std::string(text) + "'");
    return v;
}

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t vector_fingerprint(const Vector& v) {
    std::string bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
    return fnv1a(bytes);
}

} // namespace

Algo parse_algo(std::string_view s) {
    if (s == "raes") return Algo::raes;
    if (s == "aes") return Algo::aes;
    if (s == "dbgd") return Algo::dbgd;
    if (s == "doubler") return Algo::doubler;
    if (s == "sparring") return Algo::sparring;
    throw ConfigError("algo", "unknown algorithm '" + std::string(s) +
                                  "' (expected raes, aes, dbgd, doubler or sparring)");
}

std::string_view to_string(Algo a) {
    switch (a) {
    case Algo::raes: return "raes";
    case Algo::aes: return "aes";
    case Algo::dbgd: return "dbgd";
    case Algo::doubler: return "doubler";
    case Algo::sparring: return "sparring";
    }
    return "?";
}

std::vector<double> parse_v0_spec(std::string_view spec, int d) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw ConfigError("v0_spec", "expected <kind>:<values>, got '" + std::string(spec) + "'");
    const std::string_view kind = spec.substr(0, colon);
    std::vector<double> vals;
    std::string_view rest = spec.substr(colon + 1);
    while (true) {
        const auto comma = rest.find(',');
        vals.push_back(parse_double("v0_spec", rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    for (double v : vals)
        if (!(v > 0.0)) throw ConfigError("v0_spec", "entries must be positive");

    if (kind == "identity") {
        if (vals.size() != 1) throw ConfigError("v0_spec", "identity takes one value");
        return std::vector<double>(static_cast<std::size_t>(d), vals[0]);
    }
    if (kind == "diag") {
        if (static_cast<int>(vals.size()) != d)
            throw ConfigError("v0_spec", "diag needs " + std::to_string(d) + " entries, got " +
                                             std::to_string(vals.size()));
        return vals;
    }
    if (kind == "split") {
        if (vals.size() != 2) throw ConfigError("v0_spec", "split takes <hi,lo>");
        std::vector<double> out(static_cast<std::size_t>(d), vals[1]);
        for (int i = 0; i < d / 2; ++i) out[static_cast<std::size_t>(i)] = vals[0];
        return out;
    }
    throw ConfigError("v0_spec", "unknown kind '" + std::string(kind) + "'");
}

void ExperimentConfig::validate() const {
    if (d < 2 || d > 64) throw ConfigError("d", "must lie in [2, 64]");
    if (t_horizon < 0) throw ConfigError("t_horizon", "must be nonnegative");
    if (t0 && (*t0 < 0 || *t0 > t_horizon)) throw ConfigError("t0", "must lie in [0, t_horizon]");
    if (!(k > 1.0)) throw ConfigError("k", "must exceed 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
    if (!(c >= 0.0)) throw ConfigError("c", "must be nonnegative");
    if (!(gamma >= 0.0 && gamma < 0.5)) throw ConfigError("gamma", "must lie in [0, 1/2)");
    if (!(noise_sigma >= 0.0)) throw ConfigError("noise_sigma", "must be nonnegative");
    parse_v0_spec(v0_spec, d);
    if (lambda0 && !(*lambda0 > 0.0)) throw ConfigError("lambda0", "must be positive");
    if (n_seeds < 1) throw ConfigError("n_seeds", "must be at least 1");
}

long ExperimentConfig::resolved_t0() const {
    if (t0) return *t0;
    const double v = 0.25 * d * d * std::sqrt(static_cast<double>(t_horizon));
    return std::min(t_horizon, static_cast<long>(std::llround(v)));
}

std::vector<double> ExperimentConfig::v0_spectrum() const { return parse_v0_spec(v0_spec, d); }

double ExperimentConfig::resolved_lambda0() const {
    if (lambda0) return *lambda0;
    const auto s = v0_spectrum();
    return *std::min_element(s.begin(), s.end());
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
    if (key == "algo") algo = parse_algo(value);
    else if (key == "d") d = static_cast<int>(parse_long(key, value));
    else if (key == "t_horizon") t_horizon = parse_long(key, value);
    else if (key == "t0") t0 = value == "auto" ? std::nullopt : std::optional<long>(parse_long(key, value));
    else if (key == "k") k = parse_double(key, value);
    else if (key == "delta") delta = parse_double(key, value);
    else if (key == "c") c = parse_double(key, value);
    else if (key == "gamma") gamma = parse_double(key, value);
    else if (key == "noise_sigma") noise_sigma = parse_double(key, value);
    else if (key == "beta_mode") beta_mode = parse_beta_mode(value);
    else if (key == "v0_spec") v0_spec = std::string(value);
    else if (key == "lambda0")
        lambda0 = value == "auto" ? std::nullopt : std::optional<double>(parse_double(key, value));
    else if (key == "n_seeds") n_seeds = static_cast<int>(parse_long(key, value));
    else if (key == "base_seed") base_seed = parse_u64(key, value);
    else if (key == "out_path") out_path = std::string(value);
    else throw ConfigError(std::string(key), "unknown field");
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    ExperimentConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_string()) cfg.set(it.key(), v.get<std::string>());
        else if (v.is_number_integer() || v.is_number_unsigned()) cfg.set(it.key(), v.dump());
        else if (v.is_number_float()) cfg.set(it.key(), fmt_g(v.get<double>()));
        else throw ConfigError(it.key(), "unsupported JSON value " + v.dump());
    }
    return cfg;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["algo"] = std::string(to_string(algo));
    j["d"] = d;
    j["t_horizon"] = t_horizon;
    if (t0) j["t0"] = *t0;
    else j["t0"] = "auto";
    j["k"] = k;
    j["delta"] = delta;
    j["c"] = c;
    j["gamma"] = gamma;
    j["noise_sigma"] = noise_sigma;
    j["beta_mode"] = std::string(to_string(beta_mode));
    j["v0_spec"] = v0_spec;
    if (lambda0) j["lambda0"] = *lambda0;
    else j["lambda0"] = "auto";
    j["n_seeds"] = n_seeds;
    j["base_seed"] = base_seed;
    j["out_path"] = out_path;
    return j.dump();
}

std::uint64_t ExperimentConfig::hash() const {
    ExperimentConfig c = *this;
    c.out_path.clear();
    return fnv1a(c.to_json());
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& cfg,
                                        std::vector<RunRecord>* records) {
    cfg.validate();
    const auto d = static_cast<std::size_t>(cfg.d);
    Stream instance(cfg.base_seed, 0, StreamRole::instance);
    const Vector theta_star = sample_unit_sphere(d, instance);
    const auto spectrum = cfg.v0_spectrum();
    const ActionSet set = ActionSet::unit_ball(d);
    const RationalityParams params{cfg.c, cfg.gamma, cfg.noise_sigma, cfg.beta_mode};
    const std::uint64_t cfg_hash = cfg.hash();

    std::vector<RegretTrace> traces;
    traces.reserve(static_cast<std::size_t>(cfg.n_seeds));
    for (int i = 0; i < cfg.n_seeds; ++i) {
        const auto run = static_cast<std::uint64_t>(i);
        UserStreams streams{Stream(cfg.base_seed, run, StreamRole::user_beta),
                            Stream(cfg.base_seed, run, StreamRole::user_noise)};
        const std::uint64_t user_fp =
            streams.beta.fingerprint() ^ (streams.noise.fingerprint() * 0x9e3779b97f4a7c15ULL);
        Stream algo(cfg.base_seed, run, StreamRole::algorithm);
        const auto start = std::chrono::steady_clock::now();

        RegretTrace trace;
        if (cfg.algo == Algo::aes) {
            UserState user = UserState::perfect(theta_star);
            Ellipsoid e = Ellipsoid::ball(d);
            const Vector best = set.best_arm(theta_star);
            for (long t = 0; t < cfg.t_horizon; ++t) {
                const StepOutcome o = aes_step(e, user, streams);
                trace.push("cut", instantaneous_regret(theta_star, best, o.a0, o.a1));
            }
        } else {
            UserState user(theta_star, SymMatrix::diagonal(spectrum), params);
            switch (cfg.algo) {
            case Algo::raes: {
                RaesConfig rc;
                rc.t_horizon = cfg.t_horizon;
                rc.t0 = cfg.resolved_t0();
                rc.k = cfg.k;
                rc.delta = cfg.delta;
                rc.c = cfg.c;
                rc.gamma = cfg.gamma;
                rc.lambda0 = cfg.resolved_lambda0();
                rc.m = 2.0 * set.params().d0;
                trace = run_raes(rc, set, user, streams);
                break;
            }
            case Algo::dbgd: trace = run_dbgd(set, user, cfg.t_horizon, streams, algo); break;
            case Algo::doubler:
                trace = run_doubler(set, user, cfg.t_horizon, cfg.delta, streams, algo);
                break;
            case Algo::sparring:
                trace = run_sparring(set, user, cfg.t_horizon, cfg.delta, streams, algo);
                break;
            case Algo::aes: break;
            }
        }
        trace.algo = std::string(to_string(cfg.algo));
        trace.seed = i;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (records)
            records->push_back(RunRecord{cfg_hash, i, trace.algo, trace.final_regret(), secs,
                                         vector_fingerprint(theta_star), user_fp});
        traces.push_back(std::move(trace));
    }
    return traces;
}

std::vector<RegretTrace> run_sweep(const ExperimentConfig& base, const std::vector<Algo>& algos,
                                   const std::vector<double>& gammas,
                                   const std::vector<std::string>& v0_specs,
                                   std::vector<RunRecord>* records) {
    if (algos.empty()) throw ConfigError("algo", "sweep needs at least one algorithm");
    if (gammas.empty()) throw ConfigError("gamma", "sweep needs at least one value");
    if (v0_specs.empty()) throw ConfigError("v0_spec", "sweep needs at least one value");
    std::vector<RegretTrace> out;
    for (Algo a : algos)
        for (double g : gammas)
            for (const auto& v0 : v0_specs) {
                ExperimentConfig cfg = base;
                cfg.algo = a;
                cfg.gamma = g;
                cfg.v0_spec = v0;
                char label[64];
                std::snprintf(label, sizeof label, " gamma=%g v0=", g);
                const std::string name = std::string(to_string(a)) + label + v0;
                for (auto& t : run_experiment(cfg, records)) {
                    t.algo = name;
                    out.push_back(std::move(t));
                }
                if (records)
                    for (auto& r : *records)
                        if (r.algo == to_string(a)) r.algo = name;
            }
    return out;
}

RegretTrace average_traces(const std::vector<RegretTrace>& traces) {
    if (traces.empty()) throw Error(ErrorCode::invalid_argument, "average_traces: no traces");
    const std::size_t n = traces.front().size();
    for (const auto& t : traces)
        if (t.size() != n || t.cumulative.size() != n)
            throw Error(ErrorCode::invalid_argument, "average_traces: length mismatch (" +
                                                         std::to_string(t.size()) + " vs " +
                                                         std::to_string(n) + ")");
    RegretTrace avg;
    avg.algo = traces.front().algo;
    avg.seed = -1;
    avg.steps.resize(n);
    avg.cumulative.assign(n, 0.0);
    const double w = 1.0 / static_cast<double>(traces.size());
    for (std::size_t i = 0; i < n; ++i) {
        double inst = 0.0, cum = 0.0;
        for (const auto& t : traces) {
            inst += t.steps[i].inst_regret;
            cum += t.cumulative[i];
        }
        avg.steps[i] = TraceStep{traces.front().steps[i].t, "", inst * w};
        avg.cumulative[i] = cum * w;
    }
    return avg;
}

std::vector<std::pair<std::string, std::vector<RegretTrace>>>
group_by_algo(const std::vector<RegretTrace>& traces) {
    std::vector<std::pair<std::string, std::vector<RegretTrace>>> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& t : traces) {
        auto [it, fresh] = index.emplace(t.algo, groups.size());
        if (fresh) groups.emplace_back(t.algo, std::vector<RegretTrace>{});
        groups[it->second].second.push_back(t);
    }
    return groups;
}

std::vector<Series> averaged_series(const std::vector<RegretTrace>& traces) {
    std::vector<Series> out;
    for (const auto& [name, group] : group_by_algo(traces)) {
        const RegretTrace avg = average_traces(group);
        Series s;
        s.name = name;
        for (std::size_t i = 0; i < avg.size(); ++i) {
            s.x.push_back(static_cast<double>(avg.steps[i].t));
            s.y.push_back(avg.cumulative[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace raes
