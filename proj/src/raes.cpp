#include "raes/raes.hpp"

#include <cmath>

#include "raes/error.hpp"

namespace raes {

void RaesConfig::validate(const ActionSet& set) const {
    if (t_horizon < 0) throw ConfigError("t_horizon", "must be nonnegative");
    if (t0 < 0 || t0 > t_horizon) throw ConfigError("t0", "must lie in [0, t_horizon]");
    if (!(k > 1.0)) throw ConfigError("k", "must exceed 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
    if (!(c >= 0.0)) throw ConfigError("c", "must be nonnegative");
    if (!(gamma >= 0.0 && gamma < 0.5)) throw ConfigError("gamma", "must lie in [0, 1/2)");
    if (!(lambda0 > 0.0)) throw ConfigError("lambda0", "must be positive");
    if (!(m >= 2.0 * set.params().d0 - 1e-12)) throw ConfigError("m", "must be at least 2*D0");
    if (m > 2.0 * set.params().d1 + 1e-12)
        throw ConfigError("m", "cut pair +-(m/2)g must fit inside the outer radius D1");
    // The kept halfspace uses offset -alpha |g|_P with normal (loser - winner)/m;
    // that offset only dominates the certified one for m >= 1.
    if (m < 1.0) throw ConfigError("m", "must be at least 1");
}

long tuned_t0(double c, double smooth_l, double d0, double d1, double gamma, double delta,
              long t_horizon, std::size_t d) {
    const double dd = static_cast<double>(d);
    const double v = c * std::sqrt(smooth_l * d1) * std::pow(d0, -1.5) * confidence_factor(delta) *
                     dd * dd * std::pow(static_cast<double>(t_horizon), 0.5 + gamma);
    if (!(v > 0.0)) return 0;
    return std::min(t_horizon, static_cast<long>(std::llround(v)));
}

std::string_view to_string(Branch b) {
    switch (b) {
    case Branch::cut: return "cut";
    case Branch::explore: return "explore";
    case Branch::exploit: return "exploit";
    }
    return "?";
}

RaesState RaesState::initial(std::size_t d, double lambda0) {
    RaesState s;
    s.ellipsoid = Ellipsoid::ball(d);
    s.gram_est = SymMatrix(d, lambda0);
    return s;
}

Vector principal_direction(const Ellipsoid& e, const EigenDecomp& decomp) {
    Vector u = decomp.vectors.at(0);
    if (dot(u, e.center) < 0.0)
        for (auto& x : u) x = -x;
    return u;
}

Vector principal_direction(const Ellipsoid& e) {
    return principal_direction(e, e.spectrum);
}

StepOutcome aes_step(Ellipsoid& e, UserState& user, UserStreams& streams) {
    const EigenDecomp& dec = e.spectrum;
    const Vector g = cut_direction(e, dec);
    StepOutcome out;
    out.branch = Branch::cut;
    out.a0 = scaled(g, -1.0);
    out.a1 = g;
    out.alpha = 0.0;
    out.chosen = user.interact(out.a0, out.a1, streams.beta, streams.noise);
    const Vector& winner = out.chosen.index == 0 ? out.a0 : out.a1;
    const Vector& loser = out.chosen.index == 0 ? out.a1 : out.a0;
    if (!at_resolution_limit(e)) {
        e = cut(e, make_cut(e, scaled(sub(loser, winner), 0.5), 0.0));
        out.updated = true;
    }
    return out;
}

Vector run_aes(std::size_t d, long t_max, UserState& user, UserStreams& streams) {
    if (user.dim() != d) throw DomainError("run_aes: user dimension mismatch");
    Ellipsoid e = Ellipsoid::ball(d);
    for (long t = 0; t < t_max; ++t) aes_step(e, user, streams);
    return principal_direction(e);
}

double compute_alpha(const RaesState& state, const RaesConfig& cfg, std::span<const double> a0,
                     std::span<const double> a1, std::span<const double> g, double eps0) {
    const double t = static_cast<double>(state.round + 1);
    const Cholesky v(state.gram_est);
    const double conf = cfg.union_bound && cfg.t0 > 0
                            ? confidence_factor(cfg.delta / static_cast<double>(cfg.t0))
                            : confidence_factor(cfg.delta);
    const double spread = v.inv_norm(a0) + v.inv_norm(a1) + conf * v.inv_norm(sub(a0, a1));
    const double num = cfg.c * std::pow(t, cfg.gamma) * spread + 2.0 * eps0;
    const double gp = std::sqrt(shape_quad(state.ellipsoid, g));
    if (!(gp > 0.0)) throw DomainError("compute_alpha: zero cut direction");
    return -num / gp;
}

std::pair<Vector, Vector> exploration_pair(const SymMatrix& gram_est, double d0) {
    const std::size_t d = gram_est.dim();
    const EigenDecomp dec = eigendecomp(gram_est);
    Vector v1 = dec.vectors.front();
    Vector vd = dec.vectors.back();
    if (dec.values.front() - dec.values.back() <= 1e-12 * std::abs(dec.values.front())) {
        v1 = unit_vector(d, 0);
        vd = unit_vector(d, 1);
    }
    Vector p = scaled(v1, 0.8 * d0);
    Vector q = p;
    axpy(0.6 * d0, vd, p);
    axpy(-0.6 * d0, vd, q);
    return {std::move(p), std::move(q)};
}

namespace {

StepOutcome explore(RaesState& state, const ActionSet& set, UserState& user,
                    UserStreams& streams, double alpha) {
    auto [p, q] = exploration_pair(state.gram_est, set.params().d0);
    StepOutcome out;
    out.branch = Branch::explore;
    out.alpha = alpha;
    out.a0 = set.associate(p);
    out.a1 = set.associate(q);
    out.chosen = user.interact(out.a0, out.a1, streams.beta, streams.noise);
    return out;
}

} // namespace

StepOutcome raes_step(RaesState& state, const RaesConfig& cfg, const ActionSet& set,
                      UserState& user, UserStreams& streams) {
    if (cfg.t_horizon > 0 && state.round >= cfg.t_horizon)
        throw DomainError("raes_step: horizon exhausted");
    const long t = state.round + 1;
    const int d = static_cast<int>(set.dim());
    StepOutcome out;

    if (t <= cfg.t0) {
        Ellipsoid& e = state.ellipsoid;
        const EigenDecomp& dec = e.spectrum;
        const Vector g = cut_direction(e, dec);
        const Vector bar0 = scaled(g, -0.5 * cfg.m);
        const Vector bar1 = scaled(g, 0.5 * cfg.m);
        const Vector a0 = set.associate(bar0);
        const Vector a1 = set.associate(bar1);
        const double alpha = compute_alpha(state, cfg, a0, a1, g, set.params().eps0);

        if (alpha >= -1.0 / (cfg.k * d)) {
            out.branch = Branch::cut;
            out.alpha = alpha;
            out.a0 = a0;
            out.a1 = a1;
            out.chosen = user.interact(a0, a1, streams.beta, streams.noise);
            // Normal points from the preferred (idealized) arm to the other one;
            // the preferred side is kept.
            const Vector& win = out.chosen.index == 0 ? bar0 : bar1;
            const Vector& lose = out.chosen.index == 0 ? bar1 : bar0;
            const Vector h = scaled(sub(lose, win), 1.0 / cfg.m);
            const double offset = -alpha * std::sqrt(shape_quad(e, g));
            try {
                if (!at_resolution_limit(e)) {
                    e = cut(e, make_cut(e, h, offset));
                    out.updated = true;
                }
            } catch (const RejectedCut&) {
                out.branch = Branch::explore;
            }
        } else {
            out = explore(state, set, user, streams, alpha);
        }
    } else {
        const Vector u1 = principal_direction(state.ellipsoid);
        const Vector a = set.best_arm(u1);
        out.branch = Branch::exploit;
        out.a0 = a;
        out.a1 = a;
        out.chosen = user.interact(a, a, streams.beta, streams.noise);
    }

    state.gram_est.rank1_update(out.chosen.arm);
    state.gram_est.symmetrize();
    ++state.round;
    switch (out.branch) {
    case Branch::cut: ++state.n_cuts; break;
    case Branch::explore: ++state.n_explores; break;
    case Branch::exploit: ++state.n_exploits; break;
    }
    return out;
}

RegretTrace run_raes(const RaesConfig& cfg, const ActionSet& set, UserState& user,
                     UserStreams& streams) {
    cfg.validate(set);
    if (user.dim() != set.dim()) throw DomainError("run_raes: user and action set dimension differ");
    RaesState state = RaesState::initial(set.dim(), cfg.lambda0);
    const Vector best = set.best_arm(user.theta_star());
    RegretTrace trace;
    trace.algo = "raes";
    trace.steps.reserve(static_cast<std::size_t>(cfg.t_horizon));
    trace.cumulative.reserve(static_cast<std::size_t>(cfg.t_horizon));
    for (long t = 0; t < cfg.t_horizon; ++t) {
        const StepOutcome o = raes_step(state, cfg, set, user, streams);
        trace.push(std::string(to_string(o.branch)),
                   instantaneous_regret(user.theta_star(), best, o.a0, o.a1));
    }
    return trace;
}

} // namespace raes
