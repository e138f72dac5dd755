#include "raes/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "raes/error.hpp"

namespace raes {

namespace {

void check_presented(const ActionSet& set, const Vector& a0, const Vector& a1) {
    if (!set.contains(a0, 1e-9) || !set.contains(a1, 1e-9))
        throw InvariantError("baseline presented an arm outside the action set");
}

template <typename Step>
RegretTrace run_duel(const char* name, const ActionSet& set, UserState& user, long t_horizon,
                     Step&& step) {
    if (user.dim() != set.dim()) throw DomainError("user and action set dimension differ");
    const Vector best = set.best_arm(user.theta_star());
    RegretTrace trace;
    trace.algo = name;
    trace.steps.reserve(static_cast<std::size_t>(std::max(0L, t_horizon)));
    trace.cumulative.reserve(static_cast<std::size_t>(std::max(0L, t_horizon)));
    for (long t = 1; t <= t_horizon; ++t) {
        const DuelStep s = step(t);
        check_presented(set, s.a0, s.a1);
        trace.push("duel", instantaneous_regret(user.theta_star(), best, s.a0, s.a1));
    }
    return trace;
}

} // namespace

OfulState OfulState::fresh(std::size_t d, double reg, double width_scale, double delta) {
    if (!(reg > 0.0)) throw DomainError("OFUL ridge parameter must be positive");
    OfulState s;
    s.gram = SymMatrix(d, reg);
    s.moment.assign(d, 0.0);
    s.theta_hat.assign(d, 0.0);
    s.width_scale = width_scale;
    s.reg = reg;
    s.delta = delta;
    return s;
}

double oful_width(const OfulState& s, long t) {
    const double d = static_cast<double>(s.gram.dim());
    return s.width_scale * std::sqrt(d * std::log((1.0 + static_cast<double>(t)) / s.delta));
}

std::vector<Vector> draw_candidate_directions(std::size_t d, Stream& stream, std::size_t n) {
    std::vector<Vector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_unit_sphere(d, stream));
    return out;
}

std::vector<Vector> oful_candidates(const OfulState& s, const ActionSet& set,
                                    std::span<const Vector> random_dirs) {
    std::vector<Vector> pool;
    pool.reserve(1 + 2 * s.gram.dim() + random_dirs.size());
    if (norm(s.theta_hat) > 0.0) pool.push_back(set.best_arm(s.theta_hat));
    const EigenDecomp dec = eigendecomp(s.gram);
    for (const auto& u : dec.vectors) {
        pool.push_back(set.best_arm(u));
        pool.push_back(set.best_arm(scaled(u, -1.0)));
    }
    for (const auto& r : random_dirs) pool.push_back(set.best_arm(r));
    return pool;
}

double oful_score(const OfulState& s, const Cholesky& gram, std::span<const double> arm, long t) {
    return dot(s.theta_hat, arm) + oful_width(s, t) * gram.inv_norm(arm);
}

Vector oful_select(const OfulState& s, const ActionSet& set, long t,
                   std::span<const Vector> random_dirs) {
    const std::vector<Vector> pool = oful_candidates(s, set, random_dirs);
    const Cholesky ch(s.gram);
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const double sc = oful_score(s, ch, pool[i], t);
        // rounding-level differences count as ties so the lowest index wins
        if (i == 0 || sc > best_score + 1e-12 * std::max(1.0, std::abs(best_score))) {
            best_score = sc;
            best = i;
        }
    }
    return pool[best];
}

Vector oful_select(const OfulState& s, const ActionSet& set, long t, Stream& stream) {
    const auto dirs = draw_candidate_directions(set.dim(), stream);
    return oful_select(s, set, t, dirs);
}

void oful_update(OfulState& s, std::span<const double> arm, double reward) {
    s.gram.rank1_update(arm);
    s.gram.symmetrize();
    axpy(reward, arm, s.moment);
    s.theta_hat = Cholesky(s.gram).solve(s.moment);
}

DbgdState DbgdState::standard(std::size_t d, long t_horizon) {
    const double T = static_cast<double>(std::max(1L, t_horizon));
    DbgdState s;
    s.w.assign(d, 0.0);
    s.step_explore = 1.0 / (std::sqrt(static_cast<double>(d)) * std::pow(T, 0.25));
    s.step_update = 1.0 / std::sqrt(T);
    return s;
}

DuelStep dbgd_step(DbgdState& s, const ActionSet& set, UserState& user, UserStreams& streams,
                   Stream& algo) {
    const Vector u = sample_unit_sphere(set.dim(), algo);
    Vector probe = s.w;
    axpy(s.step_explore, u, probe);
    DuelStep out;
    out.a0 = s.w;
    out.a1 = set.nearest(probe);
    out.chosen = user.interact(out.a0, out.a1, streams.beta, streams.noise);
    if (out.chosen.index == 1) {
        Vector next = s.w;
        axpy(s.step_update, u, next);
        s.w = set.nearest(next);
    }
    return out;
}

DoublerState DoublerState::fresh(std::size_t d, double delta) {
    DoublerState s;
    s.left_multiset.push_back(Vector(d, 0.0));
    s.oful = OfulState::fresh(d, 1.0, 1.0, delta);
    return s;
}

DuelStep doubler_step(DoublerState& s, const ActionSet& set, UserState& user, long t,
                      UserStreams& streams, Stream& algo) {
    DuelStep out;
    out.a0 = s.left_multiset[algo.index(s.left_multiset.size())];
    out.a1 = oful_select(s.oful, set, t, algo);
    out.chosen = user.interact(out.a0, out.a1, streams.beta, streams.noise);
    oful_update(s.oful, out.a1, out.chosen.index == 1 ? 1.0 : 0.0);
    s.next_multiset.push_back(out.a1);

    if (++s.epoch_round == (1L << s.epoch)) {
        s.left_multiset = std::move(s.next_multiset);
        s.next_multiset.clear();
        s.epoch_round = 0;
        ++s.epoch;
        s.oful = OfulState::fresh(set.dim(), s.oful.reg, s.oful.width_scale, s.oful.delta);
    }
    return out;
}

SparringState SparringState::fresh(std::size_t d, double delta) {
    return SparringState{OfulState::fresh(d, 1.0, 1.0, delta), OfulState::fresh(d, 1.0, 1.0, delta)};
}

DuelStep sparring_step(SparringState& s, const ActionSet& set, UserState& user, long t,
                       UserStreams& streams, Stream& algo) {
    const auto dirs = draw_candidate_directions(set.dim(), algo);
    DuelStep out;
    out.a0 = oful_select(s.left, set, t, dirs);
    out.a1 = oful_select(s.right, set, t, dirs);
    out.chosen = user.interact(out.a0, out.a1, streams.beta, streams.noise);
    const bool right_won = out.chosen.index == 1;
    oful_update(s.left, out.a0, right_won ? 0.0 : 1.0);
    oful_update(s.right, out.a1, right_won ? 1.0 : 0.0);
    return out;
}

RegretTrace run_dbgd(const ActionSet& set, UserState& user, long t_horizon, UserStreams& streams,
                     Stream& algo) {
    DbgdState s = DbgdState::standard(set.dim(), t_horizon);
    return run_duel("dbgd", set, user, t_horizon,
                    [&](long) { return dbgd_step(s, set, user, streams, algo); });
}

RegretTrace run_doubler(const ActionSet& set, UserState& user, long t_horizon, double delta,
                        UserStreams& streams, Stream& algo) {
    DoublerState s = DoublerState::fresh(set.dim(), delta);
    return run_duel("doubler", set, user, t_horizon,
                    [&](long t) { return doubler_step(s, set, user, t, streams, algo); });
}

RegretTrace run_sparring(const ActionSet& set, UserState& user, long t_horizon, double delta,
                         UserStreams& streams, Stream& algo) {
    SparringState s = SparringState::fresh(set.dim(), delta);
    return run_duel("sparring", set, user, t_horizon,
                    [&](long t) { return sparring_step(s, set, user, t, streams, algo); });
}

} // namespace raes
