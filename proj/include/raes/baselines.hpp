#pragma once

#include <span>
#include <vector>

#include "raes/action_set.hpp"
#include "raes/linalg.hpp"
#include "raes/raes.hpp"
#include "raes/rng.hpp"
#include "raes/trace.hpp"
#include "raes/user_sim.hpp"

namespace raes {

// Ridge-regression linear bandit with an optimistic selection rule. The inner
// argmax over a continuous set is taken over a finite candidate pool.
struct OfulState {
    SymMatrix gram;
    Vector moment;
    Vector theta_hat;
    double width_scale = 1.0;
    double reg = 1.0;
    double delta = 0.1;

    static OfulState fresh(std::size_t d, double reg = 1.0, double width_scale = 1.0,
                           double delta = 0.1);
};

inline constexpr std::size_t kOfulRandomCandidates = 128;

// width_scale * sqrt(d log((1 + t) / delta))
double oful_width(const OfulState& s, long t);

// Uniform sphere directions for the random part of the candidate pool.
std::vector<Vector> draw_candidate_directions(std::size_t d, Stream& stream,
                                              std::size_t n = kOfulRandomCandidates);

// Pool order: best_arm(theta_hat) when theta_hat != 0, then best_arm(+-u_i) for
// the eigenvectors of gram, then best_arm of each random direction.
std::vector<Vector> oful_candidates(const OfulState& s, const ActionSet& set,
                                    std::span<const Vector> random_dirs);

double oful_score(const OfulState& s, const Cholesky& gram, std::span<const double> arm, long t);

Vector oful_select(const OfulState& s, const ActionSet& set, long t,
                   std::span<const Vector> random_dirs);
Vector oful_select(const OfulState& s, const ActionSet& set, long t, Stream& stream);

void oful_update(OfulState& s, std::span<const double> arm, double reward);

struct DuelStep {
    Vector a0;
    Vector a1;
    Choice chosen;
};

// Dueling Bandit Gradient Descent.
struct DbgdState {
    Vector w;
    double step_explore = 0.0;
    double step_update = 0.0;

    // (w0, delta, gamma) = (0, d^{-1/2} T^{-1/4}, T^{-1/2})
    static DbgdState standard(std::size_t d, long t_horizon);
};

DuelStep dbgd_step(DbgdState& s, const ActionSet& set, UserState& user, UserStreams& streams,
                   Stream& algo);

// Doubler: epochs of length 1, 2, 4, ...; the left arm is drawn from the right
// arms played in the previous epoch, the right arm from a linear bandit that is
// rewarded when it wins the duel.
struct DoublerState {
    int epoch = 0;
    long epoch_round = 0;
    std::vector<Vector> left_multiset;
    std::vector<Vector> next_multiset;
    OfulState oful;

    static DoublerState fresh(std::size_t d, double delta = 0.1);
};

DuelStep doubler_step(DoublerState& s, const ActionSet& set, UserState& user, long t,
                      UserStreams& streams, Stream& algo);

// Sparring: two independent linear bandits duel; the winner is rewarded 1,
// the loser 0.
struct SparringState {
    OfulState left;
    OfulState right;

    static SparringState fresh(std::size_t d, double delta = 0.1);
};

DuelStep sparring_step(SparringState& s, const ActionSet& set, UserState& user, long t,
                       UserStreams& streams, Stream& algo);

RegretTrace run_dbgd(const ActionSet& set, UserState& user, long t_horizon, UserStreams& streams,
                     Stream& algo);
RegretTrace run_doubler(const ActionSet& set, UserState& user, long t_horizon, double delta,
                        UserStreams& streams, Stream& algo);
RegretTrace run_sparring(const ActionSet& set, UserState& user, long t_horizon, double delta,
                         UserStreams& streams, Stream& algo);

} // namespace raes
