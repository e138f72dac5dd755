#pragma once

#include <span>
#include <string_view>

#include "raes/action_set.hpp"
#include "raes/ellipsoid.hpp"
#include "raes/linalg.hpp"
#include "raes/rng.hpp"
#include "raes/trace.hpp"
#include "raes/user_sim.hpp"

namespace raes {

// The two user-owned streams. Keeping them apart from any algorithm-side
// randomness means every algorithm faces identical user draws.
struct UserStreams {
    Stream beta;
    Stream noise;
};

struct RaesConfig {
    long t_horizon = 0;
    long t0 = 0;
    double k = 1.05;
    double delta = 0.1;
    double c = 1.0;
    double gamma = 0.0;
    double lambda0 = 1.0;
    double m = 2.0;           // cut-pair separation, >= 2 D0
    bool union_bound = false; // use g(delta / T0) inside the depth formula

    void validate(const ActionSet& set) const;
};

// Tuned exploration horizon T0 = c sqrt(L D1) D0^{-3/2} g(delta) d^2 T^{1/2 + gamma},
// clamped to [0, T].
long tuned_t0(double c, double smooth_l, double d0, double d1, double gamma, double delta,
              long t_horizon, std::size_t d);

enum class Branch { cut, explore, exploit };
std::string_view to_string(Branch b);

struct RaesState {
    Ellipsoid ellipsoid;
    SymMatrix gram_est;
    long round = 0;
    long n_cuts = 0;
    long n_explores = 0;
    long n_exploits = 0;

    static RaesState initial(std::size_t d, double lambda0);
};

struct StepOutcome {
    Branch branch = Branch::cut;
    Vector a0;
    Vector a1;
    double alpha = 0.0;
    Choice chosen;
    // False for a cut round whose update was skipped at the resolution limit.
    bool updated = false;
};

// Top eigenvector of the shape matrix, oriented so that it has a nonnegative
// inner product with the ellipsoid center.
Vector principal_direction(const Ellipsoid& e);
Vector principal_direction(const Ellipsoid& e, const EigenDecomp& decomp);

// One round of Active Ellipsoid Search against a user: present (-g, +g) and
// take a central cut that keeps the half containing the preferred arm.
StepOutcome aes_step(Ellipsoid& e, UserState& user, UserStreams& streams);

// Active Ellipsoid Search on the unit sphere for t_max rounds. Returns the
// final principal direction as the estimate of theta*.
Vector run_aes(std::size_t d, long t_max, UserState& user, UserStreams& streams);

// Cutting depth for the pair (a0, a1) along direction g at the next round:
//   -[c t^gamma (|a0|_{V^-1} + |a1|_{V^-1} + g(delta)|a0 - a1|_{V^-1}) + 2 eps0] / |g|_P
double compute_alpha(const RaesState& state, const RaesConfig& cfg, std::span<const double> a0,
                     std::span<const double> a1, std::span<const double> g, double eps0);

// Exploration pair D0 (4/5 v1 +- 3/5 vd) from the extreme eigenvectors of the
// system's Gram estimate, before association to the concrete set.
std::pair<Vector, Vector> exploration_pair(const SymMatrix& gram_est, double d0);

StepOutcome raes_step(RaesState& state, const RaesConfig& cfg, const ActionSet& set,
                      UserState& user, UserStreams& streams);

RegretTrace run_raes(const RaesConfig& cfg, const ActionSet& set, UserState& user,
                     UserStreams& streams);

} // namespace raes
