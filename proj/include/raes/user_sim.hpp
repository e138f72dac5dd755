#pragma once

#include <span>
#include <string_view>

#include "raes/linalg.hpp"
#include "raes/rng.hpp"

namespace raes {

enum class BetaMode { uniform_random, zero, plus_cap, minus_cap };

BetaMode parse_beta_mode(std::string_view s);
std::string_view to_string(BetaMode m);

struct RationalityParams {
    double c = 1.0;
    double gamma = 0.0;       // in [0, 1/2)
    double noise_sigma = 0.1; // reward noise standard deviation
    BetaMode beta_mode = BetaMode::uniform_random;
};

struct Choice {
    int index = 0; // 0 or 1
    Vector arm;
};

// sqrt(log(1/delta)), the confidence factor of the estimation rule.
double confidence_factor(double delta);

// A (c, gamma)-rational learning user. The user keeps a ridge estimate of the
// hidden preference vector from the rewards of the arms it consumed, and picks
// between two arms by estimated utility plus a bounded exploration bonus.
class UserState {
public:
    UserState(Vector theta_star, SymMatrix v0, RationalityParams params);

    // A user that knows theta_star exactly and never explores. Its estimate
    // stays pinned to theta_star through updates.
    static UserState perfect(Vector theta_star);

    const Vector& theta_star() const { return theta_star_; }
    const SymMatrix& gram() const { return gram_; }
    const Vector& moment() const { return moment_; }
    const Vector& theta_hat() const { return theta_hat_; }
    long rounds() const { return t_; }
    const RationalityParams& params() const { return params_; }
    bool pinned() const { return pinned_; }
    std::size_t dim() const { return theta_star_.size(); }

    // theta*^T a + eta, eta ~ N(0, noise_sigma^2)
    double true_reward(std::span<const double> arm, Stream& noise) const;

    // Exploration bonus coefficient for the current round t = rounds() + 1.
    double draw_beta(Stream& beta) const;

    // Index rule: theta_t^T a_i + beta_i ||a_i||_{V_t^{-1}}, beta_0 drawn before
    // beta_1. Near-ties (<= 1e-12) are settled with a coin from the same stream.
    Choice choose(std::span<const double> a0, std::span<const double> a1, Stream& beta) const;

    // Ridge update with the consumed arm and its observed reward.
    void update(std::span<const double> arm, double reward);

    // Full protocol round: choose, observe reward on the chosen arm, update.
    Choice interact(std::span<const double> a0, std::span<const double> a1, Stream& beta,
                    Stream& noise);

    // ||theta* - theta_t||_{V_t} <= c t^gamma sqrt(log(1/delta)), t >= 1.
    bool estimation_in_bound(double delta) const;
    double estimation_error() const;

    // Test hook for auditing the bound against a corrupted estimate.
    void override_estimate(Vector theta_hat) { theta_hat_ = std::move(theta_hat); }

private:
    Vector theta_star_;
    SymMatrix gram_;
    Vector moment_;
    Vector theta_hat_;
    long t_ = 0;
    RationalityParams params_;
    bool pinned_ = false;
};

} // namespace raes
