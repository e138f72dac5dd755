#include "raes/user_sim.hpp"

#include <cmath>

#include "raes/error.hpp"

namespace raes {

BetaMode parse_beta_mode(std::string_view s) {
    if (s == "uniform_random") return BetaMode::uniform_random;
    if (s == "zero") return BetaMode::zero;
    if (s == "plus_cap") return BetaMode::plus_cap;
    if (s == "minus_cap") return BetaMode::minus_cap;
    throw ConfigError("beta_mode", "unknown mode '" + std::string(s) + "'");
}

std::string_view to_string(BetaMode m) {
    switch (m) {
    case BetaMode::uniform_random: return "uniform_random";
    case BetaMode::zero: return "zero";
    case BetaMode::plus_cap: return "plus_cap";
    case BetaMode::minus_cap: return "minus_cap";
    }
    return "?";
}

double confidence_factor(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    return std::sqrt(std::log(1.0 / delta));
}

UserState::UserState(Vector theta_star, SymMatrix v0, RationalityParams params)
    : theta_star_(std::move(theta_star)), gram_(std::move(v0)), params_(params) {
    const std::size_t d = theta_star_.size();
    if (d < 2) throw DomainError("user dimension must be >= 2");
    if (gram_.dim() != d) throw DomainError("user prior V0 dimension mismatch");
    if (std::abs(norm(theta_star_) - 1.0) > 1e-12) throw DomainError("theta_star must be unit norm");
    if (!(params_.c >= 0.0)) throw DomainError("rationality scale c must be nonnegative");
    if (!(params_.gamma >= 0.0 && params_.gamma < 0.5))
        throw DomainError("rationality exponent gamma must lie in [0, 1/2)");
    if (!(params_.noise_sigma >= 0.0)) throw DomainError("noise_sigma must be nonnegative");
    Cholesky check(gram_); // V0 must be positive definite
    moment_.assign(d, 0.0);
    theta_hat_.assign(d, 0.0);
}

UserState UserState::perfect(Vector theta_star) {
    const std::size_t d = theta_star.size();
    UserState u(std::move(theta_star), SymMatrix::identity(d),
                RationalityParams{0.0, 0.0, 0.0, BetaMode::zero});
    u.theta_hat_ = u.theta_star_;
    u.pinned_ = true;
    return u;
}

double UserState::true_reward(std::span<const double> arm, Stream& noise) const {
    const double mean = dot(theta_star_, arm);
    if (params_.noise_sigma == 0.0) return mean;
    return mean + params_.noise_sigma * noise.normal();
}

double UserState::draw_beta(Stream& beta) const {
    const double t = static_cast<double>(t_ + 1);
    const double cap = params_.c * std::pow(t, params_.gamma);
    switch (params_.beta_mode) {
    case BetaMode::zero: return 0.0;
    case BetaMode::plus_cap: return cap;
    case BetaMode::minus_cap: return -cap;
    case BetaMode::uniform_random: return beta.uniform(-cap, cap);
    }
    return 0.0;
}

Choice UserState::choose(std::span<const double> a0, std::span<const double> a1,
                         Stream& beta) const {
    const double b0 = draw_beta(beta);
    const double b1 = draw_beta(beta);
    double r0 = dot(theta_hat_, a0);
    double r1 = dot(theta_hat_, a1);
    if (b0 != 0.0 || b1 != 0.0) {
        Cholesky ch(gram_);
        r0 += b0 * ch.inv_norm(a0);
        r1 += b1 * ch.inv_norm(a1);
    }
    int idx = 0;
    if (std::abs(r0 - r1) <= 1e-12)
        idx = beta.coin() ? 1 : 0;
    else
        idx = r1 > r0 ? 1 : 0;
    const auto& arm = idx == 0 ? a0 : a1;
    return Choice{idx, Vector(arm.begin(), arm.end())};
}

void UserState::update(std::span<const double> arm, double reward) {
    gram_.rank1_update(arm);
    gram_.symmetrize();
    axpy(reward, arm, moment_);
    if (!pinned_) theta_hat_ = Cholesky(gram_).solve(moment_);
    ++t_;
}

Choice UserState::interact(std::span<const double> a0, std::span<const double> a1, Stream& beta,
                           Stream& noise) {
    Choice c = choose(a0, a1, beta);
    const double r = true_reward(c.arm, noise);
    update(c.arm, r);
    return c;
}

double UserState::estimation_error() const {
    const Vector diff = sub(theta_star_, theta_hat_);
    return std::sqrt(std::max(0.0, gram_.quad(diff)));
}

bool UserState::estimation_in_bound(double delta) const {
    const double t = static_cast<double>(std::max<long>(t_, 1));
    const double bound = params_.c * std::pow(t, params_.gamma) * confidence_factor(delta);
    return estimation_error() <= bound;
}

} // namespace raes
