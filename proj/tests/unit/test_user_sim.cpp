#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "raes/action_set.hpp"
#include "raes/error.hpp"
#include "raes/user_sim.hpp"

using namespace raes;

namespace {

RationalityParams params(double c, double gamma, double sigma, BetaMode m) {
    return RationalityParams{c, gamma, sigma, m};
}

UserState fresh(std::size_t d, RationalityParams p, double lambda0 = 1.0) {
    return UserState(unit_vector(d, 0), SymMatrix(d, lambda0), p);
}

} // namespace

TEST_SUITE("user_sim") {

TEST_CASE("noiseless rewards") {
    UserState u = fresh(3, params(1, 0, 0, BetaMode::zero));
    Stream s(1);
    CHECK(u.true_reward(Vector{1, 0, 0}, s) == 1.0);
    CHECK(u.true_reward(Vector{-1, 0, 0}, s) == -1.0);
}

TEST_CASE("noisy reward mean") {
    UserState u(Vector{0.6, 0.8}, SymMatrix::identity(2), params(1, 0, 0.1, BetaMode::zero));
    Stream s(2);
    const Vector a{0.5, 0.5};
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) sum += u.true_reward(a, s);
    CHECK(std::abs(sum / 10000 - 0.7) < 0.01);
}

TEST_CASE("beta modes") {
    Stream s(3);
    CHECK(fresh(2, params(1, 0.2, 0, BetaMode::zero)).draw_beta(s) == 0.0);

    UserState p = fresh(2, params(1, 0.2, 0, BetaMode::plus_cap));
    for (int i = 0; i < 31; ++i) p.update(Vector{0, 0}, 0.0);
    REQUIRE(p.rounds() == 31);
    CHECK(p.draw_beta(s) == doctest::Approx(2.0).epsilon(1e-14));

    UserState m = fresh(2, params(3, 0, 0, BetaMode::minus_cap));
    CHECK(m.draw_beta(s) == -3.0);

    UserState r = fresh(2, params(1, 0, 0, BetaMode::uniform_random));
    double lo = 1.0, hi = -1.0;
    for (int i = 0; i < 5000; ++i) {
        const double b = r.draw_beta(s);
        CHECK(b >= -1.0);
        CHECK(b <= 1.0);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    CHECK(lo < -0.99);
    CHECK(hi > 0.99);

    CHECK(parse_beta_mode("plus_cap") == BetaMode::plus_cap);
    CHECK(to_string(BetaMode::uniform_random) == "uniform_random");
    CHECK_THROWS_AS(parse_beta_mode("sideways"), ConfigError);
}

TEST_CASE("choose by estimated utility") {
    Stream s(4);
    UserState u = fresh(2, params(1, 0, 0, BetaMode::zero));
    u.override_estimate(Vector{1, 0});
    const Choice c = u.choose(Vector{1, 0}, Vector{-1, 0}, s);
    CHECK(c.index == 0);
    CHECK(c.arm == Vector{1, 0});
}

TEST_CASE("identical arms: either index, same arm, same update") {
    Stream s(5);
    UserState u = fresh(2, params(1, 0, 0, BetaMode::zero));
    u.override_estimate(Vector{1, 0});
    int ones = 0;
    for (int i = 0; i < 400; ++i) {
        const Choice c = u.choose(Vector{1, 0}, Vector{1, 0}, s);
        CHECK(c.arm == Vector{1, 0});
        ones += c.index;
    }
    CHECK(ones > 150);
    CHECK(ones < 250);
}

TEST_CASE("exploration bonus decides between arms of different width") {
    Stream s(6);
    UserState u = fresh(2, params(1, 0, 0, BetaMode::plus_cap));
    REQUIRE(u.theta_hat() == Vector{0, 0});
    const Vector a0{1, 0}, a1{0, 0.5};
    // independent: r = theta^T a + beta * sqrt(a^T V^-1 a), V = I
    const double r0 = 0.0 + 1.0 * std::sqrt(oracle::dotp(a0, a0));
    const double r1 = 0.0 + 1.0 * std::sqrt(oracle::dotp(a1, a1));
    CHECK(r0 == 1.0);
    CHECK(r1 == 0.5);
    CHECK(u.choose(a0, a1, s).index == 0);
}

TEST_CASE("one-step ridge update") {
    UserState u = fresh(4, params(1, 0, 0, BetaMode::zero));
    u.update(Vector{1, 0, 0, 0}, 1.0);
    CHECK(u.rounds() == 1);
    CHECK(u.theta_hat()[0] == doctest::Approx(0.5));
    for (std::size_t k = 1; k < 4; ++k) CHECK(u.theta_hat()[k] == 0.0);
    CHECK(u.gram()(0, 0) == 2.0);
}

TEST_CASE("zero arm with zero reward only advances the clock") {
    UserState u = fresh(3, params(1, 0, 0, BetaMode::zero));
    u.update(Vector{0.6, 0.8, 0}, 0.3);
    const UserState before = u;
    u.update(Vector{0, 0, 0}, 0.0);
    CHECK(u.rounds() == before.rounds() + 1);
    CHECK(u.theta_hat() == before.theta_hat());
    CHECK(u.moment() == before.moment());
    CHECK(max_abs_diff(to_mat(u.gram()), to_mat(before.gram())) == 0.0);
}

TEST_CASE("ridge identity and gram monotonicity along a noisy run") {
    const std::size_t d = 4;
    Stream inst(7), beta(8), noise(9);
    const Vector theta = sample_unit_sphere(d, inst);
    const std::vector<double> v0{3, 2, 1, 0.5};
    UserState u(theta, SymMatrix::diagonal(v0), params(1, 0.1, 0.1, BetaMode::uniform_random));
    double prev_min = 0.5;
    for (int t = 0; t < 300; ++t) {
        const Vector a0 = sample_unit_sphere(d, inst), a1 = sample_unit_sphere(d, inst);
        u.interact(a0, a1, beta, noise);
        const auto V = to_mat(u.gram());
        const auto Vth = oracle::matvec(V, u.theta_hat());
        CHECK(max_abs_diff(Vth, u.moment()) <= 1e-9);
        const double lmin = eigendecomp(u.gram()).values.back();
        CHECK(lmin >= prev_min - 1e-12);
        prev_min = lmin;
    }
}

TEST_CASE("choice lands on a presented arm") {
    Stream inst(10), beta(11), noise(12);
    UserState u(unit_vector(3, 2), SymMatrix::identity(3), params(1, 0, 0.1, BetaMode::uniform_random));
    for (int t = 0; t < 100; ++t) {
        const Vector a0 = sample_unit_sphere(3, inst), a1 = sample_unit_sphere(3, inst);
        const Choice c = u.interact(a0, a1, beta, noise);
        CHECK(c.arm == (c.index == 0 ? a0 : a1));
    }
}

TEST_CASE("a user who knows theta and never explores picks the better arm") {
    Stream inst(13), beta(14), noise(15);
    UserState u = UserState::perfect(sample_unit_sphere(5, inst));
    for (int t = 0; t < 500; ++t) {
        const Vector a0 = sample_unit_sphere(5, inst), a1 = sample_unit_sphere(5, inst);
        const double r0 = dot(u.theta_star(), a0), r1 = dot(u.theta_star(), a1);
        const Choice c = u.interact(a0, a1, beta, noise);
        if (std::abs(r0 - r1) > 1e-12) CHECK(c.index == (r1 > r0 ? 1 : 0));
        CHECK(u.theta_hat() == u.theta_star());
    }
}

TEST_CASE("estimation bound examples") {
    // fresh state: sqrt(lambda0) * ||theta*|| = 1 against sqrt(log 10) = 1.517
    UserState u = fresh(3, params(1, 0, 0, BetaMode::zero));
    CHECK(confidence_factor(0.1) == doctest::Approx(std::sqrt(std::log(10.0))));
    CHECK(u.estimation_error() == doctest::Approx(1.0));
    CHECK(u.estimation_in_bound(0.1));

    UserState p = UserState::perfect(unit_vector(3, 1));
    for (int i = 0; i < 10; ++i) p.update(unit_vector(3, i % 3), i % 3 == 1 ? 1.0 : 0.0);
    CHECK(p.estimation_error() == 0.0);

    UserState bad = fresh(3, params(1, 0, 0, BetaMode::zero));
    bad.update(Vector{0, 1, 0}, 0.0);
    bad.override_estimate(scaled(bad.theta_star(), 10.0));
    CHECK(!bad.estimation_in_bound(0.1));

    CHECK_THROWS_AS(confidence_factor(0.0), DomainError);
    CHECK_THROWS_AS(confidence_factor(1.0), DomainError);
}

TEST_CASE("noiseless updates on spanning arms stay within the estimation bound") {
    const std::size_t d = 3;
    Stream inst(16), noise(17);
    UserState u(sample_unit_sphere(d, inst), SymMatrix::identity(d), params(1, 0, 0, BetaMode::zero));
    for (int t = 0; t < 500; ++t) {
        const Vector a = unit_vector(d, static_cast<std::size_t>(t) % d);
        u.update(a, u.true_reward(a, noise));
        CHECK(u.estimation_in_bound(0.1));
    }
}

TEST_CASE("rationality audit over ten seeds") {
    const std::size_t d = 5;
    const double delta = 0.1;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Stream inst(42, seed, StreamRole::instance), beta(42, seed, StreamRole::user_beta),
            noise(42, seed, StreamRole::user_noise);
        UserState u(sample_unit_sphere(d, inst), SymMatrix::identity(d),
                    params(1, 0, 0.1, BetaMode::uniform_random));
        int ok = 0;
        const int T = 1000;
        for (int t = 0; t < T; ++t) {
            const Vector a0 = sample_unit_sphere(d, inst), a1 = sample_unit_sphere(d, inst);
            u.interact(a0, a1, beta, noise);
            ok += u.estimation_in_bound(delta);
        }
        CHECK(ok >= (1.0 - delta) * T);
    }
}

TEST_CASE("constructor validation") {
    const auto p = params(1, 0, 0.1, BetaMode::zero);
    CHECK_THROWS_AS(UserState(Vector{1}, SymMatrix::identity(1), p), DomainError);
    CHECK_THROWS_AS(UserState(Vector{1, 1}, SymMatrix::identity(2), p), DomainError);
    CHECK_THROWS_AS(UserState(Vector{1, 0}, SymMatrix::identity(3), p), DomainError);
    CHECK_THROWS_AS(UserState(Vector{1, 0}, SymMatrix::identity(2), params(1, 0.5, 0, BetaMode::zero)),
                    DomainError);
    CHECK_THROWS_AS(UserState(Vector{1, 0}, SymMatrix::identity(2), params(-1, 0, 0, BetaMode::zero)),
                    DomainError);
    const std::vector<double> bad{1, -1};
    CHECK_THROWS_AS(UserState(Vector{1, 0}, SymMatrix::diagonal(bad), p), NumericError);
}

}
