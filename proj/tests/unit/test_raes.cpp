#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "raes/error.hpp"
#include "raes/raes.hpp"

using namespace raes;

namespace {

UserStreams streams_for(std::uint64_t seed) {
    return UserStreams{Stream(seed, 0, StreamRole::user_beta), Stream(seed, 0, StreamRole::user_noise)};
}

Vector theta_for(std::size_t d, std::uint64_t seed) {
    Stream s(seed, 0, StreamRole::instance);
    return sample_unit_sphere(d, s);
}

RaesConfig config(long T, long t0, double c, double lambda0 = 1.0) {
    RaesConfig cfg;
    cfg.t_horizon = T;
    cfg.t0 = t0;
    cfg.k = 1.05;
    cfg.delta = 0.1;
    cfg.c = c;
    cfg.gamma = 0.0;
    cfg.lambda0 = lambda0;
    cfg.m = 2.0;
    return cfg;
}

double log_det(const Ellipsoid& e) {
    double s = 0.0;
    for (double v : e.spectrum.values) s += std::log(v);
    return s;
}

} // namespace

TEST_SUITE("raes") {

TEST_CASE("cutting depth examples") {
    const double g01 = std::sqrt(std::log(10.0));
    RaesState st = RaesState::initial(3, 1.0);
    const Vector a0{-1, 0, 0}, a1{1, 0, 0}, g{1, 0, 0};
    RaesConfig cfg = config(10, 10, 1.0);
    // |a0| + |a1| + g(delta) |a0 - a1| with V = I
    const double want = -(1.0 + 1.0 + g01 * 2.0);
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(-5.03486).epsilon(1e-5));

    cfg.c = 0.0;
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.0) == 0.0);

    cfg.c = 1.0;
    const std::vector<double> p{100, 1, 1};
    st.ellipsoid = Ellipsoid::from_shape(Vector(3, 0.0), SymMatrix::diagonal(p));
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.0) == doctest::Approx(want / 10.0).epsilon(1e-12));

    // eps0 and gamma enter additively and through t^gamma
    st = RaesState::initial(3, 1.0);
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.25) == doctest::Approx(want - 0.5).epsilon(1e-12));
    st.round = 31;
    cfg.gamma = 0.2;
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.0) == doctest::Approx(2.0 * want).epsilon(1e-12));

    cfg.gamma = 0.0;
    st.round = 0;
    cfg.union_bound = true;
    const double gu = std::sqrt(std::log(10.0 / 0.1));
    CHECK(compute_alpha(st, cfg, a0, a1, g, 0.0) == doctest::Approx(-(2.0 + 2.0 * gu)).epsilon(1e-12));
}

TEST_CASE("exploration pair from a diagonal gram estimate") {
    const std::vector<double> v{3, 1};
    const auto [p, q] = exploration_pair(SymMatrix::diagonal(v), 1.0);
    CHECK(p[0] == doctest::Approx(0.8));
    CHECK(p[1] == doctest::Approx(0.6));
    CHECK(q[0] == doctest::Approx(0.8));
    CHECK(q[1] == doctest::Approx(-0.6));

    // isotropic gram falls back to e1, e2
    const auto [r, s] = exploration_pair(SymMatrix::identity(4), 2.0);
    CHECK(max_abs_diff(r, Vector{1.6, 1.2, 0, 0}) < 1e-15);
    CHECK(max_abs_diff(s, Vector{1.6, -1.2, 0, 0}) < 1e-15);
}

TEST_CASE("instantaneous regret examples") {
    const Vector e1{1, 0}, m1{-1, 0};
    CHECK(instantaneous_regret(e1, e1, e1, e1) == 0.0);
    CHECK(instantaneous_regret(e1, e1, m1, e1) == 2.0);
}

TEST_CASE("empty horizon") {
    const ActionSet ball = ActionSet::unit_ball(3);
    UserState u = UserState::perfect(theta_for(3, 1));
    auto us = streams_for(1);
    const RegretTrace tr = run_raes(config(0, 0, 0.0), ball, u, us);
    CHECK(tr.size() == 0);
    CHECK(tr.final_regret() == 0.0);
}

TEST_CASE("after T0 every round exploits with identical arms") {
    const ActionSet ball = ActionSet::unit_ball(3);
    UserState u = UserState::perfect(theta_for(3, 2));
    auto us = streams_for(2);
    const RaesConfig cfg = config(30, 10, 0.0);
    RaesState st = RaesState::initial(3, 1.0);
    for (long t = 1; t <= 30; ++t) {
        const StepOutcome o = raes_step(st, cfg, ball, u, us);
        if (t > 10) {
            CHECK(o.branch == Branch::exploit);
            CHECK(o.a0 == o.a1);
        } else {
            CHECK(o.branch == Branch::cut);
        }
        CHECK(st.n_cuts + st.n_explores + st.n_exploits == st.round);
    }
    CHECK(st.round == 30);
    CHECK_THROWS_AS(raes_step(st, cfg, ball, u, us), DomainError);
}

TEST_CASE("perfect user: every round up to T0 is an accepted central cut") {
    const std::size_t d = 4;
    const ActionSet ball = ActionSet::unit_ball(d);
    UserState u = UserState::perfect(theta_for(d, 3));
    auto us = streams_for(3);
    const RaesConfig cfg = config(200, 120, 0.0);
    RaesState st = RaesState::initial(d, 1.0);
    for (long t = 1; t <= 120; ++t) {
        const StepOutcome o = raes_step(st, cfg, ball, u, us);
        CHECK(o.branch == Branch::cut);
        CHECK(o.alpha == 0.0);
    }
    CHECK(st.n_cuts == 120);
}

TEST_CASE("no-cut AES returns e1") {
    UserState u = UserState::perfect(theta_for(4, 4));
    auto us = streams_for(4);
    const Vector uhat = run_aes(4, 0, u, us);
    CHECK(uhat == unit_vector(4, 0));
}

TEST_CASE("AES d=5 T=600 error and eigenvalue bounds") {
    const int d = 5;
    const long T = 600;
    const double err_bound = 2.0 * std::sqrt(d - 1.0) * std::exp(2.0 / d - T / (2.0 * d * d));
    const double sig_bound = std::exp(4.0 / d - static_cast<double>(T) / (d * d));
    CHECK(err_bound == doctest::Approx(3.66e-5).epsilon(1e-2));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Vector theta = theta_for(d, seed);
        UserState u = UserState::perfect(theta);
        auto us = streams_for(seed);
        Ellipsoid e = Ellipsoid::ball(d);
        for (long t = 0; t < T; ++t) {
            aes_step(e, u, us);
            REQUIRE(contains(e, theta, 1e-9));
        }
        const Vector uhat = principal_direction(e);
        CHECK(norm(sub(theta, uhat)) <= err_bound);
        for (std::size_t i = 1; i < e.spectrum.values.size(); ++i)
            CHECK(e.spectrum.values[i] <= sig_bound);
    }
}

TEST_CASE("containment with a perfect user through the RAES cut branch") {
    for (std::size_t d : {2u, 3u, 6u}) {
        const ActionSet ball = ActionSet::unit_ball(d);
        const Vector theta = theta_for(d, 10 + d);
        UserState u = UserState::perfect(theta);
        auto us = streams_for(10 + d);
        const RaesConfig cfg = config(400, 400, 0.0);
        RaesState st = RaesState::initial(d, 1.0);
        for (long t = 0; t < 400; ++t) {
            raes_step(st, cfg, ball, u, us);
            REQUIRE(mahalanobis_sq(st.ellipsoid, theta) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("accepted deep cuts respect the depth window and volume budget") {
    const std::size_t d = 3;
    const ActionSet ball = ActionSet::unit_ball(d);
    // c small enough that early cuts are accepted with strictly negative depth
    RaesConfig cfg = config(300, 300, 0.002, 1.0);
    const double budget = -(cfg.k - 1) * (cfg.k - 1) / (2 * cfg.k * cfg.k * d);
    int deep = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Vector theta = theta_for(d, seed);
        UserState u(theta, SymMatrix::identity(d), RationalityParams{cfg.c, 0, 0, BetaMode::uniform_random});
        auto us = streams_for(seed);
        RaesState st = RaesState::initial(d, 1.0);
        for (long t = 0; t < cfg.t_horizon; ++t) {
            const double before = log_det(st.ellipsoid);
            const StepOutcome o = raes_step(st, cfg, ball, u, us);
            if (o.branch != Branch::cut || !o.updated) continue;
            CHECK(o.alpha <= 0.0);
            CHECK(o.alpha >= -1.0 / (cfg.k * d));
            deep += o.alpha < 0.0;
            // log Vol ratio = (log det' - log det) / 2
            CHECK(0.5 * (log_det(st.ellipsoid) - before) <= budget + 1e-9);
        }
    }
    CHECK(deep > 0);
}

TEST_CASE("exploration raises the smallest gram eigenvalue") {
    const std::size_t d = 4;
    const ActionSet ball = ActionSet::unit_ball(d);
    // large c forces the exploration branch throughout
    const RaesConfig cfg = config(200, 200, 5.0);
    const Vector theta = theta_for(d, 20);
    UserState u(theta, SymMatrix::identity(d), RationalityParams{1.0, 0, 0.1, BetaMode::uniform_random});
    auto us = streams_for(20);
    RaesState st = RaesState::initial(d, 1.0);
    std::vector<double> lmin{eigendecomp(st.gram_est).values.back()};
    for (long t = 0; t < cfg.t_horizon; ++t) {
        const StepOutcome o = raes_step(st, cfg, ball, u, us);
        REQUIRE(o.branch == Branch::explore);
        lmin.push_back(eigendecomp(st.gram_est).values.back());
    }
    const double gain = 4.0 * ball.params().d0 / 25.0 - 3.0 * ball.params().eps0;
    for (std::size_t n = 0; n + d < lmin.size(); ++n) CHECK(lmin[n + d] >= lmin[n] + gain - 1e-9);
}

TEST_CASE("eigenvalues of P decay with the number of accepted cuts") {
    const std::size_t d = 4;
    const ActionSet ball = ActionSet::unit_ball(d);
    const RaesConfig cfg = config(300, 300, 0.0);
    const double kk = (cfg.k - 1) * (cfg.k - 1) / (cfg.k * cfg.k);
    UserState u = UserState::perfect(theta_for(d, 30));
    auto us = streams_for(30);
    RaesState st = RaesState::initial(d, 1.0);
    long n = 0;
    for (long t = 0; t < cfg.t_horizon; ++t) {
        n += raes_step(st, cfg, ball, u, us).updated;
        const double bound = std::exp(4.0 / d - kk * n / (d * d));
        for (std::size_t i = 1; i < d; ++i) CHECK(st.ellipsoid.spectrum.values[i] <= bound);
    }
}

TEST_CASE("exploit regret is bounded by the direction error") {
    const std::size_t d = 3;
    const ActionSet ball = ActionSet::unit_ball(d);
    const RaesConfig cfg = config(150, 60, 0.0);
    const Vector theta = theta_for(d, 40);
    UserState u = UserState::perfect(theta);
    auto us = streams_for(40);
    RaesState st = RaesState::initial(d, 1.0);
    const Vector best = ball.best_arm(theta);
    for (long t = 0; t < cfg.t_horizon; ++t) {
        const Vector u1 = principal_direction(st.ellipsoid);
        const StepOutcome o = raes_step(st, cfg, ball, u, us);
        if (o.branch != Branch::exploit) continue;
        const double r = instantaneous_regret(theta, best, o.a0, o.a1);
        CHECK(r >= -1e-12);
        CHECK(r <= 2.0 * ball.params().smooth_l * oracle::dotp(sub(theta, u1), sub(theta, u1)) + 1e-12);
    }
}

TEST_CASE("run_raes trace is consistent and reproducible") {
    const std::size_t d = 3;
    const ActionSet ball = ActionSet::unit_ball(d);
    const RaesConfig cfg = config(120, 40, 1.0);
    auto run = [&] {
        UserState u(theta_for(d, 50), SymMatrix::identity(d),
                    RationalityParams{1.0, 0, 0.1, BetaMode::uniform_random});
        auto us = streams_for(50);
        return run_raes(cfg, ball, u, us);
    };
    const RegretTrace a = run(), b = run();
    REQUIRE(a.size() == 120);
    CHECK(a.cumulative == b.cumulative);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a.steps[i].inst_regret;
        CHECK(a.cumulative[i] == doctest::Approx(sum));
        CHECK(a.steps[i].inst_regret >= -1e-9);
        if (i >= 40) CHECK(a.steps[i].branch == "exploit");
    }
}

TEST_CASE("config validation") {
    const ActionSet ball = ActionSet::unit_ball(3);
    RaesConfig cfg = config(10, 5, 1.0);
    CHECK_NOTHROW(cfg.validate(ball));
    cfg.t0 = 11;
    CHECK_THROWS_AS(cfg.validate(ball), ConfigError);
    cfg = config(10, 5, 1.0);
    cfg.k = 1.0;
    CHECK_THROWS_AS(cfg.validate(ball), ConfigError);
    cfg = config(10, 5, 1.0);
    cfg.m = 1.5;
    CHECK_THROWS_AS(cfg.validate(ball), ConfigError);
    cfg = config(10, 5, 1.0);
    cfg.gamma = 0.5;
    CHECK_THROWS_AS(cfg.validate(ball), ConfigError);
    cfg = config(10, 5, 1.0);
    cfg.lambda0 = 0.0;
    CHECK_THROWS_AS(cfg.validate(ball), ConfigError);
}

TEST_CASE("tuned T0") {
    // c sqrt(L D1) D0^-3/2 g(delta) d^2 sqrt(T) = 1 * 1.51743 * 25 * 100
    CHECK(tuned_t0(1, 1, 1, 1, 0, 0.1, 10000, 5) == std::llround(std::sqrt(std::log(10.0)) * 2500));
    CHECK(tuned_t0(10, 1, 1, 1, 0, 0.1, 100, 5) == 100);
    CHECK(tuned_t0(0, 1, 1, 1, 0, 0.1, 100, 5) == 0);
}

}
