#include <doctest.h>

#include <cmath>
#include <set>

#include "raes/rng.hpp"

using namespace raes;

TEST_SUITE("rng") {

TEST_CASE("same triple gives the same sequence") {
    Stream a(42, 3, StreamRole::user_beta), b(42, 3, StreamRole::user_beta);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
    CHECK(a.fingerprint() == b.fingerprint());
}

TEST_CASE("roles, runs and bases give distinct streams") {
    std::set<std::uint64_t> fps;
    for (std::uint64_t base : {0ULL, 1ULL, 42ULL})
        for (std::uint64_t run = 0; run < 5; ++run)
            for (auto role : {StreamRole::instance, StreamRole::user_noise, StreamRole::user_beta,
                              StreamRole::algorithm})
                fps.insert(Stream(base, run, role).fingerprint());
    CHECK(fps.size() == 3 * 5 * 4);

    Stream x(42, 0, StreamRole::user_noise), y(42, 0, StreamRole::algorithm);
    int same = 0;
    for (int i = 0; i < 100; ++i) same += x.next() == y.next();
    CHECK(same == 0);
}

TEST_CASE("drawing from one role leaves another untouched") {
    Stream beta1(7, 0, StreamRole::user_beta);
    Stream algo(7, 0, StreamRole::algorithm);
    for (int i = 0; i < 500; ++i) algo.uniform();
    Stream beta2(7, 0, StreamRole::user_beta);
    for (int i = 0; i < 100; ++i) CHECK(beta1.uniform() == beta2.uniform());
}

TEST_CASE("uniform stays in range with the right moments") {
    Stream s(1);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
    CHECK(std::abs(sq / n - 1.0 / 3.0) < 0.005);
    for (int i = 0; i < 1000; ++i) {
        const double v = s.uniform(-2.0, 3.0);
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("normal variates have zero mean and unit variance") {
    Stream s(2);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("index covers [0, n) roughly evenly") {
    Stream s(3);
    int counts[7] = {};
    for (int i = 0; i < 70000; ++i) {
        const auto k = s.index(7);
        REQUIRE(k < 7);
        ++counts[k];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("coin is fair") {
    Stream s(4);
    int heads = 0;
    for (int i = 0; i < 100000; ++i) heads += s.coin();
    CHECK(std::abs(heads - 50000) < 1000);
}

TEST_CASE("splitmix64 reference value") {
    // first output of the reference generator seeded with 0
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

}
