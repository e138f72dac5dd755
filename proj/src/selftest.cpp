#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "raes/ellipsoid.hpp"
#include "raes/harness.hpp"
#include "raes/raes.hpp"

namespace raes {

namespace {

bool eigen_round_trip() {
    Stream s(7);
    const std::size_t d = 6;
    std::vector<double> rows(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) rows[i * d + j] = rows[j * d + i] = s.normal();
    const SymMatrix m = SymMatrix::from_rows(d, rows);
    const EigenDecomp e = eigendecomp(m);
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < d; ++k) v += e.values[k] * e.vectors[k][i] * e.vectors[k][j];
            err = std::max(err, std::abs(v - m(i, j)));
        }
    return err < 1e-10;
}

bool central_cut_volume() {
    const int d = 5;
    const Ellipsoid e = Ellipsoid::ball(d);
    const Ellipsoid next = cut(e, make_cut(e, unit_vector(d, 0), 0.0));
    const double ratio = std::exp(Cholesky(next.shape).log_det() - Cholesky(e.shape).log_det());
    const double want = std::pow(volume_ratio(0.0, d), 2);
    return std::abs(ratio - want) <= 1e-9 * want;
}

bool volume_bound_holds() {
    for (int d : {2, 3, 5, 10})
        for (int i = 1; i < 50; ++i) {
            const double a = -1.0 / d + (1.0 + 1.0 / d) * i / 50.0;
            if (volume_ratio(a, d) > volume_ratio_bound(a, d) * (1 + 1e-12)) return false;
        }
    return true;
}

bool aes_accuracy() {
    Stream inst(11);
    const Vector theta = sample_unit_sphere(5, inst);
    UserState user = UserState::perfect(theta);
    UserStreams st{Stream(1), Stream(2)};
    const Vector u = run_aes(5, 600, user, st);
    return norm(sub(theta, u)) <= 3.67e-5;
}

bool aes_containment() {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Stream inst(seed);
        const Vector theta = sample_unit_sphere(3, inst);
        UserState user = UserState::perfect(theta);
        UserStreams st{Stream(seed + 100), Stream(seed + 200)};
        Ellipsoid e = Ellipsoid::ball(3);
        for (int t = 0; t < 200; ++t) {
            aes_step(e, user, st);
            if (!contains(e, theta, 1e-9)) return false;
        }
    }
    return true;
}

bool raes_short_run() {
    Stream inst(5);
    const Vector theta = sample_unit_sphere(4, inst);
    UserState user = UserState::perfect(theta);
    UserStreams st{Stream(3), Stream(4)};
    const ActionSet set = ActionSet::unit_ball(4);
    RaesConfig cfg;
    cfg.t_horizon = 300;
    cfg.t0 = 150;
    cfg.c = 0.0;
    const RegretTrace tr = run_raes(cfg, set, user, st);
    if (tr.size() != 300) return false;
    long cuts = 0;
    for (const auto& s : tr.steps) {
        if (s.inst_regret < -1e-9) return false;
        cuts += s.branch == "cut";
    }
    return cuts == 150 && tr.steps.back().inst_regret < 1e-6;
}

bool csv_round_trip() {
    RegretTrace a;
    a.algo = "raes gamma=0.1 v0=diag:1,2";
    a.seed = 3;
    a.push("cut", 0.25);
    a.push("explore", 1.0 / 3.0);
    std::stringstream ss;
    write_csv({a}, ss);
    const auto back = read_csv(ss);
    return back.size() == 1 && back[0].algo == a.algo && back[0].seed == 3 &&
           back[0].size() == 2 && back[0].steps[1].branch == "explore" &&
           std::abs(back[0].cumulative[1] - a.cumulative[1]) < 1e-8;
}

} // namespace

bool run_selftest(std::ostream& log) {
    const std::pair<const char*, std::function<bool()>> checks[] = {
        {"eigendecomposition reconstructs a random symmetric matrix", eigen_round_trip},
        {"central cut determinant matches the volume ratio", central_cut_volume},
        {"volume ratio stays under its exponential bound", volume_bound_holds},
        {"AES d=5 T=600 recovers theta* to 3.67e-5", aes_accuracy},
        {"AES keeps theta* inside the ellipsoid", aes_containment},
        {"RAES with a perfect user cuts every round up to T0", raes_short_run},
        {"CSV write/read round trip", csv_round_trip},
    };
    bool all = true;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        std::string why;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            why = std::string(" (") + e.what() + ")";
        }
        log << (ok ? "ok   " : "FAIL ") << name << why << '\n';
        all = all && ok;
    }
    return all;
}

} // namespace raes
