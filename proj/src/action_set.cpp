#include "raes/action_set.hpp"

#include <cmath>
#include <limits>

#include "raes/error.hpp"

namespace raes {

namespace {

constexpr std::size_t kProbeDirections = 4096;
constexpr std::size_t kNetBatch = 64;
constexpr std::size_t kNetMaxPoints = 400000;
constexpr double kClampTol = 1e-12;

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

} // namespace

Vector sample_unit_sphere(std::size_t d, Stream& stream) {
    if (d < 2) throw DomainError("sample_unit_sphere requires d >= 2");
    Vector v(d);
    double n = 0.0;
    do {
        for (auto& x : v) x = stream.normal();
        n = norm(v);
    } while (n < 1e-300);
    for (auto& x : v) x /= n;
    return v;
}

ActionSet ActionSet::unit_ball(std::size_t d, double radius) {
    if (d < 2) throw DomainError("action set dimension must be >= 2");
    if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
    ActionSet s;
    s.kind_ = ActionSetKind::unit_ball;
    s.dim_ = d;
    s.params_ = {radius, radius, radius, 0.0};
    return s;
}

ActionSet ActionSet::eps_net(std::size_t d, double d0, double d1, double eps0,
                             std::uint64_t seed, double smooth_l) {
    if (d < 2) throw DomainError("action set dimension must be >= 2");
    if (!(d0 > 0.0) || d1 < d0) throw DomainError("net radii must satisfy 0 < d0 <= d1");
    if (!(eps0 > 0.0)) throw DomainError("net cover radius eps0 must be positive");

    ActionSet s;
    s.kind_ = ActionSetKind::eps_net_of_ball;
    s.dim_ = d;
    s.params_ = {d0, d1, smooth_l, eps0};

    const double radii[3] = {d0, 0.5 * (d0 + d1), d1};
    Stream probe_stream(seed ^ 0x5bd1e995ULL);
    std::vector<Vector> pending;
    pending.reserve(3 * kProbeDirections);
    for (std::size_t i = 0; i < kProbeDirections; ++i) {
        const Vector u = sample_unit_sphere(d, probe_stream);
        for (double r : radii) pending.push_back(scaled(u, r));
    }

    Stream sample_stream(seed);
    const double eps2 = eps0 * eps0;
    while (!pending.empty()) {
        if (s.points_.size() >= kNetMaxPoints)
            throw InvariantError("eps-net construction exceeded " +
                                 std::to_string(kNetMaxPoints) + " points");
        const std::size_t first_new = s.points_.size();
        for (std::size_t b = 0; b < kNetBatch; ++b) {
            const Vector u = sample_unit_sphere(d, sample_stream);
            for (double r : radii) s.points_.push_back(scaled(u, r));
        }
        std::vector<Vector> still;
        for (auto& p : pending) {
            bool covered = false;
            for (std::size_t i = first_new; i < s.points_.size() && !covered; ++i)
                covered = dist2(p, s.points_[i]) <= eps2;
            if (!covered) still.push_back(std::move(p));
        }
        pending = std::move(still);
    }
    return s;
}

ActionSet ActionSet::from_points(std::vector<Vector> points, ActionSetParams params) {
    if (points.empty()) throw DomainError("action set needs at least one point");
    ActionSet s;
    s.kind_ = ActionSetKind::eps_net_of_ball;
    s.dim_ = points.front().size();
    for (const auto& p : points)
        if (p.size() != s.dim_) throw DomainError("action set points differ in dimension");
    s.points_ = std::move(points);
    s.params_ = params;
    return s;
}

Vector ActionSet::best_arm(std::span<const double> direction) const {
    if (direction.size() != dim_) throw DomainError("best_arm: dimension mismatch");
    const double n = norm(direction);
    if (!(n > 0.0)) throw DomainError("best_arm: zero direction");
    if (kind_ == ActionSetKind::unit_ball) return scaled(direction, params_.d1 / n);

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double sc = dot(points_[i], direction);
        if (sc > best_score) {
            best_score = sc;
            best = i;
        }
    }
    return points_[best];
}

std::size_t ActionSet::nearest_index(std::span<const double> p, double* dist) const {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double d2 = dist2(p, points_[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    if (dist) *dist = std::sqrt(best_d2);
    return best;
}

Vector ActionSet::associate(std::span<const double> a_bar) const {
    if (a_bar.size() != dim_) throw DomainError("associate: dimension mismatch");
    const double n = norm(a_bar);
    if (n > params_.d1 + kClampTol)
        throw DomainError("associate: point norm " + std::to_string(n) + " exceeds outer radius");
    if (kind_ == ActionSetKind::unit_ball) {
        if (n > params_.d1) return scaled(a_bar, params_.d1 / n);
        return Vector(a_bar.begin(), a_bar.end());
    }
    double dist = 0.0;
    const std::size_t i = nearest_index(a_bar, &dist);
    if (dist > params_.eps0 + kClampTol)
        throw InvariantError("associate: nearest net point is " + std::to_string(dist) +
                             " away, cover radius is " + std::to_string(params_.eps0) +
                             " at " + to_string(a_bar));
    return points_[i];
}

Vector ActionSet::nearest(std::span<const double> point) const {
    if (point.size() != dim_) throw DomainError("nearest: dimension mismatch");
    if (kind_ == ActionSetKind::unit_ball) {
        const double n = norm(point);
        if (n > params_.d1) return scaled(point, params_.d1 / n);
        return Vector(point.begin(), point.end());
    }
    return points_[nearest_index(point, nullptr)];
}

bool ActionSet::contains(std::span<const double> a, double tol) const {
    if (a.size() != dim_) return false;
    if (kind_ == ActionSetKind::unit_ball) return norm(a) <= params_.d1 + tol;
    double dist = 0.0;
    nearest_index(a, &dist);
    return dist <= tol;
}

} // namespace raes
