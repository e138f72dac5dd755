#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "raes/linalg.hpp"
#include "raes/rng.hpp"

namespace raes {

struct ActionSetParams {
    double d0 = 1.0;       // inner ball radius
    double d1 = 1.0;       // outer ball radius
    double smooth_l = 1.0; // best-arm response Lipschitz constant
    double eps0 = 0.0;     // cover radius of the concrete set
};

enum class ActionSetKind { unit_ball, eps_net_of_ball };

class ActionSet {
public:
    // Euclidean ball of the given radius (d0 = d1 = L = r, eps0 = 0).
    static ActionSet unit_ball(std::size_t d, double radius = 1.0);

    // Finite eps0-cover of the spherical shells at radii {d0, (d0+d1)/2, d1},
    // grown from seeded sphere samples until 4096 probe directions per shell
    // are each within eps0 of some net point.
    static ActionSet eps_net(std::size_t d, double d0, double d1, double eps0,
                             std::uint64_t seed, double smooth_l = 1.0);

    // Wraps an explicit point list; no cover verification is done.
    static ActionSet from_points(std::vector<Vector> points, ActionSetParams params);

    ActionSetKind kind() const { return kind_; }
    const ActionSetParams& params() const { return params_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Vector>& net_points() const { return points_; }

    // argmax_{a in A} direction^T a. Net ties go to the lowest index.
    Vector best_arm(std::span<const double> direction) const;

    // Concrete arm within eps0 of a point of the continuous set.
    Vector associate(std::span<const double> a_bar) const;

    // Closest concrete arm to an arbitrary point (radial shrink for the ball).
    Vector nearest(std::span<const double> point) const;

    bool contains(std::span<const double> a, double tol = 1e-12) const;

private:
    ActionSetKind kind_ = ActionSetKind::unit_ball;
    ActionSetParams params_;
    std::size_t dim_ = 0;
    std::vector<Vector> points_;

    std::size_t nearest_index(std::span<const double> p, double* dist) const;
};

Vector sample_unit_sphere(std::size_t d, Stream& stream);

} // namespace raes
