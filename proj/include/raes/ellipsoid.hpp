#pragma once

#include <span>

#include "raes/linalg.hpp"

namespace raes {

// E(x, P) = { z : (z - x)^T P^{-1} (z - x) <= 1 }
//
// P is carried in spectral form as well as densely. Repeated cuts stretch one
// axis while shrinking the rest, so after a few hundred rounds the condition
// number of P passes 1e20 and the dense matrix alone no longer resolves the
// small eigenvalues. All computations go through `spectrum`; `shape` is its
// reconstruction, kept for inspection.
struct Ellipsoid {
    Vector center;
    SymMatrix shape;
    EigenDecomp spectrum;

    static Ellipsoid ball(std::size_t d, double radius = 1.0);
    // Throws DomainError unless P is symmetric positive definite.
    static Ellipsoid from_shape(Vector center, const SymMatrix& shape);
    std::size_t dim() const { return center.size(); }
};

// g^T P g
double shape_quad(const Ellipsoid& e, std::span<const double> g);

// (z - x)^T P^{-1} (z - x)
double mahalanobis_sq(const Ellipsoid& e, std::span<const double> z);
bool contains(const Ellipsoid& e, std::span<const double> z, double tol = 0.0);

// Halfspace {z : normal^T (z - x) <= offset} together with its normalized depth
// relative to the ellipsoid it was built against.
struct CutSpec {
    Vector normal;
    double offset = 0.0;
    double depth = 0.0;
};

CutSpec make_cut(const Ellipsoid& e, Vector normal, double offset);

// Minimum-volume ellipsoid containing E ∩ {normal^T (z - x) <= offset}.
// Throws RejectedCut when depth is outside (-1/d, 1).
Ellipsoid cut(const Ellipsoid& e, const CutSpec& spec);

// Vol(E') / Vol(E) for a cut of depth alpha in dimension d.
double volume_ratio(double alpha, int d);

// exp(-(1 + d alpha)^2 / (2d)), the upper bound on volume_ratio.
double volume_ratio_bound(double alpha, int d);

// Below this minor/major axis ratio the ellipsoid is thinner than double
// precision can place its center, and further cuts only add rounding noise.
inline constexpr double kMinAxisRatio = 1e-11;
bool at_resolution_limit(const Ellipsoid& e);

// Unit vector in span{u1, u2} orthogonal to the center; u1 if the center is
// orthogonal to that span.
Vector cut_direction(const Ellipsoid& e, const EigenDecomp& decomp);

} // namespace raes
