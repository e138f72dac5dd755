#include "raes/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "raes/error.hpp"

namespace raes {

namespace {

bool depth_valid(double alpha, int d) { return alpha > -1.0 / d && alpha < 1.0; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

Ellipsoid Ellipsoid::ball(std::size_t d, double radius) {
    Ellipsoid e;
    e.center.assign(d, 0.0);
    e.shape = SymMatrix(d, radius * radius);
    e.spectrum.values.assign(d, radius * radius);
    for (std::size_t i = 0; i < d; ++i) e.spectrum.vectors.push_back(unit_vector(d, i));
    return e;
}

Ellipsoid Ellipsoid::from_shape(Vector center, const SymMatrix& shape) {
    if (center.size() != shape.dim())
        throw DomainError("ellipsoid center and shape dimensions differ");
    if (shape.max_asymmetry() > 1e-12 * std::max(1.0, shape.max_abs()))
        throw DomainError("ellipsoid shape is not symmetric");
    Ellipsoid e;
    e.center = std::move(center);
    e.shape = shape;
    e.spectrum = eigendecomp(shape);
    if (!(e.spectrum.values.back() > 0.0))
        throw DomainError("ellipsoid shape is not positive definite: " + shape.to_string());
    return e;
}

double shape_quad(const Ellipsoid& e, std::span<const double> g) {
    double s = 0.0;
    for (std::size_t i = 0; i < e.spectrum.values.size(); ++i) {
        const double c = dot(e.spectrum.vectors[i], g);
        s += e.spectrum.values[i] * c * c;
    }
    return s;
}

double mahalanobis_sq(const Ellipsoid& e, std::span<const double> z) {
    const Vector r = sub(z, e.center);
    double s = 0.0;
    for (std::size_t i = 0; i < e.spectrum.values.size(); ++i) {
        const double c = dot(e.spectrum.vectors[i], r);
        s += c * c / e.spectrum.values[i];
    }
    return s;
}

bool contains(const Ellipsoid& e, std::span<const double> z, double tol) {
    return mahalanobis_sq(e, z) <= 1.0 + tol;
}

CutSpec make_cut(const Ellipsoid& e, Vector normal, double offset) {
    const double gpg = shape_quad(e, normal);
    if (!(gpg > 0.0)) throw DomainError("cut normal must be nonzero");
    CutSpec s;
    s.depth = -offset / std::sqrt(gpg);
    s.normal = std::move(normal);
    s.offset = offset;
    return s;
}

namespace {

// Right singular vectors and squared singular values of C (columns c_j), by
// one-sided Jacobi. Accurate to high relative precision when C is a
// well-conditioned matrix times a column scaling.
void one_sided_jacobi(std::vector<Vector>& cols, std::vector<Vector>& v) {
    const std::size_t d = cols.size();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                const double a = dot(cols[p], cols[p]);
                const double b = dot(cols[q], cols[q]);
                const double g = dot(cols[p], cols[q]);
                if (std::abs(g) <= 1e-15 * std::sqrt(a * b) || g == 0.0) continue;
                rotated = true;
                const double zeta = (b - a) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double cs = 1.0 / std::hypot(1.0, t);
                const double sn = cs * t;
                for (auto* m : {&cols, &v})
                    for (std::size_t k = 0; k < d; ++k) {
                        const double x = (*m)[p][k], y = (*m)[q][k];
                        (*m)[p][k] = cs * x - sn * y;
                        (*m)[q][k] = sn * x + cs * y;
                    }
            }
        if (!rotated) return;
    }
    throw NumericError("one-sided Jacobi did not converge during an ellipsoid cut");
}

} // namespace

Ellipsoid cut(const Ellipsoid& e, const CutSpec& spec) {
    const int d = static_cast<int>(e.dim());
    const std::size_t n = e.dim();
    const double alpha = spec.depth;
    if (!depth_valid(alpha, d))
        throw RejectedCut("cut depth " + fmt(alpha) + " outside (-1/" + std::to_string(d) + ", 1)");
    if (spec.normal.size() != n) throw DomainError("cut normal has the wrong dimension");

    const auto& lam = e.spectrum.values;
    const auto& U = e.spectrum.vectors;
    Vector c(n);
    double gpg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = dot(U[i], spec.normal);
        gpg += lam[i] * c[i] * c[i];
    }
    if (!(gpg > 0.0)) throw DomainError("cut normal must be nonzero");
    const double gnorm = std::sqrt(gpg);
    const double recomputed = -spec.offset / gnorm;
    if (std::abs(recomputed - alpha) > 1e-9 * std::max(1.0, std::abs(alpha)))
        throw Error(ErrorCode::invalid_argument,
                    "cut depth " + fmt(alpha) + " inconsistent with offset (expected " +
                        fmt(recomputed) + ")");

    const double dd = d;
    const double lead = (1.0 + dd * alpha) / (dd + 1.0);
    const double beta = 2.0 * lead / (1.0 + alpha);
    const double s = dd * dd * (1.0 - alpha * alpha) / (dd * dd - 1.0);

    Ellipsoid out;
    out.center = e.center;
    // P g~ = U diag(lam) c / |g|_P
    for (std::size_t i = 0; i < n; ++i) axpy(-lead * lam[i] * c[i] / gnorm, U[i], out.center);

    // P' = s U L^{1/2} H^2 L^{1/2} U^T with H = I - tau w w^T, w = L^{1/2} c / |g|_P.
    // Its eigenpairs come from the SVD of H L^{1/2}.
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::sqrt(lam[i]) * c[i] / gnorm;
    const double tau = 1.0 - std::sqrt(1.0 - beta);
    std::vector<Vector> cols(n, Vector(n)), v(n, Vector(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double sj = std::sqrt(lam[j]);
        for (std::size_t i = 0; i < n; ++i)
            cols[j][i] = ((i == j ? 1.0 : 0.0) - tau * w[i] * w[j]) * sj;
        v[j][j] = 1.0;
    }
    one_sided_jacobi(cols, v);

    std::vector<std::pair<double, Vector>> pairs;
    for (std::size_t j = 0; j < n; ++j) {
        Vector u(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) axpy(v[j][k], U[k], u);
        const double un = norm(u);
        u = scaled(u, 1.0 / un);
        std::size_t big = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(u[k]) > std::abs(u[big])) big = k;
        if (u[big] < 0)
            for (auto& x : u) x = -x;
        pairs.emplace_back(s * dot(cols[j], cols[j]), std::move(u));
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [val, vec] : pairs) {
        out.spectrum.values.push_back(val);
        out.spectrum.vectors.push_back(std::move(vec));
    }

    out.shape = SymMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += out.spectrum.values[k] * out.spectrum.vectors[k][i] * out.spectrum.vectors[k][j];
            out.shape(i, j) = out.shape(j, i) = acc;
        }
    return out;
}

bool at_resolution_limit(const Ellipsoid& e) {
    const auto& v = e.spectrum.values;
    return std::sqrt(v.back() / v.front()) < kMinAxisRatio;
}

double volume_ratio(double alpha, int d) {
    if (d < 2) throw DomainError("volume_ratio requires d >= 2, got " + std::to_string(d));
    if (!depth_valid(alpha, d))
        throw DomainError("volume_ratio: alpha " + fmt(alpha) + " outside (-1/d, 1)");
    const double dd = d;
    return std::pow(dd * (1.0 + alpha) / (dd - 1.0), (dd - 1.0) / 2.0) *
           std::pow(dd * (1.0 - alpha) / (dd + 1.0), (dd + 1.0) / 2.0);
}

double volume_ratio_bound(double alpha, int d) {
    const double s = 1.0 + d * alpha;
    return std::exp(-s * s / (2.0 * d));
}

Vector cut_direction(const Ellipsoid& e, const EigenDecomp& decomp) {
    const Vector& u1 = decomp.vectors.at(0);
    const Vector& u2 = decomp.vectors.at(1);
    const double p = dot(u1, e.center);
    const double q = dot(u2, e.center);
    if (p * p + q * q <= 1e-18) return u1;
    Vector g = scaled(u1, q);
    axpy(-p, u2, g);
    return scaled(g, 1.0 / norm(g));
}

} // namespace raes
