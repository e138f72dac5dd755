#include "raes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "raes/error.hpp"

namespace raes {

namespace {

constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiSweeps = 100;

void require_same(std::size_t a, std::size_t b) {
    if (a != b)
        throw Error(ErrorCode::invalid_argument,
                    "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector scaled(std::span<const double> a, double s) {
    Vector r(a.begin(), a.end());
    for (auto& x : r) x *= s;
    return r;
}

Vector add(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size());
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector sub(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size());
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

void axpy(double s, std::span<const double> b, std::span<double> a) {
    require_same(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

Vector unit_vector(std::size_t d, std::size_t i) {
    Vector e(d, 0.0);
    e.at(i) = 1.0;
    return e;
}

std::string to_string(std::span<const double> v) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", v[i]);
        s += buf;
    }
    return s + ")";
}

SymMatrix::SymMatrix(std::size_t d, double diag) : d_(d), a_(d * d, 0.0) {
    for (std::size_t i = 0; i < d; ++i) a_[i * d + i] = diag;
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
    SymMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

SymMatrix SymMatrix::from_rows(std::size_t d, std::span<const double> rows) {
    require_same(rows.size(), d * d);
    SymMatrix m(d);
    std::copy(rows.begin(), rows.end(), m.a_.begin());
    m.symmetrize();
    return m;
}

Vector SymMatrix::apply(std::span<const double> v) const {
    require_same(v.size(), d_);
    Vector r(d_, 0.0);
    for (std::size_t i = 0; i < d_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d_; ++j) s += a_[i * d_ + j] * v[j];
        r[i] = s;
    }
    return r;
}

double SymMatrix::quad(std::span<const double> v) const { return dot(v, apply(v)); }

void SymMatrix::rank1_update(std::span<const double> v, double s) {
    require_same(v.size(), d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) a_[i * d_ + j] += s * v[i] * v[j];
}

void SymMatrix::scale(double s) {
    for (auto& x : a_) x *= s;
}

void SymMatrix::symmetrize() {
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = i + 1; j < d_; ++j) {
            double m = 0.5 * (a_[i * d_ + j] + a_[j * d_ + i]);
            a_[i * d_ + j] = m;
            a_[j * d_ + i] = m;
        }
}

double SymMatrix::max_asymmetry() const {
    double r = 0.0;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = i + 1; j < d_; ++j)
            r = std::max(r, std::abs(a_[i * d_ + j] - a_[j * d_ + i]));
    return r;
}

double SymMatrix::max_abs() const {
    double r = 0.0;
    for (double x : a_) r = std::max(r, std::abs(x));
    return r;
}

std::string SymMatrix::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < d_; ++i) {
        if (i) s += "; ";
        s += raes::to_string(std::span<const double>(a_.data() + i * d_, d_));
    }
    return s + "]";
}

EigenDecomp eigendecomp(const SymMatrix& m) {
    const std::size_t d = m.dim();
    std::vector<double> a(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a[i * d + j] = m(i, j);
    std::vector<double> v(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * d + j]; };
    auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * d + j]; };

    bool converged = false;
    for (int sweep = 0; sweep < kJacobiSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = A(p, q);
                const double scale = std::sqrt(std::abs(A(p, p)) * std::abs(A(q, q)));
                if (std::abs(apq) <= kJacobiTol * scale ||
                    std::abs(apq) < std::numeric_limits<double>::min())
                    continue;
                converged = false;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged)
        throw NumericError("Jacobi eigendecomposition did not converge in " +
                           std::to_string(kJacobiSweeps) + " sweeps for " + m.to_string());

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return A(i, i) > A(j, j); });

    EigenDecomp out;
    out.values.reserve(d);
    out.vectors.reserve(d);
    for (std::size_t idx : order) {
        out.values.push_back(A(idx, idx));
        Vector u(d);
        std::size_t big = 0;
        for (std::size_t k = 0; k < d; ++k) {
            u[k] = V(k, idx);
            if (std::abs(u[k]) > std::abs(u[big])) big = k;
        }
        if (u[big] < 0)
            for (auto& x : u) x = -x;
        out.vectors.push_back(std::move(u));
    }
    return out;
}

Cholesky::Cholesky(const SymMatrix& m) : d_(m.dim()), l_(d_ * d_, 0.0) {
    for (std::size_t j = 0; j < d_; ++j) {
        double s = m(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l_[j * d_ + k] * l_[j * d_ + k];
        if (!(s > 0.0))
            throw NumericError("Cholesky: matrix not positive definite: " + m.to_string());
        const double ljj = std::sqrt(s);
        l_[j * d_ + j] = ljj;
        for (std::size_t i = j + 1; i < d_; ++i) {
            double t = m(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l_[i * d_ + k] * l_[j * d_ + k];
            l_[i * d_ + j] = t / ljj;
        }
    }
}

Vector Cholesky::solve(std::span<const double> b) const {
    require_same(b.size(), d_);
    Vector y(b.begin(), b.end());
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= l_[i * d_ + k] * y[k];
        y[i] /= l_[i * d_ + i];
    }
    for (std::size_t i = d_; i-- > 0;) {
        for (std::size_t k = i + 1; k < d_; ++k) y[i] -= l_[k * d_ + i] * y[k];
        y[i] /= l_[i * d_ + i];
    }
    return y;
}

double Cholesky::inv_quad(std::span<const double> b) const {
    require_same(b.size(), d_);
    // ||L^{-1} b||^2
    Vector y(b.begin(), b.end());
    double s = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= l_[i * d_ + k] * y[k];
        y[i] /= l_[i * d_ + i];
        s += y[i] * y[i];
    }
    return s;
}

double Cholesky::inv_norm(std::span<const double> b) const { return std::sqrt(inv_quad(b)); }

double Cholesky::log_det() const {
    double s = 0.0;
    for (std::size_t i = 0; i < d_; ++i) s += std::log(l_[i * d_ + i]);
    return 2.0 * s;
}

SymMatrix inverse(const SymMatrix& m) {
    const std::size_t d = m.dim();
    Cholesky ch(m);
    SymMatrix r(d);
    for (std::size_t j = 0; j < d; ++j) {
        Vector col = ch.solve(unit_vector(d, j));
        for (std::size_t i = 0; i < d; ++i) r(i, j) = col[i];
    }
    r.symmetrize();
    return r;
}

} // namespace raes
