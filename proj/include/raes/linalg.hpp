#pragma once

// Small dense linear algebra for the ellipsoid and ridge machinery.
// Dimensions are tiny (d <= ~64), so everything is plain row-major storage.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace raes {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vector scaled(std::span<const double> a, double s);
Vector add(std::span<const double> a, std::span<const double> b);
Vector sub(std::span<const double> a, std::span<const double> b);
// a += s * b
void axpy(double s, std::span<const double> b, std::span<double> a);
Vector unit_vector(std::size_t d, std::size_t i);
std::string to_string(std::span<const double> v);

class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t d, double diag = 0.0);

    static SymMatrix identity(std::size_t d) { return SymMatrix(d, 1.0); }
    static SymMatrix diagonal(std::span<const double> entries);
    // Builds from row-major entries; the result is symmetrized.
    static SymMatrix from_rows(std::size_t d, std::span<const double> rows);

    std::size_t dim() const { return d_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }

    Vector apply(std::span<const double> v) const;
    // v^T M v
    double quad(std::span<const double> v) const;
    // M += s * v v^T
    void rank1_update(std::span<const double> v, double s = 1.0);
    void scale(double s);
    // Replaces M with (M + M^T) / 2.
    void symmetrize();
    double max_asymmetry() const;
    double max_abs() const;

    std::string to_string() const;

private:
    std::size_t d_ = 0;
    std::vector<double> a_;
};

struct EigenDecomp {
    Vector values;               // descending
    std::vector<Vector> vectors; // vectors[i] pairs with values[i]
};

// Cyclic Jacobi. Eigenvectors are sign-normalized so that the entry of
// largest magnitude is positive. Throws NumericError if the sweep budget is
// exhausted.
EigenDecomp eigendecomp(const SymMatrix& m);

// Cholesky factor of a positive definite matrix; solve() is the usual
// forward/back substitution pair.
class Cholesky {
public:
    explicit Cholesky(const SymMatrix& m);
    Vector solve(std::span<const double> b) const;
    // b^T M^{-1} b
    double inv_quad(std::span<const double> b) const;
    // sqrt(b^T M^{-1} b)
    double inv_norm(std::span<const double> b) const;
    double log_det() const;

private:
    std::size_t d_;
    std::vector<double> l_;
};

SymMatrix inverse(const SymMatrix& m);

} // namespace raes
