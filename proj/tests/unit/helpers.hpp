#pragma once

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "raes/linalg.hpp"

inline oracle::Mat to_mat(const raes::SymMatrix& m) {
    oracle::Mat out = oracle::zeros(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
    return out;
}

inline raes::SymMatrix to_sym(const oracle::Mat& m) {
    std::vector<double> rows;
    for (const auto& r : m) rows.insert(rows.end(), r.begin(), r.end());
    raes::SymMatrix s = raes::SymMatrix::from_rows(m.size(), rows);
    s.symmetrize();
    return s;
}

inline double max_abs_diff(const oracle::Mat& a, const oracle::Mat& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) e = std::max(e, std::abs(a[i][j] - b[i][j]));
    return e;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
