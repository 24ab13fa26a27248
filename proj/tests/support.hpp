// support.hpp — Small independent oracles shared by the unit tests.

#pragma once

#include "cavityqc/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

using cavityqc::cplx;
using cavityqc::Index;
using cavityqc::Matrix;
using cavityqc::Vector;

inline double max_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Vector ket(Index dim, Index i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

// Kronecker product written out element by element.
inline Matrix kron_loops(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline std::vector<double> sorted_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> s(h, Eigen::EigenvaluesOnly);
    std::vector<double> v(s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

// e^{-iHt} by Taylor series with scaling and squaring.
inline Matrix expm_taylor(const Matrix& h, double t) {
    const double norm = h.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    const Matrix x = h * cplx{0.0, -t / std::pow(2.0, squarings)};
    Matrix term = Matrix::Identity(h.rows(), h.cols());
    Matrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Global-phase-insensitive distance: min over φ of max|a − e^{iφ}b|, with φ
// from the largest entry of b.
inline double phase_free_diff(const Matrix& a, const Matrix& b) {
    Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const cplx ph = a(r, c) / b(r, c);
    return max_diff(a, b * (ph / std::abs(ph)));
}

}  // namespace testing
