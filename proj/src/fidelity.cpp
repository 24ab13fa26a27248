// fidelity.cpp — Quantum channels in Choi form and average gate fidelity.

#include "cavityqc/fidelity.hpp"

#include "cavityqc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cavityqc {

Channel Channel::from_matrix_units(Index d, const std::vector<Matrix>& images) {
    if (d < 1 || static_cast<Index>(images.size()) != d * d) {
        throw InvalidParameter("Channel: need d*d matrix-unit images");
    }
    Matrix choi(d * d, d * d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            const Matrix& img = images[static_cast<std::size_t>(i * d + j)];
            if (img.rows() != d || img.cols() != d) {
                throw InvalidParameter("Channel: image dimension mismatch");
            }
            choi.block(i * d, j * d, d, d) = img;
        }
    }
    return Channel(d, std::move(choi));
}

Channel Channel::from_action(Index d, const std::function<Matrix(const Matrix&)>& action) {
    std::vector<Matrix> images;
    images.reserve(static_cast<std::size_t>(d * d));
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            Matrix unit = Matrix::Zero(d, d);
            unit(i, j) = 1.0;
            images.push_back(action(unit));
        }
    }
    return from_matrix_units(d, images);
}

Channel Channel::from_kraus(const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw InvalidParameter("Channel: empty Kraus list");
    const Index d = kraus.front().cols();
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw InvalidParameter("Channel: Kraus operators must be square and equal size");
        }
    }
    return from_action(d, [&](const Matrix& x) {
        Matrix out = Matrix::Zero(d, d);
        for (const auto& k : kraus) out += k * x * k.adjoint();
        return out;
    });
}

Channel Channel::from_unitary(const Matrix& u) {
    return from_kraus({u});
}

Matrix Channel::image(Index i, Index j) const {
    return choi_.block(i * d_, j * d_, d_, d_);
}

Matrix Channel::apply(const Matrix& rho) const {
    if (rho.rows() != d_ || rho.cols() != d_) {
        throw InvalidParameter("Channel::apply: dimension mismatch");
    }
    Matrix out = Matrix::Zero(d_, d_);
    for (Index i = 0; i < d_; ++i) {
        for (Index j = 0; j < d_; ++j) {
            if (rho(i, j) != cplx{}) out += rho(i, j) * image(i, j);
        }
    }
    return out;
}

double average_gate_fidelity(const Matrix& achieved, const Matrix& ideal) {
    if (achieved.rows() != achieved.cols() || ideal.rows() != ideal.cols() ||
        achieved.rows() != ideal.rows()) {
        throw InvalidParameter("average_gate_fidelity: dimension mismatch");
    }
    const auto d = static_cast<double>(ideal.rows());
    const double overlap = std::norm((ideal.adjoint() * achieved).trace());
    return std::clamp((overlap + d) / (d * d + d), 0.0, 1.0);
}

double average_gate_fidelity(const Channel& achieved, const Matrix& ideal) {
    const Index n = achieved.dim();
    if (ideal.rows() != n || ideal.cols() != n) {
        throw InvalidParameter("average_gate_fidelity: dimension mismatch");
    }
    const Matrix u_dag = ideal.adjoint();
    cplx fe{0.0, 0.0};
    cplx kept{0.0, 0.0};
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Matrix img = achieved.image(i, j);
            fe += (u_dag.row(i) * img * ideal.col(j))(0, 0);
            if (i == j) kept += img.trace();
        }
    }
    const auto d = static_cast<double>(n);
    const double f_e = fe.real() / (d * d);
    const double p = kept.real() / d;
    return std::clamp((d * f_e + p) / (d + 1.0), 0.0, 1.0);
}

double phase_aligned_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidParameter("phase_aligned_distance: dimension mismatch");
    }
    const cplx inner = (b.adjoint() * a).trace();
    const cplx phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx{1.0, 0.0};
    return max_abs(a - phase * b);
}

double phase_aligned_distance(const Vector& a, const Vector& b) {
    return phase_aligned_distance(Matrix(a), Matrix(b));
}

}  // namespace cavityqc
