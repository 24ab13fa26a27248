// operators.cpp — Dense operator algebra on finite tensor-product Hilbert spaces.

#include "cavityqc/operators.hpp"

#include "cavityqc/errors.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace cavityqc {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

Operator::Operator(Matrix m) : m_(std::move(m)), site_dims_{m_.rows()} {
    if (m_.rows() != m_.cols()) {
        throw InvalidParameter("Operator: matrix must be square");
    }
}

Operator::Operator(Matrix m, std::vector<Index> site_dims)
    : m_(std::move(m)), site_dims_(std::move(site_dims)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidParameter("Operator: matrix must be square");
    }
    const Index prod = std::accumulate(site_dims_.begin(), site_dims_.end(), Index{1},
                                       std::multiplies<>());
    if (prod != m_.rows()) {
        throw InvalidParameter("Operator: dimension " + std::to_string(m_.rows()) +
                               " does not match product of site dimensions " +
                               std::to_string(prod));
    }
}

void Operator::check_compatible(const Operator& other, const char* what) const {
    if (dim() != other.dim()) {
        throw InvalidParameter(std::string("Operator ") + what + ": dimension mismatch");
    }
}

Operator& Operator::operator+=(const Operator& rhs) {
    check_compatible(rhs, "+");
    m_ += rhs.m_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    check_compatible(rhs, "-");
    m_ -= rhs.m_;
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    m_ *= s;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    a.check_compatible(b, "*");
    return Operator(a.m_ * b.m_, a.site_dims_);
}

Operator identity(const std::vector<Index>& site_dims) {
    const Index d = std::accumulate(site_dims.begin(), site_dims.end(), Index{1},
                                    std::multiplies<>());
    return Operator(Matrix::Identity(d, d), site_dims);
}

Ladder fock_ladder(int n_max) {
    if (n_max < 1) {
        throw InvalidParameter("fock_ladder: n_max must be >= 1");
    }
    const Index d = n_max + 1;
    Matrix a = Matrix::Zero(d, d);
    for (Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    Operator ann(a);
    return {ann, ann.adjoint()};
}

PauliLabel parse_pauli_label(std::string_view label) {
    if (label == "X") return PauliLabel::X;
    if (label == "Y") return PauliLabel::Y;
    if (label == "Z") return PauliLabel::Z;
    if (label == "plus" || label == "+") return PauliLabel::Plus;
    if (label == "minus" || label == "-") return PauliLabel::Minus;
    throw InvalidParameter("pauli: unknown label '" + std::string(label) + "'");
}

Operator pauli(PauliLabel label) {
    const cplx i{0.0, 1.0};
    Matrix m(2, 2);
    switch (label) {
        case PauliLabel::X: m << 0, 1, 1, 0; break;
        case PauliLabel::Y: m << 0, -i, i, 0; break;
        case PauliLabel::Z: m << 1, 0, 0, -1; break;
        case PauliLabel::Plus: m << 0, 0, 1, 0; break;
        case PauliLabel::Minus: m << 0, 1, 0, 0; break;
    }
    return Operator(m);
}

Operator pauli(std::string_view label) {
    return pauli(parse_pauli_label(label));
}

Operator embed(const Operator& op, std::size_t site, const std::vector<Index>& site_dims) {
    return embed_product({{site, op}}, site_dims);
}

Operator embed_product(const std::vector<std::pair<std::size_t, Operator>>& factors,
                       const std::vector<Index>& site_dims) {
    std::vector<const Operator*> placed(site_dims.size(), nullptr);
    for (const auto& [site, op] : factors) {
        if (site >= site_dims.size()) {
            throw InvalidParameter("embed: site " + std::to_string(site) + " out of range");
        }
        if (op.dim() != site_dims[site]) {
            throw InvalidParameter("embed: operator dimension " + std::to_string(op.dim()) +
                                   " does not match site dimension " +
                                   std::to_string(site_dims[site]));
        }
        if (placed[site] != nullptr) {
            throw InvalidParameter("embed: two factors on site " + std::to_string(site));
        }
        placed[site] = &op;
    }
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t s = 0; s < site_dims.size(); ++s) {
        if (placed[s] != nullptr) {
            out = kron(out, placed[s]->matrix());
        } else {
            out = kron(out, Matrix::Identity(site_dims[s], site_dims[s]));
        }
    }
    return Operator(std::move(out), site_dims);
}

}  // namespace cavityqc
