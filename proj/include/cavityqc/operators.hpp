// operators.hpp — Dense operator algebra on finite tensor-product Hilbert spaces.
//
// Basis conventions used throughout the project:
//   * a cavity site is (two-level atom) ⊗ (Fock space |0⟩..|n_max⟩), atom index
//     slow and photon index fast: index = atom * (n_max + 1) + photons, with
//     atom 0 = |g⟩ and atom 1 = |e⟩;
//   * in a tensor product, site 0 is the slowest index;
//   * qubit |0⟩ is the "no excitation" label and Z = diag(+1, -1).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace cavityqc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;

// Largest |entry|; the max-norm used by every tolerance in the project.
double max_abs(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

// One cavity with its dopant: Fock states |0⟩..|n_max⟩ times {|g⟩, |e⟩}.
struct LocalSpace {
    int photon_cutoff{1};
    static constexpr int atom_levels = 2;

    Index dim() const { return atom_levels * (photon_cutoff + 1); }
    Index index(int atom, int photons) const { return atom * (photon_cutoff + 1) + photons; }
};

// A matrix together with the site dimensions of the space it acts on.
class Operator {
public:
    Operator() = default;
    explicit Operator(Matrix m);
    Operator(Matrix m, std::vector<Index> site_dims);

    const Matrix& matrix() const { return m_; }
    Index dim() const { return m_.rows(); }
    const std::vector<Index>& site_dims() const { return site_dims_; }

    bool is_hermitian(double tol = kHermitianTol) const { return cavityqc::is_hermitian(m_, tol); }
    Operator adjoint() const { return Operator(m_.adjoint(), site_dims_); }

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    void check_compatible(const Operator& other, const char* what) const;

    Matrix m_;
    std::vector<Index> site_dims_;
};

Operator identity(const std::vector<Index>& site_dims);

struct Ladder {
    Operator annihilator;
    Operator creator;
};

// Truncated bosonic ladder operators on |0⟩..|n_max⟩; requires n_max >= 1.
Ladder fock_ladder(int n_max);

enum class PauliLabel { X, Y, Z, Plus, Minus };

PauliLabel parse_pauli_label(std::string_view label);

// 2×2 Pauli matrices with Z = diag(+1, -1). Plus is the excitation-creating
// operator |1⟩⟨0| and Minus = |0⟩⟨1|, so Plus + Minus = X.
Operator pauli(PauliLabel label);
Operator pauli(std::string_view label);

// op on `site`, identity elsewhere.
Operator embed(const Operator& op, std::size_t site, const std::vector<Index>& site_dims);

// Tensor product of single-site operators placed on distinct sites.
Operator embed_product(const std::vector<std::pair<std::size_t, Operator>>& factors,
                       const std::vector<Index>& site_dims);

}  // namespace cavityqc
