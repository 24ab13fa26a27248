// fidelity.hpp — Quantum channels in Choi form and average gate fidelity.

#pragma once

#include "cavityqc/operators.hpp"

#include <functional>
#include <vector>

namespace cavityqc {

// Linear map on d×d matrices, stored as C = Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|).
// Trace-decreasing maps (leakage, post-selection) are allowed.
class Channel {
public:
    static Channel from_unitary(const Matrix& u);
    static Channel from_kraus(const std::vector<Matrix>& kraus);
    // `images[i * d + j]` = E(|i⟩⟨j|).
    static Channel from_matrix_units(Index d, const std::vector<Matrix>& images);
    static Channel from_action(Index d, const std::function<Matrix(const Matrix&)>& action);

    Index dim() const { return d_; }
    const Matrix& choi() const { return choi_; }
    Matrix apply(const Matrix& rho) const;
    // E(|i⟩⟨j|)
    Matrix image(Index i, Index j) const;

private:
    Channel(Index d, Matrix choi) : d_(d), choi_(std::move(choi)) {}
    Index d_{0};
    Matrix choi_;
};

// F = (|tr(U†M)|² + d) / (d² + d).
double average_gate_fidelity(const Matrix& achieved, const Matrix& ideal);

// F = (d F_e + tr E(1)/d) / (d + 1) with entanglement fidelity
// F_e = Σ_ij ⟨i|U† E(|i⟩⟨j|) U|j⟩ / d². Reduces to the unitary formula for
// E(ρ) = UρU† with U unitary and to the standard expression for trace-preserving maps.
double average_gate_fidelity(const Channel& achieved, const Matrix& ideal);

// Max-norm distance between a and e^{iφ} b, with φ the phase of tr(b†a)
// (the Frobenius-optimal alignment).
double phase_aligned_distance(const Matrix& a, const Matrix& b);
double phase_aligned_distance(const Vector& a, const Vector& b);

}  // namespace cavityqc
