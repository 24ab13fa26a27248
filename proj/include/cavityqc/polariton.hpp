// polariton.hpp — Lower-polariton qubits and the effective XY spin chain.
//
// At resonance each site's one-excitation eigenstates are the polaritons
// |1±⟩ = (|g,1⟩ ± |e,0⟩)/√2 with energies ω_d ± g. The qubit of site k is
// {|g,0⟩, |1−⟩}; under strong blockade (g ≫ A) the lattice dynamics restricted
// to these qubits is an XY chain
//
//   H_eff = J Σ_k (σˣ_k σˣ_{k+1} + σʸ_k σʸ_{k+1}) = t_eff Σ_k (σ⁺_k σ⁻_{k+1} + h.c.)
//
// with J = t_eff / 2. t_eff is obtained from exact two-site diagonalization
// rather than assumed; perturbatively t_eff → A/2.

#pragma once

#include "cavityqc/jch_model.hpp"
#include "cavityqc/operators.hpp"

namespace cavityqc {

enum class PolaritonSign { Upper, Lower };  // |n+⟩, |n−⟩

// (|g,n⟩ ± |e,n−1⟩)/√2 on one site; requires 1 <= n <= n_max.
Vector polariton_state(int n, PolaritonSign sign, int n_max);

// Isometry from the 2^N logical space (qubit 0 most significant) into the
// lattice: logical |0⟩_k ↦ |g,0⟩_k, logical |1⟩_k ↦ |1−⟩_k.
struct PolaritonMap {
    SystemParams params;
    Matrix isometry;  // lattice_dim × 2^N

    Index logical_dim() const { return isometry.cols(); }
    Vector embed(const Vector& logical) const;
    // isometry† ψ: the component inside the polariton qubit subspace.
    Vector project(const Vector& lattice) const;
};

// Throws UnsupportedConfiguration when ω_0 ≠ ω_d.
PolaritonMap build_polariton_map(const SystemParams& params, Index cap = kDefaultDimensionCap);

// Single-site map: column 0 = |g,0⟩, column 1 = |1−⟩.
Matrix site_qubit_isometry(int n_max);

// J Σ_bonds (σˣσˣ + σʸσʸ) on N qubits; requires N >= 2.
Operator effective_xy_hamiltonian(double J, int N, Boundary boundary);

struct EffectiveCoupling {
    double t_eff{0.0};
    double J_xy{0.0};  // exactly t_eff / 2
};

// Diagonalizes the one-excitation sector of the two-site open chain with the
// given g, A, n_max and takes half the splitting of the symmetric and
// antisymmetric lower-polariton eigenstates, t_eff = (E_sym − E_anti)/2.
// Requires resonance and n_max >= 2. Throws FitFailure when neither candidate
// eigenvector has overlap >= 0.5 with its target combination.
EffectiveCoupling fit_effective_coupling(const SystemParams& params);

struct ReductionResult {
    // 1 − |⟨ψ_eff|P ψ_full⟩|² / ‖P ψ_full‖², P = isometry†
    double infidelity{0.0};
    // 1 − ‖P ψ_full‖²
    double leakage{0.0};
    EffectiveCoupling coupling;
};

// Evolves an embedded logical state under the full lattice model (polariton
// frame) and under the fitted XY model for time t, and compares them.
ReductionResult reduction_infidelity(const SystemParams& params, double t,
                                     const Vector& logical_state,
                                     Index cap = kDefaultDimensionCap);

}  // namespace cavityqc
