// jch_model.hpp — Coupled-cavity (Jaynes-Cummings-Hubbard) lattice Hamiltonians.
//
// A chain of N cavities, each doped with one two-level system:
//
//   H = Σ_k [ ω_d a†_k a_k + ω_0 |e⟩⟨e|_k + g (a_k σ⁺_k + a†_k σ⁻_k) ]
//     + A Σ_bonds (a†_k a_{k+1} + h.c.)
//
// Hopping is bosonic at every photon number; with n_max = 1 it reduces to the
// single-photon exchange |1,0⟩⟨0,1| + h.c. Frequencies may be given in absolute
// units or in the resonant rotating frame (ω_d = ω_0 = 0). Sites are 0-based.

#pragma once

#include "cavityqc/operators.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cavityqc {

enum class Boundary { Open, Periodic };

Boundary parse_boundary(std::string_view s);
std::string to_string(Boundary b);

inline constexpr Index kDefaultDimensionCap = 20000;

struct SystemParams {
    int N{3};
    double omega_d{0.0};
    double omega_0{0.0};
    double g{0.0};
    double A{0.0};
    int n_max{1};
    double kappa{0.0};
    double gamma{0.0};
    Boundary boundary{Boundary::Open};

    // Throws InvalidParameter on N < 1, n_max < 1, negative rates or
    // non-positive absolute frequencies.
    void validate() const;

    bool rotating_frame() const { return omega_d == 0.0 && omega_0 == 0.0; }
    bool resonant() const;
    std::vector<Index> site_dims() const;
};

struct DispersionPoint {
    int k{0};
    double omega{0.0};
};

// ω(k) = ω_d + 2A cos(2πk/N) for a periodic chain.
double dispersion(int k, const SystemParams& params);
std::vector<DispersionPoint> dispersion_table(const SystemParams& params);

// U[k][m] = exp(-2πi km/N)/√N, mapping localized modes to Bloch modes.
Operator bloch_transform(int N);

// N×N hopping Hamiltonian of the one-photon sector with g = 0
// (ω_d on the diagonal, A on every bond of the chosen boundary).
Matrix one_photon_hopping_matrix(const SystemParams& params);

// (2(n_max+1))^N, throwing ResourceLimit above `cap`.
Index lattice_dimension(const SystemParams& params, Index cap = kDefaultDimensionCap);

Operator build_jch_hamiltonian(const SystemParams& params, Index cap = kDefaultDimensionCap);

// N_exc = Σ_k (a†_k a_k + |e⟩⟨e|_k), diagonal in the product basis.
Operator excitation_number_operator(const SystemParams& params,
                                    Index cap = kDefaultDimensionCap);

// Excitation number of each product-basis state.
std::vector<int> basis_excitations(const SystemParams& params, Index cap = kDefaultDimensionCap);

// Single-site operators on the 2(n_max+1)-dimensional site space.
struct SiteOperators {
    Operator a;
    Operator a_dag;
    Operator sigma_minus;   // |g⟩⟨e| ⊗ 1
    Operator sigma_plus;
    Operator photon_number;
    Operator excited;       // |e⟩⟨e| ⊗ 1
};

SiteOperators site_operators(int n_max);

// Lindblad channels √κ a_k and √γ σ⁻_k for every site, returned as
// (rate, bare operator) pairs; zero rates are skipped.
std::vector<std::pair<double, Operator>> collapse_operators(const SystemParams& params,
                                                            Index cap = kDefaultDimensionCap);

struct SpectrumLevel {
    double energy{0.0};
    int excitations{0};
};

// All eigenvalues of the single-site Hamiltonian, sorted by energy then
// excitation number. The state |e, n_max⟩ (excitation n_max + 1) is a
// truncation artifact and is included with that label.
std::vector<SpectrumLevel> jc_single_site_spectrum(const SystemParams& params);

// Energy of the one-excitation lower polariton |1−⟩ at resonance, ω_d − g.
double lower_polariton_energy(const SystemParams& params);

// H − (ω_d − g) N_exc: the lattice Hamiltonian in the frame co-rotating with
// the polariton qubit, where |g,0⟩ and |1−⟩ on an isolated site are both
// stationary.
Operator polariton_frame_hamiltonian(const SystemParams& params,
                                     Index cap = kDefaultDimensionCap);

// Product-basis states with at most `max_excitations` excitations, ordered by
// excitation number and then by product-basis index. Because H conserves
// N_exc and every collapse operator lowers it, evolutions started inside this
// subspace stay inside it.
class ExcitationSubspace {
public:
    ExcitationSubspace(const SystemParams& params, int max_excitations,
                       Index cap = kDefaultDimensionCap);

    Index dim() const { return static_cast<Index>(states_.size()); }
    Index full_dim() const { return full_dim_; }
    int max_excitations() const { return max_exc_; }

    // Product-basis index of subspace state i.
    Index state(Index i) const { return states_[static_cast<std::size_t>(i)]; }

    // Contiguous range [offset, offset + size) of the sector with p excitations.
    Index sector_offset(int p) const { return offsets_[static_cast<std::size_t>(p)]; }
    Index sector_size(int p) const;

    Matrix restrict(const Matrix& full) const;
    Vector restrict(const Vector& full) const;
    Vector lift(const Vector& sub) const;

private:
    Index full_dim_{0};
    int max_exc_{0};
    std::vector<Index> states_;
    std::vector<Index> offsets_;
};

}  // namespace cavityqc
