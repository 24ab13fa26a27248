// dynamics.hpp — Closed and open (Lindblad) time evolution at desk scale.

#pragma once

#include "cavityqc/operators.hpp"

#include <Eigen/Sparse>

#include <optional>
#include <utility>
#include <vector>

namespace cavityqc {

// Normalized state vector (‖ψ‖ = 1 to 1e-10).
class QuantumState {
public:
    explicit QuantumState(Vector amplitudes);

    // Rescales to unit norm; throws on a zero vector.
    static QuantumState normalized(Vector amplitudes);
    static QuantumState basis(Index dim, Index index);

    const Vector& amplitudes() const { return amps_; }
    Index dim() const { return amps_.size(); }

private:
    Vector amps_;
};

// Hermitian (1e-10), unit trace (1e-8), eigenvalues >= -1e-8.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries);
    static DensityMatrix pure(const QuantumState& psi);

    const Matrix& matrix() const { return rho_; }
    Index dim() const { return rho_.rows(); }

private:
    Matrix rho_;
};

double trace_distance(const Matrix& a, const Matrix& b);

// exp(-iHt) from one eigendecomposition, reusable for many times and states.
class UnitaryPropagator {
public:
    explicit UnitaryPropagator(const Matrix& hamiltonian);

    Matrix matrix(double t) const;
    Vector apply(const Vector& psi, double t) const;
    const Eigen::VectorXd& energies() const { return energies_; }

private:
    Eigen::VectorXd energies_;
    Matrix vectors_;
};

QuantumState evolve_unitary(const Operator& hamiltonian, const QuantumState& psi, double t);

// π/(2√2 A): the duration after which the three-site XY chain with coupling A
// realizes the mediated gate.
double gate_time(double coupling);

// Contiguous excitation sectors of a basis: sector p is [offsets[p], offsets[p+1]).
// With a layout, the Hamiltonian must be block diagonal and every collapse
// operator must map sector p into sector p - 1; the solver then only touches
// the blocks an input can populate.
struct SectorLayout {
    std::vector<Index> offsets;
};

struct CollapseChannel {
    double rate{0.0};
    Matrix op;
};

// Fixed-step integrator for dρ/dt = -i[H,ρ] + Σ_j rate_j (L ρ L† - ½{L†L, ρ}).
//
// The no-jump part, ρ → K ρ K† with K = exp(-i H_eff h) and
// H_eff = H - (i/2) Σ rate L†L, is applied exactly; the jump term Σ rate L ρ L†
// is integrated with classical RK4 in that interaction picture (a Lawson
// scheme). With no collapse channels a step is exact to rounding.
class LindbladSolver {
public:
    LindbladSolver(const Matrix& hamiltonian, const std::vector<CollapseChannel>& channels,
                   std::optional<SectorLayout> layout = std::nullopt);

    Index dim() const { return dim_; }

    // Propagates each input (any square matrix; the map is linear) over time t
    // with `steps` equal steps.
    std::vector<Matrix> propagate_fixed(const std::vector<Matrix>& inputs, double t,
                                        long steps) const;

    struct Converged {
        std::vector<Matrix> outputs;
        double dt{0.0};
        int halvings{0};
        double last_change{0.0};
    };

    // Starts from step dt (rounded down so an integer number of steps fits t)
    // and halves until two successive refinements agree to `tol` in trace
    // distance for every input. Throws NumericalFailure after `max_halvings`.
    Converged propagate(const std::vector<Matrix>& inputs, double t, double dt,
                        double tol = 1e-6, int max_halvings = 12) const;

private:
    using Block = std::pair<int, int>;
    using SparseMatrix = Eigen::SparseMatrix<cplx>;

    struct StepOperators {
        std::vector<Matrix> half;  // exp(-i H_eff_p h/2) per sector
    };

    StepOperators step_operators(double h) const;
    std::vector<Block> active_blocks(const Matrix& x) const;
    Matrix no_jump(const StepOperators& ops, const Matrix& x,
                   const std::vector<Block>& blocks) const;
    Matrix jump(const Matrix& x, const std::vector<Block>& blocks) const;
    Matrix step(const StepOperators& ops, const Matrix& x, double h,
                const std::vector<Block>& blocks) const;

    Index dim_{0};
    std::vector<Index> offsets_;
    std::vector<Matrix> heff_blocks_;
    // Per channel, per source sector p >= 1 (index p - 1): √rate · L restricted
    // to rows of sector p - 1 and columns of sector p.
    std::vector<std::vector<SparseMatrix>> jump_blocks_;
    bool has_jumps_{false};
    int shift_{0};  // 1 when collapse operators lower the sector index
};

// ρ(t) for a density-matrix input; validates the result's invariants.
DensityMatrix evolve_lindblad(const Operator& hamiltonian,
                              const std::vector<std::pair<double, Operator>>& collapse_ops,
                              const DensityMatrix& rho0, double t, double dt);

}  // namespace cavityqc
