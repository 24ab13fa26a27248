// gate_protocol.hpp — Measurement-mediated two-qubit gate on a three-site chain.
//
// Three qubits evolve under H₃ = A(σˣ₁σˣ₂ + σʸ₁σʸ₂ + σˣ₂σˣ₃ + σʸ₂σʸ₃) for
// t* = π/(2√2 A). The middle (mediator) qubit's Z value is conserved; measuring
// it leaves the outer pair acted on by
//
//   outcome 0:  SWAP·(Z⊗Z)·CP
//   outcome 1: −SWAP·CP
//
// so after a Z⊗Z correction on outcome 0 both branches apply SWAP·CP up to a
// global phase. Qubit ordering in 8-dim kets is |q1 q2 q3⟩ with q1 most
// significant; two-qubit operators act on (q1, q3).

#pragma once

#include "cavityqc/dynamics.hpp"
#include "cavityqc/jch_model.hpp"
#include "cavityqc/operators.hpp"
#include "cavityqc/polariton.hpp"
#include "cavityqc/random.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cavityqc {

namespace gates {
Matrix hadamard();
Matrix phase_s();
Matrix swap();
Matrix cz();
Matrix zz();
}  // namespace gates

enum class GateLabel { SwapZZCP, SwapCP };

std::string to_string(GateLabel label);

Operator xy3_hamiltonian(double coupling);

// exp(−i H₃ t*) with t* = gate_time(coupling); independent of the coupling.
Matrix mediated_gate_unitary(double coupling);

struct MediatorMeasurement {
    int outcome{0};
    QuantumState post_state;
    double probability{0.0};
};

// Born-rule measurement of the middle qubit in the Z basis. With a forced
// outcome the sampled branch is replaced by that one; a forced branch with
// weight below 1e-14 throws DegenerateBranch.
MediatorMeasurement measure_mediator(const QuantumState& psi, SeededRng& rng,
                                     std::optional<int> forced = std::nullopt);
MediatorMeasurement measure_mediator(const QuantumState& psi, std::uint64_t seed,
                                     std::optional<int> forced = std::nullopt);

struct TwoQubitAction {
    GateLabel label{GateLabel::SwapZZCP};
    Matrix ideal;  // 4×4 on (q1, q3), global phase included
};

TwoQubitAction classify_two_qubit_action(int outcome);

// Outer-pair block of an 8×8 three-qubit operator with the mediator fixed to
// `mediator` on input and output.
Matrix outer_pair_block(const Matrix& three_qubit, int mediator);

struct ProtocolReport {
    int outcome{0};
    GateLabel label{GateLabel::SwapZZCP};
    double outcome_probability{0.0};
    double two_qubit_fidelity{0.0};
    double leakage{0.0};
    double elapsed_model_time{0.0};
    double t_eff{0.0};
    bool dissipative{false};
    double lindblad_dt{0.0};  // final step after refinement (dissipative runs)
};

struct FullStackOptions {
    Index cap{kDefaultDimensionCap};
    // Run the Lindblad integrator even when κ = γ = 0.
    bool force_lindblad{false};
    // Initial Lindblad step in units of 1/g (before refinement).
    double lindblad_step_g{0.5};
    double lindblad_tol{1e-6};
};

// Runs the protocol on the full three-site lattice model: embeds the logical
// input with the polariton map, evolves for π/(√2 t_eff) (unitary when
// κ = γ = 0, Lindblad otherwise), measures the mediator site's polariton
// occupation {|g,0⟩, |1−⟩} and reports the fidelity of the resulting map on
// the outer qubits (mediator prepared in the outcome state) against the
// ideal action for that outcome. With A = 0 there is no dynamics and the map
// is compared with the identity.
//
// outcome_probability is the Born weight of the reported outcome for the
// given input; population outside the polariton qubit subspace is reported
// as leakage and never counted as an outcome.
ProtocolReport full_stack_gate(const SystemParams& params, const Vector& logical_input,
                               std::optional<int> forced_outcome, std::uint64_t seed,
                               const FullStackOptions& options = {});

}  // namespace cavityqc
