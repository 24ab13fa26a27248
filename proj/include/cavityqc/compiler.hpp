// compiler.hpp — Lowering logical circuits to the native mediated-gate schedule.
//
// Physical chain: computational slots at even sites 0, 2, …, 2(n−1) and
// mediators at the odd sites between them. A native op on slot s evolves the
// triple (2s, 2s+1, 2s+2), measures site 2s+1 and applies Z to both outer
// sites when the outcome is 0. Up to global phase the net action is SWAP·CZ on
// slots (s, s+1); the SWAP is never undone, only tracked in the permutation.
//
// Mediators are never reset. The mediator's Z value is conserved by the
// evolution, so both outcomes leave it in a known basis state and both are
// correct after the conditional Z.

#pragma once

#include "cavityqc/operators.hpp"
#include "cavityqc/random.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cavityqc {

struct SingleQubitGate {
    int target{0};
    Matrix u;
};

struct CZGate {
    int a{0};
    int b{0};
};

struct ControlledUGate {
    int control{0};
    int target{1};
    Matrix u;
};

using Gate = std::variant<SingleQubitGate, CZGate, ControlledUGate>;

struct Circuit {
    int num_qubits{0};
    std::vector<Gate> gates;

    void validate() const;
};

enum class MediatorInit { Vacuum, Plus };

std::string to_string(MediatorInit init);
MediatorInit parse_mediator_init(std::string_view s);

struct ChainLayout {
    int num_slots{0};
    MediatorInit mediator_init{MediatorInit::Vacuum};

    int physical_sites() const { return num_slots > 0 ? 2 * num_slots - 1 : 0; }
    static int slot_site(int slot) { return 2 * slot; }
};

struct XYEvolve {
    std::array<int, 3> sites{};
};

struct MeasureMediator {
    int site{0};
    int id{0};
};

struct LocalRotation {
    int site{0};
    Matrix u;
};

// Z on `site` when measurement `id` returned 0.
struct ConditionalZ {
    int site{0};
    int id{0};
};

using NativeOp = std::variant<XYEvolve, MeasureMediator, LocalRotation, ConditionalZ>;

struct NativeSchedule {
    ChainLayout layout;
    std::vector<NativeOp> ops;
    // Logical index → physical site, before and after the schedule.
    std::vector<int> initial_permutation;
    std::vector<int> final_permutation;
    int num_measurements{0};

    void validate() const;
    int native_gate_count() const;
};

struct Frame {
    std::vector<int> permutation;
    std::vector<std::pair<int, int>> outcome_log;  // (measurement id, bit)
};

struct ControlledUDecomposition {
    Matrix a;
    Matrix b;
    // U = e^{i phase} A†B†ZBZA
    double phase{0.0};
};

// B = Ry(φ/2) and A carries the rotation axis of U onto −ŷ, so that
// B†ZBZ = Ry(−φ) and A†Ry(−φ)A = U up to the phase. φ = 0 gives A = B = I.
ControlledUDecomposition decompose_controlled_u(const Matrix& u);

Matrix rotation_y(double angle);

// Haar-random 2×2 unitary.
Matrix random_unitary_2x2(SeededRng& rng);

// Ideal circuit as a 2^n unitary (qubit 0 most significant).
Matrix circuit_unitary(const Circuit& circuit);
Vector apply_circuit(const Circuit& circuit, const Vector& input);

// Empty permutation means the identity placement (logical q at slot q).
NativeSchedule compile(const Circuit& circuit, const ChainLayout& layout,
                       const std::vector<int>& initial_permutation = {});

struct OutcomePolicy {
    enum class Kind { Sample, Forced, Exhaustive };
    Kind kind{Kind::Exhaustive};
    std::uint64_t seed{0};
    std::vector<int> forced;  // one bit per measurement id

    static OutcomePolicy sample(std::uint64_t seed) { return {Kind::Sample, seed, {}}; }
    static OutcomePolicy forced_sequence(std::vector<int> bits) {
        return {Kind::Forced, 0, std::move(bits)};
    }
    static OutcomePolicy exhaustive() { return {Kind::Exhaustive, 0, {}}; }
};

struct BranchResult {
    std::vector<int> outcomes;
    double probability{1.0};
    Vector physical_state;  // over layout.physical_sites() qubits, site 0 most significant
    Vector logical_state;   // un-permuted computational state
    Frame frame;
};

// Initial physical state: the logical input placed by the initial permutation,
// mediators in their layout init state.
Vector place_logical_state(const NativeSchedule& schedule, const Vector& logical);

// Reads back the computational state through `permutation`. The mediators
// must be in a product state with the rest; the result is normalized.
Vector extract_logical_state(const Vector& physical, const ChainLayout& layout,
                             const std::vector<int>& permutation);

// Runs a schedule at the effective-qubit level. Branches come back in
// lexicographic outcome order; branches with weight below 1e-14 are dropped
// under the exhaustive policy.
std::vector<BranchResult> simulate_schedule(const NativeSchedule& schedule, const Vector& logical,
                                            const OutcomePolicy& policy);
std::vector<BranchResult> simulate_physical(const NativeSchedule& schedule, const Vector& physical,
                                            const OutcomePolicy& policy);

struct RandomCircuitOptions {
    int num_qubits{4};
    int depth{6};
    bool include_controlled_u{true};
};

// Layered random circuit: each layer is either one CZ on a random pair with
// rotations elsewhere or rotations on every qubit; one layer (chosen at
// random) is a ControlledU on a random ordered pair.
Circuit random_circuit(SeededRng& rng, const RandomCircuitOptions& options = {});

}  // namespace cavityqc
