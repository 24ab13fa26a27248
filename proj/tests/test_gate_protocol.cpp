#include "cavityqc/errors.hpp"
#include "cavityqc/fidelity.hpp"
#include "cavityqc/gate_protocol.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace cavityqc;
using testing::max_diff;

namespace {

// H₃ written out with explicit Kronecker products of 2×2 Paulis.
Matrix xy3_oracle(double a) {
    Matrix x(2, 2), y(2, 2);
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    const Matrix i = Matrix::Identity(2, 2);
    using testing::kron_loops;
    const Matrix h = kron_loops(kron_loops(x, x), i) + kron_loops(kron_loops(y, y), i) +
                     kron_loops(i, kron_loops(x, x)) + kron_loops(i, kron_loops(y, y));
    return a * h;
}

Vector three(int q1, int q2, int q3) {
    return testing::ket(8, q1 * 4 + q2 * 2 + q3);
}

SystemParams chain(double g_over_a) {
    SystemParams p;
    p.N = 3;
    p.n_max = 2;
    p.omega_d = p.omega_0 = 100.0;
    p.g = 1.0;
    p.A = 1.0 / g_over_a;
    return p;
}

}  // namespace

TEST_CASE("mediated gate basis identities") {
    const Matrix u = mediated_gate_unitary(0.37);
    struct Case {
        Vector in;
        Vector out;
    };
    const std::vector<Case> cases{
        {three(0, 0, 0), three(0, 0, 0)},  {three(0, 0, 1), -three(1, 0, 0)},
        {three(1, 0, 0), -three(0, 0, 1)}, {three(1, 0, 1), -three(1, 0, 1)},
        {three(0, 1, 0), -three(0, 1, 0)}, {three(1, 1, 1), three(1, 1, 1)},
        {three(1, 1, 0), -three(0, 1, 1)}, {three(0, 1, 1), -three(1, 1, 0)},
    };
    for (const auto& c : cases) CHECK(max_diff(u * c.in, c.out) < 1e-10);
}

TEST_CASE("mediated gate against a Taylor exponential of the hand-built Hamiltonian") {
    for (double a : {0.1, 1.0, 7.5}) {
        CHECK(max_diff(xy3_hamiltonian(a).matrix(), xy3_oracle(a)) < 1e-15);
        const Matrix want = testing::expm_taylor(xy3_oracle(a), gate_time(a));
        CHECK(max_diff(mediated_gate_unitary(a), want) < 1e-10);
    }
    CHECK_THROWS_AS(mediated_gate_unitary(0.0), InvalidParameter);
    CHECK_THROWS_AS(mediated_gate_unitary(-2.0), InvalidParameter);
}

TEST_CASE("mediated gate is unitary and block diagonal in the mediator") {
    const Matrix u = mediated_gate_unitary(1.0);
    CHECK(max_diff(u.adjoint() * u, Matrix::Identity(8, 8)) < 1e-12);
    for (Index r = 0; r < 8; ++r)
        for (Index c = 0; c < 8; ++c)
            if (((r >> 1) & 1) != ((c >> 1) & 1)) CHECK(std::abs(u(r, c)) < 1e-12);
}

TEST_CASE("applying the native gate twice restores the outer qubits") {
    const Matrix u = mediated_gate_unitary(1.0);
    for (int m : {0, 1}) {
        const Matrix block = outer_pair_block(u, m);
        CHECK(testing::phase_free_diff(block * block, Matrix::Identity(4, 4)) < 1e-10);
    }
}

TEST_CASE("outer blocks equal the classified actions exactly") {
    const Matrix u = mediated_gate_unitary(2.0);
    for (int m : {0, 1}) {
        CHECK(max_diff(outer_pair_block(u, m), classify_two_qubit_action(m).ideal) < 1e-10);
    }
}

TEST_CASE("classification examples") {
    const TwoQubitAction a0 = classify_two_qubit_action(0);
    const TwoQubitAction a1 = classify_two_qubit_action(1);
    CHECK(a0.label == GateLabel::SwapZZCP);
    CHECK(a1.label == GateLabel::SwapCP);
    CHECK(to_string(a0.label) == "SWAP.ZZ.CP");
    CHECK(to_string(a1.label) == "SWAP.CP");

    Matrix e0 = Matrix::Zero(4, 4);
    e0(0, 0) = 1;
    e0(2, 1) = -1;
    e0(1, 2) = -1;
    e0(3, 3) = -1;
    CHECK(max_diff(a0.ideal, e0) == 0.0);
    Matrix e1 = Matrix::Zero(4, 4);
    e1(0, 0) = -1;
    e1(2, 1) = -1;
    e1(1, 2) = -1;
    e1(3, 3) = 1;
    CHECK(max_diff(a1.ideal, e1) == 0.0);
    CHECK_THROWS_AS(classify_two_qubit_action(2), InvalidParameter);
}

TEST_CASE("Z⊗Z correction makes both branches SWAP·CP") {
    Matrix swap_cp = Matrix::Zero(4, 4);
    swap_cp(0, 0) = 1;
    swap_cp(1, 2) = swap_cp(2, 1) = 1;
    swap_cp(3, 3) = -1;
    Matrix zz = Matrix::Zero(4, 4);
    zz.diagonal() << 1, -1, -1, 1;
    CHECK(testing::phase_free_diff(zz * classify_two_qubit_action(0).ideal, swap_cp) < 1e-10);
    CHECK(testing::phase_free_diff(classify_two_qubit_action(1).ideal, swap_cp) < 1e-10);
    CHECK(max_diff(gates::zz(), zz) == 0.0);
}

TEST_CASE("mediator measurement follows the Born rule") {
    SeededRng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = 0.1 + 0.3 * trial;
        const Vector med = (Vector(2) << std::cos(theta), std::sin(theta) * std::exp(cplx(0, trial))).finished();
        Vector outer(4);
        for (Index i = 0; i < 4; ++i) outer(i) = rng.complex_normal();
        outer.normalize();
        // Outer pair (q1, q3) with the mediator in the middle.
        Vector psi = Vector::Zero(8);
        for (Index k = 0; k < 4; ++k)
            for (Index m = 0; m < 2; ++m) psi((k >> 1) * 4 + m * 2 + (k & 1)) = outer(k) * med(m);
        const QuantumState state(psi);
        const double p0 = std::norm(med(0));
        for (int forced : {0, 1}) {
            const MediatorMeasurement r = measure_mediator(state, rng, forced);
            CHECK(r.outcome == forced);
            CHECK(std::abs(r.probability - (forced == 0 ? p0 : 1.0 - p0)) < 1e-12);
            CHECK(std::abs(r.post_state.amplitudes().norm() - 1.0) < 1e-12);
            for (Index i = 0; i < 8; ++i)
                if (((i >> 1) & 1) != forced) CHECK(r.post_state.amplitudes()(i) == cplx(0.0));
        }
    }
}

TEST_CASE("mediator measurement edge cases") {
    const QuantumState zero(three(1, 0, 1));
    const MediatorMeasurement r = measure_mediator(zero, std::uint64_t{4});
    CHECK(r.outcome == 0);
    CHECK(r.probability == 1.0);
    CHECK_THROWS_AS(measure_mediator(zero, std::uint64_t{4}, 1), DegenerateBranch);
    CHECK_THROWS_AS(measure_mediator(QuantumState::basis(4, 0), std::uint64_t{4}), InvalidParameter);

    // Same seed, same outcome.
    const QuantumState half = QuantumState::normalized(three(0, 0, 0) + three(0, 1, 0));
    int ones = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const int a = measure_mediator(half, s).outcome;
        CHECK(a == measure_mediator(half, s).outcome);
        ones += a;
    }
    CHECK(ones > 60);
    CHECK(ones < 140);
}

TEST_CASE("full-stack gate on the lattice model") {
    Vector input = Vector::Ones(8);
    input.normalize();
    const ProtocolReport r0 = full_stack_gate(chain(100.0), input, 0, 1);
    const ProtocolReport r1 = full_stack_gate(chain(100.0), input, 1, 1);
    CHECK(r0.outcome == 0);
    CHECK(r1.outcome == 1);
    CHECK(r0.label == GateLabel::SwapZZCP);
    CHECK(r1.label == GateLabel::SwapCP);
    CHECK(r0.two_qubit_fidelity >= 0.99);
    CHECK(r1.two_qubit_fidelity >= 0.99);
    CHECK(r0.leakage <= 0.01);
    CHECK(r0.two_qubit_fidelity <= 1.0);
    CHECK(r0.outcome_probability + r1.outcome_probability <= 1.0 + 1e-12);
    CHECK(r0.outcome_probability + r1.outcome_probability >= 0.99);
    CHECK(std::abs(r0.elapsed_model_time - std::numbers::pi / (std::numbers::sqrt2 * r0.t_eff)) < 1e-12);
    CHECK_FALSE(r0.dissipative);

    for (int outcome : {0, 1}) {
        const double f10 = full_stack_gate(chain(10.0), input, outcome, 1).two_qubit_fidelity;
        const double f100 = full_stack_gate(chain(100.0), input, outcome, 1).two_qubit_fidelity;
        CHECK(f100 > f10);
    }
}

TEST_CASE("full-stack gate without hopping is the identity") {
    SystemParams p = chain(100.0);
    p.A = 0.0;
    Vector input = Vector::Ones(8);
    input.normalize();
    const ProtocolReport r = full_stack_gate(p, input, 0, 3);
    CHECK(std::abs(r.two_qubit_fidelity - 1.0) < 1e-10);
    CHECK(r.leakage < 1e-12);
    CHECK(r.elapsed_model_time == 0.0);
}

TEST_CASE("full-stack gate preconditions") {
    Vector input = Vector::Ones(8);
    input.normalize();
    SystemParams p = chain(100.0);
    p.N = 2;
    CHECK_THROWS_AS(full_stack_gate(p, input, 0, 1), InvalidParameter);
    p = chain(100.0);
    p.omega_0 = 101.0;
    CHECK_THROWS_AS(full_stack_gate(p, input, 0, 1), UnsupportedConfiguration);
    CHECK_THROWS_AS(full_stack_gate(chain(100.0), Vector::Ones(8), 0, 1), InvalidParameter);
    CHECK_THROWS_AS(full_stack_gate(chain(100.0), input, 0, 1, {.cap = 100}), ResourceLimit);
}

TEST_CASE("forced Lindblad with zero rates matches the unitary path") {
    Vector input = Vector::Ones(8);
    input.normalize();
    FullStackOptions forced;
    forced.force_lindblad = true;
    const ProtocolReport a = full_stack_gate(chain(30.0), input, 1, 1);
    const ProtocolReport b = full_stack_gate(chain(30.0), input, 1, 1, forced);
    CHECK(b.dissipative);
    CHECK(std::abs(a.two_qubit_fidelity - b.two_qubit_fidelity) < 1e-6);
    CHECK(std::abs(a.leakage - b.leakage) < 1e-6);
    CHECK(std::abs(a.outcome_probability - b.outcome_probability) < 1e-6);
}
