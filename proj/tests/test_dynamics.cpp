#include "cavityqc/dynamics.hpp"
#include "cavityqc/errors.hpp"
#include "cavityqc/random.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace cavityqc;
using testing::max_diff;

namespace {

Matrix random_hermitian(SeededRng& rng, Index d) {
    Matrix m(d, d);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_normal();
    return (m + m.adjoint()) / 2.0;
}

Matrix random_matrix(SeededRng& rng, Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_normal();
    return m;
}

// Plain RK4 on the full Lindblad right-hand side.
Matrix lindblad_rk4(const Matrix& h, const std::vector<CollapseChannel>& chans, Matrix rho,
                    double t, long steps) {
    const cplx i{0.0, 1.0};
    auto rhs = [&](const Matrix& r) {
        Matrix d = -i * (h * r - r * h);
        for (const auto& c : chans) {
            const Matrix ldl = c.op.adjoint() * c.op;
            d += c.rate * (c.op * r * c.op.adjoint() - 0.5 * (ldl * r + r * ldl));
        }
        return d;
    };
    const double dt = t / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        const Matrix k1 = rhs(rho);
        const Matrix k2 = rhs(rho + 0.5 * dt * k1);
        const Matrix k3 = rhs(rho + 0.5 * dt * k2);
        const Matrix k4 = rhs(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

Matrix lowering(int levels) {
    Matrix a = Matrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix projector(Index d, Index i) {
    const Vector k = testing::ket(d, i);
    return k * k.adjoint();
}

}  // namespace

TEST_CASE("state containers validate their invariants") {
    CHECK_THROWS_AS(QuantumState(Vector::Ones(2)), InvalidParameter);
    CHECK_THROWS_AS(QuantumState::normalized(Vector::Zero(3)), InvalidParameter);
    CHECK_THROWS_AS(QuantumState::basis(2, 2), InvalidParameter);
    CHECK(std::abs(QuantumState::normalized(Vector::Ones(4)).amplitudes()(2) - 0.5) < 1e-15);

    Matrix nonherm = Matrix::Zero(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = 0.5;
    CHECK_THROWS_AS(DensityMatrix{nonherm}, InvalidParameter);
    CHECK_THROWS_AS(DensityMatrix{Matrix::Identity(2, 2)}, InvalidParameter);
    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidParameter);
    CHECK_NOTHROW(DensityMatrix{Matrix::Identity(3, 3) / 3.0});
}

TEST_CASE("trace distance of orthogonal pure states is one") {
    CHECK(std::abs(trace_distance(projector(3, 0), projector(3, 2)) - 1.0) < 1e-12);
    CHECK(trace_distance(projector(3, 1), projector(3, 1)) == 0.0);
}

TEST_CASE("evolve_unitary basics") {
    Matrix h = Matrix::Zero(3, 3);
    h.diagonal() << 0.5, -1.0, 2.0;
    const Operator H(h);
    const QuantumState psi = QuantumState::normalized(Vector::Ones(3));
    CHECK(max_diff(evolve_unitary(H, psi, 0.0).amplitudes(), psi.amplitudes()) < 1e-15);

    const double t = 0.7;
    const Vector out = evolve_unitary(H, psi, t).amplitudes();
    for (Index k = 0; k < 3; ++k) {
        const cplx want = std::exp(cplx{0.0, -h(k, k).real() * t}) / std::sqrt(3.0);
        CHECK(std::abs(out(k) - want) < 1e-14);
    }
    CHECK_THROWS_AS(evolve_unitary(Operator(lowering(3)), psi, 1.0), InvalidParameter);
}

TEST_CASE("evolve_unitary against a Taylor exponential") {
    SeededRng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = random_hermitian(rng, 6);
        const QuantumState psi = QuantumState::normalized(random_matrix(rng, 6, 1));
        const double t = 0.3 + trial;
        const Vector got = evolve_unitary(Operator(h), psi, t).amplitudes();
        CHECK(max_diff(got, testing::expm_taylor(h, t) * psi.amplitudes()) < 1e-10);
        CHECK(std::abs(got.norm() - 1.0) < 1e-12);
        const Vector split = evolve_unitary(Operator(h), evolve_unitary(Operator(h), psi, 0.4 * t), 0.6 * t)
                                 .amplitudes();
        CHECK(max_diff(split, got) < 1e-12);
    }
}

TEST_CASE("gate_time values") {
    CHECK(std::abs(gate_time(1.0) - 1.1107207345395915) < 1e-15);
    CHECK(std::abs(gate_time(0.5) - 2.221441469079183) < 1e-14);
    CHECK_THROWS_AS(gate_time(0.0), InvalidParameter);
    CHECK_THROWS_AS(gate_time(-1.0), InvalidParameter);
}

TEST_CASE("Lindblad without collapse operators is unitary") {
    SeededRng rng(8);
    const Matrix h = random_hermitian(rng, 5);
    const QuantumState psi = QuantumState::normalized(random_matrix(rng, 5, 1));
    const DensityMatrix rho = evolve_lindblad(Operator(h), {}, DensityMatrix::pure(psi), 2.0, 0.1);
    const Vector u = evolve_unitary(Operator(h), psi, 2.0).amplitudes();
    CHECK(max_diff(rho.matrix(), u * u.adjoint()) < 1e-8);
}

TEST_CASE("damped cavity populations") {
    const double kappa = 1.0;
    Matrix h = Matrix::Zero(3, 3);
    h.diagonal() << 0.0, 3.0, 6.0;
    const DensityMatrix rho0(projector(3, 2));
    for (double t : {0.25, 1.0, 3.0}) {
        const DensityMatrix r = evolve_lindblad(Operator(h), {{kappa, Operator(lowering(3))}}, rho0, t, 0.05);
        const double e = std::exp(-kappa * t);
        CHECK(std::abs(r.matrix()(2, 2).real() - e * e) < 1e-6);
        CHECK(std::abs(r.matrix()(1, 1).real() - 2.0 * e * (1.0 - e)) < 1e-6);
        CHECK(std::abs(r.matrix()(0, 0).real() - (1.0 - e) * (1.0 - e)) < 1e-6);
    }
}

TEST_CASE("two-level decay and dephasing of coherence") {
    const double gamma = 0.4;
    const double omega = 2.0;
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = omega;
    const Matrix rho0 = Matrix::Constant(2, 2, 0.5);
    const double t = 1.7;
    const DensityMatrix r = evolve_lindblad(Operator(h), {{gamma, Operator(lowering(2))}},
                                            DensityMatrix(rho0), t, 0.05);
    CHECK(std::abs(r.matrix()(1, 1).real() - 0.5 * std::exp(-gamma * t)) < 1e-7);
    const cplx coherence = 0.5 * std::exp(cplx{-gamma * t / 2, -omega * t});
    CHECK(std::abs(r.matrix()(1, 0) - coherence) < 1e-7);
}

TEST_CASE("Lindblad output keeps density-matrix invariants and loses excitations monotonically") {
    SeededRng rng(13);
    Matrix h = Matrix::Zero(4, 4);
    h.diagonal() << 0.0, 1.0, 2.0, 3.0;
    h(1, 2) = h(2, 1) = 0.3;
    const Matrix num = lowering(4).adjoint() * lowering(4);
    DensityMatrix rho(projector(4, 3));
    double last = 3.0;
    for (int k = 0; k < 6; ++k) {
        rho = evolve_lindblad(Operator(h), {{0.5, Operator(lowering(4))}}, rho, 0.5, 0.05);
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-8);
        CHECK(is_hermitian(rho.matrix(), 1e-12));
        const double n = (num * rho.matrix()).trace().real();
        CHECK(n < last);
        last = n;
    }
}

TEST_CASE("Lindblad solver agrees with a dense RK4 oracle") {
    SeededRng rng(21);
    const Matrix h = random_hermitian(rng, 4);
    const std::vector<CollapseChannel> chans{{0.3, random_matrix(rng, 4, 4)}, {0.1, random_matrix(rng, 4, 4)}};
    const QuantumState psi = QuantumState::normalized(random_matrix(rng, 4, 1));
    const Matrix rho0 = DensityMatrix::pure(psi).matrix();
    const double t = 1.5;
    const LindbladSolver solver(h, chans);
    const auto got = solver.propagate({rho0}, t, 0.1, 1e-10, 14);
    const Matrix want = lindblad_rk4(h, chans, rho0, t, 20000);
    CHECK(max_diff(got.outputs.front(), want) < 1e-8);
    CHECK(got.last_change <= 1e-10);

    // Fixed steps at two resolutions agree with each other.
    const auto a = solver.propagate_fixed({rho0}, t, 400);
    const auto b = solver.propagate_fixed({rho0}, t, 800);
    CHECK(trace_distance(a.front(), b.front()) < 1e-9);
}

TEST_CASE("sectored Lindblad solver matches the unsectored one") {
    SeededRng rng(34);
    // Sectors {0}, {1, 2}, {3, 4}: Hamiltonian block diagonal, jumps lower the sector.
    const SectorLayout layout{{0, 1, 3, 5}};
    Matrix h = Matrix::Zero(5, 5);
    h(0, 0) = 0.2;
    h.block(1, 1, 2, 2) = random_hermitian(rng, 2);
    h.block(3, 3, 2, 2) = random_hermitian(rng, 2);
    Matrix l = Matrix::Zero(5, 5);
    l.block(0, 1, 1, 2) = random_matrix(rng, 1, 2);
    l.block(1, 3, 2, 2) = random_matrix(rng, 2, 2);
    const std::vector<CollapseChannel> chans{{0.4, l}};
    const Matrix rho0 = DensityMatrix::pure(QuantumState::normalized(random_matrix(rng, 5, 1))).matrix();

    const LindbladSolver plain(h, chans);
    const LindbladSolver sectored(h, chans, layout);
    const auto p = plain.propagate_fixed({rho0}, 2.0, 200);
    const auto s = sectored.propagate_fixed({rho0}, 2.0, 200);
    CHECK(max_diff(p.front(), s.front()) < 1e-12);
    CHECK(max_diff(s.front(), lindblad_rk4(h, chans, rho0, 2.0, 20000)) < 1e-8);

    Matrix mixing = h;
    mixing(0, 1) = mixing(1, 0) = 0.1;
    CHECK_THROWS_AS(LindbladSolver(mixing, chans, layout), InvalidParameter);
    CHECK_THROWS_AS(LindbladSolver(h, {{0.1, l.adjoint()}}, layout), InvalidParameter);
}

TEST_CASE("Lindblad solver parameter checks") {
    const Matrix h = Matrix::Identity(2, 2);
    const LindbladSolver solver(h, {{1.0, lowering(2)}});
    const Matrix rho = projector(2, 1);
    CHECK_THROWS_AS(solver.propagate({rho}, 1.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(solver.propagate({rho}, 1.0, -0.1), InvalidParameter);
    CHECK_THROWS_AS(solver.propagate({rho}, 1.0, 2.0), InvalidParameter);
    CHECK_THROWS_AS(solver.propagate_fixed({rho}, 1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(LindbladSolver(h, {{-1.0, lowering(2)}}), InvalidParameter);
    CHECK_THROWS_AS(LindbladSolver(lowering(2), {}), InvalidParameter);
    const auto zero = solver.propagate({rho}, 0.0, 0.1);
    CHECK(max_diff(zero.outputs.front(), rho) == 0.0);
}

TEST_CASE("unreachable refinement tolerance reports a numerical failure") {
    const Matrix h = Matrix::Identity(3, 3);
    const LindbladSolver solver(h, {{1.0, lowering(3)}});
    CHECK_THROWS_AS(solver.propagate({projector(3, 2)}, 2.0, 1.0, 1e-16, 1), NumericalFailure);
}
