#include "cavityqc/errors.hpp"
#include "cavityqc/operators.hpp"
#include "cavityqc/random.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace cavityqc;
using testing::max_diff;

TEST_CASE("fock_ladder matrix elements") {
    const Ladder l1 = fock_ladder(1);
    Matrix expect(2, 2);
    expect << 0, 1, 0, 0;
    CHECK(max_diff(l1.annihilator.matrix(), expect) == 0.0);

    const Ladder l3 = fock_ladder(3);
    CHECK(std::abs(l3.annihilator.matrix()(2, 3) - std::sqrt(3.0)) < 1e-15);
    CHECK(max_diff(l3.creator.matrix(), l3.annihilator.matrix().adjoint()) == 0.0);
    for (Index r = 0; r < 4; ++r) {
        for (Index c = 0; c < 4; ++c) {
            const double want = (c == r + 1) ? std::sqrt(static_cast<double>(c)) : 0.0;
            CHECK(std::abs(l3.annihilator.matrix()(r, c) - want) < 1e-15);
        }
    }
}

TEST_CASE("number operator spectrum is 0..n_max") {
    for (int n_max : {1, 2, 5}) {
        const Ladder l = fock_ladder(n_max);
        const auto ev = testing::sorted_eigenvalues(l.creator.matrix() * l.annihilator.matrix());
        for (int k = 0; k <= n_max; ++k) CHECK(std::abs(ev[static_cast<std::size_t>(k)] - k) < 1e-12);
    }
}

TEST_CASE("truncated commutator [a, a+] is identity except the top entry") {
    for (int n_max : {1, 2, 4}) {
        const Ladder l = fock_ladder(n_max);
        Matrix expect = Matrix::Identity(n_max + 1, n_max + 1);
        expect(n_max, n_max) = -static_cast<double>(n_max);
        CHECK(max_diff(commutator(l.annihilator.matrix(), l.creator.matrix()), expect) < 1e-12);
    }
}

TEST_CASE("fock_ladder rejects n_max < 1") {
    CHECK_THROWS_AS(fock_ladder(0), InvalidParameter);
}

TEST_CASE("Pauli algebra") {
    const Matrix x = pauli(PauliLabel::X).matrix();
    const Matrix y = pauli(PauliLabel::Y).matrix();
    const Matrix z = pauli(PauliLabel::Z).matrix();
    Matrix zexp(2, 2);
    zexp << 1, 0, 0, -1;
    CHECK(max_diff(z, zexp) == 0.0);
    CHECK(max_diff(x * y - y * x, cplx{0, 2} * z) < 1e-15);
    const Matrix sp = pauli(PauliLabel::Plus).matrix();
    const Matrix sm = pauli(PauliLabel::Minus).matrix();
    CHECK(max_diff(sp * sm + sm * sp, Matrix::Identity(2, 2)) < 1e-15);
    // Raising maps the vacuum label |0⟩ to the excitation label |1⟩.
    const Vector raised = sp * testing::ket(2, 0);
    CHECK(std::abs(raised(1) - 1.0) < 1e-15);
    CHECK(std::abs(raised(0)) < 1e-15);
    CHECK(max_diff(sm, sp.adjoint()) == 0.0);
}

TEST_CASE("Pauli labels parse and reject unknowns") {
    CHECK(parse_pauli_label("X") == PauliLabel::X);
    CHECK(parse_pauli_label("plus") == PauliLabel::Plus);
    CHECK(parse_pauli_label("-") == PauliLabel::Minus);
    CHECK_THROWS_AS(parse_pauli_label("W"), InvalidParameter);
    CHECK_THROWS_AS(pauli("q"), InvalidParameter);
}

TEST_CASE("embed matches an explicit Kronecker chain") {
    const std::vector<Index> dims{2, 3, 2};
    const Matrix z = pauli(PauliLabel::Z).matrix();
    const Operator e = embed(pauli(PauliLabel::Z), 2, dims);
    const Matrix oracle = testing::kron_loops(
        testing::kron_loops(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), z);
    CHECK(max_diff(e.matrix(), oracle) == 0.0);

    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << 1, 1, -1, -1;
    CHECK(max_diff(embed(pauli(PauliLabel::Z), 0, {2, 2}).matrix(), diag) == 0.0);
}

TEST_CASE("embed of identity is identity and dimension errors are caught") {
    const std::vector<Index> dims{4, 2};
    CHECK(max_diff(embed(identity({2}), 1, dims).matrix(), Matrix::Identity(8, 8)) == 0.0);
    CHECK_THROWS_AS(embed(pauli(PauliLabel::X), 0, dims), InvalidParameter);
    CHECK_THROWS_AS(embed(pauli(PauliLabel::X), 2, dims), InvalidParameter);
}

TEST_CASE("disjoint embeddings commute and hermiticity is preserved") {
    SeededRng rng(11);
    const std::vector<Index> dims{2, 3, 2};
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(2, 2), b(3, 3);
        for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.complex_normal();
        for (Index i = 0; i < b.size(); ++i) b.data()[i] = rng.complex_normal();
        const Matrix ha = a + a.adjoint();
        const Matrix hb = b + b.adjoint();
        const Operator ea = embed(Operator(ha), 0, dims);
        const Operator eb = embed(Operator(hb), 1, dims);
        CHECK(max_abs(commutator(ea.matrix(), eb.matrix())) < 1e-12);
        CHECK((ea + eb).is_hermitian());
        CHECK(ea.is_hermitian());
    }
}

TEST_CASE("embed_product places factors on their sites") {
    const std::vector<Index> dims{2, 2, 2};
    const Matrix x = pauli(PauliLabel::X).matrix();
    const Matrix z = pauli(PauliLabel::Z).matrix();
    const Operator p = embed_product({{2, pauli(PauliLabel::Z)}, {0, pauli(PauliLabel::X)}}, dims);
    const Matrix oracle = testing::kron_loops(testing::kron_loops(x, Matrix::Identity(2, 2)), z);
    CHECK(max_diff(p.matrix(), oracle) == 0.0);
    CHECK_THROWS_AS(embed_product({{0, pauli(PauliLabel::X)}, {0, pauli(PauliLabel::Z)}}, dims),
                    InvalidParameter);
}

TEST_CASE("Operator arithmetic checks structure") {
    const Operator a(Matrix::Identity(4, 4), {2, 2});
    const Operator b(Matrix::Identity(2, 2), {2});
    CHECK_THROWS_AS(a + b, InvalidParameter);
    CHECK_THROWS_AS(Operator(Matrix::Identity(4, 4), {2, 3}), InvalidParameter);
    const Operator c = a * cplx{2.0, 0.0} - a;
    CHECK(max_diff(c.matrix(), Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("kron agrees with the loop oracle") {
    SeededRng rng(3);
    Matrix a(2, 3), b(3, 2);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.complex_normal();
    for (Index i = 0; i < b.size(); ++i) b.data()[i] = rng.complex_normal();
    CHECK(max_diff(kron(a, b), testing::kron_loops(a, b)) == 0.0);
}

TEST_CASE("LocalSpace ordering: atom slow, photon fast") {
    const LocalSpace s{2};
    CHECK(s.dim() == 6);
    CHECK(s.index(0, 0) == 0);
    CHECK(s.index(0, 2) == 2);
    CHECK(s.index(1, 0) == 3);
}
