// dynamics.cpp — Closed and open (Lindblad) time evolution.

#include "cavityqc/dynamics.hpp"

#include "cavityqc/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cavityqc {

QuantumState::QuantumState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0 || std::abs(amps_.norm() - 1.0) > 1e-10) {
        throw InvalidParameter("QuantumState: amplitudes must have unit norm");
    }
}

QuantumState QuantumState::normalized(Vector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw InvalidParameter("QuantumState: cannot normalize a zero vector");
    return QuantumState(amplitudes / n);
}

QuantumState QuantumState::basis(Index dim, Index index) {
    if (index < 0 || index >= dim) throw InvalidParameter("QuantumState: basis index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return QuantumState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : rho_(std::move(entries)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
        throw InvalidParameter("DensityMatrix: must be square and non-empty");
    }
    if (!is_hermitian(rho_, 1e-10)) {
        throw InvalidParameter("DensityMatrix: not Hermitian to 1e-10");
    }
    if (std::abs(rho_.trace() - cplx{1.0, 0.0}) > 1e-8) {
        throw InvalidParameter("DensityMatrix: trace differs from 1 by more than 1e-8");
    }
    const Matrix herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-8) {
        throw InvalidParameter("DensityMatrix: eigenvalue below -1e-8");
    }
}

DensityMatrix DensityMatrix::pure(const QuantumState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidParameter("trace_distance: dimension mismatch");
    }
    Eigen::JacobiSVD<Matrix> svd(a - b);
    return 0.5 * svd.singularValues().sum();
}

UnitaryPropagator::UnitaryPropagator(const Matrix& hamiltonian) {
    if (!is_hermitian(hamiltonian)) {
        throw InvalidParameter("UnitaryPropagator: Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("UnitaryPropagator: eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

Matrix UnitaryPropagator::matrix(double t) const {
    Vector phases(energies_.size());
    for (Index i = 0; i < energies_.size(); ++i) phases(i) = std::polar(1.0, -energies_(i) * t);
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Vector UnitaryPropagator::apply(const Vector& psi, double t) const {
    if (psi.size() != energies_.size()) {
        throw InvalidParameter("UnitaryPropagator: state dimension mismatch");
    }
    Vector c = vectors_.adjoint() * psi;
    for (Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -energies_(i) * t);
    return vectors_ * c;
}

QuantumState evolve_unitary(const Operator& hamiltonian, const QuantumState& psi, double t) {
    if (hamiltonian.dim() != psi.dim()) {
        throw InvalidParameter("evolve_unitary: dimension mismatch");
    }
    UnitaryPropagator prop(hamiltonian.matrix());
    // Renormalize away the last few ulps of drift.
    return QuantumState::normalized(prop.apply(psi.amplitudes(), t));
}

double gate_time(double coupling) {
    if (!(coupling > 0.0)) throw InvalidParameter("gate_time: coupling must be > 0");
    return std::numbers::pi / (2.0 * std::numbers::sqrt2 * coupling);
}

// ---------------------------------------------------------------------------
// LindbladSolver

LindbladSolver::LindbladSolver(const Matrix& hamiltonian,
                               const std::vector<CollapseChannel>& channels,
                               std::optional<SectorLayout> layout)
    : dim_(hamiltonian.rows()) {
    if (!is_hermitian(hamiltonian)) {
        throw InvalidParameter("LindbladSolver: Hamiltonian is not Hermitian");
    }
    const bool lowering = layout.has_value();
    offsets_ = lowering ? layout->offsets : std::vector<Index>{0, dim_};
    if (offsets_.size() < 2 || offsets_.front() != 0 || offsets_.back() != dim_ ||
        !std::is_sorted(offsets_.begin(), offsets_.end())) {
        throw InvalidParameter("LindbladSolver: malformed sector layout");
    }
    const int nsec = static_cast<int>(offsets_.size()) - 1;
    auto off = [&](int p) { return offsets_[static_cast<std::size_t>(p)]; };
    auto len = [&](int p) { return off(p + 1) - off(p); };
    auto sector_of = [&](Index i) {
        return static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), i) -
                                offsets_.begin()) - 1;
    };

    Matrix heff = hamiltonian;
    for (const auto& ch : channels) {
        if (ch.rate < 0.0) throw InvalidParameter("LindbladSolver: negative rate");
        if (ch.op.rows() != dim_ || ch.op.cols() != dim_) {
            throw InvalidParameter("LindbladSolver: collapse operator dimension mismatch");
        }
        if (ch.rate == 0.0) continue;
        heff -= cplx{0.0, 0.5 * ch.rate} * (ch.op.adjoint() * ch.op);
    }

    for (Index r = 0; r < dim_; ++r) {
        for (Index c = 0; c < dim_; ++c) {
            if (hamiltonian(r, c) != cplx{} && sector_of(r) != sector_of(c)) {
                throw InvalidParameter("LindbladSolver: Hamiltonian mixes excitation sectors");
            }
        }
    }
    for (int p = 0; p < nsec; ++p) heff_blocks_.push_back(heff.block(off(p), off(p), len(p), len(p)));

    shift_ = lowering ? 1 : 0;
    const int shift = shift_;
    for (const auto& ch : channels) {
        if (ch.rate == 0.0) continue;
        const Matrix scaled = std::sqrt(ch.rate) * ch.op;
        for (Index r = 0; r < dim_; ++r) {
            for (Index c = 0; c < dim_; ++c) {
                if (scaled(r, c) != cplx{} && sector_of(r) != sector_of(c) - shift) {
                    throw InvalidParameter(
                        "LindbladSolver: collapse operator does not lower the excitation sector");
                }
            }
        }
        std::vector<SparseMatrix> blocks;
        for (int p = shift; p < nsec; ++p) {
            const Matrix b = scaled.block(off(p - shift), off(p), len(p - shift), len(p));
            blocks.push_back(b.sparseView());
        }
        jump_blocks_.push_back(std::move(blocks));
        has_jumps_ = true;
    }
}

LindbladSolver::StepOperators LindbladSolver::step_operators(double h) const {
    StepOperators ops;
    for (const auto& hb : heff_blocks_) {
        const Matrix gen = cplx{0.0, -0.5 * h} * hb;
        ops.half.push_back(gen.exp());
    }
    return ops;
}

std::vector<LindbladSolver::Block> LindbladSolver::active_blocks(const Matrix& x) const {
    const int nsec = static_cast<int>(offsets_.size()) - 1;
    const int shift = has_jumps_ ? shift_ : 0;
    std::vector<std::vector<bool>> active(static_cast<std::size_t>(nsec),
                                          std::vector<bool>(static_cast<std::size_t>(nsec)));
    auto off = [&](int p) { return offsets_[static_cast<std::size_t>(p)]; };
    auto len = [&](int p) { return off(p + 1) - off(p); };
    for (int p = nsec - 1; p >= 0; --p) {
        for (int q = nsec - 1; q >= 0; --q) {
            if (len(p) == 0 || len(q) == 0) continue;
            bool on = x.block(off(p), off(q), len(p), len(q)).cwiseAbs().maxCoeff() > 0.0;
            if (!on && shift == 1 && p + 1 < nsec && q + 1 < nsec) {
                on = active[static_cast<std::size_t>(p + 1)][static_cast<std::size_t>(q + 1)];
            }
            active[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = on;
        }
    }
    std::vector<Block> out;
    for (int p = 0; p < nsec; ++p) {
        for (int q = 0; q < nsec; ++q) {
            if (active[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]) out.emplace_back(p, q);
        }
    }
    return out;
}

Matrix LindbladSolver::no_jump(const StepOperators& ops, const Matrix& x,
                               const std::vector<Block>& blocks) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (auto [p, q] : blocks) {
        const Index op = offsets_[static_cast<std::size_t>(p)];
        const Index oq = offsets_[static_cast<std::size_t>(q)];
        const Matrix& kp = ops.half[static_cast<std::size_t>(p)];
        const Matrix& kq = ops.half[static_cast<std::size_t>(q)];
        out.block(op, oq, kp.rows(), kq.rows()).noalias() =
            kp * x.block(op, oq, kp.rows(), kq.rows()) * kq.adjoint();
    }
    return out;
}

Matrix LindbladSolver::jump(const Matrix& x, const std::vector<Block>& blocks) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    if (!has_jumps_) return out;
    const int shift = shift_;
    for (auto [p, q] : blocks) {
        if (p < shift || q < shift) continue;
        const Index op = offsets_[static_cast<std::size_t>(p)];
        const Index oq = offsets_[static_cast<std::size_t>(q)];
        const Index tp = offsets_[static_cast<std::size_t>(p - shift)];
        const Index tq = offsets_[static_cast<std::size_t>(q - shift)];
        for (const auto& ch : jump_blocks_) {
            const SparseMatrix& lp = ch[static_cast<std::size_t>(p - shift)];
            const SparseMatrix& lq = ch[static_cast<std::size_t>(q - shift)];
            if (lp.nonZeros() == 0 || lq.nonZeros() == 0) continue;
            const Matrix left = lp * x.block(op, oq, lp.cols(), lq.cols());
            out.block(tp, tq, lp.rows(), lq.rows()) += left * Matrix(lq.adjoint());
        }
    }
    return out;
}

Matrix LindbladSolver::step(const StepOperators& ops, const Matrix& x, double h,
                            const std::vector<Block>& blocks) const {
    const Matrix a = no_jump(ops, x, blocks);
    const Matrix c = no_jump(ops, a, blocks);
    if (!has_jumps_) return c;
    const Matrix k1 = jump(x, blocks);
    const Matrix b = no_jump(ops, k1, blocks);
    const Matrix k2 = jump(a + 0.5 * h * b, blocks);
    const Matrix k3 = jump(a + 0.5 * h * k2, blocks);
    const Matrix k4 = jump(c + h * no_jump(ops, k3, blocks), blocks);
    return c + (h / 6.0) * (no_jump(ops, b, blocks) + 2.0 * no_jump(ops, k2 + k3, blocks) + k4);
}

std::vector<Matrix> LindbladSolver::propagate_fixed(const std::vector<Matrix>& inputs, double t,
                                                    long steps) const {
    if (steps < 1) throw InvalidParameter("LindbladSolver: steps must be >= 1");
    if (t < 0.0) throw InvalidParameter("LindbladSolver: time must be >= 0");
    const double h = t / static_cast<double>(steps);
    const StepOperators ops = step_operators(h);
    std::vector<Matrix> out;
    out.reserve(inputs.size());
    for (const auto& in : inputs) {
        if (in.rows() != dim_ || in.cols() != dim_) {
            throw InvalidParameter("LindbladSolver: input dimension mismatch");
        }
        const auto blocks = active_blocks(in);
        Matrix x = in;
        for (long s = 0; s < steps; ++s) x = step(ops, x, h, blocks);
        out.push_back(std::move(x));
    }
    return out;
}

LindbladSolver::Converged LindbladSolver::propagate(const std::vector<Matrix>& inputs, double t,
                                                    double dt, double tol,
                                                    int max_halvings) const {
    if (!(dt > 0.0)) throw InvalidParameter("LindbladSolver: dt must be > 0");
    if (t < 0.0) throw InvalidParameter("LindbladSolver: time must be >= 0");
    if (t == 0.0) return {inputs, dt, 0, 0.0};
    if (dt > t) throw InvalidParameter("LindbladSolver: dt must not exceed t");

    long steps = static_cast<long>(std::ceil(t / dt - 1e-9));
    std::vector<Matrix> coarse = propagate_fixed(inputs, t, steps);
    if (!has_jumps_) return {std::move(coarse), t / static_cast<double>(steps), 0, 0.0};

    double change = 0.0;
    for (int halving = 1; halving <= max_halvings; ++halving) {
        steps *= 2;
        std::vector<Matrix> fine = propagate_fixed(inputs, t, steps);
        change = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) {
            change = std::max(change, trace_distance(fine[i], coarse[i]));
        }
        if (change <= tol) {
            return {std::move(fine), t / static_cast<double>(steps), halving, change};
        }
        coarse = std::move(fine);
    }
    throw NumericalFailure("Lindblad step refinement did not converge after " +
                           std::to_string(max_halvings) + " halvings (last change " +
                           std::to_string(change) + ")");
}

DensityMatrix evolve_lindblad(const Operator& hamiltonian,
                              const std::vector<std::pair<double, Operator>>& collapse_ops,
                              const DensityMatrix& rho0, double t, double dt) {
    if (hamiltonian.dim() != rho0.dim()) {
        throw InvalidParameter("evolve_lindblad: dimension mismatch");
    }
    std::vector<CollapseChannel> channels;
    for (const auto& [rate, op] : collapse_ops) channels.push_back({rate, op.matrix()});
    const LindbladSolver solver(hamiltonian.matrix(), channels);
    auto result = solver.propagate({rho0.matrix()}, t, dt);
    try {
        return DensityMatrix(std::move(result.outputs.front()));
    } catch (const InvalidParameter& e) {
        throw NumericalFailure(std::string("evolve_lindblad: result violates invariants: ") +
                               e.what());
    }
}

}  // namespace cavityqc
