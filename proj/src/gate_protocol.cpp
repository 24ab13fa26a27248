// gate_protocol.cpp — Measurement-mediated two-qubit gate on a three-site chain.

#include "cavityqc/gate_protocol.hpp"

#include "cavityqc/errors.hpp"
#include "cavityqc/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cavityqc {

namespace gates {

Matrix hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::numbers::sqrt2;
}

Matrix phase_s() {
    Matrix s = Matrix::Identity(2, 2);
    s(1, 1) = cplx{0.0, 1.0};
    return s;
}

Matrix swap() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = s(3, 3) = 1.0;
    s(1, 2) = s(2, 1) = 1.0;
    return s;
}

Matrix cz() {
    Matrix c = Matrix::Identity(4, 4);
    c(3, 3) = -1.0;
    return c;
}

Matrix zz() {
    return kron(pauli(PauliLabel::Z).matrix(), pauli(PauliLabel::Z).matrix());
}

}  // namespace gates

std::string to_string(GateLabel label) {
    return label == GateLabel::SwapZZCP ? "SWAP.ZZ.CP" : "SWAP.CP";
}

Operator xy3_hamiltonian(double coupling) {
    return effective_xy_hamiltonian(coupling, 3, Boundary::Open);
}

Matrix mediated_gate_unitary(double coupling) {
    const double t = gate_time(coupling);
    return UnitaryPropagator(xy3_hamiltonian(coupling).matrix()).matrix(t);
}

namespace {

constexpr double kDegenerateWeight = 1e-14;

int mediator_bit(Index idx) {
    return static_cast<int>((idx >> 1) & 1);
}

// Three-qubit index for outer pair state k = (q1 q3) and mediator bit m.
Index three_qubit_index(Index k, int m) {
    return (k >> 1) * 4 + m * 2 + (k & 1);
}

}  // namespace

MediatorMeasurement measure_mediator(const QuantumState& psi, SeededRng& rng,
                                     std::optional<int> forced) {
    if (psi.dim() != 8) throw InvalidParameter("measure_mediator: expected a 3-qubit state");
    if (forced && *forced != 0 && *forced != 1) {
        throw InvalidParameter("measure_mediator: forced outcome must be 0 or 1");
    }
    double p0 = 0.0;
    for (Index i = 0; i < 8; ++i) {
        if (mediator_bit(i) == 0) p0 += std::norm(psi.amplitudes()(i));
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    // The generator advances even when the outcome is forced, so a forced run
    // and a sampled run consume the same stream.
    const double u = rng.uniform();
    const int outcome = forced ? *forced : (u < p0 ? 0 : 1);
    const double p = outcome == 0 ? p0 : 1.0 - p0;
    if (p < kDegenerateWeight) {
        throw DegenerateBranch("measure_mediator: selected branch has zero weight");
    }
    Vector post = psi.amplitudes();
    for (Index i = 0; i < 8; ++i) {
        if (mediator_bit(i) != outcome) post(i) = 0.0;
    }
    return {outcome, QuantumState::normalized(std::move(post)), p};
}

MediatorMeasurement measure_mediator(const QuantumState& psi, std::uint64_t seed,
                                     std::optional<int> forced) {
    SeededRng rng(seed);
    return measure_mediator(psi, rng, forced);
}

TwoQubitAction classify_two_qubit_action(int outcome) {
    if (outcome == 0) {
        return {GateLabel::SwapZZCP, gates::swap() * gates::zz() * gates::cz()};
    }
    if (outcome == 1) {
        return {GateLabel::SwapCP, -1.0 * gates::swap() * gates::cz()};
    }
    throw InvalidParameter("classify_two_qubit_action: outcome must be 0 or 1");
}

Matrix outer_pair_block(const Matrix& three_qubit, int mediator) {
    if (three_qubit.rows() != 8 || three_qubit.cols() != 8) {
        throw InvalidParameter("outer_pair_block: expected an 8x8 operator");
    }
    Matrix out(4, 4);
    for (Index r = 0; r < 4; ++r) {
        for (Index c = 0; c < 4; ++c) {
            out(r, c) = three_qubit(three_qubit_index(r, mediator), three_qubit_index(c, mediator));
        }
    }
    return out;
}

ProtocolReport full_stack_gate(const SystemParams& params, const Vector& logical_input,
                               std::optional<int> forced_outcome, std::uint64_t seed,
                               const FullStackOptions& options) {
    params.validate();
    if (params.N != 3) throw InvalidParameter("full_stack_gate: requires N = 3");
    if (params.n_max < 2) throw InvalidParameter("full_stack_gate: requires n_max >= 2");
    if (!params.resonant()) {
        throw UnsupportedConfiguration("full_stack_gate: requires resonance");
    }
    if (logical_input.size() != 8 || std::abs(logical_input.norm() - 1.0) > 1e-10) {
        throw InvalidParameter("full_stack_gate: logical input must be a normalized 3-qubit state");
    }
    if (forced_outcome && *forced_outcome != 0 && *forced_outcome != 1) {
        throw InvalidParameter("full_stack_gate: forced outcome must be 0 or 1");
    }

    const EffectiveCoupling coupling = fit_effective_coupling(params);
    const bool moving = coupling.t_eff > 0.0;
    const double duration = moving ? std::numbers::pi / (std::numbers::sqrt2 * coupling.t_eff) : 0.0;

    // Logical states carry at most 3 excitations; nothing leaves that subspace.
    const ExcitationSubspace sub(params, 3, options.cap);
    const PolaritonMap map = build_polariton_map(params, options.cap);
    Matrix iso(sub.dim(), 8);
    for (Index i = 0; i < sub.dim(); ++i) iso.row(i) = map.isometry.row(sub.state(i));
    const Matrix h = sub.restrict(polariton_frame_hamiltonian(params, options.cap).matrix());

    auto outcome_columns = [&](int b) {
        Matrix w(sub.dim(), 4);
        for (Index k = 0; k < 4; ++k) w.col(k) = iso.col(three_qubit_index(k, b));
        return w;
    };

    ProtocolReport report;
    report.t_eff = coupling.t_eff;
    report.elapsed_model_time = duration;
    report.dissipative = params.kappa > 0.0 || params.gamma > 0.0 || options.force_lindblad;

    double weight[2] = {0.0, 0.0};
    SeededRng rng(seed);
    auto choose = [&]() {
        const double u = rng.uniform();
        const double total = weight[0] + weight[1];
        if (forced_outcome) return *forced_outcome;
        if (total < kDegenerateWeight) {
            throw DegenerateBranch("full_stack_gate: no weight left in the qubit subspace");
        }
        return u < weight[0] / total ? 0 : 1;
    };

    if (!report.dissipative) {
        const Matrix u = UnitaryPropagator(h).matrix(duration);
        const Matrix logical = iso.adjoint() * u * iso;
        const Vector out = logical * logical_input;
        for (Index i = 0; i < 8; ++i) weight[mediator_bit(i)] += std::norm(out(i));
        report.leakage = std::clamp(1.0 - out.squaredNorm(), 0.0, 1.0);
        report.outcome = choose();
        const Matrix kraus = outer_pair_block(logical, report.outcome);
        const TwoQubitAction action = classify_two_qubit_action(report.outcome);
        report.label = action.label;
        const Matrix ideal = moving ? action.ideal : Matrix::Identity(4, 4);
        report.two_qubit_fidelity = average_gate_fidelity(Channel::from_kraus({kraus}), ideal);
    } else {
        std::vector<CollapseChannel> channels;
        for (const auto& [rate, op] : collapse_operators(params, options.cap)) {
            channels.push_back({rate, sub.restrict(op.matrix())});
        }
        SectorLayout layout;
        for (int p = 0; p <= sub.max_excitations() + 1; ++p) layout.offsets.push_back(sub.sector_offset(p));
        const LindbladSolver solver(h, channels, layout);

        const double scale = std::max(params.g, params.A);
        const double dt = std::min(duration, options.lindblad_step_g / scale);

        auto evolve = [&](const std::vector<Matrix>& inputs) {
            if (duration == 0.0) return inputs;
            auto res = solver.propagate(inputs, duration, dt, options.lindblad_tol);
            report.lindblad_dt = res.dt;
            return res.outputs;
        };

        const Vector embedded = iso * logical_input;
        const Matrix rho = evolve({embedded * embedded.adjoint()}).front();
        const Matrix logical_rho = iso.adjoint() * rho * iso;
        for (Index i = 0; i < 8; ++i) weight[mediator_bit(i)] += logical_rho(i, i).real();
        report.leakage = std::clamp(1.0 - logical_rho.trace().real(), 0.0, 1.0);
        report.outcome = choose();

        const Matrix w = outcome_columns(report.outcome);
        std::vector<Matrix> units;
        for (Index i = 0; i < 4; ++i) {
            for (Index j = 0; j < 4; ++j) units.push_back(w.col(i) * w.col(j).adjoint());
        }
        const std::vector<Matrix> evolved = evolve(units);
        std::vector<Matrix> images;
        for (const auto& x : evolved) images.push_back(w.adjoint() * x * w);
        const TwoQubitAction action = classify_two_qubit_action(report.outcome);
        report.label = action.label;
        const Matrix ideal = moving ? action.ideal : Matrix::Identity(4, 4);
        report.two_qubit_fidelity =
            average_gate_fidelity(Channel::from_matrix_units(4, images), ideal);
    }
    report.outcome_probability = std::clamp(weight[report.outcome], 0.0, 1.0);
    return report;
}

}  // namespace cavityqc
