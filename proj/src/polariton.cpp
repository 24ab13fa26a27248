// polariton.cpp — Lower-polariton qubits and the effective XY spin chain.

#include "cavityqc/polariton.hpp"

#include "cavityqc/dynamics.hpp"
#include "cavityqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cavityqc {

Vector polariton_state(int n, PolaritonSign sign, int n_max) {
    if (n_max < 1) throw InvalidParameter("polariton_state: n_max must be >= 1");
    if (n < 1 || n > n_max) throw InvalidParameter("polariton_state: n must be in [1, n_max]");
    const LocalSpace site{n_max};
    const double w = 1.0 / std::numbers::sqrt2;
    Vector v = Vector::Zero(site.dim());
    v(site.index(0, n)) = w;
    v(site.index(1, n - 1)) = sign == PolaritonSign::Upper ? w : -w;
    return v;
}

Matrix site_qubit_isometry(int n_max) {
    const LocalSpace site{n_max};
    Matrix v = Matrix::Zero(site.dim(), 2);
    v(site.index(0, 0), 0) = 1.0;
    v.col(1) = polariton_state(1, PolaritonSign::Lower, n_max);
    return v;
}

Vector PolaritonMap::embed(const Vector& logical) const {
    if (logical.size() != logical_dim()) {
        throw InvalidParameter("PolaritonMap::embed: logical dimension mismatch");
    }
    return isometry * logical;
}

Vector PolaritonMap::project(const Vector& lattice) const {
    if (lattice.size() != isometry.rows()) {
        throw InvalidParameter("PolaritonMap::project: lattice dimension mismatch");
    }
    return isometry.adjoint() * lattice;
}

PolaritonMap build_polariton_map(const SystemParams& params, Index cap) {
    lattice_dimension(params, cap);
    if (!params.resonant()) {
        throw UnsupportedConfiguration(
            "build_polariton_map: polariton qubits are defined only at resonance (omega_0 = "
            "omega_d)");
    }
    const Matrix site = site_qubit_isometry(params.n_max);
    Matrix iso = Matrix::Identity(1, 1);
    for (int k = 0; k < params.N; ++k) iso = kron(iso, site);
    return {params, std::move(iso)};
}

Operator effective_xy_hamiltonian(double J, int N, Boundary boundary) {
    if (N < 2) throw InvalidParameter("effective_xy_hamiltonian: N must be >= 2");
    const std::vector<Index> dims(static_cast<std::size_t>(N), 2);
    const Operator x = pauli(PauliLabel::X);
    const Operator y = pauli(PauliLabel::Y);
    const Index dim = Index{1} << N;
    Operator h(Matrix::Zero(dim, dim), dims);
    auto add_bond = [&](int i, int j) {
        const auto si = static_cast<std::size_t>(i);
        const auto sj = static_cast<std::size_t>(j);
        h += J * (embed_product({{si, x}, {sj, x}}, dims) + embed_product({{si, y}, {sj, y}}, dims));
    };
    for (int k = 0; k + 1 < N; ++k) add_bond(k, k + 1);
    if (boundary == Boundary::Periodic) add_bond(N - 1, 0);
    return h;
}

EffectiveCoupling fit_effective_coupling(const SystemParams& params) {
    params.validate();
    if (!params.resonant()) {
        throw UnsupportedConfiguration("fit_effective_coupling: requires resonance");
    }
    if (params.n_max < 2) {
        throw InvalidParameter("fit_effective_coupling: requires n_max >= 2");
    }
    SystemParams two = params;
    two.N = 2;
    two.boundary = Boundary::Open;
    two.kappa = 0.0;
    two.gamma = 0.0;

    const ExcitationSubspace sub(two, 1);
    const Index off = sub.sector_offset(1);
    const Index len = sub.sector_size(1);
    const Matrix h = sub.restrict(polariton_frame_hamiltonian(two).matrix()).block(off, off, len, len);

    const PolaritonMap map = build_polariton_map(two);
    // Logical |10⟩ and |01⟩ are columns 2 and 1 of the isometry.
    const Vector lp_left = sub.restrict(Vector(map.isometry.col(2))).segment(off, len);
    const Vector lp_right = sub.restrict(Vector(map.isometry.col(1))).segment(off, len);
    const Vector sym = (lp_left + lp_right) / std::numbers::sqrt2;
    const Vector anti = (lp_left - lp_right) / std::numbers::sqrt2;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXd& e = solver.eigenvalues();
    const Matrix& v = solver.eigenvectors();

    // The lower-polariton doublet: the two eigenvectors with the largest weight
    // in span{sym, anti}.
    std::vector<std::pair<double, Index>> weight;
    for (Index i = 0; i < len; ++i) {
        const double w = std::norm(sym.dot(v.col(i))) + std::norm(anti.dot(v.col(i)));
        weight.emplace_back(w, i);
    }
    std::sort(weight.begin(), weight.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    const Index i0 = weight[0].second;
    const Index i1 = weight[1].second;

    const double scale = std::max({params.g, params.A, 1e-300});
    if (std::abs(e(i0) - e(i1)) <= 1e-12 * scale) {
        // Degenerate doublet (A = 0): any basis of it is an eigenbasis.
        return {0.0, 0.0};
    }

    const double s0 = std::norm(sym.dot(v.col(i0)));
    const double s1 = std::norm(sym.dot(v.col(i1)));
    const Index is = s0 >= s1 ? i0 : i1;
    const Index ia = s0 >= s1 ? i1 : i0;
    const double sym_overlap = std::norm(sym.dot(v.col(is)));
    const double anti_overlap = std::norm(anti.dot(v.col(ia)));
    if (sym_overlap < 0.5 && anti_overlap < 0.5) {
        throw FitFailure("fit_effective_coupling: lower-polariton doublet not identifiable");
    }
    const double t_eff = 0.5 * (e(is) - e(ia));
    return {t_eff, 0.5 * t_eff};
}

ReductionResult reduction_infidelity(const SystemParams& params, double t,
                                     const Vector& logical_state, Index cap) {
    params.validate();
    const PolaritonMap map = build_polariton_map(params, cap);
    if (logical_state.size() != map.logical_dim()) {
        throw InvalidParameter("reduction_infidelity: logical state dimension mismatch");
    }
    if (std::abs(logical_state.norm() - 1.0) > 1e-10) {
        throw InvalidParameter("reduction_infidelity: logical state must be normalized");
    }
    if (params.N < 2) throw InvalidParameter("reduction_infidelity: requires N >= 2");

    const EffectiveCoupling coupling = fit_effective_coupling(params);

    const UnitaryPropagator full(polariton_frame_hamiltonian(params, cap).matrix());
    const Vector psi_full = full.apply(map.embed(logical_state), t);

    const UnitaryPropagator eff(
        effective_xy_hamiltonian(coupling.J_xy, params.N, params.boundary).matrix());
    const Vector psi_eff = eff.apply(logical_state, t);

    const Vector projected = map.project(psi_full);
    const double kept = projected.squaredNorm();
    ReductionResult r;
    r.coupling = coupling;
    r.leakage = std::clamp(1.0 - kept, 0.0, 1.0);
    r.infidelity = kept > 0.0
                       ? std::clamp(1.0 - std::norm(psi_eff.dot(projected)) / kept, 0.0, 1.0)
                       : 1.0;
    return r;
}

}  // namespace cavityqc
