// jch_model.cpp — Coupled-cavity lattice Hamiltonians and Bloch structure.

#include "cavityqc/jch_model.hpp"

#include "cavityqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cavityqc {

Boundary parse_boundary(std::string_view s) {
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    throw InvalidParameter("unknown boundary '" + std::string(s) + "' (expected open|periodic)");
}

std::string to_string(Boundary b) {
    return b == Boundary::Open ? "open" : "periodic";
}

void SystemParams::validate() const {
    if (N < 1) throw InvalidParameter("SystemParams: N must be >= 1");
    if (n_max < 1) throw InvalidParameter("SystemParams: n_max must be >= 1");
    if (g < 0.0 || A < 0.0 || kappa < 0.0 || gamma < 0.0) {
        throw InvalidParameter("SystemParams: g, A, kappa, gamma must be >= 0");
    }
    if (!std::isfinite(omega_d) || !std::isfinite(omega_0) || !std::isfinite(g) ||
        !std::isfinite(A) || !std::isfinite(kappa) || !std::isfinite(gamma)) {
        throw InvalidParameter("SystemParams: parameters must be finite");
    }
    if (!rotating_frame() && (omega_d <= 0.0 || omega_0 <= 0.0)) {
        throw InvalidParameter(
            "SystemParams: absolute frequencies must be > 0 (use omega_d = omega_0 = 0 for "
            "the rotating frame)");
    }
}

bool SystemParams::resonant() const {
    const double scale = std::max({1.0, std::abs(omega_d), std::abs(omega_0)});
    return std::abs(omega_d - omega_0) <= 1e-12 * scale;
}

std::vector<Index> SystemParams::site_dims() const {
    return std::vector<Index>(static_cast<std::size_t>(N), LocalSpace{n_max}.dim());
}

double dispersion(int k, const SystemParams& params) {
    params.validate();
    if (params.boundary != Boundary::Periodic) {
        throw UnsupportedConfiguration("dispersion: Bloch modes require a periodic boundary");
    }
    if (k < 0 || k >= params.N) {
        throw InvalidParameter("dispersion: mode index out of range");
    }
    return params.omega_d +
           2.0 * params.A * std::cos(2.0 * std::numbers::pi * k / params.N);
}

std::vector<DispersionPoint> dispersion_table(const SystemParams& params) {
    std::vector<DispersionPoint> out;
    out.reserve(static_cast<std::size_t>(params.N));
    for (int k = 0; k < params.N; ++k) out.push_back({k, dispersion(k, params)});
    return out;
}

Operator bloch_transform(int N) {
    if (N < 1) throw InvalidParameter("bloch_transform: N must be >= 1");
    Matrix u(N, N);
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    for (int k = 0; k < N; ++k) {
        for (int m = 0; m < N; ++m) {
            // Reduce km mod N first so the phase stays accurate for large N.
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((k * m) % N) / N;
            u(k, m) = std::polar(norm, phase);
        }
    }
    return Operator(std::move(u));
}

namespace {

std::vector<std::pair<int, int>> bonds(const SystemParams& p) {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k + 1 < p.N; ++k) out.emplace_back(k, k + 1);
    if (p.boundary == Boundary::Periodic) out.emplace_back(p.N - 1, 0);
    return out;
}

}  // namespace

Matrix one_photon_hopping_matrix(const SystemParams& params) {
    params.validate();
    Matrix h = Matrix::Identity(params.N, params.N) * params.omega_d;
    for (auto [i, j] : bonds(params)) {
        h(i, j) += params.A;
        h(j, i) += params.A;
    }
    return h;
}

Index lattice_dimension(const SystemParams& params, Index cap) {
    params.validate();
    const Index site = LocalSpace{params.n_max}.dim();
    Index total = 1;
    for (int k = 0; k < params.N; ++k) {
        if (total > cap / site) {
            throw ResourceLimit("lattice dimension exceeds cap of " + std::to_string(cap));
        }
        total *= site;
    }
    if (total > cap) {
        throw ResourceLimit("lattice dimension " + std::to_string(total) + " exceeds cap of " +
                            std::to_string(cap));
    }
    return total;
}

SiteOperators site_operators(int n_max) {
    const Ladder ladder = fock_ladder(n_max);
    const Matrix id_photon = Matrix::Identity(n_max + 1, n_max + 1);
    Matrix lower_atom = Matrix::Zero(2, 2);
    lower_atom(0, 1) = 1.0;
    Matrix excited_atom = Matrix::Zero(2, 2);
    excited_atom(1, 1) = 1.0;

    SiteOperators ops;
    ops.a = Operator(kron(Matrix::Identity(2, 2), ladder.annihilator.matrix()));
    ops.a_dag = ops.a.adjoint();
    ops.sigma_minus = Operator(kron(lower_atom, id_photon));
    ops.sigma_plus = ops.sigma_minus.adjoint();
    ops.photon_number = ops.a_dag * ops.a;
    ops.excited = Operator(kron(excited_atom, id_photon));
    return ops;
}

Operator build_jch_hamiltonian(const SystemParams& params, Index cap) {
    const Index dim = lattice_dimension(params, cap);
    const auto dims = params.site_dims();
    const SiteOperators s = site_operators(params.n_max);

    const Operator h_site = params.omega_d * s.photon_number + params.omega_0 * s.excited +
                            params.g * (s.a * s.sigma_plus + s.a_dag * s.sigma_minus);

    Operator h(Matrix::Zero(dim, dim), dims);
    for (int k = 0; k < params.N; ++k) h += embed(h_site, static_cast<std::size_t>(k), dims);
    for (auto [i, j] : bonds(params)) {
        if (i == j) {
            // N = 1 periodic: the ring bond closes on itself.
            h += 2.0 * params.A * embed(s.photon_number, static_cast<std::size_t>(i), dims);
            continue;
        }
        const auto si = static_cast<std::size_t>(i);
        const auto sj = static_cast<std::size_t>(j);
        h += params.A * (embed_product({{si, s.a_dag}, {sj, s.a}}, dims) +
                         embed_product({{si, s.a}, {sj, s.a_dag}}, dims));
    }
    return h;
}

std::vector<int> basis_excitations(const SystemParams& params, Index cap) {
    const Index dim = lattice_dimension(params, cap);
    const Index site = LocalSpace{params.n_max}.dim();
    const Index nphot = params.n_max + 1;
    std::vector<int> out(static_cast<std::size_t>(dim), 0);
    for (Index idx = 0; idx < dim; ++idx) {
        Index rest = idx;
        int exc = 0;
        for (int k = 0; k < params.N; ++k) {
            const Index local = rest % site;
            rest /= site;
            exc += static_cast<int>(local / nphot + local % nphot);
        }
        out[static_cast<std::size_t>(idx)] = exc;
    }
    return out;
}

Operator excitation_number_operator(const SystemParams& params, Index cap) {
    const auto exc = basis_excitations(params, cap);
    const auto dim = static_cast<Index>(exc.size());
    Matrix m = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) m(i, i) = exc[static_cast<std::size_t>(i)];
    return Operator(std::move(m), params.site_dims());
}

std::vector<std::pair<double, Operator>> collapse_operators(const SystemParams& params,
                                                            Index cap) {
    lattice_dimension(params, cap);
    const auto dims = params.site_dims();
    const SiteOperators s = site_operators(params.n_max);
    std::vector<std::pair<double, Operator>> out;
    for (int k = 0; k < params.N; ++k) {
        const auto site = static_cast<std::size_t>(k);
        if (params.kappa > 0.0) out.emplace_back(params.kappa, embed(s.a, site, dims));
        if (params.gamma > 0.0) out.emplace_back(params.gamma, embed(s.sigma_minus, site, dims));
    }
    return out;
}

std::vector<SpectrumLevel> jc_single_site_spectrum(const SystemParams& params) {
    if (params.N != 1) {
        throw InvalidParameter("jc_single_site_spectrum: requires N = 1");
    }
    const Operator h = build_jch_hamiltonian(params);
    const auto exc = basis_excitations(params);
    const int max_exc = *std::max_element(exc.begin(), exc.end());

    std::vector<SpectrumLevel> levels;
    for (int p = 0; p <= max_exc; ++p) {
        std::vector<Index> idx;
        for (std::size_t i = 0; i < exc.size(); ++i) {
            if (exc[i] == p) idx.push_back(static_cast<Index>(i));
        }
        const auto n = static_cast<Index>(idx.size());
        if (n == 0) continue;
        Matrix block(n, n);
        for (Index r = 0; r < n; ++r) {
            for (Index c = 0; c < n; ++c) block(r, c) = h.matrix()(idx[r], idx[c]);
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
        for (Index r = 0; r < n; ++r) levels.push_back({solver.eigenvalues()(r), p});
    }
    std::sort(levels.begin(), levels.end(), [](const SpectrumLevel& a, const SpectrumLevel& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.excitations < b.excitations;
    });
    return levels;
}

double lower_polariton_energy(const SystemParams& params) {
    return params.omega_d - params.g;
}

Operator polariton_frame_hamiltonian(const SystemParams& params, Index cap) {
    return build_jch_hamiltonian(params, cap) -
           lower_polariton_energy(params) * excitation_number_operator(params, cap);
}

ExcitationSubspace::ExcitationSubspace(const SystemParams& params, int max_excitations,
                                       Index cap)
    : max_exc_(max_excitations) {
    if (max_excitations < 0) {
        throw InvalidParameter("ExcitationSubspace: max_excitations must be >= 0");
    }
    const auto exc = basis_excitations(params, cap);
    full_dim_ = static_cast<Index>(exc.size());
    for (int p = 0; p <= max_excitations; ++p) {
        offsets_.push_back(static_cast<Index>(states_.size()));
        for (std::size_t i = 0; i < exc.size(); ++i) {
            if (exc[i] == p) states_.push_back(static_cast<Index>(i));
        }
    }
    offsets_.push_back(static_cast<Index>(states_.size()));
}

Index ExcitationSubspace::sector_size(int p) const {
    if (p < 0 || p > max_exc_) return 0;
    return offsets_[static_cast<std::size_t>(p) + 1] - offsets_[static_cast<std::size_t>(p)];
}

Matrix ExcitationSubspace::restrict(const Matrix& full) const {
    if (full.rows() != full_dim_ || full.cols() != full_dim_) {
        throw InvalidParameter("ExcitationSubspace::restrict: dimension mismatch");
    }
    const Index d = dim();
    Matrix out(d, d);
    for (Index c = 0; c < d; ++c) {
        for (Index r = 0; r < d; ++r) out(r, c) = full(state(r), state(c));
    }
    return out;
}

Vector ExcitationSubspace::restrict(const Vector& full) const {
    if (full.size() != full_dim_) {
        throw InvalidParameter("ExcitationSubspace::restrict: dimension mismatch");
    }
    Vector out(dim());
    for (Index i = 0; i < dim(); ++i) out(i) = full(state(i));
    return out;
}

Vector ExcitationSubspace::lift(const Vector& sub) const {
    if (sub.size() != dim()) {
        throw InvalidParameter("ExcitationSubspace::lift: dimension mismatch");
    }
    Vector out = Vector::Zero(full_dim_);
    for (Index i = 0; i < dim(); ++i) out(state(i)) = sub(i);
    return out;
}

}  // namespace cavityqc
