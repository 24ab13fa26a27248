// compiler.cpp — Lowering logical circuits to the native mediated-gate schedule.

#include "cavityqc/compiler.hpp"

#include "cavityqc/errors.hpp"
#include "cavityqc/gate_protocol.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace cavityqc {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kBranchFloor = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_unitary_2x2(const Matrix& u, const char* what) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw InvalidParameter(std::string(what) + ": expected a 2x2 matrix");
    }
    if (!is_unitary(u, kUnitaryTol)) {
        throw InvalidParameter(std::string(what) + ": matrix is not unitary");
    }
}

// Qubit q of an n-qubit register, q = 0 most significant.
Index bit_mask(int q, int n) {
    return Index{1} << (n - 1 - q);
}

void apply_one(Vector& psi, int n, int q, const Matrix& u) {
    const Index mask = bit_mask(q, n);
    for (Index i = 0; i < psi.size(); ++i) {
        if (i & mask) continue;
        const cplx a0 = psi(i);
        const cplx a1 = psi(i | mask);
        psi(i) = u(0, 0) * a0 + u(0, 1) * a1;
        psi(i | mask) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

// 8×8 gate on contiguous qubits (q, q+1, q+2), q most significant.
void apply_three(Vector& psi, int n, int q, const Matrix& u) {
    const Index m0 = bit_mask(q, n);
    const Index m1 = bit_mask(q + 1, n);
    const Index m2 = bit_mask(q + 2, n);
    const Index all = m0 | m1 | m2;
    std::array<Index, 8> idx{};
    std::array<cplx, 8> in{};
    for (Index base = 0; base < psi.size(); ++base) {
        if (base & all) continue;
        for (int k = 0; k < 8; ++k) {
            idx[static_cast<std::size_t>(k)] =
                base | ((k & 4) ? m0 : 0) | ((k & 2) ? m1 : 0) | ((k & 1) ? m2 : 0);
            in[static_cast<std::size_t>(k)] = psi(idx[static_cast<std::size_t>(k)]);
        }
        for (int r = 0; r < 8; ++r) {
            cplx acc{};
            for (int c = 0; c < 8; ++c) acc += u(r, c) * in[static_cast<std::size_t>(c)];
            psi(idx[static_cast<std::size_t>(r)]) = acc;
        }
    }
}

void apply_cz(Vector& psi, int n, int a, int b) {
    const Index both = bit_mask(a, n) | bit_mask(b, n);
    for (Index i = 0; i < psi.size(); ++i) {
        if ((i & both) == both) psi(i) = -psi(i);
    }
}

void apply_controlled(Vector& psi, int n, int control, int target, const Matrix& u) {
    const Index mc = bit_mask(control, n);
    const Index mt = bit_mask(target, n);
    for (Index i = 0; i < psi.size(); ++i) {
        if (!(i & mc) || (i & mt)) continue;
        const cplx a0 = psi(i);
        const cplx a1 = psi(i | mt);
        psi(i) = u(0, 0) * a0 + u(0, 1) * a1;
        psi(i | mt) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

Matrix su2_rotation(const Eigen::Vector3d& axis, double angle) {
    const Matrix x = pauli(PauliLabel::X).matrix();
    const Matrix y = pauli(PauliLabel::Y).matrix();
    const Matrix z = pauli(PauliLabel::Z).matrix();
    const Matrix n_sigma = axis(0) * x + axis(1) * y + axis(2) * z;
    return std::cos(angle / 2) * Matrix::Identity(2, 2) -
           cplx{0.0, std::sin(angle / 2)} * n_sigma;
}

}  // namespace

void Circuit::validate() const {
    if (num_qubits < 0) throw InvalidParameter("Circuit: negative qubit count");
    auto check = [&](int q) {
        if (q < 0 || q >= num_qubits) throw InvalidParameter("Circuit: qubit index out of range");
    };
    for (const auto& gate : gates) {
        std::visit(overloaded{
                       [&](const SingleQubitGate& g) {
                           check(g.target);
                           require_unitary_2x2(g.u, "Circuit SQ");
                       },
                       [&](const CZGate& g) {
                           check(g.a);
                           check(g.b);
                           if (g.a == g.b) throw InvalidParameter("Circuit: CZ on a single qubit");
                       },
                       [&](const ControlledUGate& g) {
                           check(g.control);
                           check(g.target);
                           if (g.control == g.target) {
                               throw InvalidParameter("Circuit: CU control equals target");
                           }
                           require_unitary_2x2(g.u, "Circuit CU");
                       },
                   },
                   gate);
    }
}

std::string to_string(MediatorInit init) {
    return init == MediatorInit::Vacuum ? "vacuum" : "plus";
}

MediatorInit parse_mediator_init(std::string_view s) {
    if (s == "vacuum") return MediatorInit::Vacuum;
    if (s == "plus") return MediatorInit::Plus;
    throw InvalidParameter("unknown mediator init '" + std::string(s) + "'");
}

void NativeSchedule::validate() const {
    const int sites = layout.physical_sites();
    auto in_range = [&](int s) { return s >= 0 && s < sites; };
    std::optional<XYEvolve> last_xy;
    int measured = 0;
    for (const auto& op : ops) {
        std::visit(overloaded{
                       [&](const XYEvolve& o) {
                           const auto [a, m, b] = o.sites;
                           if (!in_range(a) || !in_range(b) || a % 2 != 0 || m != a + 1 ||
                               b != a + 2) {
                               throw InvalidParameter("schedule: XY triple must be (2s, 2s+1, 2s+2)");
                           }
                           last_xy = o;
                       },
                       [&](const MeasureMediator& o) {
                           if (!last_xy || last_xy->sites[1] != o.site) {
                               throw InvalidParameter("schedule: MEAS must follow the XY on its mediator");
                           }
                           if (o.id != measured) {
                               throw InvalidParameter("schedule: measurement ids must be sequential");
                           }
                           ++measured;
                           last_xy.reset();
                       },
                       [&](const LocalRotation& o) {
                           if (!in_range(o.site)) throw InvalidParameter("schedule: ROT site out of range");
                           require_unitary_2x2(o.u, "schedule ROT");
                           last_xy.reset();
                       },
                       [&](const ConditionalZ& o) {
                           if (!in_range(o.site)) {
                               throw InvalidParameter("schedule: CONDZ site out of range");
                           }
                           if (o.id < 0 || o.id >= measured) {
                               throw InvalidParameter("schedule: CONDZ refers to a later measurement");
                           }
                           last_xy.reset();
                       },
                   },
                   op);
    }
    if (measured != num_measurements) {
        throw InvalidParameter("schedule: measurement count mismatch");
    }
    auto check_perm = [&](const std::vector<int>& perm) {
        std::set<int> seen;
        for (int s : perm) {
            if (!in_range(s) || s % 2 != 0 || !seen.insert(s).second) {
                throw InvalidParameter("schedule: permutation must map to distinct even sites");
            }
        }
    };
    check_perm(initial_permutation);
    check_perm(final_permutation);
    if (initial_permutation.size() != final_permutation.size()) {
        throw InvalidParameter("schedule: permutation sizes differ");
    }
}

int NativeSchedule::native_gate_count() const {
    return static_cast<int>(
        std::count_if(ops.begin(), ops.end(), [](const NativeOp& op) {
            return std::holds_alternative<XYEvolve>(op);
        }));
}

Matrix rotation_y(double angle) {
    return su2_rotation(Eigen::Vector3d(0, 1, 0), angle);
}

ControlledUDecomposition decompose_controlled_u(const Matrix& u) {
    require_unitary_2x2(u, "decompose_controlled_u");
    const double beta = 0.5 * std::arg(u.determinant());
    const Matrix v = u * std::exp(cplx{0.0, -beta});

    // V = cos(φ/2) I − i sin(φ/2) m·σ
    const double c = 0.5 * v.trace().real();
    Eigen::Vector3d w;
    w(0) = (cplx{0.0, 0.5} * (v * pauli(PauliLabel::X).matrix()).trace()).real();
    w(1) = (cplx{0.0, 0.5} * (v * pauli(PauliLabel::Y).matrix()).trace()).real();
    w(2) = (cplx{0.0, 0.5} * (v * pauli(PauliLabel::Z).matrix()).trace()).real();
    const double s = w.norm();

    ControlledUDecomposition d;
    if (s < 1e-12) {
        d.a = Matrix::Identity(2, 2);
        d.b = Matrix::Identity(2, 2);
        d.phase = std::arg(u(0, 0));
        return d;
    }
    const double phi = 2.0 * std::atan2(s, c);
    const Eigen::Vector3d m = w / s;
    const Eigen::Vector3d target(0, -1, 0);

    d.b = rotation_y(phi / 2);
    const Eigen::Vector3d cross = m.cross(target);
    const double cos_t = std::clamp(m.dot(target), -1.0, 1.0);
    if (cross.norm() < 1e-12) {
        d.a = cos_t > 0 ? Matrix(Matrix::Identity(2, 2))
                        : su2_rotation(Eigen::Vector3d(1, 0, 0), std::numbers::pi);
    } else {
        d.a = su2_rotation(cross.normalized(), std::acos(cos_t));
    }
    d.phase = beta;
    return d;
}

Matrix random_unitary_2x2(SeededRng& rng) {
    Matrix z(2, 2);
    for (Index r = 0; r < 2; ++r) {
        for (Index c = 0; c < 2; ++c) z(r, c) = rng.complex_normal();
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(2, 2);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < 2; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

Vector apply_circuit(const Circuit& circuit, const Vector& input) {
    circuit.validate();
    const int n = circuit.num_qubits;
    if (input.size() != (Index{1} << n)) {
        throw InvalidParameter("apply_circuit: state dimension mismatch");
    }
    Vector psi = input;
    for (const auto& gate : circuit.gates) {
        std::visit(overloaded{
                       [&](const SingleQubitGate& g) { apply_one(psi, n, g.target, g.u); },
                       [&](const CZGate& g) { apply_cz(psi, n, g.a, g.b); },
                       [&](const ControlledUGate& g) {
                           apply_controlled(psi, n, g.control, g.target, g.u);
                       },
                   },
                   gate);
    }
    return psi;
}

Matrix circuit_unitary(const Circuit& circuit) {
    const Index dim = Index{1} << circuit.num_qubits;
    Matrix u(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        Vector e = Vector::Zero(dim);
        e(c) = 1.0;
        u.col(c) = apply_circuit(circuit, e);
    }
    return u;
}

namespace {

class Lowering {
public:
    Lowering(const ChainLayout& layout, int num_qubits, const std::vector<int>& initial)
        : owner_(static_cast<std::size_t>(layout.num_slots), -1),
          pos_(static_cast<std::size_t>(num_qubits), 0) {
        schedule_.layout = layout;
        for (int q = 0; q < num_qubits; ++q) {
            const int slot = initial.empty() ? q : initial[static_cast<std::size_t>(q)] / 2;
            if (slot < 0 || slot >= layout.num_slots ||
                (!initial.empty() && initial[static_cast<std::size_t>(q)] % 2 != 0) ||
                owner_[static_cast<std::size_t>(slot)] != -1) {
                throw InvalidParameter("compile: initial permutation must map to distinct even sites");
            }
            owner_[static_cast<std::size_t>(slot)] = q;
            pos_[static_cast<std::size_t>(q)] = slot;
        }
        schedule_.initial_permutation = permutation();
    }

    void single(int q, const Matrix& u) {
        schedule_.ops.push_back(LocalRotation{ChainLayout::slot_site(slot(q)), u});
    }

    void cz(int a, int b) {
        const int m = slot(a) < slot(b) ? a : b;
        const int o = m == a ? b : a;
        const int sa = slot(m);
        const int sb = slot(o);
        if (sb - sa == 1) {
            native(sa);
            return;
        }
        const Matrix h = gates::hadamard();
        const Matrix s = gates::phase_s();
        // Shuttle m next to o, cross it twice (the second crossing
        // conjugated by H on o) and shuttle back. The CZs picked up from the
        // bystanders cancel in pairs; the two crossings combine with the
        // rotations on o and m into a single CZ.
        single(o, s * h);
        for (int k = sa; k <= sb - 2; ++k) native(k);
        native(sb - 1);
        single(o, h);
        native(sb - 1);
        single(o, h);
        for (int k = sb - 2; k >= sa; --k) native(k);
        single(o, h * s.adjoint());
        single(m, s);
    }

    void controlled_u(int c, int t, const Matrix& u) {
        const ControlledUDecomposition d = decompose_controlled_u(u);
        single(t, d.a);
        cz(c, t);
        single(t, d.b);
        cz(c, t);
        single(t, d.a.adjoint() * d.b.adjoint());
        Matrix phase = Matrix::Identity(2, 2);
        phase(1, 1) = std::exp(cplx{0.0, d.phase});
        single(c, phase);
    }

    NativeSchedule finish() {
        schedule_.final_permutation = permutation();
        return std::move(schedule_);
    }

private:
    int slot(int q) const { return pos_[static_cast<std::size_t>(q)]; }

    std::vector<int> permutation() const {
        std::vector<int> perm;
        for (int p : pos_) perm.push_back(ChainLayout::slot_site(p));
        return perm;
    }

    void native(int s) {
        const int id = schedule_.num_measurements++;
        const int left = ChainLayout::slot_site(s);
        schedule_.ops.push_back(XYEvolve{{left, left + 1, left + 2}});
        schedule_.ops.push_back(MeasureMediator{left + 1, id});
        schedule_.ops.push_back(ConditionalZ{left, id});
        schedule_.ops.push_back(ConditionalZ{left + 2, id});
        auto& l = owner_[static_cast<std::size_t>(s)];
        auto& r = owner_[static_cast<std::size_t>(s + 1)];
        std::swap(l, r);
        if (l >= 0) pos_[static_cast<std::size_t>(l)] = s;
        if (r >= 0) pos_[static_cast<std::size_t>(r)] = s + 1;
    }

    NativeSchedule schedule_;
    std::vector<int> owner_;
    std::vector<int> pos_;
};

}  // namespace

NativeSchedule compile(const Circuit& circuit, const ChainLayout& layout,
                       const std::vector<int>& initial_permutation) {
    circuit.validate();
    if (layout.num_slots < circuit.num_qubits) {
        throw InvalidParameter("compile: layout has fewer computational sites than the circuit has qubits");
    }
    if (!initial_permutation.empty() &&
        static_cast<int>(initial_permutation.size()) != circuit.num_qubits) {
        throw InvalidParameter("compile: initial permutation size mismatch");
    }
    Lowering low(layout, circuit.num_qubits, initial_permutation);
    for (const auto& gate : circuit.gates) {
        std::visit(overloaded{
                       [&](const SingleQubitGate& g) { low.single(g.target, g.u); },
                       [&](const CZGate& g) { low.cz(g.a, g.b); },
                       [&](const ControlledUGate& g) { low.controlled_u(g.control, g.target, g.u); },
                   },
                   gate);
    }
    return low.finish();
}

Vector place_logical_state(const NativeSchedule& schedule, const Vector& logical) {
    const int n = static_cast<int>(schedule.initial_permutation.size());
    const int sites = schedule.layout.physical_sites();
    if (logical.size() != (Index{1} << n)) {
        throw InvalidParameter("place_logical_state: logical dimension mismatch");
    }
    // Mediator amplitudes as a product over odd sites.
    const double amp = schedule.layout.mediator_init == MediatorInit::Plus ? std::numbers::sqrt2 / 2 : 1.0;
    Vector psi = Vector::Zero(Index{1} << sites);
    const int mediators = sites / 2;
    for (Index i = 0; i < logical.size(); ++i) {
        if (logical(i) == cplx{}) continue;
        Index base = 0;
        for (int q = 0; q < n; ++q) {
            if (i & bit_mask(q, n)) base |= bit_mask(schedule.initial_permutation[static_cast<std::size_t>(q)], sites);
        }
        if (schedule.layout.mediator_init == MediatorInit::Vacuum) {
            psi(base) += logical(i);
            continue;
        }
        for (Index pattern = 0; pattern < (Index{1} << mediators); ++pattern) {
            Index idx = base;
            for (int k = 0; k < mediators; ++k) {
                if (pattern & (Index{1} << k)) idx |= bit_mask(2 * k + 1, sites);
            }
            psi(idx) += logical(i) * std::pow(amp, mediators);
        }
    }
    return psi;
}

Vector extract_logical_state(const Vector& physical, const ChainLayout& layout,
                             const std::vector<int>& permutation) {
    const int sites = layout.physical_sites();
    const int n = static_cast<int>(permutation.size());
    if (physical.size() != (Index{1} << sites)) {
        throw InvalidParameter("extract_logical_state: physical dimension mismatch");
    }
    Index anchor = 0;
    physical.cwiseAbs().maxCoeff(&anchor);
    Index logical_mask = 0;
    for (int s : permutation) logical_mask |= bit_mask(s, sites);
    const Index rest = anchor & ~logical_mask;
    Vector out(Index{1} << n);
    for (Index i = 0; i < out.size(); ++i) {
        Index idx = rest;
        for (int q = 0; q < n; ++q) {
            if (i & bit_mask(q, n)) idx |= bit_mask(permutation[static_cast<std::size_t>(q)], sites);
        }
        out(i) = physical(idx);
    }
    const double norm = out.norm();
    if (norm == 0.0) throw NumericalFailure("extract_logical_state: empty computational block");
    return out / norm;
}

std::vector<BranchResult> simulate_physical(const NativeSchedule& schedule, const Vector& physical,
                                            const OutcomePolicy& policy) {
    schedule.validate();
    const int sites = schedule.layout.physical_sites();
    if (physical.size() != (Index{1} << sites)) {
        throw InvalidParameter("simulate_schedule: physical dimension mismatch");
    }
    if (policy.kind == OutcomePolicy::Kind::Forced &&
        static_cast<int>(policy.forced.size()) != schedule.num_measurements) {
        throw InvalidParameter("simulate_schedule: forced sequence length mismatch");
    }
    const Matrix native = mediated_gate_unitary(1.0);
    const Matrix z = pauli(PauliLabel::Z).matrix();
    SeededRng rng(policy.seed);

    std::vector<BranchResult> branches(1);
    branches[0].physical_state = physical / physical.norm();
    branches[0].frame.permutation = schedule.initial_permutation;

    for (const auto& op : schedule.ops) {
        if (const auto* meas = std::get_if<MeasureMediator>(&op)) {
            const Index mask = bit_mask(meas->site, sites);
            std::vector<BranchResult> next;
            for (auto& br : branches) {
                double w[2] = {0.0, 0.0};
                for (Index i = 0; i < br.physical_state.size(); ++i) {
                    w[(i & mask) ? 1 : 0] += std::norm(br.physical_state(i));
                }
                std::vector<int> picks;
                switch (policy.kind) {
                case OutcomePolicy::Kind::Sample:
                    picks.push_back(rng.uniform() < w[0] / (w[0] + w[1]) ? 0 : 1);
                    break;
                case OutcomePolicy::Kind::Forced: {
                    const int b = policy.forced[static_cast<std::size_t>(meas->id)];
                    if (b != 0 && b != 1) throw InvalidParameter("simulate_schedule: forced bits must be 0 or 1");
                    if (w[b] < kBranchFloor) {
                        throw DegenerateBranch("simulate_schedule: forced branch has zero weight");
                    }
                    picks.push_back(b);
                    break;
                }
                case OutcomePolicy::Kind::Exhaustive:
                    for (int b = 0; b < 2; ++b) {
                        if (w[b] >= kBranchFloor) picks.push_back(b);
                    }
                    break;
                }
                for (int b : picks) {
                    BranchResult child = br;
                    for (Index i = 0; i < child.physical_state.size(); ++i) {
                        if (((i & mask) ? 1 : 0) != b) child.physical_state(i) = 0.0;
                    }
                    child.physical_state /= std::sqrt(w[b]);
                    child.probability *= w[b];
                    child.outcomes.push_back(b);
                    child.frame.outcome_log.emplace_back(meas->id, b);
                    next.push_back(std::move(child));
                }
            }
            branches = std::move(next);
            continue;
        }
        for (auto& br : branches) {
            std::visit(overloaded{
                           [&](const XYEvolve& o) { apply_three(br.physical_state, sites, o.sites[0], native); },
                           [&](const LocalRotation& o) { apply_one(br.physical_state, sites, o.site, o.u); },
                           [&](const ConditionalZ& o) {
                               if (br.outcomes[static_cast<std::size_t>(o.id)] == 0) {
                                   apply_one(br.physical_state, sites, o.site, z);
                               }
                           },
                           [&](const MeasureMediator&) {},
                       },
                       op);
        }
    }
    for (auto& br : branches) {
        br.frame.permutation = schedule.final_permutation;
        br.logical_state = extract_logical_state(br.physical_state, schedule.layout,
                                                 schedule.final_permutation);
    }
    return branches;
}

std::vector<BranchResult> simulate_schedule(const NativeSchedule& schedule, const Vector& logical,
                                            const OutcomePolicy& policy) {
    return simulate_physical(schedule, place_logical_state(schedule, logical), policy);
}

Circuit random_circuit(SeededRng& rng, const RandomCircuitOptions& options) {
    if (options.num_qubits < 2 || options.depth < 1) {
        throw InvalidParameter("random_circuit: need at least 2 qubits and depth 1");
    }
    const int n = options.num_qubits;
    Circuit c;
    c.num_qubits = n;
    const int cu_layer =
        options.include_controlled_u ? static_cast<int>(rng.below(static_cast<std::uint64_t>(options.depth))) : -1;
    auto pair = [&]() {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (b >= a) ++b;
        return std::pair{a, b};
    };
    for (int layer = 0; layer < options.depth; ++layer) {
        if (layer == cu_layer) {
            const auto [ctl, tgt] = pair();
            c.gates.push_back(ControlledUGate{ctl, tgt, random_unitary_2x2(rng)});
            continue;
        }
        if (rng.uniform() < 0.5) {
            const auto [a, b] = pair();
            c.gates.push_back(CZGate{a, b});
            for (int q = 0; q < n; ++q) {
                if (q != a && q != b) c.gates.push_back(SingleQubitGate{q, random_unitary_2x2(rng)});
            }
        } else {
            for (int q = 0; q < n; ++q) c.gates.push_back(SingleQubitGate{q, random_unitary_2x2(rng)});
        }
    }
    return c;
}

}  // namespace cavityqc
