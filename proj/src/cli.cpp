// cli.cpp — Command-line front end.

#include "cavityqc/cli.hpp"

#include "cavityqc/acceptance.hpp"
#include "cavityqc/circuit_io.hpp"
#include "cavityqc/compiler.hpp"
#include "cavityqc/errors.hpp"
#include "cavityqc/gate_protocol.hpp"
#include "cavityqc/jch_model.hpp"
#include "cavityqc/polariton.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace cavityqc::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kEquivalenceTol = 1e-8;

struct Flags {
    std::string subcommand;
    std::string config_path;
    std::uint64_t seed{1};
    std::string out_path;
    std::string format;  // empty: subcommand default
    std::string force_outcome;
    long long cap{kDefaultDimensionCap};
    std::string circuit_path;
};

struct Preset {
    const char* name;
    double g_over_A;
    double g_over_loss;         // g / max(kappa, gamma)
    std::optional<double> window_seconds;  // physical value of 10/A, when stated
};

// Ratios follow the regime quoted for each technology; the defect-array
// profile sits one order of magnitude short on losses.
const Preset kPresets[] = {
    {"toroidal", 100.0, 1e3, 10e-9},
    {"PBG", 100.0, 1e2, std::nullopt},
    {"stripline", 100.0, 1e3, 100e-9},
};

const Preset& find_preset(const std::string& name) {
    for (const auto& p : kPresets) {
        if (name == p.name) return p;
    }
    throw InvalidParameter("unknown preset '" + name + "' (toroidal, PBG, stripline)");
}

struct RunConfig {
    int N{3};
    int n_max{2};
    Boundary boundary{Boundary::Open};
    double g_over_A{100.0};
    double kappa_over_A{0.0};
    double gamma_over_A{0.0};
    double omega_d_over_A{0.0};
    double omega_0_over_A{0.0};
    std::optional<SystemParams> absolute;
    std::vector<double> g_over_A_grid{10.0, 30.0, 100.0, 300.0};
    std::vector<double> kappa_over_A_grid{0.0, 0.05, 0.1};
    std::vector<double> gamma_over_A_grid{0.0, 0.05, 0.1};
    ojson input = "uniform";
    int reduce_input{1};
    std::optional<std::string> circuit;
    MediatorInit mediator_init{MediatorInit::Vacuum};
    double lindblad_step_g{0.5};
    bool force_lindblad{false};

    SystemParams params() const {
        if (absolute) return *absolute;
        SystemParams p;
        p.N = N;
        p.n_max = n_max;
        p.boundary = boundary;
        p.A = 1.0;
        p.g = g_over_A;
        p.kappa = kappa_over_A;
        p.gamma = gamma_over_A;
        p.omega_d = omega_d_over_A;
        p.omega_0 = omega_0_over_A;
        return p;
    }
};

RunConfig defaults_for(const std::string& sub) {
    RunConfig c;
    if (sub == "dispersion") {
        // ω_d = 1, A = 0.01 in units of A
        c.N = 8;
        c.n_max = 1;
        c.boundary = Boundary::Periodic;
        c.g_over_A = 0.0;
        c.omega_d_over_A = c.omega_0_over_A = 100.0;
    } else if (sub == "spectrum") {
        // ω_d = ω_0 = 1, g = 0.1 up to the unit
        c.N = 1;
        c.g_over_A = 1.0;
        c.omega_d_over_A = c.omega_0_over_A = 10.0;
    }
    return c;
}

std::vector<double> number_list(const ojson& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw InvalidParameter("config: '" + key + "' must be a non-empty array");
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number()) throw InvalidParameter("config: '" + key + "' must hold numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

double number(const ojson& j, const std::string& key) {
    if (!j.is_number()) throw InvalidParameter("config: '" + key + "' must be a number");
    return j.get<double>();
}

int integer(const ojson& j, const std::string& key) {
    if (!j.is_number_integer()) throw InvalidParameter("config: '" + key + "' must be an integer");
    return j.get<int>();
}

RunConfig load_config(const Flags& flags) {
    RunConfig c = defaults_for(flags.subcommand);
    if (flags.config_path.empty()) return c;
    std::ifstream in(flags.config_path);
    if (!in) throw InvalidParameter("cannot open config '" + flags.config_path + "'");
    ojson j;
    try {
        j = ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw InvalidParameter("config: top level must be an object");

    static const std::set<std::string> physical = {"g_over_A", "kappa_over_A", "gamma_over_A",
                                                   "omega_d_over_A", "omega_0_over_A", "preset"};
    static const std::set<std::string> known = {
        "preset", "N", "n_max", "boundary", "g_over_A", "kappa_over_A", "gamma_over_A",
        "omega_d_over_A", "omega_0_over_A", "absolute", "g_over_A_grid", "kappa_over_A_grid",
        "gamma_over_A_grid", "input", "reduce_input", "circuit", "mediator_init",
        "lindblad_step_g", "force_lindblad"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw InvalidParameter("config: unknown key '" + key + "'");
        if (j.contains("absolute") && physical.count(key)) {
            throw InvalidParameter("config: '" + key + "' cannot be combined with 'absolute'");
        }
    }
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw InvalidParameter("config: 'preset' must be a string");
        const Preset& p = find_preset(j["preset"].get<std::string>());
        c.g_over_A = p.g_over_A;
        c.kappa_over_A = c.gamma_over_A = p.g_over_A / p.g_over_loss;
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "preset") continue;
        if (key == "N") c.N = integer(v, key);
        else if (key == "n_max") c.n_max = integer(v, key);
        else if (key == "boundary") {
            if (!v.is_string()) throw InvalidParameter("config: 'boundary' must be a string");
            c.boundary = parse_boundary(v.get<std::string>());
        } else if (key == "g_over_A") c.g_over_A = number(v, key);
        else if (key == "kappa_over_A") c.kappa_over_A = number(v, key);
        else if (key == "gamma_over_A") c.gamma_over_A = number(v, key);
        else if (key == "omega_d_over_A") c.omega_d_over_A = number(v, key);
        else if (key == "omega_0_over_A") c.omega_0_over_A = number(v, key);
        else if (key == "g_over_A_grid") c.g_over_A_grid = number_list(v, key);
        else if (key == "kappa_over_A_grid") c.kappa_over_A_grid = number_list(v, key);
        else if (key == "gamma_over_A_grid") c.gamma_over_A_grid = number_list(v, key);
        else if (key == "input") c.input = v;
        else if (key == "reduce_input") c.reduce_input = integer(v, key);
        else if (key == "circuit") {
            if (!v.is_string()) throw InvalidParameter("config: 'circuit' must be a path string");
            c.circuit = v.get<std::string>();
        } else if (key == "mediator_init") {
            if (!v.is_string()) throw InvalidParameter("config: 'mediator_init' must be a string");
            c.mediator_init = parse_mediator_init(v.get<std::string>());
        } else if (key == "lindblad_step_g") c.lindblad_step_g = number(v, key);
        else if (key == "force_lindblad") {
            if (!v.is_boolean()) throw InvalidParameter("config: 'force_lindblad' must be a boolean");
            c.force_lindblad = v.get<bool>();
        } else if (key == "absolute") {
            if (!v.is_object()) throw InvalidParameter("config: 'absolute' must be an object");
            SystemParams p;
            p.N = c.N;
            p.n_max = c.n_max;
            p.boundary = c.boundary;
            for (const auto& [ak, av] : v.items()) {
                if (ak == "omega_d") p.omega_d = number(av, ak);
                else if (ak == "omega_0") p.omega_0 = number(av, ak);
                else if (ak == "g") p.g = number(av, ak);
                else if (ak == "A") p.A = number(av, ak);
                else if (ak == "kappa") p.kappa = number(av, ak);
                else if (ak == "gamma") p.gamma = number(av, ak);
                else throw InvalidParameter("config: unknown key 'absolute." + ak + "'");
            }
            c.absolute = p;
        }
    }
    if (c.absolute) {
        // Structural keys may follow the absolute block in the file.
        c.absolute->N = c.N;
        c.absolute->n_max = c.n_max;
        c.absolute->boundary = c.boundary;
    }
    c.params().validate();
    return c;
}

// Numbers in CSV cells are written with %.17g.
std::string cell(const ojson& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + '"';
    }
    return cell(ojson(v.dump()));
}

std::string to_csv(const ojson& rows) {
    std::ostringstream out;
    if (rows.empty()) return "";
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        out << (first ? "" : ",") << key;
        first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
            out << (first ? "" : ",") << cell(value);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_rows(const ojson& rows, const std::string& format) {
    if (format.empty() || format == "csv") return to_csv(rows);
    return rows.dump(2) + "\n";
}

void echo_params(ojson& row, const SystemParams& p) {
    row["N"] = p.N;
    row["n_max"] = p.n_max;
    row["boundary"] = to_string(p.boundary);
    row["omega_d"] = p.omega_d;
    row["omega_0"] = p.omega_0;
    row["g"] = p.g;
    row["A"] = p.A;
    row["kappa"] = p.kappa;
    row["gamma"] = p.gamma;
}

std::vector<int> outcome_bits(const std::string& bits) {
    std::vector<int> v;
    for (char ch : bits) {
        if (ch == '0' || ch == '1') v.push_back(ch - '0');
        else if (ch != ',' && ch != ' ') throw InvalidParameter("--force-outcome expects a string of 0/1");
    }
    return v;
}

Vector logical_input(const ojson& value, int qubits) {
    const Index dim = Index{1} << qubits;
    if (value.is_string()) {
        const std::string s = value.get<std::string>();
        if (s == "uniform") return Vector::Constant(dim, cplx{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
        if (static_cast<int>(s.size()) == qubits &&
            s.find_first_not_of("01") == std::string::npos) {
            Vector v = Vector::Zero(dim);
            v(std::stoll(s, nullptr, 2)) = 1.0;
            return v;
        }
        throw InvalidParameter("config: 'input' must be \"uniform\", a bit string or amplitude pairs");
    }
    if (!value.is_array() || static_cast<Index>(value.size()) != dim) {
        throw InvalidParameter("config: 'input' amplitude list has the wrong length");
    }
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) {
        const auto& a = value[static_cast<std::size_t>(i)];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw InvalidParameter("config: 'input' entries must be [re, im] pairs");
        }
        v(i) = cplx{a[0].get<double>(), a[1].get<double>()};
    }
    if (std::abs(v.norm() - 1.0) > 1e-10) throw InvalidParameter("config: 'input' is not normalized");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Output {
    std::string text;
    int code{kExitOk};
};

Output cmd_dispersion(const RunConfig& c, const Flags& f) {
    const SystemParams p = c.params();
    const auto table = dispersion_table(p);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(one_photon_hopping_matrix(p), Eigen::EigenvaluesOnly);
    // Pair formula values and hopping eigenvalues by rank.
    std::vector<std::pair<double, int>> ranked;
    for (const auto& pt : table) ranked.emplace_back(pt.omega, pt.k);
    std::sort(ranked.begin(), ranked.end());
    std::map<int, double> eig;
    for (std::size_t i = 0; i < ranked.size(); ++i) eig[ranked[i].second] = solver.eigenvalues()(static_cast<Index>(i));
    ojson rows = ojson::array();
    for (const auto& pt : table) {
        ojson row;
        echo_params(row, p);
        row["k"] = pt.k;
        row["omega"] = pt.omega;
        row["hopping_eigenvalue"] = eig[pt.k];
        row["abs_diff"] = std::abs(pt.omega - eig[pt.k]);
        rows.push_back(row);
    }
    return {render_rows(rows, f.format)};
}

Output cmd_spectrum(const RunConfig& c, const Flags& f) {
    const SystemParams p = c.params();
    const auto levels = jc_single_site_spectrum(p);
    std::map<int, int> seen;
    std::map<int, int> count;
    for (const auto& l : levels) ++count[l.excitations];
    ojson rows = ojson::array();
    int index = 0;
    for (const auto& l : levels) {
        ojson row;
        echo_params(row, p);
        row["level"] = index++;
        row["excitations"] = l.excitations;
        row["energy"] = l.energy;
        const int n = l.excitations;
        const int rank = seen[n]++;
        ojson ref = nullptr;
        std::string branch = n == 0 ? "ground" : "";
        if (n == 0) {
            ref = 0.0;
        } else if (p.resonant() && count[n] == 2) {
            const double split = p.g * std::sqrt(static_cast<double>(n));
            ref = n * p.omega_d + (rank == 0 ? -split : split);
            branch = rank == 0 ? "lower" : "upper";
        } else if (n > p.n_max) {
            branch = "truncation";
        }
        row["branch"] = branch;
        row["reference"] = ref;
        row["abs_diff"] = ref.is_null() ? ojson(nullptr) : ojson(std::abs(l.energy - ref.get<double>()));
        rows.push_back(row);
    }
    return {render_rows(rows, f.format)};
}

Output cmd_reduce(const RunConfig& c, const Flags& f) {
    ojson rows = ojson::array();
    for (double ratio : c.g_over_A_grid) {
        RunConfig point = c;
        point.g_over_A = ratio;
        point.absolute.reset();
        SystemParams p = point.params();
        if (c.absolute) {
            p = *c.absolute;
            p.g = ratio * p.A;
        }
        const EffectiveCoupling coupling = fit_effective_coupling(p);
        const double t = coupling.t_eff > 0.0
                             ? std::numbers::pi / (std::numbers::sqrt2 * coupling.t_eff)
                             : 0.0;
        const Index dim = Index{1} << p.N;
        if (c.reduce_input < 0 || c.reduce_input >= dim) {
            throw InvalidParameter("config: 'reduce_input' out of range");
        }
        Vector x = Vector::Zero(dim);
        x(c.reduce_input) = 1.0;
        const ReductionResult r = reduction_infidelity(p, t, x, static_cast<Index>(f.cap));
        ojson row;
        echo_params(row, p);
        row["g_over_A"] = ratio;
        row["t_eff_over_A"] = p.A > 0.0 ? coupling.t_eff / p.A : 0.0;
        row["J_xy_over_A"] = p.A > 0.0 ? coupling.J_xy / p.A : 0.0;
        row["gate_time"] = t;
        row["input_index"] = c.reduce_input;
        row["infidelity"] = r.infidelity;
        row["leakage"] = r.leakage;
        rows.push_back(row);
    }
    return {render_rows(rows, f.format)};
}

ojson report_row(const SystemParams& p, const ProtocolReport& r, std::optional<int> forced,
                 std::uint64_t seed) {
    ojson row;
    echo_params(row, p);
    row["seed"] = seed;
    row["forced_outcome"] = forced ? ojson(*forced) : ojson(nullptr);
    row["outcome"] = r.outcome;
    row["label"] = to_string(r.label);
    row["outcome_probability"] = r.outcome_probability;
    row["two_qubit_fidelity"] = r.two_qubit_fidelity;
    row["leakage"] = r.leakage;
    row["elapsed_model_time"] = r.elapsed_model_time;
    row["t_eff"] = r.t_eff;
    row["dissipative"] = r.dissipative;
    row["lindblad_dt"] = r.lindblad_dt;
    return row;
}

FullStackOptions stack_options(const RunConfig& c, const Flags& f) {
    FullStackOptions o;
    o.cap = static_cast<Index>(f.cap);
    o.force_lindblad = c.force_lindblad;
    o.lindblad_step_g = c.lindblad_step_g;
    return o;
}

Output cmd_gate(const RunConfig& c, const Flags& f) {
    const SystemParams p = c.params();
    const Vector input = logical_input(c.input, 3);
    std::vector<std::optional<int>> runs;
    for (int b : outcome_bits(f.force_outcome)) runs.emplace_back(b);
    if (runs.empty()) runs.emplace_back(std::nullopt);
    ojson rows = ojson::array();
    for (const auto& forced : runs) {
        const ProtocolReport r = full_stack_gate(p, input, forced, f.seed, stack_options(c, f));
        rows.push_back(report_row(p, r, forced, f.seed));
    }
    return {render_rows(rows, f.format)};
}

Output cmd_noise_sweep(const RunConfig& c, const Flags& f) {
    const Vector input = logical_input(c.input, 3);
    const auto bits = outcome_bits(f.force_outcome);
    const int outcome = bits.empty() ? 0 : bits.front();
    ojson rows = ojson::array();
    for (double kappa : c.kappa_over_A_grid) {
        for (double gamma : c.gamma_over_A_grid) {
            SystemParams p = c.params();
            p.kappa = kappa * p.A;
            p.gamma = gamma * p.A;
            const ProtocolReport r = full_stack_gate(p, input, outcome, f.seed, stack_options(c, f));
            ojson row = report_row(p, r, outcome, f.seed);
            row["kappa_over_A"] = kappa;
            row["gamma_over_A"] = gamma;
            rows.push_back(row);
        }
    }
    return {render_rows(rows, f.format)};
}

std::string circuit_path(const RunConfig& c, const Flags& f) {
    if (!f.circuit_path.empty()) return f.circuit_path;
    if (c.circuit) return *c.circuit;
    throw InvalidParameter("no circuit file given");
}

Vector random_logical_state(std::uint64_t seed, int qubits) {
    SeededRng rng(seed);
    Vector v(Index{1} << qubits);
    for (Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

struct Equivalence {
    ojson rows = ojson::array();
    double worst{1.0};
};

Equivalence check_equivalence(const Circuit& circuit, const NativeSchedule& schedule,
                              const OutcomePolicy& policy, std::uint64_t seed) {
    const Vector input = random_logical_state(seed, circuit.num_qubits);
    const Vector ideal = apply_circuit(circuit, input);
    Equivalence e;
    int index = 0;
    for (const auto& br : simulate_schedule(schedule, input, policy)) {
        std::string outcomes;
        for (int b : br.outcomes) outcomes += static_cast<char>('0' + b);
        const double overlap = std::norm(ideal.dot(br.logical_state));
        e.worst = std::min(e.worst, overlap);
        ojson row;
        row["seed"] = seed;
        row["num_qubits"] = circuit.num_qubits;
        row["native_gates"] = schedule.native_gate_count();
        row["branch"] = index++;
        row["outcomes"] = outcomes;
        row["probability"] = br.probability;
        row["overlap"] = overlap;
        row["equivalent"] = 1.0 - overlap <= kEquivalenceTol;
        e.rows.push_back(row);
    }
    return e;
}

Output cmd_compile(const RunConfig& c, const Flags& f, std::ostream& err) {
    const Circuit circuit = parse_circuit(read_file(circuit_path(c, f)));
    const NativeSchedule s = compile(circuit, ChainLayout{circuit.num_qubits, c.mediator_init});
    std::ostringstream note;
    note << "# compiled " << circuit.gates.size() << " gates into " << s.native_gate_count()
         << " native ops on " << s.layout.physical_sites() << " sites";
    if (s.layout.physical_sites() <= 15) {
        const Equivalence e = check_equivalence(circuit, s, OutcomePolicy::exhaustive(), f.seed);
        note << "; equivalence over " << e.rows.size() << " branches, min overlap "
             << format_number(e.worst);
        err << note.str() << '\n';
        if (1.0 - e.worst > kEquivalenceTol) return {format_schedule(s), kExitNumerical};
    } else {
        err << note.str() << '\n';
    }
    return {format_schedule(s)};
}

Output cmd_simulate(const RunConfig& c, const Flags& f) {
    const Circuit circuit = parse_circuit(read_file(circuit_path(c, f)));
    const NativeSchedule s = compile(circuit, ChainLayout{circuit.num_qubits, c.mediator_init});
    const auto bits = outcome_bits(f.force_outcome);
    const OutcomePolicy policy =
        bits.empty() ? OutcomePolicy::exhaustive() : OutcomePolicy::forced_sequence(bits);
    const Equivalence e = check_equivalence(circuit, s, policy, f.seed);
    return {render_rows(e.rows, f.format), 1.0 - e.worst <= kEquivalenceTol ? kExitOk : kExitNumerical};
}

Output cmd_presets(const Flags& f) {
    ojson rows = ojson::array();
    for (const auto& p : kPresets) {
        const double loss = p.g_over_A / p.g_over_loss;
        const double window = 10.0;  // in units of 1/A
        ojson row;
        row["preset"] = p.name;
        row["g_over_A"] = p.g_over_A;
        row["kappa_over_A"] = loss;
        row["gamma_over_A"] = loss;
        row["g_over_max_loss"] = p.g_over_loss;
        row["omega_over_g_min"] = 1e4;
        row["omega_over_g_max"] = 1e5;
        row["window_over_A"] = window;
        row["window_seconds"] = p.window_seconds ? ojson(*p.window_seconds) : ojson(nullptr);
        row["A_per_second"] = p.window_seconds ? ojson(window / *p.window_seconds) : ojson(nullptr);
        row["survival_estimate"] = std::exp(-(2.0 * loss) * window / 2.0);
        rows.push_back(row);
    }
    return {render_rows(rows, f.format)};
}

Output cmd_selftest(const Flags& f) {
    const AcceptanceReport report = run_acceptance_suite(f.seed);
    const int code = report.all_passed() ? kExitOk : kExitNumerical;
    if (f.format == "json") {
        ojson j;
        j["seed"] = report.seed;
        j["criteria"] = ojson::array();
        for (const auto& r : report.results) {
            j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        return {j.dump(2) + "\n", code};
    }
    return {report.format(), code};
}

int dispatch(const Flags& f, std::ostream& out, std::ostream& err) {
    if (!f.format.empty() && f.format != "csv" && f.format != "json") {
        throw InvalidParameter("--format must be csv or json");
    }
    if (f.cap < 1) throw InvalidParameter("--cap-dim must be positive");
    Output o;
    if (f.subcommand == "presets") {
        o = cmd_presets(f);
    } else if (f.subcommand == "selftest") {
        o = cmd_selftest(f);
    } else {
        const RunConfig c = load_config(f);
        if (f.subcommand == "dispersion") o = cmd_dispersion(c, f);
        else if (f.subcommand == "spectrum") o = cmd_spectrum(c, f);
        else if (f.subcommand == "reduce") o = cmd_reduce(c, f);
        else if (f.subcommand == "gate") o = cmd_gate(c, f);
        else if (f.subcommand == "noise-sweep") o = cmd_noise_sweep(c, f);
        else if (f.subcommand == "compile") o = cmd_compile(c, f, err);
        else if (f.subcommand == "simulate") o = cmd_simulate(c, f);
        else throw InvalidParameter("unknown subcommand '" + f.subcommand + "'");
    }
    if (f.out_path.empty()) {
        out << o.text;
    } else {
        std::ofstream file(f.out_path, std::ios::binary);
        if (!file) throw InvalidParameter("cannot write '" + f.out_path + "'");
        file << o.text;
    }
    return o.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupled-cavity quantum gate laboratory", "cavityqc"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config_path, "JSON run configuration");
    app.add_option("--seed", f.seed, "Seed for sampled outcomes and random inputs");
    app.add_option("--out", f.out_path, "Write the report to this file");
    app.add_option("--format", f.format, "csv or json");
    app.add_option("--force-outcome", f.force_outcome, "Forced mediator outcomes, e.g. 0, 01");
    app.add_option("--cap-dim", f.cap, "Hilbert-space dimension cap");

    const std::pair<const char*, const char*> subs[] = {
        {"dispersion", "Tight-binding dispersion with hopping-matrix cross-check"},
        {"spectrum", "Single-site Jaynes-Cummings levels against n w_d +/- g sqrt(n)"},
        {"reduce", "Effective coupling and reduction error over a g/A grid"},
        {"gate", "Full-stack mediated gate report"},
        {"noise-sweep", "Gate fidelity over a (kappa, gamma) grid"},
        {"compile", "Compile a circuit file to a native schedule"},
        {"simulate", "Compile and simulate a circuit against the ideal output"},
        {"presets", "Technology profiles as ratio-based configs"},
        {"selftest", "Run the acceptance suite"},
    };
    for (const auto& [name, help] : subs) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (std::string(name) == "compile" || std::string(name) == "simulate") {
            sub->add_option("circuit", f.circuit_path, "Circuit file");
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (const auto* sub : app.get_subcommands()) f.subcommand = sub->get_name();

    try {
        return dispatch(f, out, err);
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace cavityqc::cli
