// circuit_io.cpp — Line-oriented text formats for circuits and native schedules.

#include "cavityqc/circuit_io.hpp"

#include "cavityqc/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace cavityqc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct LineReader {
    std::istringstream in;
    int line_no{0};
    std::string keyword;

    explicit LineReader(const std::string& text) : in(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidParameter("line " + std::to_string(line_no) + ": " + what);
    }

    // Next non-empty line with comments removed; false at end of input.
    bool next(std::istringstream& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            fields = std::istringstream(line);
            if (fields >> keyword) return true;
        }
        return false;
    }

    int integer(std::istringstream& fields) const {
        long long v = 0;
        if (!(fields >> v)) fail("expected an integer after " + keyword);
        if (v < 0 || v > 1'000'000) fail("index out of range");
        return static_cast<int>(v);
    }

    Matrix matrix2(std::istringstream& fields) const {
        double c[8];
        for (double& x : c) {
            if (!(fields >> x)) fail("expected 8 matrix components after " + keyword);
        }
        Matrix u(2, 2);
        u << cplx{c[0], c[1]}, cplx{c[2], c[3]}, cplx{c[4], c[5]}, cplx{c[6], c[7]};
        return u;
    }

    void finish(std::istringstream& fields) const {
        std::string extra;
        if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    }

    std::vector<int> integers(std::istringstream& fields) const {
        std::vector<int> v;
        long long x = 0;
        while (fields >> x) {
            if (x < 0) fail("negative index");
            v.push_back(static_cast<int>(x));
        }
        if (!fields.eof()) fail("malformed integer list");
        return v;
    }
};

void write_matrix(std::ostringstream& out, const Matrix& u) {
    for (Index r = 0; r < 2; ++r) {
        for (Index c = 0; c < 2; ++c) {
            out << ' ' << format_number(u(r, c).real()) << ' ' << format_number(u(r, c).imag());
        }
    }
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Circuit parse_circuit(const std::string& text) {
    LineReader reader(text);
    Circuit c;
    int declared = -1;
    int highest = -1;
    std::istringstream f;
    auto note = [&](int q) { highest = std::max(highest, q); return q; };
    while (reader.next(f)) {
        const std::string& kw = reader.keyword;
        if (kw == "QUBITS") {
            if (declared >= 0 || !c.gates.empty()) reader.fail("QUBITS must appear once, before any gate");
            declared = reader.integer(f);
        } else if (kw == "SQ") {
            const int t = note(reader.integer(f));
            c.gates.push_back(SingleQubitGate{t, reader.matrix2(f)});
        } else if (kw == "CZ") {
            const int a = note(reader.integer(f));
            const int b = note(reader.integer(f));
            c.gates.push_back(CZGate{a, b});
        } else if (kw == "CU") {
            const int ctl = note(reader.integer(f));
            const int tgt = note(reader.integer(f));
            c.gates.push_back(ControlledUGate{ctl, tgt, reader.matrix2(f)});
        } else {
            reader.fail("unknown gate '" + kw + "'");
        }
        reader.finish(f);
    }
    if (declared >= 0 && highest >= declared) {
        throw InvalidParameter("circuit: qubit index exceeds QUBITS declaration");
    }
    c.num_qubits = declared >= 0 ? declared : highest + 1;
    c.validate();
    return c;
}

std::string format_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << "QUBITS " << circuit.num_qubits << '\n';
    for (const auto& gate : circuit.gates) {
        std::visit(overloaded{
                       [&](const SingleQubitGate& g) {
                           out << "SQ " << g.target;
                           write_matrix(out, g.u);
                       },
                       [&](const CZGate& g) { out << "CZ " << g.a << ' ' << g.b; },
                       [&](const ControlledUGate& g) {
                           out << "CU " << g.control << ' ' << g.target;
                           write_matrix(out, g.u);
                       },
                   },
                   gate);
        out << '\n';
    }
    return out.str();
}

NativeSchedule parse_schedule(const std::string& text) {
    LineReader reader(text);
    NativeSchedule s;
    bool have_layout = false;
    bool have_final = false;
    std::istringstream f;
    while (reader.next(f)) {
        const std::string& kw = reader.keyword;
        if (kw == "LAYOUT") {
            if (have_layout) reader.fail("duplicate LAYOUT");
            s.layout.num_slots = reader.integer(f);
            std::string init;
            if (!(f >> init)) reader.fail("LAYOUT needs a mediator init");
            s.layout.mediator_init = parse_mediator_init(init);
            have_layout = true;
            reader.finish(f);
            continue;
        }
        if (!have_layout) reader.fail("LAYOUT must come first");
        if (kw == "PERM") {
            s.initial_permutation = reader.integers(f);
        } else if (kw == "FINAL") {
            s.final_permutation = reader.integers(f);
            have_final = true;
        } else if (kw == "XY") {
            XYEvolve op;
            for (int& site : op.sites) site = reader.integer(f);
            s.ops.push_back(op);
        } else if (kw == "MEAS") {
            const int site = reader.integer(f);
            const int id = reader.integer(f);
            s.ops.push_back(MeasureMediator{site, id});
            ++s.num_measurements;
        } else if (kw == "ROT") {
            const int site = reader.integer(f);
            s.ops.push_back(LocalRotation{site, reader.matrix2(f)});
        } else if (kw == "CONDZ") {
            const int site = reader.integer(f);
            const int id = reader.integer(f);
            s.ops.push_back(ConditionalZ{site, id});
        } else {
            reader.fail("unknown instruction '" + kw + "'");
        }
        reader.finish(f);
    }
    if (!have_layout) throw InvalidParameter("schedule: missing LAYOUT");
    if (!have_final) s.final_permutation = s.initial_permutation;
    s.validate();
    return s;
}

std::string format_schedule(const NativeSchedule& schedule) {
    std::ostringstream out;
    out << "LAYOUT " << schedule.layout.num_slots << ' ' << to_string(schedule.layout.mediator_init)
        << '\n';
    auto perm = [&](const char* kw, const std::vector<int>& p) {
        out << kw;
        for (int s : p) out << ' ' << s;
        out << '\n';
    };
    perm("PERM", schedule.initial_permutation);
    for (const auto& op : schedule.ops) {
        std::visit(overloaded{
                       [&](const XYEvolve& o) {
                           out << "XY " << o.sites[0] << ' ' << o.sites[1] << ' ' << o.sites[2];
                       },
                       [&](const MeasureMediator& o) { out << "MEAS " << o.site << ' ' << o.id; },
                       [&](const LocalRotation& o) {
                           out << "ROT " << o.site;
                           write_matrix(out, o.u);
                       },
                       [&](const ConditionalZ& o) { out << "CONDZ " << o.site << ' ' << o.id; },
                   },
                   op);
        out << '\n';
    }
    perm("FINAL", schedule.final_permutation);
    return out.str();
}

}  // namespace cavityqc
