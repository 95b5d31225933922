#include "qkpi/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace qkpi {

int gate_arity(Gate g) {
    switch (g) {
        case Gate::CNOT:
        case Gate::CZ:
        case Gate::SWAP:
            return 2;
        case Gate::CCX:
            return 3;
        default:
            return 1;
    }
}

const char* gate_name(Gate g) {
    switch (g) {
        case Gate::H: return "h";
        case Gate::S: return "s";
        case Gate::SDG: return "sdg";
        case Gate::X: return "x";
        case Gate::Y: return "y";
        case Gate::Z: return "z";
        case Gate::CNOT: return "cx";
        case Gate::CZ: return "cz";
        case Gate::SWAP: return "swap";
        case Gate::T: return "t";
        case Gate::CCX: return "ccx";
        case Gate::RZ: return "rz";
        case Gate::MEASURE_Z: return "measure";
        case Gate::RESET: return "reset";
    }
    return "?";
}

int Circuit::declare_noise_tag(const std::string& name) {
    for (size_t i = 0; i < noise_tags.size(); ++i)
        if (noise_tags[i] == name) return static_cast<int>(i);
    noise_tags.push_back(name);
    return static_cast<int>(noise_tags.size()) - 1;
}

void Circuit::append(Gate g, std::initializer_list<int> qs, double angle, int tag) {
    Instruction instr;
    instr.gate = g;
    instr.angle = angle;
    instr.noise_tag = tag;
    int i = 0;
    for (int q : qs) {
        if (q < 0 || q >= qubit_count) throw std::invalid_argument("qubit index out of range");
        for (int j = 0; j < i; ++j)
            if (instr.qubits[j] == q) throw std::invalid_argument("repeated qubit index");
        instr.qubits[i++] = q;
    }
    if (i != gate_arity(g)) throw std::invalid_argument("wrong qubit count for gate");
    if (g == Gate::RZ && !std::isfinite(angle)) throw std::invalid_argument("RZ angle must be finite");
    instructions.push_back(instr);
}

int Circuit::measure(int q) {
    if (q < 0 || q >= qubit_count) throw std::invalid_argument("qubit index out of range");
    Instruction instr;
    instr.gate = Gate::MEASURE_Z;
    instr.qubits[0] = q;
    instr.cbit = cbit_count++;
    instructions.push_back(instr);
    return instr.cbit;
}

bool Circuit::structurally_equal(const Circuit& other) const {
    if (qubit_count != other.qubit_count || cbit_count != other.cbit_count) return false;
    if (instructions.size() != other.instructions.size()) return false;
    for (size_t i = 0; i < instructions.size(); ++i) {
        const Instruction& a = instructions[i];
        const Instruction& b = other.instructions[i];
        if (a.gate != b.gate || a.qubits != b.qubits || a.cbit != b.cbit) return false;
        if (a.gate == Gate::RZ && a.angle != b.angle) return false;
    }
    return true;
}

size_t Circuit::count_gate(Gate g) const {
    size_t n = 0;
    for (const auto& instr : instructions)
        if (instr.gate == g) ++n;
    return n;
}

Circuit decompose_toffoli(const Circuit& c) {
    Circuit out(c.qubit_count);
    out.cbit_count = c.cbit_count;
    out.noise_tags = c.noise_tags;
    const double tdg = -std::acos(-1.0) / 4.0;
    for (const auto& instr : c.instructions) {
        if (instr.gate != Gate::CCX) {
            out.instructions.push_back(instr);
            continue;
        }
        int a = instr.qubits[0], b = instr.qubits[1], t = instr.qubits[2];
        int tag = instr.noise_tag;
        auto g1 = [&](Gate g, int q, double ang = 0.0) {
            Instruction i2;
            i2.gate = g;
            i2.qubits[0] = q;
            i2.angle = ang;
            i2.noise_tag = tag;
            out.instructions.push_back(i2);
        };
        auto cx = [&](int cq, int tq) {
            Instruction i2;
            i2.gate = Gate::CNOT;
            i2.qubits[0] = cq;
            i2.qubits[1] = tq;
            i2.noise_tag = tag;
            out.instructions.push_back(i2);
        };
        g1(Gate::H, t);
        cx(b, t);
        g1(Gate::RZ, t, tdg);
        cx(a, t);
        g1(Gate::T, t);
        cx(b, t);
        g1(Gate::RZ, t, tdg);
        cx(a, t);
        g1(Gate::T, b);
        g1(Gate::T, t);
        g1(Gate::H, t);
        cx(a, b);
        g1(Gate::T, a);
        g1(Gate::RZ, b, tdg);
        cx(a, b);
    }
    return out;
}

namespace {

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string emit_qasm(const Circuit& c) {
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.qubit_count) + "];\n";
    if (c.cbit_count > 0) out += "creg c[" + std::to_string(c.cbit_count) + "];\n";
    for (const auto& instr : c.instructions) {
        if (instr.gate == Gate::MEASURE_Z) {
            out += "measure q[" + std::to_string(instr.qubits[0]) + "] -> c[" +
                   std::to_string(instr.cbit) + "]";
        } else {
            out += gate_name(instr.gate);
            if (instr.gate == Gate::RZ) {
                out += "(";
                format_double(out, instr.angle);
                out += ")";
            }
            out += " ";
            for (int i = 0; i < instr.arity(); ++i) {
                if (i) out += ",";
                out += "q[" + std::to_string(instr.qubits[i]) + "]";
            }
        }
        out += ";";
        if (instr.noise_tag >= 0) out += " // noise: " + c.noise_tags[instr.noise_tag];
        out += "\n";
    }
    return out;
}

QasmError::QasmError(int line, int column, const std::string& msg)
    : std::runtime_error("qasm:" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_space_and_comments() {
        for (;;) {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
            if (pos + 1 < text.size() && text[pos] == '/' && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') advance();
                continue;
            }
            break;
        }
    }

    bool eof() {
        skip_space_and_comments();
        return pos >= text.size();
    }

    char peek() { return pos < text.size() ? text[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) { throw QasmError(line, col, msg); }

    std::string ident() {
        skip_space_and_comments();
        int l = line, cl = col;
        std::string s;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '.')) {
            s += text[pos];
            advance();
        }
        if (s.empty()) throw QasmError(l, cl, "expected identifier");
        return s;
    }

    void expect(char ch) {
        skip_space_and_comments();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    bool accept(char ch) {
        skip_space_and_comments();
        if (peek() == ch) {
            advance();
            return true;
        }
        return false;
    }

    long number() {
        skip_space_and_comments();
        int l = line, cl = col;
        std::string s;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            s += text[pos];
            advance();
        }
        if (s.empty()) throw QasmError(l, cl, "expected integer");
        return std::stol(s);
    }

    double real() {
        skip_space_and_comments();
        int l = line, cl = col;
        std::string s;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' || text[pos] == '-' ||
                text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E')) {
            s += text[pos];
            advance();
        }
        if (s.empty()) throw QasmError(l, cl, "expected number");
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw QasmError(l, cl, "malformed number '" + s + "'");
        }
    }

    std::string quoted() {
        skip_space_and_comments();
        expect('"');
        std::string s;
        while (pos < text.size() && text[pos] != '"') {
            s += text[pos];
            advance();
        }
        expect('"');
        return s;
    }
};

}  // namespace

Circuit parse_qasm(const std::string& text) {
    Lexer lx(text);

    // header
    {
        int l = lx.line, c = lx.col;
        std::string kw = lx.ident();
        if (kw != "OPENQASM") throw QasmError(l, c, "expected OPENQASM header");
        double ver = lx.real();
        if (ver != 2.0) lx.fail("only OpenQASM 2.0 is supported");
        lx.expect(';');
    }

    Circuit circuit;
    bool have_qreg = false;
    int creg_size = 0;

    auto parse_qubit = [&](int l, int c) -> int {
        std::string reg = lx.ident();
        if (reg != "q") lx.fail("unknown quantum register '" + reg + "'");
        lx.expect('[');
        long idx = lx.number();
        lx.expect(']');
        if (!have_qreg) throw QasmError(l, c, "qreg not declared");
        if (idx < 0 || idx >= circuit.qubit_count)
            throw QasmError(l, c, "qubit index " + std::to_string(idx) + " out of range");
        return static_cast<int>(idx);
    };

    while (!lx.eof()) {
        int l = lx.line, c = lx.col;
        std::string kw = lx.ident();
        if (kw == "include") {
            lx.quoted();
            lx.expect(';');
        } else if (kw == "qreg") {
            std::string name = lx.ident();
            if (name != "q") throw QasmError(l, c, "quantum register must be named q");
            lx.expect('[');
            long n = lx.number();
            lx.expect(']');
            lx.expect(';');
            if (have_qreg) throw QasmError(l, c, "duplicate qreg");
            circuit.qubit_count = static_cast<int>(n);
            have_qreg = true;
        } else if (kw == "creg") {
            std::string name = lx.ident();
            if (name != "c") throw QasmError(l, c, "classical register must be named c");
            lx.expect('[');
            creg_size = static_cast<int>(lx.number());
            lx.expect(']');
            lx.expect(';');
        } else if (kw == "measure") {
            int q = parse_qubit(l, c);
            lx.expect('-');
            lx.expect('>');
            std::string reg = lx.ident();
            if (reg != "c") throw QasmError(l, c, "unknown classical register '" + reg + "'");
            lx.expect('[');
            long cb = lx.number();
            lx.expect(']');
            lx.expect(';');
            if (cb < 0 || cb >= creg_size)
                throw QasmError(l, c, "classical bit " + std::to_string(cb) + " out of range");
            Instruction instr;
            instr.gate = Gate::MEASURE_Z;
            instr.qubits[0] = q;
            instr.cbit = static_cast<int>(cb);
            circuit.instructions.push_back(instr);
            if (cb + 1 > circuit.cbit_count) circuit.cbit_count = static_cast<int>(cb) + 1;
        } else {
            Gate g;
            if (kw == "h") g = Gate::H;
            else if (kw == "s") g = Gate::S;
            else if (kw == "sdg") g = Gate::SDG;
            else if (kw == "x") g = Gate::X;
            else if (kw == "y") g = Gate::Y;
            else if (kw == "z") g = Gate::Z;
            else if (kw == "cx") g = Gate::CNOT;
            else if (kw == "cz") g = Gate::CZ;
            else if (kw == "swap") g = Gate::SWAP;
            else if (kw == "t") g = Gate::T;
            else if (kw == "ccx") g = Gate::CCX;
            else if (kw == "rz") g = Gate::RZ;
            else if (kw == "reset") g = Gate::RESET;
            else throw QasmError(l, c, "unknown gate '" + kw + "'");

            double angle = 0.0;
            if (g == Gate::RZ) {
                lx.expect('(');
                angle = lx.real();
                lx.expect(')');
            }
            Instruction instr;
            instr.gate = g;
            instr.angle = angle;
            for (int i = 0; i < gate_arity(g); ++i) {
                if (i) lx.expect(',');
                int q = parse_qubit(l, c);
                for (int j = 0; j < i; ++j)
                    if (instr.qubits[j] == q) throw QasmError(l, c, "repeated qubit operand");
                instr.qubits[i] = q;
            }
            lx.expect(';');
            circuit.instructions.push_back(instr);
        }
    }
    if (!have_qreg) throw QasmError(lx.line, lx.col, "missing qreg declaration");
    return circuit;
}

}  // namespace qkpi
