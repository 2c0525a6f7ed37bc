#include "zxcut/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "zxcut/resources.hpp"

namespace zxcut {

namespace {

const std::map<std::string, Gate>& gate_table() {
    static const std::map<std::string, Gate> t{
        {"H", Gate::H},       {"S", Gate::S},         {"SDG", Gate::SDG},     {"T", Gate::T},
        {"TDG", Gate::TDG},   {"X", Gate::X},         {"Z", Gate::Z},         {"CX", Gate::CX},
        {"CZ", Gate::CZ},     {"INIT0", Gate::INIT0}, {"INITP", Gate::INITP}, {"MZPS", Gate::MZPS},
        {"MXPS", Gate::MXPS},
    };
    return t;
}

bool is_init(Gate g) { return g == Gate::INIT0 || g == Gate::INITP; }
bool is_measure(Gate g) { return g == Gate::MZPS || g == Gate::MXPS; }

int parse_int(const std::string& s, int line) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw CircuitError(line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw CircuitError(line, "expected an integer, got '" + s + "'");
    return v;
}

}  // namespace

const char* gate_name(Gate g) {
    for (const auto& [name, gate] : gate_table())
        if (gate == g) return name.c_str();
    return "?";
}

int gate_arity(Gate g) { return g == Gate::CX || g == Gate::CZ ? 2 : 1; }

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    std::string region;
    while (std::getline(in, line)) {
        ++lineno;
        std::string directive;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            if (line.compare(hash, 2, "#@") == 0) directive = line.substr(hash + 2);
            line = line.substr(0, hash);
        }
        if (!directive.empty()) {
            std::istringstream ds(directive);
            std::string kw, name;
            ds >> kw >> name;
            if (kw == "region") {
                if (name.empty()) throw CircuitError(lineno, "region needs a name");
                if (!region.empty()) throw CircuitError(lineno, "regions cannot be nested");
                region = name;
            } else if (kw == "endregion") {
                if (region.empty()) throw CircuitError(lineno, "endregion without region");
                region.clear();
            } else {
                throw CircuitError(lineno, "unknown directive '" + kw + "'");
            }
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok[0] != "qubits" || tok.size() != 2) throw CircuitError(lineno, "expected 'qubits N' header");
            c.qubits = parse_int(tok[1], lineno);
            if (c.qubits < 0 || c.qubits > 4096) throw CircuitError(lineno, "qubit count out of range");
            header = true;
            continue;
        }
        auto it = gate_table().find(tok[0]);
        if (it == gate_table().end()) throw CircuitError(lineno, "unknown instruction '" + tok[0] + "'");
        Instruction ins;
        ins.gate = it->second;
        const int arity = gate_arity(ins.gate);
        if (int(tok.size()) != arity + 1)
            throw CircuitError(lineno, std::string(gate_name(ins.gate)) + " takes " + std::to_string(arity) +
                                           " qubit argument" + (arity > 1 ? "s" : ""));
        ins.a = parse_int(tok[1], lineno);
        if (arity == 2) ins.b = parse_int(tok[2], lineno);
        for (int q : {ins.a, ins.b}) {
            if (q == -1 && arity == 1) continue;
            if (q < 0 || q >= c.qubits) throw CircuitError(lineno, "qubit " + std::to_string(q) + " out of range");
        }
        if (arity == 2 && ins.a == ins.b) throw CircuitError(lineno, "two-qubit gate on a single qubit");
        ins.region = region;
        c.ops.push_back(ins);
        try {
            check_circuit(c);
        } catch (const CircuitError& e) {
            throw CircuitError(lineno, e.what());
        }
    }
    if (!header) throw CircuitError(lineno + 1, "missing 'qubits N' header");
    if (!region.empty()) throw CircuitError(lineno, "unterminated region '" + region + "'");
    return c;
}

void check_circuit(const Circuit& c) {
    enum State { Unused, Live, Measured };
    std::vector<State> st(c.qubits, Unused);
    for (size_t i = 0; i < c.ops.size(); ++i) {
        const auto& op = c.ops[i];
        for (int q : {op.a, op.b}) {
            if (q == -1) continue;
            if (q < 0 || q >= c.qubits) throw CircuitError(0, "qubit " + std::to_string(q) + " out of range");
            if (st[q] == Measured)
                throw CircuitError(0, std::string(gate_name(op.gate)) + " on measured qubit " + std::to_string(q));
            if (is_init(op.gate) && st[q] == Live)
                throw CircuitError(0, "initialising live qubit " + std::to_string(q));
        }
        st[op.a] = is_measure(op.gate) ? Measured : Live;
        if (op.b >= 0) st[op.b] = Live;
    }
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.qubits << "\n";
    std::string region;
    for (const auto& op : c.ops) {
        if (op.region != region) {
            if (!region.empty()) out << "#@endregion\n";
            if (!op.region.empty()) out << "#@region " << op.region << "\n";
            region = op.region;
        }
        out << gate_name(op.gate) << " " << op.a;
        if (op.b >= 0) out << " " << op.b;
        out << "\n";
    }
    if (!region.empty()) out << "#@endregion\n";
    return out.str();
}

Circuit Circuit::region(const std::string& name) const {
    Circuit r;
    r.qubits = qubits;
    for (const auto& op : ops)
        if (op.region == name) r.ops.push_back(op);
    if (r.ops.empty()) throw CircuitError(0, "no region named '" + name + "'");
    return r;
}

Circuit Circuit::after_region(const std::string& name) const {
    size_t last = ops.size();
    for (size_t i = 0; i < ops.size(); ++i)
        if (ops[i].region == name) last = i;
    if (last == ops.size()) throw CircuitError(0, "no region named '" + name + "'");
    Circuit r;
    r.qubits = qubits;
    r.ops.assign(ops.begin() + long(last) + 1, ops.end());
    return r;
}

std::vector<std::string> Circuit::region_names() const {
    std::vector<std::string> r;
    for (const auto& op : ops)
        if (!op.region.empty() && std::find(r.begin(), r.end(), op.region) == r.end()) r.push_back(op.region);
    return r;
}

Diagram circuit_to_diagram(const Circuit& c) {
    check_circuit(c);
    Diagram d;
    struct Wire {
        int end = -1;
        bool h = false;
        bool live = false;
        bool used = false;
    };
    std::vector<Wire> w(c.qubits);
    // inputs first, in qubit order
    std::vector<bool> first_is_init(c.qubits, false), seen(c.qubits, false);
    for (const auto& op : c.ops)
        for (int q : {op.a, op.b}) {
            if (q < 0 || seen[q]) continue;
            seen[q] = true;
            first_is_init[q] = is_init(op.gate);
        }
    for (int q = 0; q < c.qubits; ++q)
        if (seen[q] && !first_is_init[q]) {
            w[q].end = d.add_input();
            w[q].live = true;
        }
    const ExactScalar inv_sqrt2 = ExactScalar::sqrt2_pow(-1);
    for (const auto& op : c.ops) {
        const int region = op.region.empty() ? -1 : d.region_id(op.region);
        auto attach = [&](int q, VertexKind k, Phase p) {
            int s = d.add_vertex(k, p, region);
            d.add_edge(w[q].end, s, w[q].h ? EdgeKind::Hadamard : EdgeKind::Plain);
            w[q].end = s;
            w[q].h = false;
            return s;
        };
        const int q = op.a;
        switch (op.gate) {
            case Gate::H: w[q].h = !w[q].h; break;
            case Gate::S: attach(q, VertexKind::Z, Phase(2)); break;
            case Gate::SDG: attach(q, VertexKind::Z, Phase(6)); break;
            case Gate::T: attach(q, VertexKind::Z, Phase(1)); break;
            case Gate::TDG: attach(q, VertexKind::Z, Phase(7)); break;
            case Gate::Z: attach(q, VertexKind::Z, Phase(4)); break;
            case Gate::X: attach(q, VertexKind::X, Phase(4)); break;
            case Gate::CX: {
                int ctl = attach(op.a, VertexKind::Z, Phase());
                int tgt = attach(op.b, VertexKind::X, Phase());
                d.add_edge(ctl, tgt);
                d.mul_scalar(ExactScalar::sqrt2_pow(1));
                break;
            }
            case Gate::CZ: {
                int u = attach(op.a, VertexKind::Z, Phase());
                int v = attach(op.b, VertexKind::Z, Phase());
                d.add_edge(u, v, EdgeKind::Hadamard);
                d.mul_scalar(ExactScalar::sqrt2_pow(1));
                break;
            }
            case Gate::INIT0:
            case Gate::INITP:
                w[q].end = d.add_vertex(op.gate == Gate::INIT0 ? VertexKind::X : VertexKind::Z, Phase(), region);
                w[q].h = false;
                w[q].live = true;
                d.mul_scalar(inv_sqrt2);
                break;
            case Gate::MZPS:
            case Gate::MXPS: {
                int s = attach(q, op.gate == Gate::MZPS ? VertexKind::X : VertexKind::Z, Phase());
                d.mul_scalar(inv_sqrt2);
                d.anchors()["m" + std::to_string(q)] = s;
                w[q].live = false;
                break;
            }
        }
    }
    for (int q = 0; q < c.qubits; ++q) {
        if (!w[q].live) continue;
        int o = d.add_output();
        d.add_edge(w[q].end, o, w[q].h ? EdgeKind::Hadamard : EdgeKind::Plain);
    }
    return d;
}

Circuit builtin_circuit(const std::string& name) {
    std::string file;
    if (name == "msc-d3") file = "circuits/msc_d3.zxcirc";
    else if (name == "msc-d5") file = "circuits/msc_d5.zxcirc";
    else throw CircuitError(0, "unknown circuit '" + name + "'");
    return parse_circuit(std::string(resource(file)));
}

Circuit load_circuit(const std::string& name_or_path) {
    if (name_or_path == "msc-d3" || name_or_path == "msc-d5") return builtin_circuit(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw CircuitError(0, "cannot read circuit file '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

Diagram build_injection_d3() { return circuit_to_diagram(builtin_circuit("msc-d3").region("injection")); }
Diagram build_double_check_d3() { return circuit_to_diagram(builtin_circuit("msc-d3").region("double_check")); }
Diagram build_msc_d3() { return circuit_to_diagram(builtin_circuit("msc-d3")); }
Diagram build_msc_d5() { return circuit_to_diagram(builtin_circuit("msc-d5")); }

}  // namespace zxcut
