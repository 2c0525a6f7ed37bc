#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zxcut/diagram.hpp"

namespace zxcut {

enum class Gate { H, S, SDG, T, TDG, X, Z, CX, CZ, INIT0, INITP, MZPS, MXPS };

const char* gate_name(Gate g);
int gate_arity(Gate g);

class CircuitError : public std::runtime_error {
public:
    CircuitError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
    int line;
};

struct Instruction {
    Gate gate = Gate::H;
    int a = -1;
    int b = -1;
    std::string region;  // empty outside any #@region block
    bool operator==(const Instruction&) const = default;
};

// Text format: a "qubits N" header, one instruction per line, '#' comments,
// and "#@region name" ... "#@endregion" markers that tag the enclosed instructions.
struct Circuit {
    int qubits = 0;
    std::vector<Instruction> ops;
    bool operator==(const Circuit&) const = default;

    // Instructions tagged with the region, in order.
    Circuit region(const std::string& name) const;
    // Instructions from the first one after the last op of the region to the end.
    Circuit after_region(const std::string& name) const;
    std::vector<std::string> region_names() const;
};

Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);
// Throws CircuitError for out-of-range qubits, ops on measured qubits and re-initialisation.
void check_circuit(const Circuit& c);

// Qubits whose first use is not an INIT become inputs, unmeasured qubits become outputs,
// both in qubit order. Qubits that are never used get no boundary.
// Post-selected measurements plug the normalised effects <0| and <+|; the effect spider of a
// measurement on qubit q is recorded as anchor "m<q>".
Diagram circuit_to_diagram(const Circuit& c);

// Committed circuits: "msc-d3", "msc-d5".
Circuit builtin_circuit(const std::string& name);
Circuit load_circuit(const std::string& name_or_path);

Diagram build_injection_d3();
Diagram build_double_check_d3();
Diagram build_msc_d3();
Diagram build_msc_d5();

}  // namespace zxcut
