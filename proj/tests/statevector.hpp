#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "zxcut/circuit.hpp"

namespace zxtest {

// Plain state-vector simulation of a circuit. Qubit 0 is the most significant bit.
// Post-selection projects without renormalising; a measured qubit is reset to |0>.
class StateVector {
public:
    using cd = std::complex<double>;

    explicit StateVector(int n) : n(n), amp(size_t(1) << n) { amp[0] = 1; }

    void set_basis(size_t index) {
        std::fill(amp.begin(), amp.end(), cd{});
        amp[index] = 1;
    }

    void apply(const zxcut::Instruction& op) {
        using zxcut::Gate;
        const double r = 1 / std::numbers::sqrt2;
        const cd w = std::polar(1.0, std::numbers::pi / 4);
        switch (op.gate) {
            case Gate::H: one(op.a, r, r, r, -r); break;
            case Gate::S: one(op.a, 1, 0, 0, cd(0, 1)); break;
            case Gate::SDG: one(op.a, 1, 0, 0, cd(0, -1)); break;
            case Gate::T: one(op.a, 1, 0, 0, w); break;
            case Gate::TDG: one(op.a, 1, 0, 0, std::conj(w)); break;
            case Gate::X: one(op.a, 0, 1, 1, 0); break;
            case Gate::Z: one(op.a, 1, 0, 0, -1); break;
            case Gate::CX:
                for (size_t i = 0; i < amp.size(); ++i)
                    if (bit(i, op.a) && !bit(i, op.b)) std::swap(amp[i], amp[i | mask(op.b)]);
                break;
            case Gate::CZ:
                for (size_t i = 0; i < amp.size(); ++i)
                    if (bit(i, op.a) && bit(i, op.b)) amp[i] = -amp[i];
                break;
            case Gate::INIT0: break;
            case Gate::INITP: one(op.a, r, r, r, -r); break;
            case Gate::MZPS: one(op.a, 1, 0, 0, 0); break;
            case Gate::MXPS: one(op.a, r, r, 0, 0); break;
        }
    }

    // Amplitudes over the given qubits (first = most significant), all others at |0>.
    std::vector<cd> restrict_to(const std::vector<int>& qubits) const {
        std::vector<cd> out(size_t(1) << qubits.size());
        for (size_t x = 0; x < out.size(); ++x) {
            size_t i = 0;
            for (size_t k = 0; k < qubits.size(); ++k)
                if (x >> (qubits.size() - 1 - k) & 1) i |= mask(qubits[k]);
            out[x] = amp[i];
        }
        return out;
    }

    int n;
    std::vector<cd> amp;

private:
    size_t mask(int q) const { return size_t(1) << (n - 1 - q); }
    bool bit(size_t i, int q) const { return i & mask(q); }
    void one(int q, cd a, cd b, cd c, cd d) {
        for (size_t i = 0; i < amp.size(); ++i) {
            if (bit(i, q)) continue;
            cd x = amp[i], y = amp[i | mask(q)];
            amp[i] = a * x + b * y;
            amp[i | mask(q)] = c * x + d * y;
        }
    }
};

}  // namespace zxtest
