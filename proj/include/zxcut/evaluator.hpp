#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "zxcut/diagram.hpp"

namespace zxcut {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Amplitudes over the boundary order, first boundary vertex = most significant bit.
struct DenseState {
    int legs = 0;
    std::vector<ExactScalar> amps;

    static DenseState zeros(int legs);
    size_t size() const { return amps.size(); }
    bool is_zero() const;
    std::vector<std::complex<double>> to_complex() const;
    DenseState& operator+=(const DenseState& o);
    bool operator==(const DenseState&) const = default;
};

struct ContractOptions {
    int max_table_vars = 24;
};

// Brute-force tensor contraction. Never touches the rewrite engine.
DenseState contract_dense(const Diagram& d, const ContractOptions& opt = {});

// Value of a diagram without boundary.
ExactScalar contract_scalar(const Diagram& d, const ContractOptions& opt = {});

DenseState eval_clifford_term(const Diagram& d, const ContractOptions& opt = {});
// Simplifies each term first; terms with odd phases left are contracted as they are.
DenseState eval_sum(const DecompositionSum& s, int jobs = 1, const ContractOptions& opt = {});

struct ColourCode {
    int distance = 0;
    int n = 0;
    std::vector<std::vector<int>> faces;
};

const ColourCode& colour_code(int distance);
// |0> + e^{i pi/4}|1> encoded, unnormalised: coefficient 1 on every |0_L> basis string.
DenseState logical_T_state(int distance);

double fidelity(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);
double fidelity(const DenseState& a, const DenseState& b);

// Support is an affine subspace, magnitudes are uniform, relative phases are powers of i.
bool looks_like_stabiliser_state(const DenseState& s);

}  // namespace zxcut
