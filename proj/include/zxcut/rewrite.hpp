#pragma once

#include <string>
#include <vector>

#include "zxcut/diagram.hpp"

namespace zxcut {

class RewriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RewriteStep {
    std::string rule;
    std::vector<int> vertices;
    ExactScalar scalar = ExactScalar::one();
};

using RewriteTrace = std::vector<RewriteStep>;

// Only Z spiders, Hadamard edges between spiders, no parallel edges or self-loops.
bool is_graph_like(const Diagram& d);

Diagram to_graph_like(const Diagram& d, RewriteTrace* trace = nullptr);

// The rules below act in place and throw RewriteError when the pattern does not match.
void fuse_spiders(Diagram& d, int u, int v, RewriteTrace* trace = nullptr);
void local_complement(Diagram& d, int v, RewriteTrace* trace = nullptr);
void pivot(Diagram& d, int u, int v, RewriteTrace* trace = nullptr);

// Graph-like conversion, fusion, identity removal, parallel edges, self-loops and Pauli copy.
Diagram basic_simp(const Diagram& d, RewriteTrace* trace = nullptr);
Diagram full_reduce(const Diagram& d, RewriteTrace* trace = nullptr);
void full_reduce_inplace(Diagram& d, RewriteTrace* trace = nullptr);

// Degree-1 spider with odd phase hanging off a Pauli spider.
bool is_gadget_leaf(const Diagram& d, int v);

}  // namespace zxcut
