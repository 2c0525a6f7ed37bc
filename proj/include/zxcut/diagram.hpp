#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxcut/scalar.hpp"

namespace zxcut {

enum class VertexKind : uint8_t { Boundary, Z, X };
enum class EdgeKind : uint8_t { Plain, Hadamard };

inline EdgeKind toggle(EdgeKind e) { return e == EdgeKind::Plain ? EdgeKind::Hadamard : EdgeKind::Plain; }
inline EdgeKind compose_kinds(EdgeKind a, EdgeKind b) { return a == b ? EdgeKind::Plain : EdgeKind::Hadamard; }

const char* to_string(VertexKind k);
const char* to_string(EdgeKind k);

class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vertex {
    VertexKind kind = VertexKind::Z;
    Phase phase;
    int16_t region = -1;
    bool alive = false;
};

// Multiplicities of edges towards one neighbour. A self-loop is stored once on the vertex itself.
struct Nbr {
    int v = -1;
    uint16_t plain = 0;
    uint16_t had = 0;
    int total() const { return plain + had; }
};

struct EdgeRecord {
    int src;
    int dst;
    EdgeKind kind;
};

class Diagram {
public:
    Diagram() = default;

    int add_vertex(VertexKind kind, Phase phase = Phase(), int region = -1);
    int add_spider(VertexKind kind, Phase phase, int region = -1) { return add_vertex(kind, phase, region); }
    int add_boundary() { return add_vertex(VertexKind::Boundary); }
    int add_input();
    int add_output();
    void add_edge(int u, int v, EdgeKind kind = EdgeKind::Plain);
    void remove_edge(int u, int v, EdgeKind kind);
    void remove_all_edges(int u, int v);
    void remove_vertex(int v);

    // Graph-like helper: flip the presence of a single Hadamard edge.
    // Returns +1 when an edge was added, -1 when one was removed.
    int toggle_hadamard(int u, int v);

    bool alive(int v) const { return v >= 0 && v < int(_verts.size()) && _verts[v].alive; }
    const Vertex& vertex(int v) const { return _verts.at(v); }
    VertexKind kind(int v) const { return _verts[v].kind; }
    Phase phase(int v) const { return _verts[v].phase; }
    int region(int v) const { return _verts[v].region; }
    bool is_boundary(int v) const { return _verts[v].kind == VertexKind::Boundary; }
    void set_phase(int v, Phase p) { _verts[v].phase = p; }
    void add_to_phase(int v, Phase p) { _verts[v].phase += p; }
    void set_kind(int v, VertexKind k) { _verts[v].kind = k; }
    void set_region(int v, int r) { _verts[v].region = int16_t(r); }

    const std::vector<Nbr>& nbrs(int v) const { return _adj[v]; }
    Nbr edge_between(int u, int v) const;
    bool connected(int u, int v) const { return edge_between(u, v).total() > 0; }
    // Number of edge ends at v; a self-loop counts twice.
    int degree(int v) const;
    // Number of distinct neighbours other than v itself.
    int num_nbrs(int v) const;
    std::vector<int> neighbour_ids(int v) const;

    std::vector<int> vertices() const;
    int num_vertices() const { return _alive; }
    int id_bound() const { return int(_verts.size()); }
    int num_edges() const;
    std::vector<EdgeRecord> edges() const;

    const std::vector<int>& inputs() const { return _inputs; }
    const std::vector<int>& outputs() const { return _outputs; }
    std::vector<int>& inputs_mut() { return _inputs; }
    std::vector<int>& outputs_mut() { return _outputs; }
    std::vector<int> boundary_order() const;
    int num_inputs() const { return int(_inputs.size()); }
    int num_outputs() const { return int(_outputs.size()); }

    ExactScalar& scalar() { return _scalar; }
    const ExactScalar& scalar() const { return _scalar; }
    void mul_scalar(const ExactScalar& s) { _scalar *= s; }

    int region_id(const std::string& name);
    int find_region(const std::string& name) const;
    const std::vector<std::string>& region_names() const { return _regions; }

    std::map<std::string, int>& anchors() { return _anchors; }
    const std::map<std::string, int>& anchors() const { return _anchors; }
    // Anchors follow a vertex that disappears into another one (fusion).
    void redirect_anchors(int from, int to);

    int t_count() const;
    int spider_count() const;

    // Throws DiagramError when a structural invariant is broken.
    void validate() const;

    // Same structure, ids compacted to 0..n-1 in increasing order of old id.
    Diagram compacted() const;

private:
    Nbr* find_nbr(int u, int v);
    void inc(int u, int v, EdgeKind kind, int delta);

    std::vector<Vertex> _verts;
    std::vector<std::vector<Nbr>> _adj;
    std::vector<int> _inputs;
    std::vector<int> _outputs;
    ExactScalar _scalar = ExactScalar::one();
    std::vector<std::string> _regions;
    std::map<std::string, int> _anchors;
    int _alive = 0;
};

struct ProvenanceEvent {
    std::string op;  // "cut", "expand", "two-t", "bss", "cat", "dedup", ...
    int vertex = -1;
    int depth = 0;
    std::string note;
};

// Coefficients live in each term's scalar.
struct DecompositionSum {
    std::vector<Diagram> terms;
    std::vector<ProvenanceEvent> provenance;

    size_t size() const { return terms.size(); }
    void append(DecompositionSum&& other);
};

// boundary order: a's inputs, b's inputs, a's outputs, b's outputs
Diagram tensor_product(const Diagram& a, const Diagram& b);
// a then b; a's outputs are plugged into b's inputs.
Diagram compose(const Diagram& a, const Diagram& b);

int t_count(const Diagram& d);

}  // namespace zxcut
