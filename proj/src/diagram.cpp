#include "zxcut/diagram.hpp"

#include <algorithm>

namespace zxcut {

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Boundary: return "B";
        case VertexKind::Z: return "Z";
        default: return "X";
    }
}

const char* to_string(EdgeKind k) { return k == EdgeKind::Plain ? "plain" : "hadamard"; }

int Diagram::add_vertex(VertexKind kind, Phase phase, int region) {
    if (kind == VertexKind::Boundary && !phase.is_zero()) throw DiagramError("boundary vertices carry no phase");
    Vertex v;
    v.kind = kind;
    v.phase = phase;
    v.region = int16_t(region);
    v.alive = true;
    _verts.push_back(v);
    _adj.emplace_back();
    ++_alive;
    return int(_verts.size()) - 1;
}

int Diagram::add_input() {
    int b = add_boundary();
    _inputs.push_back(b);
    return b;
}

int Diagram::add_output() {
    int b = add_boundary();
    _outputs.push_back(b);
    return b;
}

Nbr* Diagram::find_nbr(int u, int v) {
    auto& a = _adj[u];
    auto it = std::lower_bound(a.begin(), a.end(), v, [](const Nbr& n, int x) { return n.v < x; });
    if (it == a.end() || it->v != v) return nullptr;
    return &*it;
}

Nbr Diagram::edge_between(int u, int v) const {
    const auto& a = _adj[u];
    auto it = std::lower_bound(a.begin(), a.end(), v, [](const Nbr& n, int x) { return n.v < x; });
    if (it == a.end() || it->v != v) return Nbr{v, 0, 0};
    return *it;
}

void Diagram::inc(int u, int v, EdgeKind kind, int delta) {
    auto& a = _adj[u];
    auto it = std::lower_bound(a.begin(), a.end(), v, [](const Nbr& n, int x) { return n.v < x; });
    if (it == a.end() || it->v != v) {
        if (delta < 0) throw DiagramError("removing a missing edge");
        it = a.insert(it, Nbr{v, 0, 0});
    }
    if (kind == EdgeKind::Plain) {
        int n = it->plain + delta;
        if (n < 0) throw DiagramError("removing a missing plain edge");
        it->plain = uint16_t(n);
    } else {
        int n = it->had + delta;
        if (n < 0) throw DiagramError("removing a missing hadamard edge");
        it->had = uint16_t(n);
    }
    if (it->total() == 0) a.erase(it);
}

void Diagram::add_edge(int u, int v, EdgeKind kind) {
    if (!alive(u) || !alive(v)) throw DiagramError("edge endpoint does not exist");
    inc(u, v, kind, +1);
    if (u != v) inc(v, u, kind, +1);
}

void Diagram::remove_edge(int u, int v, EdgeKind kind) {
    inc(u, v, kind, -1);
    if (u != v) inc(v, u, kind, -1);
}

void Diagram::remove_all_edges(int u, int v) {
    Nbr* n = find_nbr(u, v);
    if (!n) return;
    auto& a = _adj[u];
    a.erase(a.begin() + (n - a.data()));
    if (u != v) {
        Nbr* m = find_nbr(v, u);
        auto& b = _adj[v];
        b.erase(b.begin() + (m - b.data()));
    }
}

void Diagram::remove_vertex(int v) {
    if (!alive(v)) throw DiagramError("removing a dead vertex");
    for (const Nbr& n : _adj[v]) {
        if (n.v == v) continue;
        auto& b = _adj[n.v];
        auto it = std::lower_bound(b.begin(), b.end(), v, [](const Nbr& x, int y) { return x.v < y; });
        b.erase(it);
    }
    _adj[v].clear();
    _verts[v].alive = false;
    --_alive;
    std::erase(_inputs, v);
    std::erase(_outputs, v);
}

int Diagram::toggle_hadamard(int u, int v) {
    Nbr e = edge_between(u, v);
    if (e.had > 0) {
        remove_edge(u, v, EdgeKind::Hadamard);
        return -1;
    }
    add_edge(u, v, EdgeKind::Hadamard);
    return +1;
}

int Diagram::degree(int v) const {
    int d = 0;
    for (const Nbr& n : _adj[v]) d += (n.v == v ? 2 : 1) * n.total();
    return d;
}

int Diagram::num_nbrs(int v) const {
    int d = 0;
    for (const Nbr& n : _adj[v])
        if (n.v != v) ++d;
    return d;
}

std::vector<int> Diagram::neighbour_ids(int v) const {
    std::vector<int> r;
    r.reserve(_adj[v].size());
    for (const Nbr& n : _adj[v])
        if (n.v != v) r.push_back(n.v);
    return r;
}

std::vector<int> Diagram::vertices() const {
    std::vector<int> r;
    r.reserve(_alive);
    for (int i = 0; i < int(_verts.size()); ++i)
        if (_verts[i].alive) r.push_back(i);
    return r;
}

int Diagram::num_edges() const {
    int m = 0;
    for (int u = 0; u < int(_verts.size()); ++u) {
        if (!_verts[u].alive) continue;
        for (const Nbr& n : _adj[u])
            if (n.v >= u) m += n.total();
    }
    return m;
}

std::vector<EdgeRecord> Diagram::edges() const {
    std::vector<EdgeRecord> r;
    for (int u = 0; u < int(_verts.size()); ++u) {
        if (!_verts[u].alive) continue;
        for (const Nbr& n : _adj[u]) {
            if (n.v < u) continue;
            for (int i = 0; i < n.plain; ++i) r.push_back({u, n.v, EdgeKind::Plain});
            for (int i = 0; i < n.had; ++i) r.push_back({u, n.v, EdgeKind::Hadamard});
        }
    }
    return r;
}

std::vector<int> Diagram::boundary_order() const {
    std::vector<int> r = _inputs;
    r.insert(r.end(), _outputs.begin(), _outputs.end());
    return r;
}

int Diagram::region_id(const std::string& name) {
    int r = find_region(name);
    if (r >= 0) return r;
    _regions.push_back(name);
    return int(_regions.size()) - 1;
}

int Diagram::find_region(const std::string& name) const {
    for (int i = 0; i < int(_regions.size()); ++i)
        if (_regions[i] == name) return i;
    return -1;
}

void Diagram::redirect_anchors(int from, int to) {
    for (auto& [name, v] : _anchors)
        if (v == from) v = to;
}

int Diagram::t_count() const {
    int t = 0;
    for (int i = 0; i < int(_verts.size()); ++i)
        if (_verts[i].alive && _verts[i].kind != VertexKind::Boundary && _verts[i].phase.is_t_like()) ++t;
    return t;
}

int Diagram::spider_count() const {
    int s = 0;
    for (const Vertex& v : _verts)
        if (v.alive && v.kind != VertexKind::Boundary) ++s;
    return s;
}

void Diagram::validate() const {
    int boundaries = 0;
    for (int v = 0; v < int(_verts.size()); ++v) {
        if (!_verts[v].alive) {
            if (!_adj[v].empty()) throw DiagramError("dead vertex with edges");
            continue;
        }
        for (const Nbr& n : _adj[v]) {
            if (!alive(n.v)) throw DiagramError("edge to a dead vertex");
            Nbr back = edge_between(n.v, v);
            if (back.plain != n.plain || back.had != n.had) throw DiagramError("asymmetric adjacency");
        }
        if (_verts[v].kind == VertexKind::Boundary) {
            ++boundaries;
            if (degree(v) != 1) throw DiagramError("boundary vertex " + std::to_string(v) + " must have degree 1");
            if (!_verts[v].phase.is_zero()) throw DiagramError("boundary vertex with a phase");
        }
    }
    auto order = boundary_order();
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DiagramError("duplicate boundary in boundary order");
    for (int b : order)
        if (!alive(b) || !is_boundary(b)) throw DiagramError("boundary order lists a non-boundary vertex");
    if (int(order.size()) != boundaries) throw DiagramError("boundary order does not list every boundary vertex");
}

Diagram Diagram::compacted() const {
    std::vector<int> map(_verts.size(), -1);
    Diagram d;
    d._regions = _regions;
    d._scalar = _scalar;
    for (int v = 0; v < int(_verts.size()); ++v)
        if (_verts[v].alive) map[v] = d.add_vertex(_verts[v].kind, _verts[v].phase, _verts[v].region);
    for (const auto& e : edges()) d.add_edge(map[e.src], map[e.dst], e.kind);
    for (int b : _inputs) d._inputs.push_back(map[b]);
    for (int b : _outputs) d._outputs.push_back(map[b]);
    for (const auto& [name, v] : _anchors)
        if (alive(v)) d._anchors[name] = map[v];
    return d;
}

namespace {

// Copies b into a, returns the id map.
std::vector<int> absorb(Diagram& a, const Diagram& b) {
    std::vector<int> map(b.id_bound(), -1);
    std::vector<int> region_map;
    for (const auto& name : b.region_names()) region_map.push_back(a.region_id(name));
    for (int v : b.vertices()) {
        int r = b.region(v);
        map[v] = a.add_vertex(b.kind(v), b.phase(v), r >= 0 ? region_map[r] : -1);
    }
    for (const auto& e : b.edges()) a.add_edge(map[e.src], map[e.dst], e.kind);
    a.mul_scalar(b.scalar());
    return map;
}

}  // namespace

Diagram tensor_product(const Diagram& a, const Diagram& b) {
    Diagram r = a;
    auto map = absorb(r, b);
    for (int v : b.inputs()) r.inputs_mut().push_back(map[v]);
    for (int v : b.outputs()) r.outputs_mut().push_back(map[v]);
    for (const auto& [name, v] : b.anchors())
        if (!r.anchors().contains(name)) r.anchors()[name] = map[v];
    return r;
}

Diagram compose(const Diagram& a, const Diagram& b) {
    if (a.num_outputs() != b.num_inputs())
        throw DiagramError("compose: arity mismatch (" + std::to_string(a.num_outputs()) + " outputs vs " +
                           std::to_string(b.num_inputs()) + " inputs)");
    Diagram r = a;
    auto map = absorb(r, b);
    std::vector<int> a_out = a.outputs();
    for (size_t i = 0; i < a_out.size(); ++i) {
        int o = a_out[i];
        int in = map[b.inputs()[i]];
        const Nbr no = r.nbrs(o).front();
        const Nbr ni = r.nbrs(in).front();
        EdgeKind ko = no.plain ? EdgeKind::Plain : EdgeKind::Hadamard;
        EdgeKind ki = ni.plain ? EdgeKind::Plain : EdgeKind::Hadamard;
        int x = no.v, y = ni.v;
        r.remove_vertex(o);
        r.remove_vertex(in);
        r.add_edge(x, y, compose_kinds(ko, ki));
    }
    r.outputs_mut().clear();
    for (int v : b.outputs()) r.outputs_mut().push_back(map[v]);
    for (const auto& [name, v] : b.anchors())
        if (!r.anchors().contains(name)) r.anchors()[name] = map[v];
    return r;
}

int t_count(const Diagram& d) { return d.t_count(); }

void DecompositionSum::append(DecompositionSum&& other) {
    for (auto& t : other.terms) terms.push_back(std::move(t));
    for (auto& p : other.provenance) provenance.push_back(std::move(p));
}

}  // namespace zxcut
