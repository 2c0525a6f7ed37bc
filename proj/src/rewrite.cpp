#include "zxcut/rewrite.hpp"

#include <algorithm>
#include <map>

namespace zxcut {

namespace {

ExactScalar inv_sqrt2_pow(int n) { return ExactScalar::sqrt2_pow(-n); }

class Simplifier {
public:
    Simplifier(Diagram& d, RewriteTrace* trace) : d(d), tr(trace) {}

    void record(const char* rule, std::vector<int> vs, const ExactScalar& s) {
        if (!(s == ExactScalar::one())) d.mul_scalar(s);
        if (tr) tr->push_back({rule, std::move(vs), s});
        if (++steps > cap) throw RewriteError("rewrite step cap exceeded");
    }

    bool spider(int v) const { return d.alive(v) && !d.is_boundary(v); }

    bool interior(int v) const {
        for (const Nbr& n : d.nbrs(v))
            if (n.v != v && d.is_boundary(n.v)) return false;
        return true;
    }

    int boundary_nbrs(int v) const {
        int k = 0;
        for (const Nbr& n : d.nbrs(v))
            if (n.v != v && d.is_boundary(n.v)) ++k;
        return k;
    }

    // ---- graph-like conversion ----

    void colour_change(int v) {
        std::vector<Nbr> nb = d.nbrs(v);
        for (const Nbr& n : nb) {
            if (n.v == v) continue;
            d.remove_all_edges(v, n.v);
            for (int i = 0; i < n.plain; ++i) d.add_edge(v, n.v, EdgeKind::Hadamard);
            for (int i = 0; i < n.had; ++i) d.add_edge(v, n.v, EdgeKind::Plain);
        }
        d.set_kind(v, VertexKind::Z);
        record("colour-change", {v}, ExactScalar::one());
    }

    // Merges v into u. Requires a plain edge between the two Z spiders.
    void fuse(int u, int v) {
        Nbr e = d.edge_between(u, v);
        d.remove_all_edges(u, v);
        int hloops = e.had;
        Nbr vl = d.edge_between(v, v);
        hloops += vl.had;
        std::vector<Nbr> nb = d.nbrs(v);
        for (const Nbr& n : nb) {
            if (n.v == v) continue;
            for (int i = 0; i < n.plain; ++i) d.add_edge(u, n.v, EdgeKind::Plain);
            for (int i = 0; i < n.had; ++i) d.add_edge(u, n.v, EdgeKind::Hadamard);
        }
        d.add_to_phase(u, d.phase(v));
        d.redirect_anchors(v, u);
        d.remove_vertex(v);
        Nbr ul = d.edge_between(u, u);
        if (ul.total()) {
            hloops += ul.had;
            d.remove_all_edges(u, u);
        }
        d.add_to_phase(u, Phase(4 * hloops));
        record("fuse", {u, v}, inv_sqrt2_pow(hloops));
        drop_parallel(u);
    }

    // Pairs of Hadamard edges between two Z spiders cancel with a factor 1/2.
    void drop_parallel(int u) {
        std::vector<Nbr> nb = d.nbrs(u);
        for (const Nbr& n : nb) {
            if (n.v == u || !spider(n.v) || n.had < 2) continue;
            int pairs = n.had / 2;
            for (int i = 0; i < 2 * pairs; ++i) d.remove_edge(u, n.v, EdgeKind::Hadamard);
            record("hopf", {u, n.v}, inv_sqrt2_pow(2 * pairs));
        }
    }

    void remove_self_loops(int v) {
        Nbr l = d.edge_between(v, v);
        if (!l.total()) return;
        d.remove_all_edges(v, v);
        d.add_to_phase(v, Phase(4 * l.had));
        record("self-loop", {v}, inv_sqrt2_pow(l.had));
    }

    int plain_spider_nbr(int u) const {
        for (const Nbr& n : d.nbrs(u))
            if (n.v != u && n.plain > 0 && spider(n.v)) return n.v;
        return -1;
    }

    void make_graph_like() {
        for (int v : d.vertices())
            if (d.kind(v) == VertexKind::X) colour_change(v);
        for (int u : d.vertices()) {
            if (!d.alive(u) || d.is_boundary(u)) continue;
            for (int w = plain_spider_nbr(u); w >= 0; w = plain_spider_nbr(u)) fuse(u, w);
        }
        for (int v : d.vertices()) {
            if (d.is_boundary(v)) continue;
            remove_self_loops(v);
            drop_parallel(v);
        }
    }

    // ---- interior rules, all assume graph-like form ----

    bool id_removal(int v) {
        if (!spider(v) || !d.phase(v).is_zero()) return false;
        const auto& nb = d.nbrs(v);
        if (nb.size() != 2 || nb[0].total() != 1 || nb[1].total() != 1 || nb[0].v == v || nb[1].v == v)
            return false;
        int n1 = nb[0].v, n2 = nb[1].v;
        EdgeKind k1 = nb[0].plain ? EdgeKind::Plain : EdgeKind::Hadamard;
        EdgeKind k2 = nb[1].plain ? EdgeKind::Plain : EdgeKind::Hadamard;
        EdgeKind k = compose_kinds(k1, k2);
        d.remove_vertex(v);
        record("identity-removal", {v, n1, n2}, ExactScalar::one());
        if (spider(n1) && spider(n2)) {
            if (k == EdgeKind::Plain) {
                d.add_edge(n1, n2, EdgeKind::Plain);
                fuse(std::min(n1, n2), std::max(n1, n2));
            } else if (d.edge_between(n1, n2).had > 0) {
                d.remove_edge(n1, n2, EdgeKind::Hadamard);
                record("hopf", {n1, n2}, inv_sqrt2_pow(2));
            } else {
                d.add_edge(n1, n2, EdgeKind::Hadamard);
            }
        } else {
            d.add_edge(n1, n2, k);
        }
        return true;
    }

    // Pauli leaf w on an H edge fixes its neighbour's value and is copied through it.
    bool copy(int w) {
        if (!spider(w) || !d.phase(w).is_pauli()) return false;
        const auto& nb = d.nbrs(w);
        if (nb.size() != 1 || nb[0].v == w || nb[0].had != 1 || nb[0].plain != 0) return false;
        int u = nb[0].v;
        if (!spider(u)) return false;
        const int a = d.phase(w).num() / 4;
        ExactScalar s = ExactScalar::sqrt2_pow(1) * ExactScalar::omega_pow(d.phase(u).num() * a);
        s *= inv_sqrt2_pow(d.degree(u) - 1);
        std::vector<Nbr> un = d.nbrs(u);
        d.remove_vertex(w);
        d.remove_vertex(u);
        for (const Nbr& n : un) {
            if (n.v == w) continue;
            if (d.is_boundary(n.v)) {
                int c = d.add_vertex(VertexKind::Z, Phase(4 * a), d.region(u));
                d.add_edge(c, n.v, n.plain ? EdgeKind::Hadamard : EdgeKind::Plain);
            } else {
                d.add_to_phase(n.v, Phase(4 * a));
            }
        }
        record("copy", {w, u}, s);
        return true;
    }

    bool scalar_component(int v) {
        if (!spider(v)) return false;
        const auto& nb = d.nbrs(v);
        if (nb.empty()) {
            ExactScalar s = ExactScalar::one_plus_phase(d.phase(v));
            d.remove_vertex(v);
            record("scalar", {v}, s);
            return true;
        }
        if (nb.size() != 1 || nb[0].v == v || nb[0].had != 1 || nb[0].plain != 0) return false;
        int u = nb[0].v;
        if (!spider(u) || d.nbrs(u).size() != 1) return false;
        Phase a = d.phase(v), b = d.phase(u);
        ExactScalar s = ExactScalar::one() + ExactScalar::phase(a) + ExactScalar::phase(b) - ExactScalar::phase(a + b);
        s = s.mul_sqrt2_pow(-1);
        d.remove_vertex(v);
        d.remove_vertex(u);
        record("scalar", {v, u}, s);
        return true;
    }

    std::vector<int> spider_nbrs(int v) const { return d.neighbour_ids(v); }

    void lcomp(int v) {
        std::vector<int> ns = spider_nbrs(v);
        const Phase a = d.phase(v);
        int added = 0, removed = 0;
        for (size_t i = 0; i < ns.size(); ++i)
            for (size_t j = i + 1; j < ns.size(); ++j) (d.toggle_hadamard(ns[i], ns[j]) > 0 ? added : removed)++;
        for (int n : ns) d.add_to_phase(n, -a);
        d.remove_vertex(v);
        ExactScalar s = ExactScalar::omega_pow(a.num() == 2 ? 1 : 7);
        s = s.mul_sqrt2_pow(1 - int(ns.size()) + added - removed);
        std::vector<int> vs{v};
        vs.insert(vs.end(), ns.begin(), ns.end());
        record("local-complement", std::move(vs), s);
    }

    bool lcomp_match(int v) const {
        if (!spider(v) || !d.phase(v).is_proper_clifford() || !interior(v)) return false;
        for (const Nbr& n : d.nbrs(v))
            if (n.v == v || n.plain || n.had != 1) return false;
        return true;
    }

    void do_pivot(int u, int v) {
        std::vector<int> U, V;
        for (int x : spider_nbrs(u))
            if (x != v) U.push_back(x);
        for (int x : spider_nbrs(v))
            if (x != u) V.push_back(x);
        std::vector<int> C, Uo, Vo;
        std::set_intersection(U.begin(), U.end(), V.begin(), V.end(), std::back_inserter(C));
        std::set_difference(U.begin(), U.end(), C.begin(), C.end(), std::back_inserter(Uo));
        std::set_difference(V.begin(), V.end(), C.begin(), C.end(), std::back_inserter(Vo));
        const int a = d.phase(u).num() / 4, c = d.phase(v).num() / 4;
        int added = 0, removed = 0;
        auto toggle_all = [&](const std::vector<int>& X, const std::vector<int>& Y) {
            for (int x : X)
                for (int y : Y) (d.toggle_hadamard(x, y) > 0 ? added : removed)++;
        };
        toggle_all(Uo, Vo);
        toggle_all(Uo, C);
        toggle_all(Vo, C);
        for (int x : V) d.add_to_phase(x, Phase(4 * a));
        for (int x : U) d.add_to_phase(x, Phase(4 * c));
        for (int x : C) d.add_to_phase(x, Phase(4));
        d.remove_vertex(u);
        d.remove_vertex(v);
        ExactScalar s = ExactScalar(2).mul_sqrt2_pow(added - removed - 1 - int(U.size()) - int(V.size()));
        if (a && c) s = -s;
        record("pivot", {u, v}, s);
    }

    bool graph_like_edges(int v) const {
        for (const Nbr& n : d.nbrs(v)) {
            if (n.v == v) return false;
            if (!d.is_boundary(n.v) && (n.plain || n.had != 1)) return false;
        }
        return true;
    }

    bool pivot_candidate(int v) const {
        return spider(v) && d.phase(v).is_pauli() && interior(v) && graph_like_edges(v) && !is_axle(v) &&
               !is_leaf(v);
    }

    bool is_leaf(int v) const { return d.nbrs(v).size() == 1 && d.nbrs(v)[0].v != v; }

    bool gadget_leaf(int w) const {
        if (!spider(w) || !d.phase(w).is_t_like()) return false;
        const auto& nb = d.nbrs(w);
        if (nb.size() != 1 || nb[0].v == w || nb[0].had != 1 || nb[0].plain) return false;
        int g = nb[0].v;
        return spider(g) && d.phase(g).is_pauli() && interior(g) && d.nbrs(g).size() >= 2;
    }

    int leaf_of(int g) const {
        for (const Nbr& n : d.nbrs(g))
            if (n.v != g && gadget_leaf(n.v)) return n.v;
        return -1;
    }

    bool is_axle(int g) const { return spider(g) && d.phase(g).is_pauli() && leaf_of(g) >= 0; }

    bool pivot_pass() {
        bool any = false;
        for (int u : d.vertices()) {
            if (!pivot_candidate(u)) continue;
            for (int v : spider_nbrs(u)) {
                if (v > u && pivot_candidate(v)) {
                    do_pivot(u, v);
                    any = true;
                    break;
                }
            }
        }
        return any;
    }

    bool lcomp_pass() {
        bool any = false;
        for (int v : d.vertices())
            if (lcomp_match(v)) {
                lcomp(v);
                any = true;
            }
        return any;
    }

    template <class F>
    bool each(F rule) {
        bool any = false;
        for (int v : d.vertices())
            if (d.alive(v) && (this->*rule)(v)) any = true;
        return any;
    }

    bool basic_round() {
        bool any = false;
        any |= each(&Simplifier::id_removal);
        any |= each(&Simplifier::copy);
        any |= each(&Simplifier::scalar_component);
        return any;
    }

    bool interior_clifford() {
        bool any = false;
        for (;;) {
            bool ch = basic_round();
            ch |= lcomp_pass();
            ch |= pivot_pass();
            if (!ch) break;
            any = true;
        }
        return any;
    }

    // u(Pauli) -H- v(odd): v becomes v(0)-H-g(0)-H-w(phase) and u,v are pivoted away.
    bool pivot_gadget_pass() {
        for (int u : d.vertices()) {
            if (!pivot_candidate(u)) continue;
            for (int v : spider_nbrs(u)) {
                if (!d.phase(v).is_t_like() || !interior(v) || !graph_like_edges(v) || is_leaf(v)) continue;
                Phase ph = d.phase(v);
                d.set_phase(v, Phase());
                int g = d.add_vertex(VertexKind::Z, Phase(), d.region(v));
                int w = d.add_vertex(VertexKind::Z, ph, d.region(v));
                d.add_edge(v, g, EdgeKind::Hadamard);
                d.add_edge(g, w, EdgeKind::Hadamard);
                d.redirect_anchors(v, w);
                record("gadgetise", {v, g, w}, ExactScalar::one());
                do_pivot(u, v);
                return true;
            }
        }
        return false;
    }

    bool gadget_pass() {
        bool any = false;
        std::map<std::vector<int>, std::pair<int, int>> seen;
        for (int g : d.vertices()) {
            if (!d.alive(g) || !is_axle(g)) continue;
            int w = leaf_of(g);
            if (d.phase(g).num() == 4) {
                Phase ph = d.phase(w);
                d.set_phase(g, Phase());
                d.set_phase(w, -ph);
                record("gadget-fuse", {g, w}, ExactScalar::phase(ph));
                any = true;
            }
            std::vector<int> supp;
            for (int x : spider_nbrs(g))
                if (x != w) supp.push_back(x);
            auto it = seen.find(supp);
            if (it == seen.end()) {
                seen.emplace(std::move(supp), std::make_pair(g, w));
                continue;
            }
            auto [g1, w1] = it->second;
            d.add_to_phase(w1, d.phase(w));
            d.remove_vertex(w);
            d.remove_vertex(g);
            record("gadget-fuse", {g1, w1, g, w}, ExactScalar(2).mul_sqrt2_pow(-int(supp.size()) - 1));
            // supports of other gadgets may have changed
            return true;
        }
        return any;
    }

    bool pivot_boundary_pass() {
        for (int u : d.vertices()) {
            if (!pivot_candidate(u)) continue;
            for (int v : spider_nbrs(u)) {
                if (!spider(v) || d.phase(v).is_t_like() || boundary_nbrs(v) != 1 || !graph_like_edges(v)) continue;
                int b = -1;
                EdgeKind k = EdgeKind::Plain;
                for (const Nbr& n : d.nbrs(v))
                    if (d.is_boundary(n.v)) {
                        b = n.v;
                        k = n.plain ? EdgeKind::Plain : EdgeKind::Hadamard;
                    }
                d.remove_all_edges(v, b);
                int n = d.add_vertex(VertexKind::Z, Phase(), d.region(v));
                d.add_edge(b, n, toggle(k));
                d.add_edge(n, v, EdgeKind::Hadamard);
                record("boundary-extract", {v, b, n}, ExactScalar::one());
                if (d.phase(v).is_pauli()) {
                    do_pivot(u, v);
                } else {
                    // u turns into a +-pi/2 interior spider and is removed by the next lcomp round
                    lcomp(v);
                }
                return true;
            }
        }
        return false;
    }

    void full() {
        make_graph_like();
        for (;;) {
            interior_clifford();
            if (pivot_gadget_pass()) continue;
            if (gadget_pass()) continue;
            if (pivot_boundary_pass()) continue;
            break;
        }
    }

    void basic() {
        make_graph_like();
        while (basic_round()) {
        }
    }

    Diagram& d;
    RewriteTrace* tr;
    long steps = 0;
    long cap = 50'000'000;
};

}  // namespace

bool is_graph_like(const Diagram& d) {
    for (int v : d.vertices()) {
        if (d.is_boundary(v)) continue;
        if (d.kind(v) != VertexKind::Z) return false;
        for (const Nbr& n : d.nbrs(v)) {
            if (n.v == v || n.total() != 1) return false;
            if (!d.is_boundary(n.v) && n.plain) return false;
        }
    }
    return true;
}

Diagram to_graph_like(const Diagram& d, RewriteTrace* trace) {
    Diagram r = d;
    Simplifier(r, trace).make_graph_like();
    return r;
}

void fuse_spiders(Diagram& d, int u, int v, RewriteTrace* trace) {
    if (u == v || !d.alive(u) || !d.alive(v) || d.is_boundary(u) || d.is_boundary(v))
        throw RewriteError("fuse_spiders needs two distinct spiders");
    if (d.kind(u) != d.kind(v)) throw RewriteError("fuse_spiders needs spiders of the same colour");
    if (d.edge_between(u, v).plain == 0) throw RewriteError("fuse_spiders needs a plain edge");
    Simplifier s(d, trace);
    if (d.kind(u) == VertexKind::X) {
        // fuse in the Z picture, then colour back
        s.colour_change(u);
        s.colour_change(v);
        s.fuse(u, v);
        d.set_kind(u, VertexKind::X);
        std::vector<Nbr> nb = d.nbrs(u);
        for (const Nbr& n : nb) {
            if (n.v == u) continue;
            d.remove_all_edges(u, n.v);
            for (int i = 0; i < n.plain; ++i) d.add_edge(u, n.v, EdgeKind::Hadamard);
            for (int i = 0; i < n.had; ++i) d.add_edge(u, n.v, EdgeKind::Plain);
        }
    } else {
        s.fuse(u, v);
    }
}

void local_complement(Diagram& d, int v, RewriteTrace* trace) {
    Simplifier s(d, trace);
    if (!s.lcomp_match(v)) throw RewriteError("local_complement needs an interior graph-like spider with phase +-pi/2");
    s.lcomp(v);
}

void pivot(Diagram& d, int u, int v, RewriteTrace* trace) {
    Simplifier s(d, trace);
    auto ok = [&](int x) {
        return s.spider(x) && d.kind(x) == VertexKind::Z && d.phase(x).is_pauli() && s.interior(x) &&
               s.graph_like_edges(x);
    };
    if (u == v || !ok(u) || !ok(v) || d.edge_between(u, v).had != 1)
        throw RewriteError("pivot needs two interior Pauli spiders joined by a Hadamard edge");
    s.do_pivot(u, v);
}

Diagram basic_simp(const Diagram& d, RewriteTrace* trace) {
    Diagram r = d;
    Simplifier(r, trace).basic();
    return r;
}

void full_reduce_inplace(Diagram& d, RewriteTrace* trace) { Simplifier(d, trace).full(); }

Diagram full_reduce(const Diagram& d, RewriteTrace* trace) {
    Diagram r = d;
    full_reduce_inplace(r, trace);
    return r;
}

bool is_gadget_leaf(const Diagram& d, int v) {
    Diagram& m = const_cast<Diagram&>(d);
    return Simplifier(m, nullptr).gadget_leaf(v);
}

}  // namespace zxcut
