#include "zxcut/hash.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

namespace zxcut {

namespace {

uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t combine(uint64_t h, uint64_t v) { return mix(h ^ (v + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2))); }

// Colour per vertex id after refinement; dead ids get 0.
std::vector<uint64_t> wl_colours(const Diagram& d, int rounds) {
    std::vector<uint64_t> col(d.id_bound(), 0);
    std::vector<int> pos(d.id_bound(), -1);
    auto order = d.boundary_order();
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = int(i);
    const int n_in = d.num_inputs();
    for (int v : d.vertices()) {
        uint64_t h = combine(uint64_t(d.kind(v)) + 1, uint64_t(d.phase(v).num()));
        if (pos[v] >= 0) h = combine(h, 1000 + uint64_t(pos[v]) + (pos[v] >= n_in ? 500 : 0));
        Nbr l = d.edge_between(v, v);
        h = combine(h, uint64_t(l.plain) * 31 + l.had);
        col[v] = h;
    }
    std::vector<uint64_t> next(col.size());
    std::vector<uint64_t> bag;
    for (int r = 0; r < rounds; ++r) {
        for (int v : d.vertices()) {
            bag.clear();
            for (const Nbr& n : d.nbrs(v)) {
                if (n.v == v) continue;
                bag.push_back(combine(col[n.v], uint64_t(n.plain) * 131 + n.had));
            }
            std::sort(bag.begin(), bag.end());
            uint64_t h = col[v];
            for (uint64_t b : bag) h = combine(h, b);
            next[v] = h;
        }
        std::swap(col, next);
    }
    return col;
}

int refinement_rounds(const Diagram& d) { return std::min(d.num_vertices(), 8) + 2; }

}  // namespace

uint64_t structural_hash(const Diagram& d) {
    auto col = wl_colours(d, refinement_rounds(d));
    std::vector<uint64_t> all;
    for (int v : d.vertices()) all.push_back(col[v]);
    std::sort(all.begin(), all.end());
    uint64_t h = combine(uint64_t(d.num_inputs()), uint64_t(d.num_outputs()));
    h = combine(h, uint64_t(d.num_edges()));
    for (uint64_t c : all) h = combine(h, c);
    return h;
}

std::string canonical_hash(const Diagram& d) {
    uint64_t s = structural_hash(d);
    uint64_t t = combine(0x5eed, uint64_t(d.scalar().k()));
    for (int64_t c : d.scalar().coeffs()) t = combine(t, uint64_t(c));
    uint64_t hi = combine(s, t), lo = combine(t ^ 0xabcdef, s);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
}

bool isomorphic(const Diagram& a, const Diagram& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
        a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs())
        return false;
    const int rounds = refinement_rounds(a);
    auto ca = wl_colours(a, rounds), cb = wl_colours(b, rounds);
    {
        std::vector<uint64_t> xa, xb;
        for (int v : a.vertices()) xa.push_back(ca[v]);
        for (int v : b.vertices()) xb.push_back(cb[v]);
        std::sort(xa.begin(), xa.end());
        std::sort(xb.begin(), xb.end());
        if (xa != xb) return false;
    }
    std::vector<int> fwd(a.id_bound(), -1), bwd(b.id_bound(), -1);
    auto oa = a.boundary_order(), ob = b.boundary_order();
    for (size_t i = 0; i < oa.size(); ++i) {
        fwd[oa[i]] = ob[i];
        bwd[ob[i]] = oa[i];
    }
    // visiting order: breadth first from the boundary, then whatever is left
    std::vector<int> order;
    std::vector<char> seen(a.id_bound(), 0);
    for (int v : oa) seen[v] = 1;
    std::vector<int> queue(oa.begin(), oa.end());
    auto flood = [&](size_t start) {
        for (size_t qi = start; qi < queue.size(); ++qi)
            for (const Nbr& n : a.nbrs(queue[qi]))
                if (!seen[n.v]) {
                    seen[n.v] = 1;
                    queue.push_back(n.v);
                    order.push_back(n.v);
                }
    };
    flood(0);
    for (int v : a.vertices())
        if (!seen[v]) {
            seen[v] = 1;
            size_t start = queue.size();
            queue.push_back(v);
            order.push_back(v);
            flood(start);
        }

    std::unordered_map<uint64_t, std::vector<int>> by_colour;
    for (int v : b.vertices())
        if (bwd[v] < 0) by_colour[cb[v]].push_back(v);

    auto consistent = [&](int x, int c) {
        int mapped = 0;
        for (const Nbr& n : a.nbrs(x)) {
            int img = n.v == x ? c : fwd[n.v];
            if (img < 0) continue;
            if (n.v != x) ++mapped;
            Nbr e = b.edge_between(c, img);
            if (e.plain != n.plain || e.had != n.had) return false;
        }
        if (a.edge_between(x, x).total() != b.edge_between(c, c).total()) return false;
        int mapped_b = 0;
        for (const Nbr& n : b.nbrs(c))
            if (n.v != c && bwd[n.v] >= 0) ++mapped_b;
        return mapped == mapped_b;
    };

    // explicit stack of (position in order, next candidate index)
    std::vector<size_t> next(order.size() + 1, 0);
    size_t i = 0;
    long budget = 2'000'000;
    while (true) {
        if (i == order.size()) return true;
        if (--budget < 0) return false;
        int x = order[i];
        auto& cands = by_colour[ca[x]];
        bool placed = false;
        while (next[i] < cands.size()) {
            int c = cands[next[i]++];
            if (bwd[c] >= 0 || !consistent(x, c)) continue;
            fwd[x] = c;
            bwd[c] = x;
            placed = true;
            break;
        }
        if (placed) {
            ++i;
            next[i] = 0;
            continue;
        }
        if (i == 0) return false;
        --i;
        int px = order[i];
        bwd[fwd[px]] = -1;
        fwd[px] = -1;
    }
}

}  // namespace zxcut
