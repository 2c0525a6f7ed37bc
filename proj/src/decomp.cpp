#include "zxcut/decomp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "zxcut/circuit.hpp"
#include "zxcut/hash.hpp"
#include "zxcut/resources.hpp"
#include "zxcut/rewrite.hpp"

namespace zxcut {

using nlohmann::json;

namespace {

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> workers;
    const int k = std::min<int>(jobs, int(n));
    for (int w = 0; w < k; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (size_t i = next++; i < n; i = next++) fn(i);
        }));
    for (auto& f : workers) f.get();
}

const ExactScalar& inv_sqrt2() {
    static const ExactScalar s = ExactScalar::sqrt2_pow(-1);
    return s;
}

EdgeKind single_edge_kind(const Nbr& n) { return n.plain ? EdgeKind::Plain : EdgeKind::Hadamard; }

// The unique neighbour of a degree-1 vertex.
Nbr only_nbr(const Diagram& d, int v) {
    const auto& ns = d.nbrs(v);
    if (ns.size() != 1 || ns[0].total() != 1 || ns[0].v == v)
        throw DecompError("vertex " + std::to_string(v) + " is not a degree-1 leaf");
    return ns[0];
}

bool is_t_leaf(const Diagram& d, int v) {
    return d.alive(v) && d.kind(v) == VertexKind::Z && d.phase(v).num() == 1 && d.nbrs(v).size() == 1 &&
           d.nbrs(v)[0].total() == 1 && d.nbrs(v)[0].v != v;
}

std::vector<int> copy_into(Diagram& r, const Diagram& s) {
    std::vector<int> map(s.id_bound(), -1);
    for (int v : s.vertices()) map[v] = r.add_vertex(s.kind(v), s.phase(v));
    for (const auto& e : s.edges()) r.add_edge(map[e.src], map[e.dst], e.kind);
    r.mul_scalar(s.scalar());
    return map;
}

// Replaces the Z(pi/4) leaves by the outputs of a k-output state diagram.
Diagram plug(const Diagram& d, const std::vector<int>& leaves, const Diagram& state) {
    if (int(leaves.size()) != state.num_outputs() || state.num_inputs() != 0)
        throw DecompError("plug: state arity does not match the number of legs");
    Diagram r = d;
    auto map = copy_into(r, state);
    for (size_t j = 0; j < leaves.size(); ++j) {
        Nbr a = only_nbr(d, leaves[j]);
        int o = map[state.outputs()[j]];
        Nbr b = only_nbr(r, o);
        r.remove_vertex(leaves[j]);
        r.remove_vertex(o);
        r.add_edge(a.v, b.v, compose_kinds(single_edge_kind(a), single_edge_kind(b)));
    }
    return r;
}

DecompositionSum plug_all(const Diagram& d, const std::vector<int>& leaves, const DecompositionSum& states,
                          const std::string& op) {
    DecompositionSum out;
    for (const auto& s : states.terms) out.terms.push_back(plug(d, leaves, s));
    out.provenance.push_back({op, leaves.empty() ? -1 : leaves.front(), 0, std::to_string(states.size()) + " terms"});
    return out;
}

// State diagram with k outputs, each attached by a plain wire to a fresh Z(phase) spider.
struct StateBuilder {
    Diagram d;
    std::vector<int> s;
    StateBuilder(int k, Phase p) {
        for (int j = 0; j < k; ++j) s.push_back(d.add_vertex(VertexKind::Z, p));
        for (int j = 0; j < k; ++j) d.add_edge(s[j], d.add_output());
    }
    void had_clique(const std::vector<int>& idx) {
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b) {
                d.add_edge(s[idx[a]], s[idx[b]], EdgeKind::Hadamard);
                d.mul_scalar(ExactScalar::sqrt2_pow(1));
            }
    }
    // X(0) or X(pi) hub on every leg: keeps even or odd parity only.
    void parity(bool odd) {
        int h = d.add_vertex(VertexKind::X, Phase(odd ? 4 : 0));
        for (int v : s) d.add_edge(h, v);
        d.mul_scalar(ExactScalar::sqrt2_pow(int(s.size()) - 2));
    }
    Diagram done(const ExactScalar& coeff) {
        d.mul_scalar(coeff);
        return d;
    }
};

// Z(phase) spider carrying all k outputs.
Diagram ghz(int k, Phase p, const ExactScalar& coeff) {
    Diagram d;
    int z = d.add_vertex(VertexKind::Z, p);
    for (int j = 0; j < k; ++j) d.add_edge(z, d.add_output());
    d.mul_scalar(coeff);
    return d;
}

ExactScalar cplx(int re, int im) { return ExactScalar(re) + ExactScalar::omega_pow(2) * ExactScalar(im); }

const DecompositionSum& two_t_states() {
    static const DecompositionSum s = [] {
        DecompositionSum r;
        r.terms.push_back(ghz(2, Phase(2), ExactScalar::one()));
        Diagram odd;
        int x = odd.add_vertex(VertexKind::X, Phase(4));
        odd.add_edge(x, odd.add_output());
        odd.add_edge(x, odd.add_output());
        odd.mul_scalar(ExactScalar::omega_pow(1));
        r.terms.push_back(odd);
        return r;
    }();
    return s;
}

const DecompositionSum& bss_states() {
    static const DecompositionSum s = [] {
        const ExactScalar r2 = ExactScalar::sqrt2_pow(1);
        const ExactScalar eighth = ExactScalar::sqrt2_pow(-6);
        const ExactScalar quarter = ExactScalar::sqrt2_pow(-4);
        std::vector<int> all{0, 1, 2, 3, 4, 5};
        DecompositionSum r;
        {
            StateBuilder b(6, Phase(0));
            r.terms.push_back(b.done((ExactScalar(2) + r2) * cplx(-1, 1) * eighth));
        }
        {
            StateBuilder b(6, Phase(0));
            b.had_clique(all);
            b.parity(false);
            r.terms.push_back(b.done(cplx(-1, -1) * ExactScalar::sqrt2_pow(-2)));
        }
        {
            StateBuilder b(6, Phase(0));
            b.had_clique(all);
            b.parity(true);
            r.terms.push_back(b.done(r2 * cplx(1, -1) * quarter));
        }
        {
            StateBuilder b(6, Phase(4));
            r.terms.push_back(b.done((ExactScalar(2) - r2) * cplx(-1, 1) * eighth));
        }
        r.terms.push_back(ghz(6, Phase(6), ExactScalar(2)));
        for (std::vector<int> tri : {std::vector<int>{0, 1, 2}, std::vector<int>{3, 4, 5}}) {
            StateBuilder b(6, Phase(0));
            b.had_clique(tri);
            b.parity(true);
            r.terms.push_back(b.done(r2 * cplx(1, 1) * quarter));
        }
        return r;
    }();
    return s;
}

// Clifford terms summing to the raw cat pattern tensor 2^{1-m/2} [|x| even] w^{|x|}.
DecompositionSum cat_states(int m) {
    if (m < 1 || m > 6) throw DecompError("cat decompositions exist for 1 <= m <= 6, got " + std::to_string(m));
    auto even = [&](Phase p, const ExactScalar& c) {
        StateBuilder b(m, p);
        b.parity(false);
        return b.done(c * ExactScalar::sqrt2_pow(2 - m));
    };
    const ExactScalar raw = ExactScalar::sqrt2_pow(2 - m);
    DecompositionSum r;
    switch (m) {
        case 1: r.terms.push_back(even(Phase(0), ExactScalar::one())); break;
        case 2: r.terms.push_back(ghz(2, Phase(2), raw)); break;
        case 3:
            r.terms.push_back(even(Phase(0), cplx(1, 1) * ExactScalar::sqrt2_pow(-2)));
            r.terms.push_back(even(Phase(2), cplx(1, -1) * ExactScalar::sqrt2_pow(-2)));
            break;
        case 4:
            r.terms.push_back(even(Phase(0), cplx(0, 1)));
            r.terms.push_back(ghz(4, Phase(6), raw * cplx(1, -1)));
            break;
        case 5: {
            r.terms.push_back(even(Phase(0), cplx(-1, 1) * ExactScalar::sqrt2_pow(-2)));
            r.terms.push_back(even(Phase(2), cplx(-1, -1) * ExactScalar::sqrt2_pow(-2)));
            Diagram zero;
            for (int j = 0; j < 5; ++j) zero.add_edge(zero.add_vertex(VertexKind::X), zero.add_output());
            zero.mul_scalar(raw * ExactScalar(2) * ExactScalar::sqrt2_pow(-5));
            r.terms.push_back(zero);
            break;
        }
        default:
            r.terms.push_back(even(Phase(0), cplx(-1, 1) * ExactScalar::sqrt2_pow(-2)));
            r.terms.push_back(even(Phase(2), cplx(-1, -1) * ExactScalar::sqrt2_pow(-2)));
            r.terms.push_back(ghz(6, Phase(6), raw * ExactScalar(2)));
    }
    return r;
}

// |T>^k as a sum of terms with one T spider each, from a cat_{k+1} with one leg T-measured.
DecompositionSum magic_states_via_cat(int k) {
    Diagram cat = build_cat_state(k + 1);
    DecompositionSum s = magic_from_cat(cat, cat.outputs().back());
    for (auto& t : s.terms) t.mul_scalar(inv_sqrt2());
    return s;
}

}  // namespace

// ---------------------------------------------------------------- cutting

DecompositionSum cut_spider(const Diagram& d, int v) {
    if (!d.alive(v)) throw DecompError("cut: vertex " + std::to_string(v) + " does not exist");
    if (d.is_boundary(v)) throw DecompError("cut: vertex " + std::to_string(v) + " is a boundary");
    if (d.kind(v) != VertexKind::Z)
        throw DecompError("cut: vertex " + std::to_string(v) + " is an X spider; convert to graph-like form first");
    Phase beta = d.phase(v);
    ExactScalar loops = ExactScalar::one();
    std::vector<std::pair<int, EdgeKind>> wires;
    for (const Nbr& n : d.nbrs(v)) {
        if (n.v == v) {
            // plain self-loops do nothing, Hadamard ones add pi and 1/sqrt2 each
            for (int i = 0; i < n.had; ++i) {
                beta += Phase(4);
                loops *= inv_sqrt2();
            }
            continue;
        }
        for (int i = 0; i < n.plain; ++i) wires.emplace_back(n.v, EdgeKind::Plain);
        for (int i = 0; i < n.had; ++i) wires.emplace_back(n.v, EdgeKind::Hadamard);
    }
    DecompositionSum out;
    for (int branch = 0; branch < 2; ++branch) {
        Diagram t = d;
        t.remove_vertex(v);
        for (const auto& [w, k] : wires) {
            int x = t.add_vertex(VertexKind::X, Phase(branch ? 4 : 0), d.region(v));
            t.add_edge(x, w, k);
        }
        t.mul_scalar(loops.mul_sqrt2_pow(-int(wires.size())));
        if (branch) t.mul_scalar(ExactScalar::phase(beta));
        out.terms.push_back(std::move(t));
    }
    out.provenance.push_back({"cut", v, 0, ""});
    return out;
}

std::vector<int> cut_candidates(const Diagram& d) {
    std::vector<int> dist(d.id_bound(), -1), queue;
    for (int v : d.vertices())
        if (!d.is_boundary(v) && d.phase(v).is_t_like()) {
            dist[v] = 0;
            queue.push_back(v);
        }
    for (size_t i = 0; i < queue.size(); ++i) {
        int u = queue[i];
        if (dist[u] >= 2) continue;
        for (const Nbr& n : d.nbrs(u))
            if (dist[n.v] < 0) {
                dist[n.v] = dist[u] + 1;
                queue.push_back(n.v);
            }
    }
    std::vector<int> out;
    for (int v : d.vertices())
        if (dist[v] >= 0 && !d.is_boundary(v) && d.kind(v) == VertexKind::Z) out.push_back(v);
    return out;
}

namespace {

struct Score {
    int score = 0;
    int total = 0;
    std::vector<int> key;
    bool better_than(const Score& o) const {
        if (score != o.score) return score > o.score;
        if (total != o.total) return total < o.total;
        return key < o.key;
    }
};

}  // namespace

CutChoice select_cut(const Diagram& d, const CutOptions& opt) {
    const int t0 = t_count(d);
    auto cands = cut_candidates(d);
    if (cands.empty()) throw DecompError("select_cut: no internal vertex available");

    std::vector<Score> single(cands.size());
    parallel_for(cands.size(), opt.jobs, [&](size_t i) {
        auto s = cut_spider(d, cands[i]);
        int ta = t_count(full_reduce(s.terms[0])), tb = t_count(full_reduce(s.terms[1]));
        single[i] = {t0 - std::max(ta, tb), ta + tb, {cands[i]}};
    });
    Score best = single[0];
    for (const auto& s : single)
        if (s.better_than(best)) best = s;
    CutChoice choice{best.key[0], -1, best.score, best.total};
    if (!opt.pair_lookahead) return choice;

    // Two cuts whose value only shows up together, e.g. the two ancillas of a double check.
    std::vector<int> pauli;
    for (int v : cands)
        if (d.phase(v).is_pauli()) pauli.push_back(v);
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < pauli.size(); ++i)
        for (size_t j = i + 1; j < pauli.size(); ++j) pairs.emplace_back(pauli[i], pauli[j]);
    if (pairs.empty()) return choice;
    std::vector<Score> scored(pairs.size());
    parallel_for(pairs.size(), opt.jobs, [&](size_t i) {
        auto [u, v] = pairs[i];
        auto first = cut_spider(d, u);
        std::vector<std::pair<uint64_t, int>> seen;
        int worst = 0;
        for (const auto& a : first.terms)
            for (auto& b : cut_spider(a, v).terms) {
                full_reduce_inplace(b);
                int t = t_count(b);
                worst = std::max(worst, t);
                uint64_t h = structural_hash(b);
                bool dup = false;
                for (const auto& [sh, st] : seen) dup |= sh == h;
                if (!dup) seen.emplace_back(h, t);
            }
        int total = 0;
        for (const auto& [sh, st] : seen) total += st;
        scored[i] = {t0 - worst, total, {u, v}};
    });
    Score pbest = scored[0];
    for (const auto& s : scored)
        if (s.better_than(pbest)) pbest = s;
    // a pair spends two cuts, so it has to beat two greedy cuts' worth of reduction
    if (pbest.score > 2 * best.score) return {pbest.key[0], pbest.key[1], pbest.score, pbest.total};
    return choice;
}

// ---------------------------------------------------------------- schedules

json schedule_to_json(const CutSchedule& s) {
    auto enc = [](const std::vector<CutSelector>& steps) {
        json a = json::array();
        for (const auto& c : steps) {
            if (c.kind == CutSelector::Kind::Auto) a.push_back("AUTO");
            else if (c.kind == CutSelector::Kind::Vertex) a.push_back(c.vertex);
            else a.push_back(c.anchor);
        }
        return a;
    };
    json j = {{"format", "zxcut-schedule"}, {"version", 1}, {"steps", enc(s.steps)}, {"auto_after", s.auto_after}};
    if (!s.region_steps.empty()) j["region_steps"] = enc(s.region_steps);
    return j;
}

CutSchedule schedule_from_json(const json& j) {
    auto dec = [](const json& a) {
        std::vector<CutSelector> out;
        if (!a.is_array()) throw DecompError("schedule steps must be a list");
        for (const auto& x : a) {
            if (x.is_number_integer()) out.push_back(CutSelector::at_vertex(x.get<int>()));
            else if (x.is_string() && x.get<std::string>() == "AUTO") out.push_back(CutSelector::automatic());
            else if (x.is_string()) out.push_back(CutSelector::at_anchor(x.get<std::string>()));
            else throw DecompError("schedule selector must be \"AUTO\", a vertex id or an anchor name");
        }
        return out;
    };
    try {
        if (j.is_array()) return {dec(j), false, {}};
        if (j.value("format", "") != "zxcut-schedule") throw DecompError("not a zxcut schedule");
        if (j.value("version", 0) != 1) throw DecompError("unsupported schedule version");
        CutSchedule s;
        s.steps = dec(j.at("steps"));
        s.auto_after = j.value("auto_after", false);
        if (j.contains("region_steps")) s.region_steps = dec(j.at("region_steps"));
        return s;
    } catch (const json::exception& e) {
        throw DecompError(std::string("malformed schedule: ") + e.what());
    }
}

CutSchedule load_schedule(const std::string& path) {
    std::string text;
    if (has_resource("schedules/" + path + ".json")) {
        text = std::string(resource("schedules/" + path + ".json"));
    } else {
        std::ifstream in(path);
        if (!in) throw DecompError("cannot read schedule '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return schedule_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw DecompError(std::string("malformed schedule: ") + e.what());
    }
}

CutSchedule builtin_schedule(const std::string& name) {
    if (!has_resource("schedules/" + name + ".json")) throw DecompError("no committed schedule '" + name + "'");
    return load_schedule(name);
}

// ---------------------------------------------------------------- pipeline

DecompositionSum dedup_terms(const DecompositionSum& s) {
    struct Slot {
        uint64_t hash;
        Diagram term;
    };
    std::vector<Slot> slots;
    std::multimap<uint64_t, size_t> index;
    DecompositionSum out;
    out.provenance = s.provenance;
    int merged = 0;
    for (const auto& t : s.terms) {
        uint64_t h = structural_hash(t);
        bool done = false;
        auto [lo, hi] = index.equal_range(h);
        for (auto it = lo; it != hi && !done; ++it) {
            Diagram& rep = slots[it->second].term;
            if (isomorphic(rep, t)) {
                rep.scalar() += t.scalar();
                done = true;
                ++merged;
            }
        }
        if (!done) {
            index.emplace(h, slots.size());
            slots.push_back({h, t});
        }
    }
    for (auto& sl : slots)
        if (!sl.term.scalar().is_zero()) out.terms.push_back(std::move(sl.term));
    if (merged) out.provenance.push_back({"dedup", -1, 0, std::to_string(merged) + " merged"});
    return out;
}

namespace {

struct Pending {
    Diagram working;
    Diagram reduced;
    int partner = -1;  // second half of a pair chosen by the lookahead
};

const std::string kPartner = "#partner";

CutChoice resolve(const Pending& p, const CutSelector& sel, const CutOptions& opt, int level) {
    const Diagram& d = p.working;
    switch (sel.kind) {
        case CutSelector::Kind::Vertex:
            if (!d.alive(sel.vertex) || d.is_boundary(sel.vertex))
                throw DecompError("schedule step " + std::to_string(level) + ": vertex " + std::to_string(sel.vertex) +
                                  " is not an internal spider of the simplified term");
            return {sel.vertex, -1, 0, 0};
        case CutSelector::Kind::Anchor: {
            auto it = d.anchors().find(sel.anchor);
            if (it == d.anchors().end() || !d.alive(it->second) || d.is_boundary(it->second))
                throw DecompError("schedule step " + std::to_string(level) + ": anchor '" + sel.anchor +
                                  "' is not present in the simplified term");
            return {it->second, -1, 0, 0};
        }
        default:
            if (p.partner >= 0 && d.alive(p.partner)) return {p.partner, -1, 0, 0};
            return select_cut(d, opt);
    }
}

DecompositionSum run_cutting_many(const std::vector<Diagram>& start, const CutSchedule& schedule, int target_t,
                                  const CutOptions& opt, CuttingStats* stats) {
    CuttingStats local;
    CuttingStats& st = stats ? *stats : local;
    DecompositionSum finished;
    std::vector<Pending> pending;
    if (start.size() == 1 && t_count(start[0]) <= target_t) {
        finished.terms.push_back(start[0]);
        st.terms_before_dedup = 1;
        return finished;
    }
    for (const auto& d : start) {
        Pending p{basic_simp(d), {}};
        p.reduced = full_reduce(p.working);
        if (t_count(p.reduced) <= target_t) finished.terms.push_back(std::move(p.reduced));
        else pending.push_back(std::move(p));
    }
    int raw_terms = int(finished.terms.size());
    for (int level = 0; !pending.empty(); ++level) {
        const bool scheduled = level < int(schedule.steps.size());
        if (!scheduled && !schedule.auto_after) break;
        const CutSelector sel = scheduled ? schedule.steps[level] : CutSelector::automatic();
        std::vector<int> chosen;
        std::vector<Pending> next;
        for (auto& p : pending) {
            const CutChoice c = resolve(p, sel, opt, level);
            const int v = c.vertex;
            chosen.push_back(v);
            auto branches = cut_spider(p.working, v);
            std::vector<Pending> kids(2);
            parallel_for(2, opt.jobs, [&](size_t i) {
                Diagram& b = branches.terms[i];
                if (c.partner >= 0) b.anchors()[kPartner] = c.partner;
                kids[i].working = basic_simp(b);
                auto it = kids[i].working.anchors().find(kPartner);
                if (it != kids[i].working.anchors().end()) {
                    kids[i].partner = it->second;
                    kids[i].working.anchors().erase(it);
                }
                kids[i].reduced = full_reduce(kids[i].working);
            });
            for (auto& k : kids) {
                if (t_count(k.reduced) <= target_t) {
                    finished.terms.push_back(std::move(k.reduced));
                    ++raw_terms;
                } else {
                    next.push_back(std::move(k));
                }
            }
            finished.provenance.push_back({"cut", v, level, ""});
        }
        st.cuts += int(pending.size());
        st.levels = level + 1;
        st.chosen.push_back(chosen);
        pending = std::move(next);
    }
    for (auto& p : pending) {
        finished.terms.push_back(std::move(p.reduced));
        ++raw_terms;
    }
    st.terms_before_dedup = raw_terms;
    auto out = dedup_terms(finished);
    for (auto& t : out.terms) t = t.compacted();
    return out;
}

}  // namespace

DecompositionSum run_cutting(const Diagram& d, const CutSchedule& schedule, int target_t, const CutOptions& opt,
                             CuttingStats* stats) {
    return run_cutting_many({d}, schedule, target_t, opt, stats);
}

DecompositionSum expand_single_t(const DecompositionSum& s) {
    DecompositionSum out;
    out.provenance = s.provenance;
    std::vector<Diagram> work(s.terms.begin(), s.terms.end());
    while (!work.empty()) {
        Diagram d = std::move(work.back());
        work.pop_back();
        int odd = -1;
        for (int v : d.vertices())
            if (!d.is_boundary(v) && d.phase(v).is_t_like()) {
                odd = v;
                break;
            }
        if (odd < 0) {
            out.terms.push_back(std::move(d));
            continue;
        }
        if (d.kind(odd) != VertexKind::Z) d = to_graph_like(d);
        auto parts = cut_spider(d, odd);
        // reversed so that the |0> branch comes out first
        work.push_back(std::move(parts.terms[1]));
        work.push_back(std::move(parts.terms[0]));
    }
    for (auto& t : out.terms) t = full_reduce(t).compacted();
    out.provenance.push_back({"expand", -1, 0, std::to_string(out.terms.size()) + " Clifford terms"});
    return out;
}

// ---------------------------------------------------------------- magic state decompositions

int extract_t_leg(Diagram& d, int v) {
    if (!d.alive(v) || d.is_boundary(v) || !d.phase(v).is_t_like())
        throw DecompError("vertex " + std::to_string(v) + " is not an odd-phase spider");
    if (is_t_leaf(d, v)) return v;
    if (d.kind(v) != VertexKind::Z) throw DecompError("vertex " + std::to_string(v) + " is not a Z spider");
    d.add_to_phase(v, Phase(-1));
    int leaf = d.add_vertex(VertexKind::Z, Phase(1), d.region(v));
    d.add_edge(v, leaf);
    return leaf;
}

namespace {

std::vector<int> extract_all(Diagram& d, const std::vector<int>& vs) {
    std::set<int> uniq(vs.begin(), vs.end());
    if (uniq.size() != vs.size()) throw DecompError("legs must be distinct");
    std::vector<int> out;
    for (int v : vs) out.push_back(extract_t_leg(d, v));
    return out;
}

}  // namespace

DecompositionSum decompose_two_t(const Diagram& d, int u, int v) {
    Diagram w = d;
    return plug_all(w, extract_all(w, {u, v}), two_t_states(), "two-t");
}

DecompositionSum decompose_bss(const Diagram& d, const std::vector<int>& legs) {
    if (legs.size() != 6) throw DecompError("BSS needs exactly 6 T legs, got " + std::to_string(legs.size()));
    Diagram w = d;
    return plug_all(w, extract_all(w, legs), bss_states(), "bss");
}

Diagram t_states(int k) {
    Diagram d;
    for (int j = 0; j < k; ++j) d.add_edge(d.add_vertex(VertexKind::Z, Phase(1)), d.add_output());
    return d;
}

Diagram build_cat_state(int m) {
    if (m < 1) throw DecompError("cat state needs m >= 1");
    Diagram d;
    int hub = d.add_vertex(VertexKind::X);
    for (int j = 0; j < m; ++j) {
        int s = d.add_vertex(VertexKind::Z, Phase(1));
        d.add_edge(hub, s);
        d.add_edge(s, d.add_output());
    }
    d.mul_scalar(ExactScalar::sqrt2_pow(m - 1));
    return d;
}

bool is_cat_hub(const Diagram& d, int hub) {
    if (!d.alive(hub) || d.kind(hub) != VertexKind::X || !d.phase(hub).is_zero()) return false;
    const auto& ns = d.nbrs(hub);
    if (ns.empty()) return false;
    for (const Nbr& n : ns) {
        if (n.v == hub || n.plain != 1 || n.had != 0) return false;
        const int s = n.v;
        if (d.kind(s) != VertexKind::Z || d.phase(s).num() != 1 || d.degree(s) != 2) return false;
        for (const Nbr& m : d.nbrs(s))
            if (m.v == s || (m.v != hub && d.connected(m.v, hub))) return false;
    }
    return true;
}

DecompositionSum decompose_cat(const Diagram& d, int hub) {
    if (!is_cat_hub(d, hub)) throw DecompError("vertex " + std::to_string(hub) + " is not the hub of a cat pattern");
    const int m = int(d.nbrs(hub).size());
    DecompositionSum states = cat_states(m);
    // the leg spiders become degree-1 leaves; their pi/4 phases are part of the state tensor
    Diagram w = d;
    std::vector<int> leaves;
    for (const Nbr& n : d.nbrs(hub)) {
        int s = n.v;
        w.remove_edge(hub, s, EdgeKind::Plain);
        leaves.push_back(s);
    }
    w.remove_vertex(hub);
    auto out = plug_all(w, leaves, states, "cat");
    for (auto& t : out.terms) t = basic_simp(t);
    return out;
}

DecompositionSum decompose_cat6(const Diagram& d, int hub) {
    if (!is_cat_hub(d, hub) || d.nbrs(hub).size() != 6)
        throw DecompError("vertex " + std::to_string(hub) + " is not the hub of a cat6 pattern");
    return decompose_cat(d, hub);
}

DecompositionSum magic_from_cat(const Diagram& d, int leg) {
    if (!d.alive(leg)) throw DecompError("magic_from_cat: vertex " + std::to_string(leg) + " does not exist");
    // accept the output boundary of a leg or the leg's Z(pi/4) spider
    int s = leg, b = -1;
    if (d.is_boundary(leg)) {
        b = leg;
        s = only_nbr(d, leg).v;
    } else {
        for (const Nbr& n : d.nbrs(leg))
            if (n.v != leg && d.is_boundary(n.v)) b = n.v;
    }
    int hub = -1;
    for (const Nbr& n : d.nbrs(s))
        if (is_cat_hub(d, n.v)) hub = n.v;
    if (hub < 0 || b < 0 || std::find(d.outputs().begin(), d.outputs().end(), b) == d.outputs().end())
        throw DecompError("magic_from_cat: vertex " + std::to_string(leg) + " is not an outward cat leg");
    Diagram w = d;
    EdgeKind k = single_edge_kind(only_nbr(d, b));
    w.outputs_mut().erase(std::find(w.outputs_mut().begin(), w.outputs_mut().end(), b));
    w.remove_vertex(b);
    int eff = w.add_vertex(VertexKind::Z, Phase(7));
    w.add_edge(s, eff, k);
    auto out = decompose_cat(w, hub);
    out.provenance.push_back({"magic-from-cat", leg, 0, ""});
    return out;
}

Diagram build_cutting_example() {
    Diagram d;
    int a = d.add_vertex(VertexKind::Z), b = d.add_vertex(VertexKind::Z), c = d.add_vertex(VertexKind::Z);
    for (int v : {a, b, c}) d.add_edge(v, d.add_output());
    auto gadget = [&](const std::vector<int>& support, Phase p) {
        int hub = d.add_vertex(VertexKind::Z);
        int leaf = d.add_vertex(VertexKind::Z, p);
        d.add_edge(hub, leaf, EdgeKind::Hadamard);
        for (int v : support) d.add_edge(hub, v, EdgeKind::Hadamard);
        d.mul_scalar(ExactScalar::sqrt2_pow(int(support.size())));
    };
    gadget({a, b}, Phase(1));
    gadget({b}, Phase(7));
    gadget({a, c}, Phase(1));
    gadget({c}, Phase(7));
    gadget({a, b, c}, Phase(1));
    gadget({b, c}, Phase(7));
    d.anchors()["cut"] = a;
    return d;
}

// ---------------------------------------------------------------- repeated decompositions

namespace {

std::vector<int> odd_spiders(const Diagram& d) {
    std::vector<int> out;
    for (int v : d.vertices())
        if (!d.is_boundary(v) && d.phase(v).is_t_like()) out.push_back(v);
    return out;
}

// Repeatedly replaces groups of T legs chosen by `step` until every term is Clifford.
DecompositionSum repeated(const Diagram& d, int jobs,
                          const std::function<DecompositionSum(const Diagram&, const std::vector<int>&)>& step) {
    std::vector<Diagram> level{full_reduce(d)};
    DecompositionSum out;
    while (!level.empty()) {
        std::vector<std::vector<Diagram>> produced(level.size());
        std::vector<char> clifford(level.size(), 0);
        parallel_for(level.size(), jobs, [&](size_t i) {
            Diagram x = level[i];
            if (!is_graph_like(x)) x = to_graph_like(x);
            auto odd = odd_spiders(x);
            if (odd.empty()) {
                clifford[i] = 1;
                return;
            }
            auto parts = step(x, odd);
            for (auto& t : parts.terms) produced[i].push_back(full_reduce(t));
        });
        std::vector<Diagram> next;
        for (size_t i = 0; i < level.size(); ++i) {
            if (clifford[i]) out.terms.push_back(level[i].compacted());
            for (auto& t : produced[i]) next.push_back(std::move(t));
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace

DecompositionSum bss_decompose(const Diagram& d, int jobs) {
    auto out = repeated(d, jobs, [](const Diagram& x, const std::vector<int>& odd) {
        if (odd.size() >= 6) return decompose_bss(x, {odd.begin(), odd.begin() + 6});
        if (odd.size() >= 2) return decompose_two_t(x, odd[0], odd[1]);
        return cut_spider(x, odd[0]);
    });
    out.provenance.push_back({"bss", -1, 0, std::to_string(out.size()) + " Clifford terms"});
    return out;
}

DecompositionSum two_t_decompose(const Diagram& d, int jobs) {
    auto out = repeated(d, jobs, [](const Diagram& x, const std::vector<int>& odd) {
        if (odd.size() >= 2) {
            Diagram w = x;
            auto legs = extract_all(w, {odd[0], odd[1]});
            return plug_all(w, legs, two_t_states(), "two-t");
        }
        return cut_spider(x, odd[0]);
    });
    out.provenance.push_back({"two-t", -1, 0, std::to_string(out.size()) + " Clifford terms"});
    return out;
}

DecompositionSum cat_decompose(const Diagram& d, int jobs) {
    auto out = repeated(d, jobs, [](const Diagram& x, const std::vector<int>& odd) {
        if (odd.size() >= 2) {
            const int k = std::min<int>(5, int(odd.size()));
            Diagram w = x;
            auto legs = extract_all(w, {odd.begin(), odd.begin() + k});
            return plug_all(w, legs, magic_states_via_cat(k), "cat");
        }
        return cut_spider(x, odd[0]);
    });
    out.provenance.push_back({"cat", -1, 0, std::to_string(out.size()) + " Clifford terms"});
    return out;
}

// ---------------------------------------------------------------- strategies

const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> n{"cut", "cut-reuse", "bss", "cat", "single-t", "two-t"};
    return n;
}

json report_to_json(const StrategyReport& r) {
    json j = {{"format", "zxcut-report"},
              {"version", 1},
              {"strategy", r.strategy},
              {"circuit", r.circuit},
              {"t_count_initial", r.t_count_initial},
              {"t_count_reduced", r.t_count_reduced},
              {"cuts", r.cuts},
              {"cut_vertices", r.cut_vertices},
              {"terms_before_dedup", r.terms_before_dedup},
              {"terms_after_dedup", r.terms_after_dedup},
              {"term_t_counts", r.term_t_counts},
              {"materialised", r.materialised},
              {"notes", r.notes}};
    if (r.materialised || r.final_terms < 9e15) j["final_terms"] = static_cast<uint64_t>(std::llround(r.final_terms));
    else j["final_terms"] = r.final_terms;
    if (r.reference)
        j["reference"] = {{"label", "published reference values (not computed here)"},
                          {"bss", r.reference->bss},
                          {"cat", r.reference->cat},
                          {"cutting", r.reference->cutting},
                          {"worst_case", r.reference->worst_case}};
    return j;
}

namespace {

std::optional<ReferenceCounts> reference_for(const std::string& label) {
    if (label == "msc-d3") return ReferenceCounts{"68", "108", "4", "32768"};
    if (label == "msc-d5") return ReferenceCounts{"~29176466 (estimate)", "6377292", "8", "9.01e15"};
    return std::nullopt;
}

void finish_expansion(StrategyResult& res, const StrategyOptions& opt) {
    double total = 0;
    for (const auto& t : res.pre_expansion.terms) {
        res.report.term_t_counts.push_back(t_count(t));
        total += std::ldexp(1.0, t_count(t));
    }
    res.report.final_terms = total;
    if (total <= opt.max_terms) {
        res.sum = expand_single_t(res.pre_expansion);
        res.report.final_terms = double(res.sum.size());
    } else {
        res.report.materialised = false;
    }
}

void finish_repeated(StrategyResult& res, const Diagram& reduced, const StrategyOptions& opt,
                     DecompositionSum (*fn)(const Diagram&, int), double estimate) {
    if (estimate > opt.max_terms) {
        res.report.materialised = false;
        res.report.final_terms = estimate;
        res.report.notes.push_back("count is an estimate; the sum was not built");
        return;
    }
    res.sum = fn(reduced, opt.jobs);
    res.report.final_terms = double(res.sum.size());
    res.report.terms_before_dedup = int(res.sum.size());
    res.report.terms_after_dedup = int(res.sum.size());
}

}  // namespace

StrategyResult run_strategy_on(const std::string& strategy, const Diagram& d, const std::string& label,
                               const StrategyOptions& opt) {
    if (std::find(strategy_names().begin(), strategy_names().end(), strategy) == strategy_names().end())
        throw DecompError("unknown strategy '" + strategy + "'");
    if (strategy == "cut-reuse") throw DecompError("cut-reuse needs a circuit with a marked d3 region");
    StrategyResult res;
    auto& r = res.report;
    r.strategy = strategy;
    r.circuit = label;
    r.reference = reference_for(label);
    const auto t0 = std::chrono::steady_clock::now();
    r.t_count_initial = t_count(d);
    Diagram reduced = full_reduce(d);
    r.t_count_reduced = t_count(reduced);
    const int t = r.t_count_reduced;
    CutOptions copt;
    copt.jobs = opt.jobs;

    if (strategy == "cut") {
        CutSchedule sched;
        if (opt.schedule) sched = *opt.schedule;
        if (opt.naive) {
            if (!opt.schedule) sched = {{CutSelector::automatic(), CutSelector::automatic()}, false, {}};
            sched.auto_after = false;
        }
        CuttingStats st;
        res.pre_expansion = run_cutting(d, sched, opt.target_t, copt, &st);
        r.cuts = st.cuts;
        r.cut_vertices = st.chosen;
        r.terms_before_dedup = st.terms_before_dedup;
        r.terms_after_dedup = int(res.pre_expansion.size());
        if (opt.bss_fallback) {
            double total = 0;
            for (const auto& term : res.pre_expansion.terms) {
                r.term_t_counts.push_back(t_count(term));
                auto part = bss_decompose(term, opt.jobs);
                r.notes.push_back("BSS on a term of T-count " + std::to_string(t_count(term)) + ": " +
                                  std::to_string(part.size()) + " Clifford terms");
                total += double(part.size());
                res.sum.append(std::move(part));
            }
            r.final_terms = total;
            if (label == "msc-d5") r.notes.push_back("published reference for this path: 72");
        } else {
            finish_expansion(res, opt);
        }
    } else if (strategy == "single-t") {
        res.pre_expansion.terms.push_back(reduced.compacted());
        r.terms_before_dedup = r.terms_after_dedup = 1;
        finish_expansion(res, opt);
    } else if (strategy == "two-t") {
        finish_repeated(res, reduced, opt, &two_t_decompose, std::ldexp(1.0, (t + 1) / 2));
    } else if (strategy == "bss") {
        finish_repeated(res, reduced, opt, &bss_decompose,
                        std::pow(7.0, t / 6) * std::ldexp(1.0, (t % 6 + 1) / 2));
    } else if (strategy == "cat") {
        double est = 1;
        for (int left = t; left > 1;) {
            int k = std::min(5, left);
            est *= k >= 4 ? 3 : 2;
            left -= k - 1;
        }
        finish_repeated(res, reduced, opt, &cat_decompose, est * (t > 0 ? 2 : 1));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

StrategyResult run_strategy(const std::string& strategy, const std::string& circuit, const StrategyOptions& opt) {
    Circuit c = load_circuit(circuit);
    if (strategy != "cut-reuse") return run_strategy_on(strategy, circuit_to_diagram(c), circuit, opt);

    auto names = c.region_names();
    if (std::find(names.begin(), names.end(), "d3") == names.end())
        throw DecompError("cut-reuse needs a circuit with a marked d3 region (msc-d5)");
    const auto t0 = std::chrono::steady_clock::now();
    Circuit inner = c.region("d3");
    Circuit rest = c.after_region("d3");
    for (size_t i = 0; i < inner.ops.size(); ++i)
        if (c.ops[i].region != "d3") throw DecompError("cut-reuse: the d3 region must open the circuit");
    Diagram full = circuit_to_diagram(c);
    Diagram inner_d = circuit_to_diagram(inner);
    Diagram rest_d = circuit_to_diagram(rest);
    if (inner_d.num_outputs() != rest_d.num_inputs())
        throw DecompError("cut-reuse: the d3 region's outputs do not line up with the rest of the circuit");

    StrategyResult res;
    auto& r = res.report;
    r.strategy = strategy;
    r.circuit = circuit;
    r.reference = reference_for(circuit);
    r.t_count_initial = t_count(full);
    r.t_count_reduced = t_count(full_reduce(full));
    CutOptions copt;
    copt.jobs = opt.jobs;

    CutSchedule inner_sched;
    CutSchedule outer_sched;
    if (opt.schedule) {
        outer_sched = *opt.schedule;
        inner_sched.steps = opt.schedule->region_steps;
        inner_sched.auto_after = opt.schedule->region_steps.empty();
    }
    CuttingStats inner_st;
    DecompositionSum stored = run_cutting(inner_d, inner_sched, 1, copt, &inner_st);
    r.notes.push_back("d3 region: " + std::to_string(inner_st.cuts) + " cuts, " + std::to_string(stored.size()) +
                      " terms of T-count " + [&] {
                          std::string s;
                          for (const auto& x : stored.terms) s += (s.empty() ? "" : ",") + std::to_string(t_count(x));
                          return s;
                      }());
    std::vector<Diagram> start;
    for (const auto& term : stored.terms) start.push_back(compose(term, rest_d));
    CuttingStats st;
    res.pre_expansion = run_cutting_many(start, outer_sched, opt.target_t, copt, &st);
    r.cuts = st.cuts;
    r.cut_vertices = st.chosen;
    r.terms_before_dedup = st.terms_before_dedup;
    r.terms_after_dedup = int(res.pre_expansion.size());
    finish_expansion(res, opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace zxcut
