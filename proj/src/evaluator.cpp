#include "zxcut/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numeric>

#include "zxcut/resources.hpp"
#include "zxcut/rewrite.hpp"

namespace zxcut {

DenseState DenseState::zeros(int legs) {
    DenseState s;
    s.legs = legs;
    s.amps.assign(size_t(1) << legs, ExactScalar::zero());
    return s;
}

bool DenseState::is_zero() const {
    return std::all_of(amps.begin(), amps.end(), [](const ExactScalar& a) { return a.is_zero(); });
}

std::vector<std::complex<double>> DenseState::to_complex() const {
    std::vector<std::complex<double>> r(amps.size());
    for (size_t i = 0; i < amps.size(); ++i) r[i] = amps[i].to_complex();
    return r;
}

DenseState& DenseState::operator+=(const DenseState& o) {
    if (amps.empty() && legs == 0) {
        *this = o;
        return *this;
    }
    if (o.legs != legs) throw DiagramError("adding states with different leg counts");
    for (size_t i = 0; i < amps.size(); ++i) amps[i] += o.amps[i];
    return *this;
}

namespace {

struct Cyc {
    int64_t c[4] = {0, 0, 0, 0};

    bool zero() const { return !c[0] && !c[1] && !c[2] && !c[3]; }
};

int64_t chk(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw ScalarOverflow("contraction overflow");
    return int64_t(v);
}

Cyc mul(const Cyc& a, const Cyc& b) {
    __int128 r[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < 4; ++j) {
            __int128 p = __int128(a.c[i]) * b.c[j];
            if (i + j >= 4) r[i + j - 4] -= p;
            else r[i + j] += p;
        }
    }
    return {{chk(r[0]), chk(r[1]), chk(r[2]), chk(r[3])}};
}

void add_to(Cyc& a, const Cyc& b) {
    for (int i = 0; i < 4; ++i) a.c[i] = chk(__int128(a.c[i]) + b.c[i]);
}

Cyc omega(int j) {
    j = ((j % 8) + 8) % 8;
    Cyc r;
    r.c[j % 4] = j < 4 ? 1 : -1;
    return r;
}

struct Factor {
    std::vector<int> vars;  // sorted; bit i of an index is vars[i]
    std::vector<Cyc> t;
};

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

size_t gather(size_t idx, const std::vector<int>& pos) {
    size_t r = 0;
    for (size_t i = 0; i < pos.size(); ++i) r |= ((idx >> pos[i]) & 1u) << i;
    return r;
}

std::vector<int> positions(const std::vector<int>& sub, const std::vector<int>& super) {
    std::vector<int> pos;
    for (int v : sub) pos.push_back(int(std::lower_bound(super.begin(), super.end(), v) - super.begin()));
    return pos;
}

// Divides the table by sqrt 2 while possible, returns the number of divisions.
int reduce(Factor& f) {
    int n = 0;
    for (;;) {
        bool any = false;
        for (const Cyc& x : f.t) {
            if (x.zero()) continue;
            any = true;
            ExactScalar::Coeffs c{x.c[0], x.c[1], x.c[2], x.c[3]};
            if (!divisible_by_sqrt2(c)) return n;
        }
        if (!any) return n;
        for (Cyc& x : f.t) {
            auto c = div_sqrt2({x.c[0], x.c[1], x.c[2], x.c[3]});
            x = {{c[0], c[1], c[2], c[3]}};
        }
        ++n;
    }
}

Factor multiply_all(const std::vector<const Factor*>& fs, const std::vector<int>& vars, int limit) {
    if (int(vars.size()) > limit)
        throw BudgetExceeded("contraction table with " + std::to_string(vars.size()) + " variables exceeds budget of " +
                             std::to_string(limit));
    Factor out;
    out.vars = vars;
    out.t.assign(size_t(1) << vars.size(), Cyc{{1, 0, 0, 0}});
    for (const Factor* f : fs) {
        auto pos = positions(f->vars, vars);
        for (size_t i = 0; i < out.t.size(); ++i) {
            if (out.t[i].zero()) continue;
            out.t[i] = mul(out.t[i], f->t[gather(i, pos)]);
        }
    }
    return out;
}

struct Contraction {
    std::vector<int> open_class;  // per boundary position
    std::vector<int> open_vars;   // sorted distinct classes
    Factor result;
    int sqrt2_den = 0;            // value = result * 2^{-sqrt2_den/2}
    bool zero = false;
};

Contraction contract(const Diagram& d, const ContractOptions& opt) {
    const int n = d.id_bound();
    UnionFind uf(n);
    auto is_x = [&](int v) { return d.kind(v) == VertexKind::X ? 1 : 0; };
    struct HEdge {
        int a, b;
    };
    std::vector<HEdge> hedges;
    for (const auto& e : d.edges()) {
        int parity = (e.kind == EdgeKind::Hadamard ? 1 : 0);
        if (e.src != e.dst) parity += is_x(e.src) + is_x(e.dst);
        if (parity % 2 == 0) {
            if (e.src != e.dst) uf.unite(e.src, e.dst);
        } else {
            hedges.push_back({e.src, e.dst});
        }
    }
    std::map<int, int> cls_phase;
    for (int v : d.vertices()) cls_phase[uf.find(v)] += d.phase(v).num();

    Contraction c;
    int den = 0;
    std::vector<Factor> factors;
    for (auto [cl, ph] : cls_phase) {
        if (ph % 8 == 0) continue;
        factors.push_back({{cl}, {omega(0), omega(ph)}});
    }
    std::map<std::pair<int, int>, int> hcount;
    std::map<int, int> hself;
    for (auto [a, b] : hedges) {
        a = uf.find(a);
        b = uf.find(b);
        ++den;
        if (a == b) ++hself[a];
        else ++hcount[{std::min(a, b), std::max(a, b)}];
    }
    for (auto [cl, k] : hself)
        if (k % 2) factors.push_back({{cl}, {omega(0), omega(4)}});
    for (auto [ab, k] : hcount) {
        if (k % 2 == 0) continue;
        factors.push_back({{ab.first, ab.second}, {omega(0), omega(0), omega(0), omega(4)}});
    }

    for (int b : d.boundary_order()) c.open_class.push_back(uf.find(b));
    c.open_vars = c.open_class;
    std::sort(c.open_vars.begin(), c.open_vars.end());
    c.open_vars.erase(std::unique(c.open_vars.begin(), c.open_vars.end()), c.open_vars.end());

    std::vector<int> internal;
    for (auto [cl, ph] : cls_phase)
        if (!std::binary_search(c.open_vars.begin(), c.open_vars.end(), cl)) internal.push_back(cl);

    // Variables that appear in no factor contribute a factor 2 each.
    std::vector<char> eliminated(n, 0);
    while (!internal.empty()) {
        int best = -1;
        size_t best_deg = SIZE_MAX;
        std::vector<int> best_scope;
        for (int x : internal) {
            std::vector<int> scope;
            for (const Factor& f : factors)
                if (std::binary_search(f.vars.begin(), f.vars.end(), x))
                    scope.insert(scope.end(), f.vars.begin(), f.vars.end());
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
            if (scope.size() < best_deg) {
                best_deg = scope.size();
                best = x;
                best_scope = std::move(scope);
            }
        }
        std::erase(internal, best);
        std::vector<const Factor*> use;
        std::vector<Factor> keep;
        for (Factor& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), best)) use.push_back(&f);
        }
        if (use.empty()) {
            den -= 2;  // free variable: factor 2
            continue;
        }
        Factor joint = multiply_all(use, best_scope, opt.max_table_vars);
        int bpos = int(std::lower_bound(best_scope.begin(), best_scope.end(), best) - best_scope.begin());
        Factor out;
        for (int v : best_scope)
            if (v != best) out.vars.push_back(v);
        out.t.assign(size_t(1) << out.vars.size(), Cyc{});
        for (size_t i = 0; i < joint.t.size(); ++i) {
            size_t lo = i & ((size_t(1) << bpos) - 1);
            size_t hi = (i >> (bpos + 1)) << bpos;
            add_to(out.t[lo | hi], joint.t[i]);
        }
        den -= reduce(out);
        for (Factor& f : factors)
            if (!std::binary_search(f.vars.begin(), f.vars.end(), best)) keep.push_back(std::move(f));
        bool all_zero = std::all_of(out.t.begin(), out.t.end(), [](const Cyc& x) { return x.zero(); });
        if (all_zero) {
            c.zero = true;
            return c;
        }
        keep.push_back(std::move(out));
        factors = std::move(keep);
    }
    std::vector<const Factor*> rest;
    for (const Factor& f : factors) rest.push_back(&f);
    c.result = multiply_all(rest, c.open_vars, opt.max_table_vars);
    c.sqrt2_den = den;
    return c;
}

}  // namespace

DenseState contract_dense(const Diagram& d, const ContractOptions& opt) {
    Contraction c = contract(d, opt);
    const int legs = int(c.open_class.size());
    DenseState s = DenseState::zeros(legs);
    if (c.zero || d.scalar().is_zero()) return s;
    std::vector<int> pos = positions(c.open_class, c.open_vars);
    for (size_t idx = 0; idx < s.amps.size(); ++idx) {
        // bit for boundary position p is (idx >> (legs-1-p)) & 1
        size_t cls_assign = 0;
        bool consistent = true;
        std::vector<int> seen(c.open_vars.size(), -1);
        for (int p = 0; p < legs; ++p) {
            int bit = int((idx >> (legs - 1 - p)) & 1u);
            int q = pos[p];
            if (seen[q] >= 0 && seen[q] != bit) {
                consistent = false;
                break;
            }
            seen[q] = bit;
            cls_assign |= size_t(bit) << q;
        }
        if (!consistent) continue;
        const Cyc& v = c.result.t[cls_assign];
        if (v.zero()) continue;
        s.amps[idx] = ExactScalar(c.sqrt2_den, {v.c[0], v.c[1], v.c[2], v.c[3]}) * d.scalar();
    }
    return s;
}

ExactScalar contract_scalar(const Diagram& d, const ContractOptions& opt) {
    if (!d.boundary_order().empty()) throw DiagramError("contract_scalar needs a closed diagram");
    return contract_dense(d, opt).amps.at(0);
}

DenseState eval_clifford_term(const Diagram& d, const ContractOptions& opt) {
    if (d.t_count() != 0) throw DiagramError("eval_clifford_term: term has odd phases");
    return contract_dense(full_reduce(d), opt);
}

DenseState eval_sum(const DecompositionSum& s, int jobs, const ContractOptions& opt) {
    if (s.terms.empty()) return {};
    const int legs = int(s.terms.front().boundary_order().size());
    std::vector<DenseState> parts(s.terms.size());
    auto work = [&](size_t i) { parts[i] = contract_dense(full_reduce(s.terms[i]), opt); };
    if (jobs <= 1) {
        for (size_t i = 0; i < s.terms.size(); ++i) work(i);
    } else {
        std::vector<std::future<void>> fut;
        std::atomic<size_t> next{0};
        for (int j = 0; j < jobs; ++j)
            fut.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next++; i < s.terms.size(); i = next++) work(i);
            }));
        for (auto& f : fut) f.get();
    }
    DenseState total = DenseState::zeros(legs);
    for (const auto& p : parts) total += p;
    return total;
}

const ColourCode& colour_code(int distance) {
    static std::mutex mu;
    static std::map<int, ColourCode> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(distance);
    if (it != cache.end()) return it->second;
    std::string name = "codes/colour_code_d" + std::to_string(distance) + ".json";
    auto j = nlohmann::json::parse(resource(name));
    ColourCode cc;
    cc.distance = j.at("distance").get<int>();
    cc.n = j.at("n").get<int>();
    cc.faces = j.at("faces").get<std::vector<std::vector<int>>>();
    return cache[distance] = cc;
}

DenseState logical_T_state(int distance) {
    const ColourCode& cc = colour_code(distance);
    const int n = cc.n;
    std::vector<uint64_t> gens;
    for (const auto& f : cc.faces) {
        uint64_t m = 0;
        for (int q : f) m |= uint64_t(1) << (n - 1 - q);
        gens.push_back(m);
    }
    // Span of the X-type generators, via an echelon basis.
    std::vector<uint64_t> basis;
    for (uint64_t g : gens) {
        for (uint64_t b : basis) g = std::min(g, g ^ b);
        if (g) basis.push_back(g);
    }
    std::vector<uint64_t> span{0};
    for (uint64_t b : basis) {
        size_t m = span.size();
        for (size_t i = 0; i < m; ++i) span.push_back(span[i] ^ b);
    }
    const uint64_t all = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    DenseState s = DenseState::zeros(n);
    for (uint64_t x : span) {
        s.amps[x] += ExactScalar::one();
        s.amps[x ^ all] += ExactScalar::omega_pow(1);
    }
    return s;
}

double fidelity(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) throw DiagramError("fidelity: leg count mismatch");
    std::complex<double> ip = 0;
    double na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        ip += std::conj(a[i]) * b[i];
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
    }
    if (na == 0 || nb == 0) throw DiagramError("fidelity of a zero state");
    return std::clamp(std::norm(ip) / (na * nb), 0.0, 1.0);
}

double fidelity(const DenseState& a, const DenseState& b) { return fidelity(a.to_complex(), b.to_complex()); }

bool looks_like_stabiliser_state(const DenseState& s) {
    auto v = s.to_complex();
    std::vector<size_t> supp;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > 1e-12) supp.push_back(i);
    if (supp.empty()) return false;
    if ((supp.size() & (supp.size() - 1)) != 0) return false;
    std::vector<char> in(v.size(), 0);
    for (size_t i : supp) in[i] = 1;
    const size_t o = supp[0];
    for (size_t i : supp)
        for (size_t j : supp)
            if (!in[o ^ i ^ j]) return false;
    const double mag = std::abs(v[o]);
    for (size_t i : supp) {
        if (std::abs(std::abs(v[i]) - mag) > 1e-9 * mag) return false;
        std::complex<double> r = v[i] / v[o];
        bool ok = std::abs(r - 1.0) < 1e-9 || std::abs(r + 1.0) < 1e-9 ||
                  std::abs(r - std::complex<double>(0, 1)) < 1e-9 || std::abs(r + std::complex<double>(0, 1)) < 1e-9;
        if (!ok) return false;
    }
    return true;
}

}  // namespace zxcut
