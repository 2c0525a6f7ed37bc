// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "random_circuit.hpp"
#include "test_util.hpp"
#include "zxcut/circuit.hpp"
#include "zxcut/decomp.hpp"
#include "zxcut/hash.hpp"
#include "zxcut/rewrite.hpp"
#include "zxcut/serialize.hpp"

using namespace zxcut;
using namespace zxtest;

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0) c.require(s < limit_s, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
    if (!c.ok) ++failures;
    std::printf("%s  %2d  %-34s %8.2fs  %s\n", c.ok ? "PASS" : "FAIL", n, title.c_str(), s, c.detail.c_str());
    std::fflush(stdout);
}

DenseState plain_sum(const DecompositionSum& s) {
    DenseState acc;
    for (const auto& t : s.terms) acc += contract_dense(t);
    return acc;
}

int max_t(const DecompositionSum& s) {
    int m = 0;
    for (const auto& t : s.terms) m = std::max(m, t_count(t));
    return m;
}

std::vector<int> odd_vertices(const Diagram& d) {
    std::vector<int> v;
    for (int x : d.vertices())
        if (!d.is_boundary(x) && d.phase(x).is_t_like()) v.push_back(x);
    return v;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "two-T identity", 1.0, [](Check& c) {
        Diagram d = t_states(2);
        auto v = odd_vertices(d);
        auto s = decompose_two_t(d, v[0], v[1]);
        c.require(s.size() == 2, "2 terms");
        c.require(max_t(s) == 0, "Clifford terms");
        // normalised |T>^2: 2^{-1} e^{i pi/4 |x|}
        DenseState want = DenseState::zeros(2);
        for (size_t x = 0; x < 4; ++x)
            want.amps[x] = ExactScalar::omega_pow(std::popcount(x)) * ExactScalar::sqrt2_pow(-2);
        DenseState got = plain_sum(s);
        for (auto& a : got.amps) a = a * ExactScalar::sqrt2_pow(-2);
        c.require(got == want, "exact amplitudes");
        c.note("2 terms, exact");
    });

    criterion(2, "BSS decomposition of |T>^6", 5.0, [](Check& c) {
        Diagram d = t_states(6);
        auto s = decompose_bss(d, odd_vertices(d));
        c.require(s.size() == 7, "7 terms");
        c.require(max_t(s) == 0, "Clifford terms");
        double f = fidelity(plain_sum(s).to_complex(), t_power(6));
        c.require(f >= 1 - 1e-12, "fidelity");
        c.note("7 terms, fidelity " + fmt(f));
    });

    criterion(3, "cat6 decomposition", 0, [](Check& c) {
        Diagram cat = build_cat_state(6);
        int hub = -1;
        for (int v : cat.vertices())
            if (is_cat_hub(cat, v)) hub = v;
        auto s = decompose_cat6(cat, hub);
        c.require(s.size() == 3, "3 terms");
        std::vector<cd> oracle(64);
        for (size_t x = 0; x < 64; ++x)
            oracle[x] = std::popcount(x) % 2 ? 0.0 : std::polar(1.0, std::numbers::pi / 4 * std::popcount(x));
        double f = fidelity(plain_sum(s).to_complex(), oracle);
        c.require(f >= 1 - 1e-12, "cat6 fidelity");
        auto m = magic_from_cat(cat, cat.outputs().back());
        c.require(m.size() == 3, "T-measured leg gives 3 terms");
        auto e = expand_single_t(m);
        c.require(e.size() == 6 && max_t(e) == 0, "6 Clifford terms after expansion");
        double f5 = fidelity(plain_sum(e).to_complex(), t_power(5));
        c.require(f5 >= 1 - 1e-12, "|T>^5 fidelity");
        c.note("3 terms, fidelity " + fmt(f) + "; leg measured: 3 -> 6 Clifford, fidelity " + fmt(f5));
    });

    criterion(4, "cutting worked example", 0, [](Check& c) {
        Diagram d = build_cutting_example();
        CutSchedule sched{{CutSelector::at_anchor("cut")}, false, {}};
        auto s = run_cutting(d, sched, 0);
        c.require(t_count(full_reduce(d)) > 0, "example has T spiders");
        c.require(max_t(s) == 0, "every term T-count 0");
        c.require(plain_sum(s) == contract_dense(d), "sum equals original");
        c.note(std::to_string(t_count(d)) + " T spiders, " + std::to_string(s.size()) + " terms of T-count 0");
    });

    criterion(5, "d=3 cut: 2 terms, 4 Clifford", 60.0, [](Check& c) {
        Diagram d = build_msc_d3();
        auto r = run_strategy("cut", "msc-d3", {});
        c.require(r.pre_expansion.size() == 2 && max_t(r.pre_expansion) == 1, "2 distinct single-T terms");
        c.require(r.sum.size() == 4 && max_t(r.sum) == 0, "4 Clifford terms");
        DenseState got = eval_sum(r.sum);
        c.require(got == contract_dense(d), "exact match with the original diagram");
        double f = fidelity(got, logical_T_state(3));
        c.require(f >= 1 - 1e-10, "logical T fidelity");
        c.note("AUTO, " + std::to_string(r.report.cuts) + " cuts, 2 -> 4 terms, exact, fidelity " + fmt(f));
    });

    criterion(6, "d=5 cut-reuse: 4 terms, 8 Clifford", 600.0, [](Check& c) {
        const DenseState logical = logical_T_state(5);
        for (bool scheduled : {true, false}) {
            StrategyOptions opt;
            if (scheduled) opt.schedule = builtin_schedule("msc-d5-cut-reuse");
            auto r = run_strategy("cut-reuse", "msc-d5", opt);
            const std::string tag = scheduled ? "schedule" : "AUTO";
            c.require(max_t(r.pre_expansion) <= 1, tag + " reaches target T-count 1");
            if (scheduled) {
                c.require(r.pre_expansion.size() == 4, "4 distinct single-T terms");
                c.require(r.sum.size() == 8 && max_t(r.sum) == 0, "8 Clifford terms");
            }
            double f = fidelity(eval_sum(r.sum), logical);
            c.require(f >= 1 - 1e-10, tag + " logical T fidelity");
            c.note(tag + ": " + std::to_string(r.report.cuts) + " cuts, " + std::to_string(r.report.terms_before_dedup) +
                   " -> " + std::to_string(r.pre_expansion.size()) + " terms, " + std::to_string(r.sum.size()) +
                   " Clifford, fidelity " + fmt(f));
        }
    });

    criterion(7, "d=5 naive cut + BSS fallback", 600.0, [](Check& c) {
        StrategyOptions opt;
        opt.naive = true;
        opt.bss_fallback = true;
        auto r = run_strategy("cut", "msc-d5", opt);
        c.require(r.report.terms_before_dedup == 4, "4 terms before dedup");
        c.require(r.pre_expansion.size() == 2, "2 distinct terms");
        c.require(max_t(r.pre_expansion) <= 15, "T-count at most 15");
        c.require(r.report.final_terms <= 144, "BSS total at most 144");
        double f = fidelity(eval_sum(r.sum), logical_T_state(5));
        c.require(f >= 1 - 1e-10, "logical T fidelity");
        std::string ts;
        for (int t : r.report.term_t_counts) ts += (ts.empty() ? "" : ",") + std::to_string(t);
        c.note("4 -> 2 terms of T-count " + ts + ", BSS total " + std::to_string(int(r.report.final_terms)) +
               " (reference 72), fidelity " + fmt(f));
    });

    criterion(8, "d=3 repeated BSS", 0, [](Check& c) {
        Diagram d = build_msc_d3();
        auto r = run_strategy_on("bss", d, "msc-d3", {});
        c.require(r.report.materialised && r.report.final_terms <= 136, "at most 136 Clifford terms");
        c.require(eval_sum(r.sum) == contract_dense(d), "exact match with the original diagram");
        c.note(std::to_string(int(r.report.final_terms)) + " Clifford terms (reference 68), exact");
    });

    criterion(9, "property suite", 300.0, [](Check& c) {
        std::mt19937_64 rng(2024);
        int bad_reduce = 0, bad_cut = 0, bad_dedup = 0, bad_expand = 0, bad_mono = 0;
        for (int i = 0; i < 200; ++i) {
            RandomSpec spec;
            spec.inputs = int(rng() % 3);
            spec.outputs = 1 + int(rng() % 4);
            spec.spiders = 3 + int(rng() % 6);
            Diagram d = random_diagram(rng, spec);
            const DenseState want = contract_dense(d);
            Diagram r = full_reduce(d);
            bad_reduce += !(contract_dense(r) == want);
            bad_mono += t_count(r) > t_count(d);
            std::vector<int> zs;
            for (int v : d.vertices())
                if (d.kind(v) == VertexKind::Z) zs.push_back(v);
            if (!zs.empty()) bad_cut += !(plain_sum(cut_spider(d, zs[rng() % zs.size()])) == want);
            DecompositionSum pair;
            pair.terms = {r, r.compacted()};
            pair.terms[1].mul_scalar(ExactScalar::omega_pow(int(rng() % 8)));
            pair.terms.push_back(full_reduce(random_diagram(rng, spec)));
            if (pair.terms[2].boundary_order().size() == r.boundary_order().size()) {
                auto m = dedup_terms(pair);
                // everything may cancel, leaving an empty sum
                const DenseState before = plain_sum(pair);
                bad_dedup += m.terms.empty() ? !before.is_zero() : !(plain_sum(m) == before);
            }
            if (i % 4 == 0 && t_count(r) <= 8) {
                DecompositionSum one;
                one.terms.push_back(r);
                auto e = expand_single_t(one);
                bad_expand += !(e.size() == (size_t(1) << t_count(r)) && max_t(e) == 0 && plain_sum(e) == want);
            }
        }
        c.require(bad_reduce == 0, "(a) full_reduce exact");
        c.require(bad_cut == 0, "(b) cut sums exact");
        c.require(bad_dedup == 0, "(c) dedup sums exact");
        c.require(bad_expand == 0, "(d) expansion exact and Clifford");
        c.require(bad_mono == 0, "(e) T-count monotone");
        c.note("200 random diagrams: (a)-(e) hold");
    });

    criterion(10, "formats round-trip", 0, [](Check& c) {
        std::mt19937_64 rng(77);
        int bad_circ = 0, bad_json = 0;
        for (int i = 0; i < 100; ++i) {
            Circuit k = random_circuit(rng, 2 + int(rng() % 4));
            bad_circ += !(parse_circuit(print_circuit(k)) == k);
            Diagram d = random_diagram(rng, {});
            std::string text = dump_diagram(d);
            bad_json += !(dump_diagram(parse_diagram(text)) == text);
        }
        for (const char* name : {"msc-d3", "msc-d5"}) {
            Circuit k = builtin_circuit(name);
            bad_circ += !(parse_circuit(print_circuit(k)) == k);
        }
        StrategyOptions opt;
        opt.schedule = builtin_schedule("msc-d3-cut");
        auto r = run_strategy("cut", "msc-d3", opt);
        int bad_golden = 0;
        for (size_t i = 0; i < r.pre_expansion.size(); ++i) {
            std::ifstream in(std::string(ZXCUT_GOLDEN_DIR) + "/d3_term_" + std::to_string(i) + ".tikz");
            std::stringstream ss;
            ss << in.rdbuf();
            bad_golden += ss.str() != to_tikz(r.pre_expansion.terms[i]);
        }
        c.require(bad_circ == 0, "circuit round-trip");
        c.require(bad_json == 0, "diagram JSON round-trip");
        c.require(bad_golden == 0, "TikZ golden snapshots");
        c.note("100 circuits + builtins, 100 diagrams, 2 TikZ snapshots");
    });

    std::printf("%s\n", failures ? "acceptance: FAILED" : "acceptance: all criteria pass");
    return failures ? 1 : 0;
}
