#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "zxcut/circuit.hpp"
#include "zxcut/decomp.hpp"
#include "zxcut/hash.hpp"
#include "zxcut/rewrite.hpp"

using namespace zxcut;
using namespace zxtest;

namespace {

DenseState sum_tensor(const DecompositionSum& s) {
    // plain contraction per term, no rewriting
    DenseState acc;
    bool first = true;
    for (const auto& t : s.terms) {
        auto x = contract_dense(t);
        if (first) acc = x;
        else acc += x;
        first = false;
    }
    return acc;
}

int odd_count(const DecompositionSum& s) {
    int n = 0;
    for (const auto& t : s.terms) n += t_count(t);
    return n;
}

std::vector<int> t_leaves(const Diagram& d) {
    std::vector<int> v;
    for (int x : d.vertices())
        if (!d.is_boundary(x) && d.phase(x).is_t_like()) v.push_back(x);
    return v;
}

// 2^{-k/2} scaled |T>^k amplitudes, exact unnormalised form (1, w)^k
std::vector<cd> t_unnormalised(int k) {
    auto v = t_power(k);
    for (auto& x : v) x *= std::pow(2.0, k / 2.0);
    return v;
}

}  // namespace

TEST(Cut, BranchesSumToTheOriginal) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RandomSpec spec;
        spec.spiders = 4 + int(rng() % 3);
        Diagram d = random_diagram(rng, spec);
        std::vector<int> zs;
        for (int v : d.vertices())
            if (d.kind(v) == VertexKind::Z) zs.push_back(v);
        if (zs.empty()) continue;
        int v = zs[rng() % zs.size()];
        auto s = cut_spider(d, v);
        ASSERT_EQ(s.size(), 2u);
        EXPECT_EQ(sum_tensor(s), contract_dense(d)) << "trial " << trial;
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(Cut, HadamardSelfLoopsAndRejections) {
    Diagram d;
    int o = d.add_output();
    int z = d.add_vertex(VertexKind::Z, Phase(1));
    d.add_edge(z, o);
    d.add_edge(z, z, EdgeKind::Hadamard);
    d.add_edge(z, z);
    EXPECT_EQ(sum_tensor(cut_spider(d, z)), contract_dense(d));
    EXPECT_THROW(cut_spider(d, o), DecompError);
    EXPECT_THROW(cut_spider(d, 99), DecompError);
    int x = d.add_vertex(VertexKind::X);
    d.add_edge(x, z);
    EXPECT_THROW(cut_spider(d, x), DecompError);
}

TEST(Cut, CandidatesAreNearOddSpiders) {
    Diagram d;
    std::vector<int> chain;
    for (int i = 0; i < 6; ++i) chain.push_back(d.add_vertex(VertexKind::Z, Phase(i == 0 ? 1 : 0)));
    for (int i = 0; i + 1 < 6; ++i) d.add_edge(chain[i], chain[i + 1], EdgeKind::Hadamard);
    EXPECT_EQ(cut_candidates(d), (std::vector<int>{chain[0], chain[1], chain[2]}));
}

TEST(Cut, SelectionScoreMatchesItsBranches) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        RandomSpec spec;
        spec.spiders = 8;
        spec.extra_edges = 8;
        Diagram d = to_graph_like(random_diagram(rng, spec));
        if (cut_candidates(d).empty()) continue;
        CutOptions opt;
        opt.pair_lookahead = false;
        auto c = select_cut(d, opt);
        auto s = cut_spider(d, c.vertex);
        int ta = t_count(full_reduce(s.terms[0])), tb = t_count(full_reduce(s.terms[1]));
        EXPECT_EQ(c.score, t_count(d) - std::max(ta, tb));
        EXPECT_EQ(c.total, ta + tb);
        // brute force: nothing scores better
        for (int v : cut_candidates(d)) {
            auto b = cut_spider(d, v);
            int xa = t_count(full_reduce(b.terms[0])), xb = t_count(full_reduce(b.terms[1]));
            EXPECT_LE(t_count(d) - std::max(xa, xb), c.score);
        }
    }
}

TEST(Dedup, MergesRelabelledCopiesAndKeepsTheSum) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Diagram d = random_diagram(rng, {});
        DecompositionSum s;
        s.terms.push_back(d);
        Diagram copy = d;
        copy.add_vertex(VertexKind::Z);  // shifts ids once removed
        copy.remove_vertex(copy.id_bound() - 1);
        copy = copy.compacted();
        copy.mul_scalar(ExactScalar::omega_pow(3));
        s.terms.push_back(copy);
        s.terms.push_back(full_reduce(random_diagram(rng, {})));
        auto m = dedup_terms(s);
        EXPECT_LE(m.size(), 2u);
        EXPECT_EQ(sum_tensor(m), sum_tensor(s));
    }
}

TEST(Expand, CountIsTwoToTheT) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        RandomSpec spec;
        spec.spiders = 5;
        Diagram d = full_reduce(random_diagram(rng, spec));
        DecompositionSum s;
        s.terms.push_back(d);
        auto e = expand_single_t(s);
        EXPECT_EQ(e.size(), size_t(1) << t_count(d));
        EXPECT_EQ(odd_count(e), 0);
        EXPECT_EQ(sum_tensor(e), contract_dense(d));
    }
}

TEST(MagicStates, TwoTOnTStates) {
    Diagram d = t_states(2);
    auto legs = t_leaves(d);
    auto s = decompose_two_t(d, legs[0], legs[1]);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(odd_count(s), 0);
    EXPECT_EQ(sum_tensor(s), contract_dense(d));
    EXPECT_LT(max_diff(contract_dense(d).to_complex(), t_unnormalised(2)), 1e-12);
}

TEST(MagicStates, BssOnTStates) {
    Diagram d = t_states(6);
    auto s = decompose_bss(d, t_leaves(d));
    EXPECT_EQ(s.size(), 7u);
    EXPECT_EQ(odd_count(s), 0);
    EXPECT_EQ(sum_tensor(s), contract_dense(d));
    for (const auto& t : s.terms) EXPECT_TRUE(looks_like_stabiliser_state(contract_dense(t)));
}

TEST(MagicStates, BssInsideALargerDiagram) {
    // T spiders of higher degree and mixed phases get their legs extracted first
    std::mt19937_64 rng(21);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 5; ++trial) {
        RandomSpec spec;
        spec.spiders = 9;
        spec.allow_x = false;
        Diagram d = random_diagram(rng, spec);
        auto odd = t_leaves(d);
        if (odd.size() < 6) continue;
        odd.resize(6);
        auto s = decompose_bss(d, odd);
        EXPECT_EQ(sum_tensor(s), contract_dense(d));
        ++done;
    }
    EXPECT_GT(done, 0);
    Diagram d = t_states(5);
    EXPECT_THROW(decompose_bss(d, t_leaves(d)), DecompError);
}

TEST(MagicStates, CatStateAmplitudes) {
    for (int m = 1; m <= 6; ++m) {
        auto v = contract_dense(build_cat_state(m)).to_complex();
        for (size_t x = 0; x < v.size(); ++x) {
            int w = std::popcount(x);
            cd want = w % 2 ? cd(0) : std::polar(std::numbers::sqrt2, std::numbers::pi / 4 * w);
            EXPECT_LT(std::abs(v[x] - want), 1e-12) << m << " " << x;
        }
    }
}

TEST(MagicStates, CatDecompositionsAreExact) {
    const size_t expected[] = {0, 1, 1, 2, 2, 3, 3};
    for (int m = 1; m <= 6; ++m) {
        Diagram d = build_cat_state(m);
        int hub = -1;
        for (int v : d.vertices())
            if (is_cat_hub(d, v)) hub = v;
        ASSERT_GE(hub, 0);
        auto s = decompose_cat(d, hub);
        EXPECT_EQ(s.size(), expected[m]) << m;
        EXPECT_EQ(odd_count(s), 0) << m;
        EXPECT_EQ(sum_tensor(s), contract_dense(d)) << m;
        if (m == 6) EXPECT_EQ(decompose_cat6(d, hub).size(), 3u);
        else EXPECT_THROW(decompose_cat6(d, hub), DecompError);
    }
}

TEST(MagicStates, MagicFromCatGivesTStates) {
    Diagram cat = build_cat_state(6);
    auto s = magic_from_cat(cat, cat.outputs().back());
    EXPECT_EQ(s.size(), 3u);
    for (const auto& t : s.terms) EXPECT_EQ(t_count(full_reduce(t)), 1);
    auto v = sum_tensor(s).to_complex();
    auto want = t_unnormalised(5);
    for (auto& x : want) x *= std::numbers::sqrt2;
    EXPECT_LT(max_diff(v, want), 1e-10);
    // fully expanded: 6 Clifford terms
    EXPECT_EQ(expand_single_t(s).size(), 6u);
}

TEST(Schedules, JsonRoundTripAndBuiltins) {
    CutSchedule s{{CutSelector::automatic(), CutSelector::at_vertex(12), CutSelector::at_anchor("m7")}, true, {}};
    EXPECT_EQ(schedule_from_json(schedule_to_json(s)), s);
    auto d3 = builtin_schedule("msc-d3-cut");
    EXPECT_EQ(d3.steps.size(), 2u);
    EXPECT_FALSE(d3.auto_after);
    EXPECT_EQ(builtin_schedule("msc-d5-cut-reuse").region_steps.size(), 2u);
    EXPECT_THROW(builtin_schedule("nope"), DecompError);
    EXPECT_THROW(schedule_from_json(nlohmann::json{{"format", "zxcut-schedule"}, {"version", 1}, {"steps", {1.5}}}),
                 DecompError);
}

TEST(Schedules, MissingAnchorIsReported) {
    Diagram d = build_msc_d3();
    CutSchedule s{{CutSelector::at_anchor("m99")}, false, {}};
    EXPECT_THROW(run_cutting(d, s, 1), DecompError);
    CutSchedule v{{CutSelector::at_vertex(100000)}, false, {}};
    EXPECT_THROW(run_cutting(d, v, 1), DecompError);
}

TEST(Pipeline, D3CuttingGivesTwoTermsAndFourCliffordTerms) {
    Diagram d = build_msc_d3();
    const DenseState want = contract_dense(d);
    for (bool scheduled : {true, false}) {
        StrategyOptions opt;
        opt.jobs = 4;
        if (scheduled) opt.schedule = builtin_schedule("msc-d3-cut");
        auto r = run_strategy("cut", "msc-d3", opt);
        EXPECT_EQ(r.report.t_count_initial, 15);
        EXPECT_EQ(r.pre_expansion.size(), 2u) << scheduled;
        for (const auto& t : r.pre_expansion.terms) EXPECT_EQ(t_count(t), 1);
        EXPECT_EQ(r.sum.size(), 4u);
        EXPECT_EQ(r.report.final_terms, 4);
        EXPECT_EQ(r.report.cuts, 3);
        EXPECT_EQ(eval_sum(r.pre_expansion, 4), want);
        EXPECT_EQ(eval_sum(r.sum, 4), want);
        EXPECT_DOUBLE_EQ(fidelity(eval_sum(r.sum, 4), logical_T_state(3)), 1.0);
    }
}

TEST(Pipeline, D3OtherStrategiesAgree) {
    Diagram d = build_msc_d3();
    const DenseState want = contract_dense(d);
    for (std::string s : {"two-t", "bss", "cat"}) {
        StrategyOptions opt;
        opt.jobs = 4;
        auto r = run_strategy_on(s, d, "msc-d3", opt);
        ASSERT_TRUE(r.report.materialised) << s;
        EXPECT_EQ(r.sum.size(), size_t(r.report.final_terms));
        EXPECT_EQ(odd_count(r.sum), 0) << s;
        EXPECT_EQ(eval_sum(r.sum, 4), want) << s;
    }
    StrategyOptions small;
    small.max_terms = 1000;
    auto single = run_strategy_on("single-t", d, "msc-d3", small);
    EXPECT_FALSE(single.report.materialised);
    EXPECT_EQ(single.report.final_terms, std::ldexp(1.0, single.report.t_count_reduced));
    EXPECT_THROW(run_strategy_on("nope", d, "x", {}), DecompError);
    EXPECT_THROW(run_strategy_on("cut-reuse", d, "x", {}), DecompError);
}

TEST(Pipeline, ReportJsonIsDeterministic) {
    StrategyOptions opt;
    opt.schedule = builtin_schedule("msc-d3-cut");
    auto a = report_to_json(run_strategy("cut", "msc-d3", opt).report);
    opt.jobs = 4;
    auto b = report_to_json(run_strategy("cut", "msc-d3", opt).report);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["reference"]["cat"], "108");
    EXPECT_FALSE(a.contains("seconds"));
}

TEST(Cut, GadgetExampleBecomesCliffordAfterOneCut) {
    Diagram d = build_cutting_example();
    EXPECT_GT(t_count(full_reduce(d)), 0);
    CutSchedule s{{CutSelector::at_anchor("cut")}, false, {}};
    CuttingStats st;
    auto r = run_cutting(d, s, 0, {}, &st);
    EXPECT_EQ(st.cuts, 1);
    EXPECT_EQ(r.size(), 2u);
    for (const auto& t : r.terms) EXPECT_EQ(t_count(t), 0);
    EXPECT_EQ(sum_tensor(r), contract_dense(d));
}

TEST(Cut, NothingToDoReturnsTheInput) {
    Diagram d = build_cutting_example();
    auto r = run_cutting(d, {}, 100);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_TRUE(isomorphic(r.terms[0], d));
}
