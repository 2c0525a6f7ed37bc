#include <gtest/gtest.h>

#include "test_util.hpp"
#include "zxcut/evaluator.hpp"

using namespace zxcut;
using namespace zxtest;

TEST(ContractDense, SingleSpiderStates) {
    Diagram d;
    int z = d.add_spider(VertexKind::Z, Phase(1));
    int o = d.add_output();
    d.add_edge(z, o);
    auto s = contract_dense(d);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.amps[0], ExactScalar::one());
    EXPECT_EQ(s.amps[1], ExactScalar::omega_pow(1));
}

TEST(ContractDense, DegreeZeroSpiders) {
    Diagram d;
    d.add_spider(VertexKind::Z, Phase(0));
    EXPECT_EQ(contract_scalar(d), ExactScalar(2));
    Diagram e;
    e.add_spider(VertexKind::Z, Phase(4));
    EXPECT_EQ(contract_scalar(e), ExactScalar::zero());
    Diagram x;
    x.add_spider(VertexKind::X, Phase(2));
    EXPECT_EQ(contract_scalar(x), ExactScalar::one_plus_phase(Phase(2)));
}

TEST(ContractDense, XSpiderIsPlusBasis) {
    // X(0) with one leg is sqrt2 |0>
    Diagram d;
    int x = d.add_spider(VertexKind::X, Phase(0));
    d.add_edge(x, d.add_output());
    auto s = contract_dense(d);
    EXPECT_EQ(s.amps[0], ExactScalar::sqrt2_pow(1));
    EXPECT_EQ(s.amps[1], ExactScalar::zero());
}

TEST(ContractDense, HadamardEdgeWire) {
    Diagram d;
    int i = d.add_input(), o = d.add_output();
    d.add_edge(i, o, EdgeKind::Hadamard);
    auto s = contract_dense(d);
    auto h = ExactScalar::sqrt2_pow(-1);
    EXPECT_EQ(s.amps[0], h);
    EXPECT_EQ(s.amps[1], h);
    EXPECT_EQ(s.amps[2], h);
    EXPECT_EQ(s.amps[3], -h);
}

TEST(ContractDense, MatchesNaiveOracleOnRandomDiagrams) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 150; ++t) {
        RandomSpec spec;
        spec.inputs = int(rng() % 2);
        spec.outputs = 1 + int(rng() % 2);
        spec.spiders = 2 + int(rng() % 4);
        spec.extra_edges = int(rng() % 4);
        Diagram d = random_diagram(rng, spec);
        d.mul_scalar(ExactScalar::omega_pow(int(rng() % 8)).mul_sqrt2_pow(int(rng() % 5) - 2));
        auto exact = contract_dense(d).to_complex();
        auto naive = naive_tensor(d);
        ASSERT_LT(max_diff(exact, naive), 1e-9) << "case " << t;
    }
}

TEST(ContractDense, RelabellingInvariance) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 50; ++t) {
        RandomSpec spec;
        spec.spiders = 6;
        Diagram d = random_diagram(rng, spec);
        // rebuild with spiders in reverse order
        Diagram r;
        std::vector<int> map(d.id_bound(), -1);
        for (int b : d.inputs()) map[b] = r.add_input();
        for (int b : d.outputs()) map[b] = r.add_output();
        auto vs = d.vertices();
        for (auto it = vs.rbegin(); it != vs.rend(); ++it)
            if (!d.is_boundary(*it)) map[*it] = r.add_spider(d.kind(*it), d.phase(*it));
        for (const auto& e : d.edges()) r.add_edge(map[e.src], map[e.dst], e.kind);
        EXPECT_EQ(contract_dense(d), contract_dense(r));
    }
}

TEST(ContractDense, BudgetExceededThrows) {
    Diagram d;
    std::vector<int> sp;
    for (int i = 0; i < 30; ++i) sp.push_back(d.add_spider(VertexKind::Z, Phase(1)));
    for (int i = 0; i < 30; ++i)
        for (int j = i + 1; j < 30; ++j) d.add_edge(sp[i], sp[j], EdgeKind::Hadamard);
    ContractOptions opt;
    opt.max_table_vars = 10;
    EXPECT_THROW(contract_scalar(d, opt), BudgetExceeded);
}

TEST(LogicalState, SteaneCodewords) {
    auto s = logical_T_state(3);
    ASSERT_EQ(s.legs, 7);
    int ones = 0, omegas = 0;
    for (const auto& a : s.amps) {
        if (a == ExactScalar::one()) ++ones;
        if (a == ExactScalar::omega_pow(1)) ++omegas;
    }
    EXPECT_EQ(ones, 8);
    EXPECT_EQ(omegas, 8);
    // |0_L> and |1_L> have disjoint supports, so they are orthogonal
    EXPECT_FALSE(s.is_zero());
    EXPECT_TRUE(s.amps[0] == ExactScalar::one());
    EXPECT_TRUE(s.amps[127] == ExactScalar::omega_pow(1));
}

TEST(LogicalState, DistanceFiveCode) {
    const auto& cc = colour_code(5);
    EXPECT_EQ(cc.n, 19);
    // every pair of faces overlaps evenly, so X and Z checks commute
    for (const auto& f : cc.faces)
        for (const auto& g : cc.faces) {
            int common = 0;
            for (int q : f) common += int(std::count(g.begin(), g.end(), q));
            EXPECT_EQ(common % 2, 0);
        }
    auto s = logical_T_state(5);
    int support = 0;
    for (const auto& a : s.amps)
        if (!a.is_zero()) ++support;
    EXPECT_EQ(support, 2 * 512);
}

TEST(Fidelity, Basics) {
    std::vector<cd> a{1, 0}, b{0, 1}, c{2, 0};
    EXPECT_NEAR(fidelity(a, b), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(a, c), 1.0, 1e-15);
    EXPECT_THROW(fidelity(a, std::vector<cd>{0, 0}), DiagramError);
}

TEST(StabiliserShape, DetectsStates) {
    DenseState s = DenseState::zeros(2);
    s.amps[0] = ExactScalar::one();
    s.amps[3] = ExactScalar::omega_pow(2);
    EXPECT_TRUE(looks_like_stabiliser_state(s));
    s.amps[3] = ExactScalar::omega_pow(1);
    EXPECT_FALSE(looks_like_stabiliser_state(s));
    DenseState t = DenseState::zeros(2);
    t.amps[0] = t.amps[1] = t.amps[2] = ExactScalar::one();
    EXPECT_FALSE(looks_like_stabiliser_state(t));
}
