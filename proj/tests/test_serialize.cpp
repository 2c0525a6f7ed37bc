#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "zxcut/circuit.hpp"
#include "zxcut/decomp.hpp"
#include "zxcut/hash.hpp"
#include "zxcut/rewrite.hpp"
#include "zxcut/serialize.hpp"

using namespace zxcut;
using namespace zxtest;

namespace {

// Same diagram with internal vertices added in a shuffled order.
Diagram relabel(const Diagram& d, std::mt19937_64& rng) {
    std::vector<int> verts = d.vertices();
    std::shuffle(verts.begin(), verts.end(), rng);
    Diagram r;
    std::vector<int> map(d.id_bound(), -1);
    for (int v : verts) map[v] = r.add_vertex(d.kind(v), d.phase(v));
    for (const auto& e : d.edges()) r.add_edge(map[e.src], map[e.dst], e.kind);
    for (int v : d.inputs()) r.inputs_mut().push_back(map[v]);
    for (int v : d.outputs()) r.outputs_mut().push_back(map[v]);
    r.scalar() = d.scalar();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Json, RoundTripIsLossless) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        RandomSpec spec;
        spec.spiders = 3 + int(rng() % 6);
        Diagram d = random_diagram(rng, spec);
        if (i % 3 == 0) d = full_reduce(d);  // leaves id gaps behind
        if (i % 5 == 0) d.anchors()["a"] = d.vertices().back();
        std::string text = dump_diagram(d);
        Diagram back = parse_diagram(text);
        EXPECT_EQ(dump_diagram(back), text);
        EXPECT_EQ(back.vertices(), d.vertices());
        EXPECT_EQ(back.scalar(), d.scalar());
        EXPECT_EQ(contract_dense(back), contract_dense(d));
    }
}

TEST(Json, RejectsMalformedInput) {
    EXPECT_THROW(parse_diagram("{"), FormatError);
    EXPECT_THROW(parse_diagram(R"({"format":"other","version":1})"), FormatError);
    Diagram d = t_states(1);
    auto j = diagram_to_json(d);
    j["version"] = 7;
    EXPECT_THROW(diagram_from_json(j), FormatError);
    j = diagram_to_json(d);
    j["edges"].push_back({{"src", 0}, {"dst", 1}, {"kind", "dotted"}});
    EXPECT_THROW(diagram_from_json(j), FormatError);
    j = diagram_to_json(d);
    j["edges"].push_back({{"src", 0}, {"dst", 1}, {"kind", "plain"}});
    EXPECT_THROW(diagram_from_json(j), FormatError);  // boundary with two wires
}

TEST(Hash, InvariantUnderRelabelling) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        Diagram d = random_diagram(rng, {});
        Diagram r = relabel(d, rng);
        EXPECT_EQ(structural_hash(d), structural_hash(r));
        EXPECT_EQ(canonical_hash(d), canonical_hash(r));
        EXPECT_TRUE(isomorphic(d, r));
        Diagram s = r;
        s.mul_scalar(ExactScalar::omega_pow(1));
        EXPECT_EQ(structural_hash(d), structural_hash(s));
        EXPECT_NE(canonical_hash(d), canonical_hash(s));
    }
}

TEST(Hash, DistinguishesPhasesAndBoundaryOrder) {
    Diagram d;
    int a = d.add_vertex(VertexKind::Z, Phase(1)), b = d.add_vertex(VertexKind::Z, Phase(2));
    d.add_edge(a, d.add_output());
    d.add_edge(b, d.add_output());
    d.add_edge(a, b, EdgeKind::Hadamard);
    Diagram p = d;
    p.set_phase(a, Phase(3));
    EXPECT_FALSE(isomorphic(d, p));
    Diagram swapped = d;
    std::swap(swapped.outputs_mut()[0], swapped.outputs_mut()[1]);
    EXPECT_FALSE(isomorphic(d, swapped));
    EXPECT_NE(structural_hash(d), structural_hash(swapped));
}

TEST(Tikz, SingleTStateAndHadamardStyle) {
    std::string t = to_tikz(t_states(1));
    EXPECT_NE(t.find("style=Z phase dot"), std::string::npos);
    EXPECT_NE(t.find("$\\frac{\\pi}{4}$"), std::string::npos);
    EXPECT_NE(t.find("style=none"), std::string::npos);
    Diagram h;
    int a = h.add_vertex(VertexKind::Z), b = h.add_vertex(VertexKind::X);
    h.add_edge(a, b, EdgeKind::Hadamard);
    EXPECT_NE(to_tikz(h).find("[style=hadamard edge]"), std::string::npos);
    EXPECT_NE(to_tikz(h).find("style=X dot"), std::string::npos);
}

// Set ZXCUT_UPDATE_GOLDEN=1 to rewrite the snapshots.
TEST(Tikz, D3TermsMatchGoldenSnapshots) {
    StrategyOptions opt;
    opt.schedule = builtin_schedule("msc-d3-cut");
    auto r = run_strategy("cut", "msc-d3", opt);
    ASSERT_EQ(r.pre_expansion.size(), 2u);
    const bool update = std::getenv("ZXCUT_UPDATE_GOLDEN") != nullptr;
    for (size_t i = 0; i < r.pre_expansion.size(); ++i) {
        std::string path = std::string(ZXCUT_GOLDEN_DIR) + "/d3_term_" + std::to_string(i) + ".tikz";
        std::string got = to_tikz(r.pre_expansion.terms[i]);
        if (update) {
            std::ofstream(path) << got;
            continue;
        }
        EXPECT_EQ(got, slurp(path)) << path;
    }
}
