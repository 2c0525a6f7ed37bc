#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxcut/diagram.hpp"

namespace zxcut {

class DecompError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Replaces the Z spider v by its two branches: every incident wire pinned to |0> (first term)
// or to |1> with the factor e^{i phase} (second term).
DecompositionSum cut_spider(const Diagram& d, int v);

// A cut target: AUTO, a vertex id, or an anchor name such as "m7".
struct CutSelector {
    enum class Kind { Auto, Vertex, Anchor };
    Kind kind = Kind::Auto;
    int vertex = -1;
    std::string anchor;

    static CutSelector automatic() { return {}; }
    static CutSelector at_vertex(int v) { return {Kind::Vertex, v, {}}; }
    static CutSelector at_anchor(std::string a) { return {Kind::Anchor, -1, std::move(a)}; }
    bool operator==(const CutSelector&) const = default;
};

// Entry i is applied to every unfinished term at cutting level i. When the list runs out,
// cutting either stops or carries on in AUTO mode.
struct CutSchedule {
    std::vector<CutSelector> steps;
    bool auto_after = true;
    // cut-reuse only: steps for the stored d3 region (empty means AUTO)
    std::vector<CutSelector> region_steps;
    bool operator==(const CutSchedule&) const = default;
};

nlohmann::json schedule_to_json(const CutSchedule& s);
CutSchedule schedule_from_json(const nlohmann::json& j);
CutSchedule load_schedule(const std::string& path);
// Committed schedules: "msc-d3-cut", "msc-d5-naive", "msc-d5-cut-reuse".
CutSchedule builtin_schedule(const std::string& name);

struct CutOptions {
    int jobs = 1;
    // Also score pairs of Pauli spiders cut one after the other; a pair wins when it lowers the
    // worst branch by more than twice the best single cut.
    bool pair_lookahead = true;
};

struct CutChoice {
    int vertex = -1;
    int partner = -1;  // second vertex when the choice came from the pair lookahead
    int score = 0;
    int total = 0;
};

// Internal spiders within distance 2 of an odd-phase spider, lowest id first.
std::vector<int> cut_candidates(const Diagram& d);
CutChoice select_cut(const Diagram& d, const CutOptions& opt = {});

struct CuttingStats {
    int cuts = 0;
    int levels = 0;
    int terms_before_dedup = 0;
    std::vector<std::vector<int>> chosen;  // vertex ids cut at each level
};

// Terms come back fully reduced and deduplicated.
DecompositionSum run_cutting(const Diagram& d, const CutSchedule& schedule, int target_t,
                             const CutOptions& opt = {}, CuttingStats* stats = nullptr);

// Merges terms with isomorphic structure by adding their scalars, drops zero terms.
DecompositionSum dedup_terms(const DecompositionSum& s);

// Cuts every odd-phase spider; all resulting terms are Clifford.
DecompositionSum expand_single_t(const DecompositionSum& s);

// Splits an odd-phase spider so that a degree-1 Z(pi/4) leaf hangs off it by a plain edge.
// Returns the leaf (v itself when it already is one).
int extract_t_leg(Diagram& d, int v);

// |T>|T> = (|00> + i|11>) + e^{i pi/4}(|01> + |10>) on two Z(pi/4) leaves.
DecompositionSum decompose_two_t(const Diagram& d, int u, int v);
// |T>^6 as 7 stabiliser terms on six Z(pi/4) leaves.
DecompositionSum decompose_bss(const Diagram& d, const std::vector<int>& legs);

// |T>^k with |T> = |0> + e^{i pi/4}|1>, unnormalised.
Diagram t_states(int k);
// (1/sqrt2)(I + Z..Z)|T>^m: an X(0) hub joined to m Z(pi/4) spiders, one per output.
Diagram build_cat_state(int m);
// Hub of a cat pattern: X(0) spider whose neighbours are Z(pi/4) spiders with exactly one other wire.
bool is_cat_hub(const Diagram& d, int hub);
// Clifford decomposition of a cat_m pattern, 1 <= m <= 6.
DecompositionSum decompose_cat(const Diagram& d, int hub);
DecompositionSum decompose_cat6(const Diagram& d, int hub);
// T-measurement on a cat leg: the leg's wire is closed with Z(-pi/4) and the cat is decomposed,
// giving sqrt2 |T>^(m-1).
DecompositionSum magic_from_cat(const Diagram& d, int leg);

// Three outputs a, b, c carrying phase gadgets whose parities all run through a, each paired
// with the opposite T phase on the parity without a. Cutting a (anchor "cut") leaves only
// Clifford phases in both branches.
Diagram build_cutting_example();

struct ReferenceCounts {
    std::string bss, cat, cutting, worst_case;
};

struct StrategyReport {
    std::string strategy;
    std::string circuit;
    int t_count_initial = 0;
    int t_count_reduced = 0;
    int cuts = 0;
    int terms_before_dedup = 0;
    int terms_after_dedup = 0;
    std::vector<int> term_t_counts;
    // Clifford terms after single-T expansion. Exact when materialised.
    double final_terms = 0;
    bool materialised = true;
    std::vector<std::vector<int>> cut_vertices;
    std::vector<std::string> notes;
    std::optional<ReferenceCounts> reference;
    double seconds = 0;
};

nlohmann::json report_to_json(const StrategyReport& r);

struct StrategyOptions {
    int jobs = 1;
    std::optional<CutSchedule> schedule;
    int target_t = 1;
    bool naive = false;   // d=5 cut: stop after the two AUTO cuts
    bool bss_fallback = false;
    // Sums with more Clifford terms than this are only counted.
    double max_terms = 4096;
};

struct StrategyResult {
    DecompositionSum pre_expansion;  // cut output before single-T expansion
    DecompositionSum sum;            // Clifford terms (empty when not materialised)
    StrategyReport report;
};

const std::vector<std::string>& strategy_names();
StrategyResult run_strategy(const std::string& strategy, const std::string& circuit, const StrategyOptions& opt = {});
// Same, on an already built diagram; the circuit name only feeds the report.
StrategyResult run_strategy_on(const std::string& strategy, const Diagram& d, const std::string& label,
                               const StrategyOptions& opt = {});

// Stabiliser decomposition by repeated BSS, two-T and single-T steps after full_reduce.
DecompositionSum bss_decompose(const Diagram& d, int jobs = 1);
DecompositionSum two_t_decompose(const Diagram& d, int jobs = 1);
DecompositionSum cat_decompose(const Diagram& d, int jobs = 1);

}  // namespace zxcut
