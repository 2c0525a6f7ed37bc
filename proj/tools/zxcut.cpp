#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zxcut/circuit.hpp"
#include "zxcut/decomp.hpp"
#include "zxcut/evaluator.hpp"
#include "zxcut/rewrite.hpp"
#include "zxcut/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zxcut;

namespace {

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out() {
    const char* env = std::getenv("ZXCUT_OUT");
    return env && *env ? env : "zxcut-out";
}

void write_file(const fs::path& p, const std::string& text) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) throw UserError("cannot write " + p.string());
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UserError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string label_for(const std::string& circuit) {
    if (circuit == "msc-d3" || circuit == "msc-d5") return circuit;
    return fs::path(circuit).stem().string();
}

std::string numbered(const std::string& stem, size_t i) {
    std::ostringstream os;
    os << stem << "_" << std::setw(3) << std::setfill('0') << i;
    return os.str();
}

void write_terms(const fs::path& dir, const std::string& stem, const DecompositionSum& s, bool tikz) {
    std::error_code ec;
    fs::remove_all(dir, ec);
    for (size_t i = 0; i < s.size(); ++i) {
        write_file(dir / (numbered(stem, i) + ".json"), dump_diagram(s.terms[i]));
        if (tikz) write_file(dir / (numbered(stem, i) + ".tikz"), to_tikz(s.terms[i]));
    }
}

DecompositionSum read_terms(const fs::path& dir) {
    DecompositionSum s;
    if (!fs::is_directory(dir)) return s;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            s.terms.push_back(parse_diagram(read_file(f)));
        } catch (const FormatError& e) {
            throw UserError(f.string() + ": " + e.what());
        }
    }
    return s;
}

int cmd_build(const std::string& circuit, const std::string& out, bool tikz, bool trace) {
    Diagram d = circuit_to_diagram(load_circuit(circuit));
    const std::string name = label_for(circuit);
    fs::path dir(out);
    write_file(dir / (name + ".json"), dump_diagram(d));
    if (tikz) write_file(dir / (name + ".tikz"), to_tikz(d));
    json summary = {{"circuit", name},
                    {"t_count", t_count(d)},
                    {"spiders", d.spider_count()},
                    {"outputs", d.num_outputs()},
                    {"file", (dir / (name + ".json")).string()}};
    if (trace) {
        RewriteTrace tr;
        Diagram r = full_reduce(d, &tr);
        write_file(dir / (name + ".trace.json"), trace_to_json(tr).dump(1) + "\n");
        summary["t_count_reduced"] = t_count(r);
    }
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct DecomposeArgs {
    std::string circuit, strategy = "cut", schedule, out;
    int target_t = 1, jobs = 1;
    bool naive = false, bss = false, tikz = false, trace = false;
    double max_terms = 4096;
};

int cmd_decompose(const DecomposeArgs& a) {
    StrategyOptions opt;
    opt.jobs = a.jobs;
    opt.target_t = a.target_t;
    opt.naive = a.naive;
    opt.bss_fallback = a.bss;
    opt.max_terms = a.max_terms;
    if (!a.schedule.empty()) opt.schedule = load_schedule(a.schedule);
    if (a.bss && a.strategy != "cut") throw UserError("--bss only applies to --strategy cut");
    const std::string name = label_for(a.circuit);
    const auto t0 = std::chrono::steady_clock::now();
    Circuit c = load_circuit(a.circuit);
    Diagram original = circuit_to_diagram(c);
    StrategyResult r = a.strategy == "cut-reuse" ? run_strategy(a.strategy, a.circuit, opt)
                                                 : run_strategy_on(a.strategy, original, name, opt);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::path dir(a.out);
    write_file(dir / "original.json", dump_diagram(original));
    write_terms(dir / "terms", "term", r.pre_expansion, a.tikz);
    write_terms(dir / "clifford", "clifford", r.sum, a.tikz);
    json report = report_to_json(r.report);
    write_file(dir / "report.json", report.dump(2) + "\n");
    write_file(dir / "timing.json", json{{"seconds", seconds}, {"jobs", a.jobs}}.dump(2) + "\n");
    if (a.trace) {
        json prov = json::array();
        for (const auto* s : {&r.pre_expansion, &r.sum})
            for (const auto& e : s->provenance)
                prov.push_back({{"op", e.op}, {"vertex", e.vertex}, {"depth", e.depth}, {"note", e.note}});
        write_file(dir / "trace.json", prov.dump(1) + "\n");
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int logical_distance(int legs) {
    for (int d : {3, 5})
        if (colour_code(d).n == legs) return d;
    return 0;
}

int cmd_verify(const std::string& dirname, int jobs) {
    fs::path dir(dirname);
    if (!fs::is_directory(dir)) throw UserError("no decomposition output in " + dirname);
    DecompositionSum cliff = read_terms(dir / "clifford");
    DecompositionSum pre = read_terms(dir / "terms");
    const bool use_cliff = !cliff.terms.empty();
    const DecompositionSum& s = use_cliff ? cliff : pre;
    if (s.terms.empty()) throw UserError("no term files in " + dirname);

    json out = {{"terms", s.size()}, {"evaluated", use_cliff ? "clifford" : "terms"}};
    json contributions = json::array();
    std::vector<DenseState> parts(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        DecompositionSum one;
        one.terms.push_back(s.terms[i]);
        parts[i] = eval_sum(one, 1);
    }
    DenseState total = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) total += parts[i];
    auto norm = [](const DenseState& x) {
        double n = 0;
        for (auto v : x.to_complex()) n += std::norm(v);
        return std::sqrt(n);
    };
    for (size_t i = 0; i < parts.size(); ++i)
        contributions.push_back({{"term", i}, {"norm", norm(parts[i])}, {"t_count", t_count(s.terms[i])}});
    out["sum_norm"] = norm(total);
    out["per_term"] = contributions;

    bool ok = true;
    if (fs::exists(dir / "original.json")) {
        Diagram original = parse_diagram(read_file(dir / "original.json"));
        try {
            DenseState want = contract_dense(original);
            out["original_norm"] = norm(want);
            out["fidelity_vs_original"] = fidelity(total, want);
            out["exact_match_original"] = total == want;
            ok &= fidelity(total, want) >= 1 - 1e-10;
        } catch (const BudgetExceeded&) {
            out["fidelity_vs_original"] = nullptr;
            out["original_note"] = "original diagram too large for dense contraction";
        }
    }
    if (int d = logical_distance(total.legs)) {
        double f = fidelity(total, logical_T_state(d));
        out["fidelity_vs_logical_T"] = f;
        out["distance"] = d;
        ok &= f >= 1 - 1e-10;
    }
    out["ok"] = ok;
    (void)jobs;
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_export(const std::string& circuit, const std::string& out) {
    std::string text = print_circuit(load_circuit(circuit));
    if (out.empty() || out == "-") std::cout << text;
    else write_file(out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zxcut: cutting stabiliser decompositions of ZX-diagrams"};
    app.require_subcommand(1);

    std::string b_circuit, b_out = default_out();
    bool b_tikz = false, b_trace = false;
    auto* build = app.add_subcommand("build", "Build the diagram of a circuit");
    build->add_option("--circuit", b_circuit, "msc-d3, msc-d5 or a .zxcirc path")->required();
    build->add_option("--out", b_out, "Output directory (default $ZXCUT_OUT or zxcut-out)");
    build->add_flag("--emit-tikz", b_tikz, "Also write TikZ");
    build->add_flag("--trace", b_trace, "Write the full_reduce rewrite trace");

    DecomposeArgs da;
    da.out = default_out();
    auto* dec = app.add_subcommand("decompose", "Run a decomposition strategy");
    dec->add_option("--circuit", da.circuit, "msc-d3, msc-d5 or a .zxcirc path")->required();
    dec->add_option("--strategy", da.strategy, "cut, cut-reuse, bss, cat, single-t, two-t")
        ->check(CLI::IsMember(strategy_names()));
    dec->add_option("--schedule", da.schedule, "Committed schedule name or schedule JSON file");
    dec->add_option("--target-t", da.target_t, "Stop cutting once every term has at most this T-count")
        ->check(CLI::NonNegativeNumber);
    dec->add_flag("--naive", da.naive, "cut: stop after two levels of cutting");
    dec->add_flag("--bss", da.bss, "cut: finish the remaining terms with BSS decompositions");
    dec->add_option("--out", da.out, "Output directory (default $ZXCUT_OUT or zxcut-out)");
    dec->add_option("--jobs", da.jobs, "Worker threads")->check(CLI::PositiveNumber);
    dec->add_option("--max-terms", da.max_terms, "Only count sums larger than this");
    dec->add_flag("--emit-tikz", da.tikz, "Write a TikZ file next to every term");
    dec->add_flag("--trace", da.trace, "Write the decomposition provenance");

    std::string v_dir = default_out();
    int v_jobs = 1;
    auto* ver = app.add_subcommand("verify", "Check a decomposition against the original and the logical T state");
    ver->add_option("dir", v_dir, "Output directory of a decompose run");
    ver->add_option("--out", v_dir, "Same as dir");
    ver->add_option("--jobs", v_jobs, "Worker threads");

    std::string e_circuit, e_out;
    auto* exp = app.add_subcommand("export-circuit", "Print a circuit in the text format");
    exp->add_option("--circuit", e_circuit, "msc-d3, msc-d5 or a .zxcirc path")->required();
    exp->add_option("--out", e_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        if (*build) return cmd_build(b_circuit, b_out, b_tikz, b_trace);
        if (*dec) return cmd_decompose(da);
        if (*ver) return cmd_verify(v_dir, v_jobs);
        if (*exp) return cmd_export(e_circuit, e_out);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CircuitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DecompError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
