#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zxcut/circuit.hpp"
#include "zxcut/decomp.hpp"
#include "zxcut/evaluator.hpp"
#include "zxcut/rewrite.hpp"
#include "zxcut/serialize.hpp"

namespace py = pybind11;
using namespace zxcut;

namespace {

std::vector<std::complex<double>> state(const Diagram& d) { return contract_dense(d).to_complex(); }

std::vector<std::complex<double>> sum_state(const std::vector<Diagram>& terms, int jobs) {
    DecompositionSum s;
    s.terms = terms;
    return eval_sum(s, jobs).to_complex();
}

py::dict decompose(const std::string& strategy, const std::string& circuit, int jobs, const std::string& schedule,
                   int target_t, bool naive, bool bss) {
    StrategyOptions opt;
    opt.jobs = jobs;
    opt.target_t = target_t;
    opt.naive = naive;
    opt.bss_fallback = bss;
    if (!schedule.empty()) opt.schedule = load_schedule(schedule);
    StrategyResult r;
    {
        py::gil_scoped_release release;
        r = run_strategy(strategy, circuit, opt);
    }
    py::dict out;
    out["report"] = report_to_json(r.report).dump();
    out["terms"] = r.pre_expansion.terms;
    out["clifford"] = r.sum.terms;
    return out;
}

}  // namespace

PYBIND11_MODULE(_zxcut, m) {
    m.doc() = "ZX-diagram cutting decompositions";

    py::register_exception<CircuitError>(m, "CircuitError", PyExc_ValueError);
    py::register_exception<DecompError>(m, "DecompError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<Diagram>(m, "Diagram")
        .def(py::init<>())
        .def_property_readonly("t_count", [](const Diagram& d) { return t_count(d); })
        .def_property_readonly("num_vertices", &Diagram::num_vertices)
        .def_property_readonly("num_edges", &Diagram::num_edges)
        .def_property_readonly("num_inputs", &Diagram::num_inputs)
        .def_property_readonly("num_outputs", &Diagram::num_outputs)
        .def_property_readonly("scalar", [](const Diagram& d) { return d.scalar().to_complex(); })
        .def_property_readonly("anchors", [](const Diagram& d) { return d.anchors(); })
        .def("to_json", &dump_diagram)
        .def_static("from_json", &parse_diagram)
        .def("to_tikz", &to_tikz)
        .def("__repr__", [](const Diagram& d) {
            return "<Diagram " + std::to_string(d.num_vertices()) + " vertices, T-count " +
                   std::to_string(t_count(d)) + ">";
        });

    m.def("build", [](const std::string& c) { return circuit_to_diagram(load_circuit(c)); }, py::arg("circuit"),
          "Diagram of a builtin circuit (msc-d3, msc-d5) or a .zxcirc file");
    m.def("circuit_text", [](const std::string& c) { return print_circuit(load_circuit(c)); }, py::arg("circuit"));
    m.def("parse_circuit", [](const std::string& text) { return circuit_to_diagram(parse_circuit(text)); },
          py::arg("text"));
    m.def("full_reduce", [](const Diagram& d) { return full_reduce(d); });
    m.def("basic_simp", [](const Diagram& d) { return basic_simp(d); });
    m.def("t_states", &t_states, py::arg("k"));
    m.def("cat_state", &build_cat_state, py::arg("m"));
    m.def("state", &state, py::arg("diagram"), "Dense amplitudes, first boundary = most significant bit");
    m.def("sum_state", &sum_state, py::arg("terms"), py::arg("jobs") = 1);
    m.def("logical_T_state", [](int d) { return logical_T_state(d).to_complex(); }, py::arg("distance"));
    m.def("fidelity",
          py::overload_cast<const std::vector<std::complex<double>>&, const std::vector<std::complex<double>>&>(
              &fidelity));
    m.def("strategies", &strategy_names);
    m.def("decompose", &decompose, py::arg("strategy"), py::arg("circuit"), py::arg("jobs") = 1,
          py::arg("schedule") = "", py::arg("target_t") = 1, py::arg("naive") = false, py::arg("bss") = false);
}
