#include "zxcut/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace zxcut {

using nlohmann::json;

json scalar_to_json(const ExactScalar& s) {
    const auto& c = s.coeffs();
    return {{"k", s.k()}, {"c", {c[0], c[1], c[2], c[3]}}};
}

ExactScalar scalar_from_json(const json& j) {
    auto c = j.at("c").get<std::vector<int64_t>>();
    if (c.size() != 4) throw FormatError("scalar needs four coefficients");
    return ExactScalar(j.at("k").get<int>(), {c[0], c[1], c[2], c[3]});
}

namespace {

VertexKind kind_from(const std::string& s) {
    if (s == "Z") return VertexKind::Z;
    if (s == "X") return VertexKind::X;
    if (s == "B") return VertexKind::Boundary;
    throw FormatError("unknown vertex kind '" + s + "'");
}

}  // namespace

json diagram_to_json(const Diagram& d) {
    json verts = json::array();
    for (int v : d.vertices()) {
        json o = {{"id", v}, {"kind", to_string(d.kind(v))}, {"phase", d.phase(v).num()}};
        if (d.region(v) >= 0) o["region"] = d.region_names().at(d.region(v));
        verts.push_back(std::move(o));
    }
    json edges = json::array();
    for (const auto& e : d.edges())
        edges.push_back({{"src", e.src}, {"dst", e.dst}, {"kind", e.kind == EdgeKind::Plain ? "plain" : "hadamard"}});
    return {{"format", "zxcut-diagram"},
            {"version", 1},
            {"vertices", std::move(verts)},
            {"edges", std::move(edges)},
            {"inputs", d.inputs()},
            {"outputs", d.outputs()},
            {"scalar", scalar_to_json(d.scalar())},
            {"anchors", d.anchors()}};
}

Diagram diagram_from_json(const json& j) {
    try {
        if (j.at("format").get<std::string>() != "zxcut-diagram") throw FormatError("not a zxcut diagram");
        if (j.at("version").get<int>() != 1) throw FormatError("unsupported diagram version");
        std::map<int, const json*> byid;
        for (const auto& v : j.at("vertices")) {
            int id = v.at("id").get<int>();
            if (id < 0 || id > 10'000'000) throw FormatError("vertex id out of range");
            if (!byid.emplace(id, &v).second) throw FormatError("duplicate vertex id " + std::to_string(id));
        }
        Diagram d;
        int bound = byid.empty() ? 0 : byid.rbegin()->first + 1;
        std::vector<int> gaps;
        for (int id = 0; id < bound; ++id) {
            auto it = byid.find(id);
            if (it == byid.end()) {
                d.add_vertex(VertexKind::Z);
                gaps.push_back(id);
                continue;
            }
            const json& v = *it->second;
            int region = -1;
            if (v.contains("region")) region = d.region_id(v.at("region").get<std::string>());
            d.add_vertex(kind_from(v.at("kind").get<std::string>()), Phase(v.at("phase").get<int>()), region);
        }
        for (int g : gaps) d.remove_vertex(g);
        for (const auto& e : j.at("edges")) {
            std::string k = e.at("kind").get<std::string>();
            if (k != "plain" && k != "hadamard") throw FormatError("unknown edge kind '" + k + "'");
            d.add_edge(e.at("src").get<int>(), e.at("dst").get<int>(),
                       k == "plain" ? EdgeKind::Plain : EdgeKind::Hadamard);
        }
        d.inputs_mut() = j.at("inputs").get<std::vector<int>>();
        d.outputs_mut() = j.at("outputs").get<std::vector<int>>();
        d.scalar() = scalar_from_json(j.at("scalar"));
        if (j.contains("anchors")) d.anchors() = j.at("anchors").get<std::map<std::string, int>>();
        d.validate();
        return d;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed diagram: ") + e.what());
    } catch (const DiagramError& e) {
        throw FormatError(std::string("invalid diagram: ") + e.what());
    }
}

std::string dump_diagram(const Diagram& d) { return diagram_to_json(d).dump(1) + "\n"; }

Diagram parse_diagram(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed diagram: ") + e.what());
    }
    return diagram_from_json(j);
}

json trace_to_json(const RewriteTrace& trace) {
    json a = json::array();
    for (const auto& s : trace) a.push_back({{"rule", s.rule}, {"vertices", s.vertices}, {"scalar", scalar_to_json(s.scalar)}});
    return a;
}

std::string to_tikz(const Diagram& d) {
    // layers: breadth-first distance from the inputs (or the outputs when there are none)
    const int n = d.id_bound();
    std::vector<int> layer(n, -1);
    std::vector<int> frontier = d.inputs().empty() ? d.outputs() : d.inputs();
    for (int v : frontier) layer[v] = 0;
    for (size_t i = 0; i < frontier.size(); ++i)
        for (const Nbr& e : d.nbrs(frontier[i]))
            if (layer[e.v] < 0) {
                layer[e.v] = layer[frontier[i]] + 1;
                frontier.push_back(e.v);
            }
    int maxl = 0;
    for (int v : d.vertices()) maxl = std::max(maxl, layer[v]);
    for (int v : d.vertices())
        if (layer[v] < 0) layer[v] = ++maxl;
    if (!d.inputs().empty())
        for (int v : d.outputs()) layer[v] = maxl + 1;
    else
        for (int v : d.outputs()) layer[v] = 0;
    std::map<int, int> used;
    std::map<int, double> x, y;
    for (int v : d.vertices()) {
        x[v] = layer[v];
        y[v] = -used[layer[v]]++;
    }
    auto num = [](double v) {
        std::ostringstream os;
        os << std::setprecision(4) << v;
        return os.str();
    };
    std::ostringstream out;
    out << "\\begin{tikzpicture}\n\t\\begin{pgfonlayer}{nodelayer}\n";
    for (int v : d.vertices()) {
        std::string style = "none", label;
        if (!d.is_boundary(v)) {
            bool z = d.kind(v) == VertexKind::Z;
            if (d.phase(v).is_zero()) {
                style = z ? "Z dot" : "X dot";
            } else {
                style = z ? "Z phase dot" : "X phase dot";
                label = "$" + d.phase(v).to_latex() + "$";
            }
        }
        out << "\t\t\\node [style=" << style << "] (" << v << ") at (" << num(x[v]) << ", " << num(y[v]) << ") {"
            << label << "};\n";
    }
    out << "\t\\end{pgfonlayer}\n\t\\begin{pgfonlayer}{edgelayer}\n";
    for (const auto& e : d.edges()) {
        out << "\t\t\\draw ";
        if (e.kind == EdgeKind::Hadamard) out << "[style=hadamard edge] ";
        if (e.src == e.dst)
            out << "(" << e.src << ") to [in=45, out=135, loop] ();\n";
        else
            out << "(" << e.src << ") to (" << e.dst << ");\n";
    }
    out << "\t\\end{pgfonlayer}\n\\end{tikzpicture}\n";
    return out.str();
}

}  // namespace zxcut
