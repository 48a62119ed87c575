#include "zxstar/serialize.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace zxstar {

namespace {

char type_code(VertexType t) {
    switch (t) {
    case VertexType::Boundary: return 'B';
    case VertexType::Z: return 'Z';
    default: return 'X';
    }
}

char kind_code(EdgeKind k) {
    switch (k) {
    case EdgeKind::Plain: return 'P';
    case EdgeKind::Hadamard: return 'H';
    default: return 'S';
    }
}

} // namespace

void write_diagram(std::ostream& os, const Diagram& d) {
    os << "zxstar-diagram v1\n";
    for (const auto& [id, v] : d.vertices())
        os << "V " << id << ' ' << type_code(v.type) << ' ' << v.phase.eighths()
           << '\n';
    for (const Edge& e : d.edges())
        os << "E " << e.u << ' ' << e.v << ' ' << kind_code(e.kind) << '\n';
    os << "IN";
    for (VertexId v : d.inputs())
        os << ' ' << v;
    os << "\nOUT";
    for (VertexId v : d.outputs())
        os << ' ' << v;
    const ExactScalar& s = d.scalar();
    os << "\nSCALAR " << s.a() << ' ' << s.b() << ' ' << s.c() << ' ' << s.d() << ' '
       << s.k() << "\nend\n";
}

Diagram read_diagram(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header != "zxstar-diagram v1")
        throw std::runtime_error("diagram parse: bad or missing version header");
    Diagram d;
    std::map<VertexId, VertexId> remap;
    std::string line;
    while (std::getline(is, line)) {
        if (line == "end")
            return d;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "V") {
            VertexId id;
            char t;
            int eighths;
            if (!(ls >> id >> t >> eighths))
                throw std::runtime_error("diagram parse: malformed V line: " + line);
            VertexType ty = t == 'B'   ? VertexType::Boundary
                            : t == 'Z' ? VertexType::Z
                            : t == 'X' ? VertexType::X
                                       : throw std::runtime_error(
                                             "diagram parse: bad vertex type: " + line);
            remap[id] = d.add_vertex(ty, Phase(eighths));
        } else if (tag == "E") {
            VertexId a, b;
            char k;
            if (!(ls >> a >> b >> k))
                throw std::runtime_error("diagram parse: malformed E line: " + line);
            EdgeKind kind = k == 'P'   ? EdgeKind::Plain
                            : k == 'H' ? EdgeKind::Hadamard
                            : k == 'S' ? EdgeKind::Star
                                       : throw std::runtime_error(
                                             "diagram parse: bad edge kind: " + line);
            d.add_edge(remap.at(a), remap.at(b), kind);
        } else if (tag == "IN" || tag == "OUT") {
            VertexId v;
            while (ls >> v)
                (tag == "IN" ? d.inputs() : d.outputs()).push_back(remap.at(v));
        } else if (tag == "SCALAR") {
            long long a, b, c, e;
            unsigned k;
            if (!(ls >> a >> b >> c >> e >> k))
                throw std::runtime_error("diagram parse: malformed SCALAR line: " + line);
            d.set_scalar(ExactScalar(a, b, c, e, k));
        } else {
            throw std::runtime_error("diagram parse: unknown tag: " + line);
        }
    }
    throw std::runtime_error("diagram parse: missing 'end'");
}

std::string diagram_to_string(const Diagram& d) {
    std::ostringstream os;
    write_diagram(os, d);
    return os.str();
}

Diagram diagram_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_diagram(is);
}

} // namespace zxstar
