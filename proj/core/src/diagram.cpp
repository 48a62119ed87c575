#include "zxstar/diagram.hpp"

#include <algorithm>
#include <stdexcept>

namespace zxstar {

VertexId Diagram::add_vertex(VertexType type, Phase phase) {
    VertexId id = next_id_++;
    vertices_[id] = Vertex{type, phase};
    adj_[id];
    return id;
}

void Diagram::add_edge(VertexId u, VertexId v, EdgeKind kind) {
    if (!has_vertex(u) || !has_vertex(v))
        throw std::invalid_argument("add_edge: dangling vertex id");
    if (u == v) {
        adj_[u].insert({u, kind});
        return;
    }
    adj_[u].insert({v, kind});
    adj_[v].insert({u, kind});
}

void Diagram::remove_edge(VertexId u, VertexId v, EdgeKind kind) {
    auto erase_one = [&](VertexId from, VertexId to) {
        auto& inc = adj_.at(from);
        auto it = inc.find({to, kind});
        if (it == inc.end())
            throw std::invalid_argument("remove_edge: no such edge");
        inc.erase(it);
    };
    erase_one(u, v);
    if (u != v)
        erase_one(v, u);
}

void Diagram::remove_vertex(VertexId v) {
    if (!has_vertex(v))
        throw std::invalid_argument("remove_vertex: dangling vertex id");
    auto inc = adj_.at(v); // copy
    for (const auto& [w, kind] : inc) {
        if (w == v)
            continue;
        auto& winc = adj_.at(w);
        winc.erase(winc.find({v, kind}));
    }
    adj_.erase(v);
    vertices_.erase(v);
    unlink(v);
    std::erase(inputs_, v);
    std::erase(outputs_, v);
}

const Vertex& Diagram::vertex(VertexId v) const {
    auto it = vertices_.find(v);
    if (it == vertices_.end())
        throw std::invalid_argument("vertex: dangling id");
    return it->second;
}

void Diagram::set_phase(VertexId v, Phase p) {
    vertices_.at(v).phase = p;
}

void Diagram::set_type(VertexId v, VertexType t) {
    vertices_.at(v).type = t;
}

const std::multiset<Diagram::Incidence>& Diagram::incidences(VertexId v) const {
    static const std::multiset<Incidence> empty;
    auto it = adj_.find(v);
    return it == adj_.end() ? empty : it->second;
}

std::size_t Diagram::degree(VertexId v) const {
    std::size_t d = 0;
    for (const auto& [w, kind] : incidences(v))
        d += (w == v) ? 2 : 1;
    return d;
}

std::size_t Diagram::star_degree(VertexId v) const {
    std::size_t d = 0;
    for (const auto& [w, kind] : incidences(v))
        if (kind == EdgeKind::Star)
            d += (w == v) ? 2 : 1;
    return d;
}

std::vector<Edge> Diagram::edges() const {
    std::vector<Edge> out;
    for (const auto& [u, inc] : adj_)
        for (const auto& [v, kind] : inc)
            if (u <= v)
                out.push_back({u, v, kind});
    return out;
}

std::size_t Diagram::edge_count() const {
    std::size_t n = 0;
    for (const auto& [u, inc] : adj_)
        for (const auto& [v, kind] : inc)
            if (u <= v)
                ++n;
    return n;
}

void Diagram::link_pair(VertexId a, VertexId b) {
    stack_links_[a] = b;
    stack_links_[b] = a;
}

std::optional<VertexId> Diagram::linked_partner(VertexId v) const {
    auto it = stack_links_.find(v);
    if (it == stack_links_.end() || !has_vertex(it->second))
        return std::nullopt;
    return it->second;
}

void Diagram::unlink(VertexId v) {
    auto it = stack_links_.find(v);
    if (it != stack_links_.end()) {
        stack_links_.erase(it->second);
        stack_links_.erase(v);
    }
}

VertexId Diagram::add_input(VertexId attach_to, EdgeKind kind) {
    VertexId b = add_vertex(VertexType::Boundary);
    add_edge(b, attach_to, kind);
    inputs_.push_back(b);
    return b;
}

VertexId Diagram::add_output(VertexId attach_to, EdgeKind kind) {
    VertexId b = add_vertex(VertexType::Boundary);
    add_edge(b, attach_to, kind);
    outputs_.push_back(b);
    return b;
}

namespace {

// plain/hadamard compose by xor; star composes with plain only.
std::optional<EdgeKind> compose_kinds(EdgeKind a, EdgeKind b) {
    if (a == EdgeKind::Plain)
        return b;
    if (b == EdgeKind::Plain)
        return a;
    if (a == EdgeKind::Hadamard && b == EdgeKind::Hadamard)
        return EdgeKind::Plain;
    return std::nullopt;
}

} // namespace

Diagram Diagram::compose(const Diagram& after) const {
    if (outputs_.size() != after.inputs_.size())
        throw std::invalid_argument("compose: arity mismatch");
    Diagram out = *this;
    std::map<VertexId, VertexId> remap;
    for (const auto& [v, vert] : after.vertices_)
        remap[v] = out.add_vertex(vert.type, vert.phase);
    for (const auto& [u, inc] : after.adj_)
        for (const auto& [v, kind] : inc)
            if (u <= v)
                out.add_edge(remap[u], remap[v], kind);
    for (const auto& [a, b] : after.stack_links_)
        if (a < b)
            out.link_pair(remap[a], remap[b]);
    out.mul_scalar(after.scalar_);

    std::vector<VertexId> glue_a = outputs_;
    std::vector<VertexId> glue_b;
    for (VertexId v : after.inputs_)
        glue_b.push_back(remap[v]);
    out.outputs_.clear();
    for (VertexId v : after.outputs_)
        out.outputs_.push_back(remap[v]);

    // glued boundaries turn into plain Z(0) joints, collapsed right away
    // where the incident edge kinds compose
    std::vector<VertexId> joints;
    for (std::size_t i = 0; i < glue_a.size(); ++i) {
        VertexId oa = glue_a[i], ib = glue_b[i];
        out.set_type(oa, VertexType::Z);
        out.set_type(ib, VertexType::Z);
        out.add_edge(oa, ib, EdgeKind::Plain);
        joints.push_back(oa);
        joints.push_back(ib);
    }
    for (VertexId j : joints)
        out.try_collapse_joint(j);
    return out;
}

void Diagram::try_collapse_joint(VertexId j) {
    if (!has_vertex(j))
        return;
    const auto& v = vertex(j);
    if (v.type != VertexType::Z || !v.phase.is_zero() || degree(j) != 2)
        return;
    const auto& inc = incidences(j);
    if (inc.begin()->first == j)
        return; // self-loop
    auto it = inc.begin();
    auto [n1, k1] = *it;
    auto [n2, k2] = *std::next(it);
    auto k = compose_kinds(k1, k2);
    if (!k)
        return;
    remove_vertex(j);
    add_edge(n1, n2, *k);
}

Diagram Diagram::tensor(const Diagram& other) const {
    Diagram out = *this;
    std::map<VertexId, VertexId> remap;
    for (const auto& [v, vert] : other.vertices_)
        remap[v] = out.add_vertex(vert.type, vert.phase);
    for (const auto& [u, inc] : other.adj_)
        for (const auto& [v, kind] : inc)
            if (u <= v)
                out.add_edge(remap[u], remap[v], kind);
    for (const auto& [a, b] : other.stack_links_)
        if (a < b)
            out.link_pair(remap[a], remap[b]);
    for (VertexId v : other.inputs_)
        out.inputs_.push_back(remap[v]);
    for (VertexId v : other.outputs_)
        out.outputs_.push_back(remap[v]);
    out.mul_scalar(other.scalar_);
    return out;
}

} // namespace zxstar
