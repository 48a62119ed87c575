#pragma once

#include "zxstar/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace zxstar {

using VertexId = std::uint32_t;

enum class VertexType : std::uint8_t { Boundary, Z, X };

enum class EdgeKind : std::uint8_t { Plain, Hadamard, Star };

struct Vertex {
    VertexType type = VertexType::Z;
    Phase phase{};
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    VertexId u, v; // u <= v
    EdgeKind kind;
    auto operator<=>(const Edge&) const = default;
};

/// Open ZX multigraph with typed edges (plain / Hadamard / star), ordered
/// boundaries and a global exact scalar. Vertex ids are allocated
/// monotonically and never reused, so edits keep surviving ids stable.
class Diagram {
public:
    using Incidence = std::pair<VertexId, EdgeKind>;

    VertexId add_vertex(VertexType type, Phase phase = Phase{});
    void add_edge(VertexId u, VertexId v, EdgeKind kind = EdgeKind::Plain);
    /// Removes one instance of (u,v,kind); throws if absent.
    void remove_edge(VertexId u, VertexId v, EdgeKind kind);
    /// Removes the vertex together with all incident edges.
    void remove_vertex(VertexId v);

    bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
    const Vertex& vertex(VertexId v) const;
    void set_phase(VertexId v, Phase p);
    void set_type(VertexId v, VertexType t);

    /// Incident (neighbor, kind) pairs in deterministic order. A self-loop
    /// appears once.
    const std::multiset<Incidence>& incidences(VertexId v) const;
    /// Degree counts self-loops twice.
    std::size_t degree(VertexId v) const;
    std::size_t star_degree(VertexId v) const;

    const std::map<VertexId, Vertex>& vertices() const { return vertices_; }
    /// All edges with u <= v, deterministic order.
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;

    std::vector<VertexId>& inputs() { return inputs_; }
    std::vector<VertexId>& outputs() { return outputs_; }
    const std::vector<VertexId>& inputs() const { return inputs_; }
    const std::vector<VertexId>& outputs() const { return outputs_; }

    const ExactScalar& scalar() const { return scalar_; }
    void set_scalar(ExactScalar s) { scalar_ = std::move(s); }
    void mul_scalar(const ExactScalar& s) { scalar_ = scalar_ * s; }

    /// Linked stack pairs (kept symmetric; dropped when either side dies).
    void link_pair(VertexId a, VertexId b);
    std::optional<VertexId> linked_partner(VertexId v) const;
    void unlink(VertexId v);

    /// Convenience constructors for boundary wiring.
    VertexId add_input(VertexId attach_to, EdgeKind kind = EdgeKind::Plain);
    VertexId add_output(VertexId attach_to, EdgeKind kind = EdgeKind::Plain);

    /// Sequential composition: this, then `after` (this's outputs glued to
    /// `after`'s inputs). Throws on arity mismatch.
    Diagram compose(const Diagram& after) const;
    /// Parallel composition; boundary lists concatenate, scalars multiply.
    Diagram tensor(const Diagram& other) const;

    VertexId peek_next_id() const { return next_id_; }

    /// Removes a plain degree-2 Z(0) vertex, reconnecting its neighbors,
    /// when the incident edge kinds compose. No-op otherwise.
    void try_collapse_joint(VertexId j);

private:
    std::map<VertexId, Vertex> vertices_;
    std::map<VertexId, std::multiset<Incidence>> adj_;
    std::vector<VertexId> inputs_, outputs_;
    ExactScalar scalar_ = ExactScalar::one();
    std::map<VertexId, VertexId> stack_links_;
    VertexId next_id_ = 0;
};

/// One summand of a stabilizer decomposition in progress.
struct Term {
    ExactScalar coefficient = ExactScalar::one();
    Diagram diagram;

    bool prunable() const {
        return coefficient.is_zero() || diagram.scalar().is_zero();
    }
};

} // namespace zxstar
