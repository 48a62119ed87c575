#include <doctest.h>

#include "zxstar/diagram.hpp"
#include "zxstar/oracle.hpp"
#include "zxstar/serialize.hpp"

using namespace zxstar;

namespace {

Diagram identity_wire() {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Boundary);
    VertexId b = d.add_vertex(VertexType::Boundary);
    d.add_edge(a, b);
    d.inputs().push_back(a);
    d.outputs().push_back(b);
    return d;
}

Diagram z_state(Phase p) {
    Diagram d;
    VertexId s = d.add_vertex(VertexType::Z, p);
    d.add_output(s);
    return d;
}

} // namespace

TEST_CASE("ids survive edits") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z);
    VertexId b = d.add_vertex(VertexType::X, Phase::pi());
    VertexId c = d.add_vertex(VertexType::Z, Phase(2));
    d.add_edge(a, b);
    d.add_edge(b, c, EdgeKind::Hadamard);
    d.remove_vertex(b);
    CHECK(d.has_vertex(a));
    CHECK(d.has_vertex(c));
    CHECK(d.vertex(c).phase == Phase(2));
    CHECK(d.degree(a) == 0);
    VertexId e = d.add_vertex(VertexType::Z);
    CHECK(e > c); // ids are never reused
}

TEST_CASE("parallel edges and self-loops are representable") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z);
    VertexId b = d.add_vertex(VertexType::Z);
    d.add_edge(a, b);
    d.add_edge(a, b);
    d.add_edge(a, a, EdgeKind::Hadamard);
    CHECK(d.degree(a) == 4); // self-loop counts twice
    CHECK(d.edge_count() == 3);
    d.remove_edge(a, b, EdgeKind::Plain);
    CHECK(d.edge_count() == 2);
}

TEST_CASE("compose of identity wires is an identity wire") {
    Diagram c = identity_wire().compose(identity_wire());
    DenseTensor t = contract(c);
    CHECK(t.n_in == 1);
    CHECK(t.n_out == 1);
    CHECK(t.at(0, 0) == ExactScalar::one());
    CHECK(t.at(0, 1).is_zero());
    CHECK(t.at(1, 0).is_zero());
    CHECK(t.at(1, 1) == ExactScalar::one());
}

TEST_CASE("tensor concatenates boundaries and multiplies scalars") {
    Diagram a = z_state(Phase(0));
    a.set_scalar(ExactScalar::integer(2));
    Diagram b = z_state(Phase(4));
    b.set_scalar(ExactScalar::sqrt2());
    Diagram t = a.tensor(b);
    CHECK(t.outputs().size() == 2);
    CHECK(t.inputs().empty());
    CHECK(t.scalar() == ExactScalar(0, 0, 2, 0));
}

TEST_CASE("compose mismatched arity throws") {
    CHECK_THROWS_AS((void)z_state(Phase(0)).compose(z_state(Phase(0))),
                    std::invalid_argument);
}

TEST_CASE("compose Z(pi) state with X effect gives the oracle scalar") {
    // <+|, i.e. X(0) effect, applied to |0> - |1>
    Diagram state = z_state(Phase::pi());
    Diagram effect;
    {
        VertexId s = effect.add_vertex(VertexType::X, Phase::zero());
        effect.add_input(s);
    }
    Diagram scalar_diagram = state.compose(effect);
    CHECK(scalar_diagram.inputs().empty());
    CHECK(scalar_diagram.outputs().empty());
    DenseTensor t = contract(scalar_diagram);
    // X(0) effect is sqrt2 <0|, applied to |0> - |1>: sqrt2
    CHECK(t.data.size() == 1);
    CHECK(t.data[0] == ExactScalar::sqrt2());
}

TEST_CASE("dangling edge edits are rejected") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z);
    CHECK_THROWS_AS(d.add_edge(a, a + 1), std::invalid_argument);
    CHECK_THROWS_AS(d.remove_vertex(a + 1), std::invalid_argument);
    CHECK_THROWS_AS(d.remove_edge(a, a, EdgeKind::Plain), std::invalid_argument);
}

TEST_CASE("diagram serialization round-trips") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z, Phase(3));
    VertexId b = d.add_vertex(VertexType::X, Phase::pi());
    d.add_edge(a, b, EdgeKind::Star);
    d.add_edge(a, b, EdgeKind::Hadamard);
    d.add_output(a);
    d.add_input(b);
    d.set_scalar(ExactScalar(1, -2, 3, 0, 2));
    Diagram back = diagram_from_string(diagram_to_string(d));
    CHECK(contract(back) == contract(d));
    CHECK(back.scalar() == d.scalar());
}
