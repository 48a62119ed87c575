#include <doctest.h>

#include "zxstar/circuits.hpp"
#include "zxstar/oracle.hpp"

using namespace zxstar;

namespace {

Diagram wire_spider(VertexType t, Phase p) {
    Diagram d;
    VertexId s = d.add_vertex(t, p);
    d.add_input(s);
    d.add_output(s);
    return d;
}

} // namespace

TEST_CASE("phase-free Z wire spider is the identity") {
    DenseTensor t = contract(wire_spider(VertexType::Z, Phase(0)));
    CHECK(t.at(0, 0) == ExactScalar::one());
    CHECK(t.at(1, 1) == ExactScalar::one());
    CHECK(t.at(0, 1).is_zero());
    CHECK(t.at(1, 0).is_zero());
}

TEST_CASE("bare star edge has the star matrix") {
    Diagram d;
    VertexId in = d.add_vertex(VertexType::Boundary);
    VertexId out = d.add_vertex(VertexType::Boundary);
    d.add_edge(in, out, EdgeKind::Star);
    d.inputs().push_back(in);
    d.outputs().push_back(out);
    DenseTensor t = contract(d);
    CHECK(t.at(0, 0) == ExactScalar::one());
    CHECK(t.at(0, 1) == ExactScalar::one());
    CHECK(t.at(1, 0) == ExactScalar::one());
    CHECK(t.at(1, 1).is_zero());
}

TEST_CASE("hadamard edge matrix") {
    Diagram d;
    VertexId in = d.add_vertex(VertexType::Boundary);
    VertexId out = d.add_vertex(VertexType::Boundary);
    d.add_edge(in, out, EdgeKind::Hadamard);
    d.inputs().push_back(in);
    d.outputs().push_back(out);
    DenseTensor t = contract(d);
    ExactScalar h = ExactScalar::inv_sqrt2();
    CHECK(t.at(0, 0) == h);
    CHECK(t.at(0, 1) == h);
    CHECK(t.at(1, 0) == h);
    CHECK(t.at(1, 1) == -h);
}

TEST_CASE("isolated X(pi) spider is the zero scalar") {
    Diagram d;
    d.add_vertex(VertexType::X, Phase::pi());
    DenseTensor t = contract(d);
    CHECK(t.data.size() == 1);
    CHECK(t.data[0].is_zero());

    Diagram d2;
    d2.add_vertex(VertexType::Z, Phase(2));
    CHECK(contract(d2).data[0] == ExactScalar::one_plus_phase(Phase(2)));
}

TEST_CASE("statevector of simple states") {
    Diagram z0;
    z0.add_output(z0.add_vertex(VertexType::Z, Phase(0)));
    auto v = statevector(z0);
    CHECK(v[0] == ExactScalar::one());
    CHECK(v[1] == ExactScalar::one());

    Diagram xpi;
    xpi.add_output(xpi.add_vertex(VertexType::X, Phase::pi()));
    auto w = statevector(xpi);
    CHECK(w[0].is_zero());
    CHECK(w[1] == ExactScalar::sqrt2());

    CHECK_THROWS(statevector(wire_spider(VertexType::Z, Phase(0))));
}

TEST_CASE("GHZ circuit statevector") {
    // H on qubit 0, then CNOT(0,1), CNOT(1,2)
    Circuit c;
    c.qubits = 3;
    c.gates = {HGate{0}, CnotGate{0, 1}, CnotGate{1, 2}};
    auto v = statevector(to_diagram_closed(c));
    // (|000> + |111>)/sqrt2
    CHECK(v[0] == ExactScalar::inv_sqrt2());
    CHECK(v[7] == ExactScalar::inv_sqrt2());
    for (int i = 1; i < 7; ++i)
        CHECK(v[i].is_zero());
}

TEST_CASE("contract respects composition and tensoring") {
    SplitMix64 rng(3);
    auto random_diagram = [&](int wires) {
        Circuit c;
        c.qubits = wires;
        int gates = 2 + static_cast<int>(rng.below(4));
        for (int g = 0; g < gates; ++g) {
            switch (rng.below(3)) {
            case 0:
                c.gates.push_back(XGate{static_cast<int>(rng.below(wires))});
                break;
            case 1:
                c.gates.push_back(HGate{static_cast<int>(rng.below(wires))});
                break;
            default: {
                int a = static_cast<int>(rng.below(wires));
                int b = static_cast<int>(rng.below(wires - 1));
                if (b >= a)
                    ++b;
                c.gates.push_back(CnotGate{a, b});
            }
            }
        }
        return to_diagram(c);
    };
    for (int trial = 0; trial < 20; ++trial) {
        Diagram a = random_diagram(2), b = random_diagram(2);
        DenseTensor ta = contract(a), tb = contract(b), tc = contract(a.compose(b));
        // (B after A) == B * A as matrices
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c2 = 0; c2 < 4; ++c2) {
                ExactScalar sum;
                for (std::size_t m = 0; m < 4; ++m)
                    sum += tb.at(r, m) * ta.at(m, c2);
                CHECK(sum == tc.at(r, c2));
            }
        Diagram t = a.tensor(b);
        DenseTensor tt = contract(t);
        for (std::size_t r = 0; r < 16; ++r)
            for (std::size_t c2 = 0; c2 < 16; ++c2) {
                ExactScalar expect =
                    ta.at(r >> 2, c2 >> 2) * tb.at(r & 3, c2 & 3);
                CHECK(expect == tt.at(r, c2));
            }
    }
}

TEST_CASE("verify_rule accepts the star-edge identity and rejects noise") {
    Diagram star;
    {
        VertexId in = star.add_vertex(VertexType::Boundary);
        VertexId out = star.add_vertex(VertexType::Boundary);
        star.add_edge(in, out, EdgeKind::Star);
        star.inputs().push_back(in);
        star.outputs().push_back(out);
    }
    // S = 1/sqrt2 * H-edge + 1/2 * (Z0 state x Z0 effect)
    Diagram h;
    {
        VertexId in = h.add_vertex(VertexType::Boundary);
        VertexId out = h.add_vertex(VertexType::Boundary);
        h.add_edge(in, out, EdgeKind::Hadamard);
        h.inputs().push_back(in);
        h.outputs().push_back(out);
    }
    Diagram pair;
    {
        VertexId eff = pair.add_vertex(VertexType::Z, Phase(0));
        pair.add_input(eff);
        VertexId st = pair.add_vertex(VertexType::Z, Phase(0));
        pair.add_output(st);
    }
    std::vector<std::pair<ExactScalar, Diagram>> branches;
    branches.emplace_back(ExactScalar::inv_sqrt2(), h);
    branches.emplace_back(ExactScalar(1, 0, 0, 0, 1), pair);
    CHECK(verify_rule(star, branches));
    branches[0].first = ExactScalar::one();
    CHECK(!verify_rule(star, branches));
}
