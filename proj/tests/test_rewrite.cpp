#include <doctest.h>

#include "zxstar/circuits.hpp"
#include "zxstar/oracle.hpp"
#include "zxstar/rewrite.hpp"
#include "zxstar/serialize.hpp"

#include <map>

using namespace zxstar;

namespace {

// random open diagram with plain/H/star edges and spiders, <= wires wires
Diagram random_small_diagram(SplitMix64& rng, int wires, bool with_stars = true) {
    Diagram d;
    std::vector<VertexId> pool;
    int spiders = 2 + static_cast<int>(rng.below(5));
    for (int i = 0; i < spiders; ++i) {
        VertexType t = rng.below(2) ? VertexType::Z : VertexType::X;
        // bias toward Clifford phases so the rarer patterns match often
        Phase p(rng.below(2) ? static_cast<int>(rng.below(8))
                             : static_cast<int>(4 * rng.below(2)));
        pool.push_back(d.add_vertex(t, p));
    }
    int edges = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < edges; ++i) {
        VertexId a = pool[rng.below(pool.size())];
        VertexId b = pool[rng.below(pool.size())];
        EdgeKind k = EdgeKind::Plain;
        switch (rng.below(with_stars ? 3 : 2)) {
        case 1: k = EdgeKind::Hadamard; break;
        case 2: k = EdgeKind::Star; break;
        default: break;
        }
        if (a != b)
            d.add_edge(a, b, k);
    }
    int nw = 1 + static_cast<int>(rng.below(wires));
    for (int i = 0; i < nw; ++i) {
        VertexId v = pool[rng.below(pool.size())];
        if (rng.below(2))
            d.add_output(v);
        else
            d.add_input(v);
    }
    return d;
}

bool tensors_equal(const Diagram& a, const Diagram& b) {
    return contract(a) == contract(b);
}

} // namespace

TEST_CASE("spider fusion adds phases") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z, Phase(1));
    VertexId b = d.add_vertex(VertexType::Z, Phase(1));
    d.add_edge(a, b);
    d.add_input(a);
    d.add_output(b);
    auto m = find_matches(d, RewriteKind::SpiderFusion);
    REQUIRE(m.size() == 1);
    Diagram r = apply_rewrite(d, m[0]);
    CHECK(r.vertex(m[0].a).phase == Phase(2));
    CHECK(tensors_equal(d, r));
}

TEST_CASE("no fusion sites on an identity wire or mixed colors") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Boundary);
    VertexId b = d.add_vertex(VertexType::Boundary);
    d.add_edge(a, b);
    d.inputs().push_back(a);
    d.outputs().push_back(b);
    CHECK(find_matches(d, RewriteKind::SpiderFusion).empty());
}

TEST_CASE("chain of three Z spiders has two fusion sites") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z);
    VertexId b = d.add_vertex(VertexType::Z);
    VertexId c = d.add_vertex(VertexType::Z);
    d.add_edge(a, b);
    d.add_edge(b, c);
    CHECK(find_matches(d, RewriteKind::SpiderFusion).size() == 2);
}

TEST_CASE("star-state rewrites match the 2x2 oracle") {
    auto leaf_star = [](VertexType t, Phase p) {
        Diagram d;
        VertexId leaf = d.add_vertex(t, p);
        VertexId far = d.add_vertex(VertexType::Z, Phase(0));
        d.add_edge(leaf, far, EdgeKind::Star);
        d.add_input(far);
        d.add_output(far);
        return d;
    };
    SUBCASE("X(pi) leaf: scalar 1, X(0) at the far end") {
        Diagram d = leaf_star(VertexType::X, Phase::pi());
        auto m = find_matches(d, RewriteKind::StarStateXPi);
        REQUIRE(m.size() == 1);
        Diagram r = apply_rewrite(d, m[0]);
        CHECK(tensors_equal(d, r));
        CHECK(r.scalar() == ExactScalar::one());
    }
    SUBCASE("X(0) leaf: scalar sqrt2, Z(0) at the far end") {
        Diagram d = leaf_star(VertexType::X, Phase(0));
        auto m = find_matches(d, RewriteKind::StarStateX0);
        REQUIRE(m.size() == 1);
        Diagram r = apply_rewrite(d, m[0]);
        CHECK(tensors_equal(d, r));
        CHECK(r.scalar() == ExactScalar::sqrt2());
    }
    SUBCASE("Z(pi) leaf: scalar 1/sqrt2, X(pi) at the far end") {
        Diagram d = leaf_star(VertexType::Z, Phase::pi());
        auto m = find_matches(d, RewriteKind::StarStateZPi);
        REQUIRE(m.size() == 1);
        Diagram r = apply_rewrite(d, m[0]);
        CHECK(tensors_equal(d, r));
        CHECK(r.scalar() == ExactScalar::inv_sqrt2());
    }
    SUBCASE("Z(0) leaf is a star state, no rule fires") {
        Diagram d = leaf_star(VertexType::Z, Phase(0));
        CHECK(find_matches(d, RewriteKind::StarStateXPi).empty());
        CHECK(find_matches(d, RewriteKind::StarStateX0).empty());
        CHECK(find_matches(d, RewriteKind::StarStateZPi).empty());
    }
}

TEST_CASE("every rewrite kind preserves the oracle tensor on random sites") {
    SplitMix64 rng(2024);
    const RewriteKind kinds[] = {
        RewriteKind::SpiderFusion,    RewriteKind::ColorChange,
        RewriteKind::PiCommutation,   RewriteKind::StateCopy,
        RewriteKind::Bialgebra,       RewriteKind::HHCancel,
        RewriteKind::Hopf,            RewriteKind::IdentityRemoval,
        RewriteKind::EulerDecomposition, RewriteKind::StarStateXPi,
        RewriteKind::StarStateX0,     RewriteKind::StarStateZPi};
    std::map<RewriteKind, int> hits;
    for (int trial = 0; trial < 2500; ++trial) {
        Diagram d = random_small_diagram(rng, 4);
        for (RewriteKind k : kinds) {
            auto sites = find_matches(d, k);
            if (sites.empty())
                continue;
            const auto& site = sites[rng.below(sites.size())];
            Diagram r = apply_rewrite(d, site);
            CHECK_MESSAGE(tensors_equal(d, r),
                          "rewrite kind ", static_cast<int>(k), " broke the tensor");
            ++hits[k];
        }
    }
    // every kind must actually have been exercised
    for (RewriteKind k : kinds)
        CHECK_MESSAGE(hits[k] >= 20, "kind ", static_cast<int>(k),
                      " matched only ", hits[k], " times");
}

TEST_CASE("stale handles are rejected") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Z, Phase(1));
    VertexId b = d.add_vertex(VertexType::Z, Phase(1));
    d.add_edge(a, b);
    auto m = find_matches(d, RewriteKind::SpiderFusion);
    REQUIRE(!m.empty());
    d.remove_vertex(b);
    CHECK_THROWS_AS((void)apply_rewrite(d, m[0]), std::invalid_argument);
}

TEST_CASE("partial_simplify is sound, idempotent and collapses Clifford terms") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Diagram d = random_small_diagram(rng, 3);
        Diagram s = d;
        partial_simplify(s);
        CHECK(tensors_equal(d, s));
        Diagram s2 = s;
        partial_simplify(s2);
        CHECK(diagram_to_string(s2) == diagram_to_string(s));
    }
}

TEST_CASE("identity spider on a plain wire is removed") {
    Diagram d;
    VertexId a = d.add_vertex(VertexType::Boundary);
    VertexId m = d.add_vertex(VertexType::Z, Phase(0));
    VertexId b = d.add_vertex(VertexType::Boundary);
    d.add_edge(a, m);
    d.add_edge(m, b);
    d.inputs().push_back(a);
    d.outputs().push_back(b);
    partial_simplify(d);
    CHECK(!d.has_vertex(m));
    CHECK(d.vertices().size() == 2);
}

TEST_CASE("push_nots absorbs a NOT into a computational state") {
    // |0> state, then X: becomes |1>
    Diagram d;
    VertexId st = d.add_vertex(VertexType::X, Phase(0)); // sqrt2 |0>
    VertexId x = d.add_vertex(VertexType::X, Phase::pi());
    d.add_edge(st, x);
    d.add_output(x);
    Diagram before = d;
    push_nots_to_boundary(d);
    CHECK(tensors_equal(before, d));
    // a single X(pi) state remains
    REQUIRE(d.vertices().size() == 2);
    for (const auto& [v, vert] : d.vertices())
        if (vert.type != VertexType::Boundary)
            CHECK(vert.phase == Phase::pi());
}

TEST_CASE("push_nots and to_stack_form preserve circuit tensors") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Circuit c = random_mct_dense(4, static_cast<int>(rng.below(4)),
                                     static_cast<int>(rng.below(3)),
                                     1 + static_cast<int>(rng.below(2)),
                                     rng.next());
        Diagram d = to_diagram(c);
        Diagram s = d;
        push_nots_to_boundary(s);
        CHECK(tensors_equal(d, s));
        to_stack_form(s);
        CHECK(tensors_equal(d, s));
    }
}

TEST_CASE("to_stack_form merges a three-spider run into two stacks") {
    // boundary - Z(s1) - Xpi - Z(s2) - Xpi - Z(s3) - boundary, one star each
    Diagram d;
    std::vector<VertexId> vs, xs, leaves;
    for (int i = 0; i < 3; ++i) {
        vs.push_back(d.add_vertex(VertexType::Z, Phase(0)));
        VertexId leaf = d.add_vertex(VertexType::Z, Phase(0)); // open star target
        d.add_edge(vs[i], leaf, EdgeKind::Star);
        d.add_output(leaf);
        leaves.push_back(leaf);
    }
    for (int i = 0; i < 2; ++i) {
        xs.push_back(d.add_vertex(VertexType::X, Phase::pi()));
        d.add_edge(vs[i], xs[i]);
        d.add_edge(xs[i], vs[i + 1]);
    }
    d.add_input(vs[0]);
    d.add_output(vs[2]);
    Diagram before = d;
    to_stack_form(d);
    CHECK(tensors_equal(before, d));
    // vs[0] and vs[1] survive as the linked stack pair; vs[2] merged away
    CHECK(d.has_vertex(vs[0]));
    CHECK(d.has_vertex(vs[1]));
    CHECK(!d.has_vertex(vs[2]));
    CHECK(d.linked_partner(vs[0]) == vs[1]);
    CHECK(d.star_degree(vs[0]) == 2);
    CHECK(d.star_degree(vs[1]) == 1);
}
