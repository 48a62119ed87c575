#include "zxstar/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace zxstar {

namespace {

bool is_spider(const Diagram& d, VertexId v) {
    auto t = d.vertex(v).type;
    return t == VertexType::Z || t == VertexType::X;
}

bool has_star_between(const Diagram& d, VertexId u, VertexId w) {
    for (const auto& [x, k] : d.incidences(u))
        if (x == w && k == EdgeKind::Star)
            return true;
    return false;
}

bool has_self_loop(const Diagram& d, VertexId v) {
    for (const auto& [x, k] : d.incidences(v))
        if (x == v)
            return true;
    return false;
}

// Degree-1 spider as seen through its single edge: a Hadamard edge toggles
// the effective color.
struct LeafView {
    VertexId leaf;
    VertexId host;
    EdgeKind edge;
    VertexType eff_type;
    Phase phase;
};

bool leaf_view(const Diagram& d, VertexId v, LeafView& out) {
    if (!is_spider(d, v) || d.degree(v) != 1)
        return false;
    auto [host, kind] = *d.incidences(v).begin();
    if (host == v)
        return false;
    out.leaf = v;
    out.host = host;
    out.edge = kind;
    out.phase = d.vertex(v).phase;
    VertexType t = d.vertex(v).type;
    if (kind == EdgeKind::Hadamard)
        t = t == VertexType::Z ? VertexType::X : VertexType::Z;
    out.eff_type = t;
    return true;
}

} // namespace

std::vector<MatchHandle> find_matches(const Diagram& d, RewriteKind kind) {
    std::vector<MatchHandle> out;
    auto each_spider = [&](auto&& f) {
        for (const auto& [v, vert] : d.vertices())
            if (vert.type == VertexType::Z || vert.type == VertexType::X)
                f(v, vert);
    };
    switch (kind) {
    case RewriteKind::SpiderFusion:
        for (const auto& [u, vert] : d.vertices()) {
            if (!is_spider(d, u))
                continue;
            for (const auto& [w, k] : d.incidences(u)) {
                if (w <= u || k != EdgeKind::Plain)
                    continue;
                if (d.vertex(w).type != vert.type)
                    continue;
                if (has_star_between(d, u, w))
                    continue; // would create a star self-loop
                if (!out.empty() && out.back().a == u && out.back().b == w)
                    continue; // parallel plain edges give one site
                out.push_back({kind, u, w});
            }
        }
        break;
    case RewriteKind::ColorChange:
        each_spider([&](VertexId v, const Vertex&) {
            if (d.star_degree(v) == 0)
                out.push_back({kind, v, v});
        });
        break;
    case RewriteKind::PiCommutation:
        each_spider([&](VertexId v, const Vertex& vert) {
            if (vert.type != VertexType::X || !vert.phase.is_pi() || d.degree(v) != 2)
                return;
            if (has_self_loop(d, v))
                return;
            auto it = d.incidences(v).begin();
            auto [n1, k1] = *it;
            auto [n2, k2] = *std::next(it);
            if (n1 == n2)
                return;
            // commute across the plain-attached Z neighbor
            for (auto [w, k] : {std::pair{n1, k1}, std::pair{n2, k2}})
                if (k == EdgeKind::Plain && d.vertex(w).type == VertexType::Z)
                    out.push_back({kind, v, w});
        });
        break;
    case RewriteKind::StateCopy:
        each_spider([&](VertexId v, const Vertex&) {
            LeafView lv;
            if (!leaf_view(d, v, lv) || lv.edge == EdgeKind::Star)
                return;
            if (!is_spider(d, lv.host) || has_self_loop(d, lv.host))
                return;
            VertexType host_t = d.vertex(lv.host).type;
            if (lv.eff_type == host_t)
                return; // fusion, not copy
            if (lv.phase != Phase::zero() && lv.phase != Phase::pi())
                return;
            out.push_back({kind, v, lv.host});
        });
        break;
    case RewriteKind::Bialgebra:
        each_spider([&](VertexId u, const Vertex& vert) {
            if (vert.type != VertexType::Z || d.degree(u) != 3 || d.star_degree(u) > 0)
                return;
            if (has_self_loop(d, u))
                return;
            for (const auto& [w, k] : d.incidences(u)) {
                if (k != EdgeKind::Plain || w == u)
                    continue;
                if (d.vertex(w).type != VertexType::X || d.degree(w) != 3 ||
                    d.star_degree(w) > 0)
                    continue;
                if (!d.vertex(u).phase.is_zero() || !d.vertex(w).phase.is_zero())
                    continue;
                if (has_self_loop(d, w))
                    continue;
                int between = 0;
                for (const auto& [x, k2] : d.incidences(u))
                    between += (x == w);
                if (between != 1)
                    continue;
                out.push_back({kind, u, w});
            }
        });
        break;
    case RewriteKind::HHCancel:
        each_spider([&](VertexId v, const Vertex& vert) {
            if (!vert.phase.is_zero() || d.degree(v) != 2 || has_self_loop(d, v))
                return;
            const auto& inc = d.incidences(v);
            if (inc.begin()->second == EdgeKind::Hadamard &&
                std::next(inc.begin())->second == EdgeKind::Hadamard)
                out.push_back({kind, v, v});
        });
        break;
    case RewriteKind::Hopf:
        each_spider([&](VertexId u, const Vertex& vert) {
            if (vert.type != VertexType::Z)
                return;
            std::map<VertexId, int> plain_count;
            for (const auto& [w, k] : d.incidences(u))
                if (k == EdgeKind::Plain && w != u &&
                    d.vertex(w).type == VertexType::X)
                    ++plain_count[w];
            for (auto [w, c] : plain_count)
                if (c >= 2)
                    out.push_back({kind, u, w});
        });
        break;
    case RewriteKind::IdentityRemoval:
        each_spider([&](VertexId v, const Vertex& vert) {
            if (!vert.phase.is_zero() || d.degree(v) != 2 || has_self_loop(d, v))
                return;
            auto it = d.incidences(v).begin();
            EdgeKind k1 = it->second, k2 = std::next(it)->second;
            int stars = (k1 == EdgeKind::Star) + (k2 == EdgeKind::Star);
            int hs = (k1 == EdgeKind::Hadamard) + (k2 == EdgeKind::Hadamard);
            if (stars == 2 || (stars == 1 && hs == 1))
                return; // not expressible as a single edge kind
            out.push_back({kind, v, v});
        });
        break;
    case RewriteKind::EulerDecomposition:
        for (const Edge& e : d.edges())
            if (e.kind == EdgeKind::Hadamard)
                out.push_back({kind, e.u, e.v});
        break;
    case RewriteKind::StarStateXPi:
    case RewriteKind::StarStateX0:
    case RewriteKind::StarStateZPi:
        each_spider([&](VertexId v, const Vertex& vert) {
            LeafView lv;
            if (!leaf_view(d, v, lv) || lv.edge != EdgeKind::Star)
                return;
            bool want = false;
            if (kind == RewriteKind::StarStateXPi)
                want = vert.type == VertexType::X && vert.phase.is_pi();
            else if (kind == RewriteKind::StarStateX0)
                want = vert.type == VertexType::X && vert.phase.is_zero();
            else
                want = vert.type == VertexType::Z && vert.phase.is_pi();
            if (want)
                out.push_back({kind, v, lv.host});
        });
        break;
    }
    return out;
}

namespace {

void check_site(const Diagram& d, const MatchHandle& site) {
    auto sites = find_matches(d, site.kind);
    for (const auto& s : sites)
        if (s.a == site.a && s.b == site.b)
            return;
    throw std::invalid_argument("apply_rewrite: stale match handle");
}

void fuse_into(Diagram& d, VertexId u, VertexId w) {
    d.set_phase(u, d.vertex(u).phase + d.vertex(w).phase);
    auto winc = d.incidences(w); // copy
    bool fused_edge_dropped = false;
    for (const auto& [x, k] : winc) {
        if (x == u && k == EdgeKind::Plain && !fused_edge_dropped) {
            fused_edge_dropped = true; // the fusing edge disappears
            continue;
        }
        if (x == w)
            d.add_edge(u, u, k); // self-loop transfers
        else if (x == u)
            d.add_edge(u, u, k); // other parallel edges become self-loops
        else
            d.add_edge(u, x, k);
    }
    d.remove_vertex(w);
}

} // namespace

void apply_rewrite_inplace(Diagram& d, const MatchHandle& site) {
    check_site(d, site);
    switch (site.kind) {
    case RewriteKind::SpiderFusion:
        fuse_into(d, site.a, site.b);
        break;
    case RewriteKind::ColorChange: {
        VertexId v = site.a;
        auto inc = d.incidences(v); // copy
        d.set_type(v, d.vertex(v).type == VertexType::Z ? VertexType::X
                                                        : VertexType::Z);
        for (const auto& [x, k] : inc) {
            EdgeKind nk =
                k == EdgeKind::Plain ? EdgeKind::Hadamard : EdgeKind::Plain;
            d.remove_edge(v, x, k);
            d.add_edge(v, x, nk);
        }
        break;
    }
    case RewriteKind::PiCommutation: {
        VertexId u = site.a, w = site.b;
        Phase alpha = d.vertex(w).phase;
        // the pi spider jumps over w, copies onto w's other legs
        Diagram::Incidence other{0, EdgeKind::Plain};
        bool via_found = false;
        for (const auto& [x, k] : d.incidences(u)) {
            if (x == w && k == EdgeKind::Plain && !via_found) {
                via_found = true;
                continue;
            }
            other = {x, k};
        }
        d.remove_vertex(u);
        auto winc = d.incidences(w); // copy, after u removal
        d.set_phase(w, -alpha);
        d.mul_scalar(ExactScalar::phase_factor(alpha));
        for (const auto& [x, k] : winc) {
            VertexId n = d.add_vertex(VertexType::X, Phase::pi());
            d.remove_edge(w, x, k);
            d.add_edge(w, n, EdgeKind::Plain);
            d.add_edge(n, x, k);
        }
        d.add_edge(other.first, w, other.second);
        break;
    }
    case RewriteKind::StateCopy: {
        LeafView lv;
        leaf_view(d, site.a, lv);
        VertexId w = lv.host;
        Phase host_phase = d.vertex(w).phase;
        int a = lv.phase.is_pi() ? 1 : 0;
        VertexType leaf_type = lv.eff_type;
        auto winc = d.incidences(w); // copy
        std::size_t m = d.degree(w) - 1;
        d.remove_vertex(site.a);
        d.remove_vertex(w);
        bool via_dropped = false;
        for (const auto& [x, k] : winc) {
            if (x == site.a && !via_dropped) {
                via_dropped = true;
                continue;
            }
            VertexId leaf = d.add_vertex(leaf_type, lv.phase);
            d.add_edge(leaf, x, k);
        }
        ExactScalar s = ExactScalar::sqrt2_pow(1 - static_cast<int>(m));
        if (a == 1)
            s = s * ExactScalar::phase_factor(host_phase);
        d.mul_scalar(s);
        break;
    }
    case RewriteKind::Bialgebra: {
        VertexId u = site.a, w = site.b;
        std::vector<Diagram::Incidence> u_others, w_others;
        bool via = false;
        for (const auto& [x, k] : d.incidences(u)) {
            if (x == w && k == EdgeKind::Plain && !via) {
                via = true;
                continue;
            }
            u_others.push_back({x, k});
        }
        via = false;
        for (const auto& [x, k] : d.incidences(w)) {
            if (x == u && k == EdgeKind::Plain && !via) {
                via = true;
                continue;
            }
            w_others.push_back({x, k});
        }
        d.remove_vertex(u);
        d.remove_vertex(w);
        std::vector<VertexId> xs, zs;
        for (const auto& [x, k] : u_others) {
            VertexId n = d.add_vertex(VertexType::X);
            d.add_edge(n, x, k);
            xs.push_back(n);
        }
        for (const auto& [x, k] : w_others) {
            VertexId n = d.add_vertex(VertexType::Z);
            d.add_edge(n, x, k);
            zs.push_back(n);
        }
        for (VertexId x : xs)
            for (VertexId z : zs)
                d.add_edge(x, z, EdgeKind::Plain);
        d.mul_scalar(ExactScalar::inv_sqrt2());
        break;
    }
    case RewriteKind::HHCancel:
    case RewriteKind::IdentityRemoval: {
        VertexId v = site.a;
        auto it = d.incidences(v).begin();
        auto [n1, k1] = *it;
        auto [n2, k2] = *std::next(it);
        EdgeKind nk;
        if (k1 == EdgeKind::Star || k2 == EdgeKind::Star)
            nk = EdgeKind::Star;
        else if ((k1 == EdgeKind::Hadamard) != (k2 == EdgeKind::Hadamard))
            nk = EdgeKind::Hadamard;
        else
            nk = EdgeKind::Plain;
        d.remove_vertex(v);
        d.add_edge(n1, n2, nk);
        break;
    }
    case RewriteKind::Hopf:
        d.remove_edge(site.a, site.b, EdgeKind::Plain);
        d.remove_edge(site.a, site.b, EdgeKind::Plain);
        d.mul_scalar(ExactScalar(1, 0, 0, 0, 1)); // 1/2
        break;
    case RewriteKind::EulerDecomposition: {
        d.remove_edge(site.a, site.b, EdgeKind::Hadamard);
        VertexId z1 = d.add_vertex(VertexType::Z, Phase::plus_pi_2());
        VertexId x1 = d.add_vertex(VertexType::X, Phase::plus_pi_2());
        VertexId z2 = d.add_vertex(VertexType::Z, Phase::plus_pi_2());
        d.add_edge(site.a, z1);
        d.add_edge(z1, x1);
        d.add_edge(x1, z2);
        d.add_edge(z2, site.b);
        d.mul_scalar(ExactScalar::phase_factor(Phase(-1))); // e^{-i pi/4}
        break;
    }
    case RewriteKind::StarStateXPi:
    case RewriteKind::StarStateX0:
    case RewriteKind::StarStateZPi: {
        VertexId s = site.a, u = site.b;
        d.remove_vertex(s);
        VertexType nt = VertexType::X;
        Phase np = Phase::zero();
        ExactScalar sc = ExactScalar::one();
        if (site.kind == RewriteKind::StarStateX0) {
            nt = VertexType::Z;
            sc = ExactScalar::sqrt2();
        } else if (site.kind == RewriteKind::StarStateZPi) {
            np = Phase::pi();
            sc = ExactScalar::inv_sqrt2();
        }
        VertexId leaf = d.add_vertex(nt, np);
        d.add_edge(leaf, u, EdgeKind::Plain);
        d.mul_scalar(sc);
        break;
    }
    }
}

Diagram apply_rewrite(Diagram d, const MatchHandle& site) {
    apply_rewrite_inplace(d, site);
    return d;
}

namespace {

// fixpoint engine; `with_star_rules` switches the partial strategy subset
bool simplify_step(Diagram& d, bool with_star_rules) {
    // 1. isolated spiders -> scalar
    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type == VertexType::Boundary || d.degree(v) != 0)
            continue;
        d.mul_scalar(ExactScalar::one_plus_phase(vert.phase));
        d.remove_vertex(v);
        return true;
    }
    // 2. plain / Hadamard self-loops
    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type == VertexType::Boundary)
            continue;
        for (const auto& [x, k] : d.incidences(v)) {
            if (x != v || k == EdgeKind::Star)
                continue;
            d.remove_edge(v, v, k);
            if (k == EdgeKind::Hadamard) {
                d.set_phase(v, d.vertex(v).phase + Phase::pi());
                d.mul_scalar(ExactScalar::inv_sqrt2());
            }
            return true;
        }
    }
    // 3. leaf kind normalization: degree-1 spider over a Hadamard edge
    for (const auto& [v, vert] : d.vertices()) {
        LeafView lv;
        if (!leaf_view(d, v, lv) || lv.edge != EdgeKind::Hadamard)
            continue;
        d.remove_edge(v, lv.host, EdgeKind::Hadamard);
        d.set_type(v, lv.eff_type);
        d.add_edge(v, lv.host, EdgeKind::Plain);
        return true;
    }
    // 4. state copy
    {
        auto m = find_matches(d, RewriteKind::StateCopy);
        if (!m.empty()) {
            apply_rewrite_inplace(d, m.front());
            return true;
        }
    }
    // 5. spider fusion
    {
        auto m = find_matches(d, RewriteKind::SpiderFusion);
        if (!m.empty()) {
            apply_rewrite_inplace(d, m.front());
            return true;
        }
    }
    // 6. star-state rules
    if (with_star_rules) {
        for (auto kind : {RewriteKind::StarStateXPi, RewriteKind::StarStateX0,
                          RewriteKind::StarStateZPi}) {
            auto m = find_matches(d, kind);
            if (!m.empty()) {
                apply_rewrite_inplace(d, m.front());
                return true;
            }
        }
    }
    // 7. identity removal
    {
        auto m = find_matches(d, RewriteKind::IdentityRemoval);
        if (!m.empty()) {
            apply_rewrite_inplace(d, m.front());
            return true;
        }
    }
    return false;
}

} // namespace

void partial_simplify(Diagram& d) {
    while (simplify_step(d, true)) {
    }
}

void push_nots_to_boundary(Diagram& d) {
    while (simplify_step(d, false)) {
    }
}

void to_stack_form(Diagram& d) {
    // interposer: degree-2 X(pi), both edges plain, between two Z spiders
    auto interposer_of = [&](VertexId x, VertexId& left,
                             VertexId& right) -> bool {
        const auto& vert = d.vertex(x);
        if (vert.type != VertexType::X || !vert.phase.is_pi() || d.degree(x) != 2)
            return false;
        if (has_self_loop(d, x))
            return false;
        auto it = d.incidences(x).begin();
        auto [n1, k1] = *it;
        auto [n2, k2] = *std::next(it);
        if (k1 != EdgeKind::Plain || k2 != EdgeKind::Plain)
            return false;
        if (d.vertex(n1).type != VertexType::Z || d.vertex(n2).type != VertexType::Z)
            return false;
        left = n1;
        right = n2;
        return n1 != n2;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [x, vert] : d.vertices()) {
            VertexId l, r;
            if (!interposer_of(x, l, r))
                continue;
            // grow the run left and right across further interposers
            std::vector<VertexId> spiders{l, r};
            std::vector<VertexId> interposers{x};
            auto extend = [&](VertexId from, bool front) {
                while (true) {
                    VertexId next_x = 0, next_s = 0;
                    bool found = false;
                    for (const auto& [y, k] : d.incidences(from)) {
                        VertexId a, b;
                        if (k != EdgeKind::Plain || !interposer_of(y, a, b))
                            continue;
                        if (std::find(interposers.begin(), interposers.end(), y) !=
                            interposers.end())
                            continue;
                        VertexId other = a == from ? b : a;
                        if (std::find(spiders.begin(), spiders.end(), other) !=
                            spiders.end())
                            continue;
                        next_x = y;
                        next_s = other;
                        found = true;
                        break;
                    }
                    if (!found)
                        break;
                    if (front) {
                        interposers.insert(interposers.begin(), next_x);
                        spiders.insert(spiders.begin(), next_s);
                    } else {
                        interposers.push_back(next_x);
                        spiders.push_back(next_s);
                    }
                    from = next_s;
                }
            };
            extend(spiders.front(), true);
            extend(spiders.back(), false);
            if (spiders.size() < 2)
                continue;
            // only rewrite when some spider actually carries stars and the
            // run is longer than the canonical two-spider form
            bool any_star = false;
            for (VertexId s : spiders)
                any_star |= d.star_degree(s) > 0;
            if (!any_star || (spiders.size() == 2 && interposers.size() == 1)) {
                if (spiders.size() == 2 && interposers.size() == 1 && any_star) {
                    d.link_pair(spiders[0], spiders[1]);
                }
                continue;
            }
            // merge by parity onto the first two spiders
            VertexId A = spiders[0], B = spiders[1];
            Phase pa = d.vertex(A).phase, pb = d.vertex(B).phase;
            for (std::size_t i = 2; i < spiders.size(); ++i) {
                VertexId tgt = (i % 2 == 0) ? A : B;
                Phase& acc = (i % 2 == 0) ? pa : pb;
                acc = acc + d.vertex(spiders[i]).phase;
                auto inc = d.incidences(spiders[i]); // copy
                for (const auto& [y, k] : inc) {
                    if (std::find(interposers.begin(), interposers.end(), y) !=
                        interposers.end())
                        continue;
                    if (y == spiders[i])
                        d.add_edge(tgt, tgt, k);
                    else
                        d.add_edge(tgt, y, k);
                }
                d.remove_vertex(spiders[i]);
            }
            d.set_phase(A, pa);
            d.set_phase(B, pb);
            for (VertexId y : interposers)
                d.remove_vertex(y);
            VertexId n = d.add_vertex(VertexType::X, Phase::pi());
            d.add_edge(A, n, EdgeKind::Plain);
            d.add_edge(n, B, EdgeKind::Plain);
            d.link_pair(A, B);
            changed = true;
            break;
        }
    }
}

bool is_stabilizer(const Diagram& d) {
    for (const auto& [v, vert] : d.vertices())
        if (vert.type != VertexType::Boundary && !vert.phase.is_clifford())
            return false;
    for (const Edge& e : d.edges())
        if (e.kind == EdgeKind::Star)
            return false;
    return true;
}

} // namespace zxstar
