#include "zxstar/strategy.hpp"

#include "zxstar/catalog.hpp"
#include "zxstar/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace zxstar {

long master_weight(const Diagram& d, VertexId v) {
    if (d.vertex(v).type != VertexType::Z)
        throw std::invalid_argument("master_weight: not a Z spider");
    long total = 0;
    for (const auto& [w, kind] : d.incidences(v)) {
        if (kind != EdgeKind::Star)
            continue;
        total += 1;
        if (w == v || d.vertex(w).type != VertexType::Z)
            continue;
        bool skipped_via = false;
        for (const auto& [u, kind2] : d.incidences(w)) {
            if (!skipped_via && u == v && kind2 == EdgeKind::Star) {
                skipped_via = true; // the edge we arrived through
                continue;
            }
            if (kind2 == EdgeKind::Star) {
                total += 1;
                continue;
            }
            if (kind2 != EdgeKind::Plain || u == w)
                continue;
            const Vertex& uv = d.vertex(u);
            if (uv.type != VertexType::Z && uv.type != VertexType::X)
                continue;
            if (d.degree(u) != 2)
                continue;
            // u's sole further edge must be a star
            bool skipped_back = false;
            Diagram::Incidence further{0, EdgeKind::Plain};
            bool have_further = false;
            for (const auto& [t, kind3] : d.incidences(u)) {
                if (!skipped_back && t == w && kind3 == EdgeKind::Plain) {
                    skipped_back = true;
                    continue;
                }
                further = {t, kind3};
                have_further = true;
            }
            if (!have_further || further.second != EdgeKind::Star)
                continue;
            bool extra = uv.type == VertexType::X && uv.phase.is_pi();
            total += extra ? 2 : 1;
        }
    }
    return total;
}

std::optional<MasterCandidate> select_master(const Term& term) {
    const Diagram& d = term.diagram;
    std::optional<MasterCandidate> best;
    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type != VertexType::Z)
            continue;
        int stars = static_cast<int>(d.star_degree(v));
        if (stars == 0)
            continue;
        MasterCandidate cand;
        cand.vertex = v;
        cand.star_degree = stars;
        cand.weight = master_weight(d, v);
        cand.linked_pair = d.linked_partner(v);
        if (cand.linked_pair)
            cand.weight += master_weight(d, *cand.linked_pair);
        if (!best || cand.weight > best->weight ||
            (cand.weight == best->weight &&
             (cand.star_degree > best->star_degree ||
              (cand.star_degree == best->star_degree && cand.vertex < best->vertex))))
            best = cand;
    }
    return best;
}

namespace {

void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw PipelineTimeout{};
}

void preprocess(Diagram& d) {
    push_nots_to_boundary(d);
    to_stack_form(d);
    partial_simplify(d);
}

std::size_t count_star_edges(const Diagram& d) {
    std::size_t n = 0;
    for (const Edge& e : d.edges())
        if (e.kind == EdgeKind::Star)
            ++n;
    return n;
}

struct PendingTerm {
    Term term;
    std::size_t depth = 0;
};

std::vector<Term> expand_children(const Term& t, const MasterCandidate& sel) {
    std::vector<Term> out;
    auto halves = dynamic_decompose(t.diagram, sel.vertex);
    for (auto& h : halves) {
        h.coefficient = h.coefficient * t.coefficient;
        if (sel.linked_pair && h.diagram.has_vertex(*sel.linked_pair) &&
            h.diagram.star_degree(*sel.linked_pair) > 0) {
            auto quarters = dynamic_decompose(h.diagram, *sel.linked_pair);
            for (auto& q : quarters) {
                q.coefficient = q.coefficient * h.coefficient;
                out.push_back(std::move(q));
            }
        } else {
            out.push_back(std::move(h));
        }
    }
    return out;
}

TermSum expand(Diagram d, const Deadline& deadline,
               const std::function<std::vector<Term>(const Term&)>& step) {
    preprocess(d);
    const std::size_t max_depth = count_star_edges(d) + 1;
    TermSum result;
    std::deque<PendingTerm> queue;
    {
        Term root{ExactScalar::one(), std::move(d)};
        if (!root.prunable())
            queue.push_back({std::move(root), 0});
    }
    while (!queue.empty()) {
        check_deadline(deadline);
        PendingTerm cur = std::move(queue.front());
        queue.pop_front();
        if (cur.term.prunable())
            continue;
        if (count_star_edges(cur.term.diagram) == 0) {
            if (!is_stabilizer(cur.term.diagram))
                throw std::logic_error("expand: star-free term is not Clifford");
            result.terms.push_back(std::move(cur.term));
            continue;
        }
        if (cur.depth >= max_depth)
            throw std::logic_error("expand: decomposition depth guard exceeded");
        for (Term& child : step(cur.term)) {
            partial_simplify(child.diagram);
            if (!child.prunable())
                queue.push_back({std::move(child), cur.depth + 1});
        }
    }
    return result;
}

} // namespace

TermSum decompose_weighted(const Diagram& d, Deadline deadline) {
    return expand(d, deadline, [](const Term& t) {
        auto sel = select_master(t);
        if (!sel)
            throw std::logic_error("decompose_weighted: starred term without master");
        return expand_children(t, *sel);
    });
}

namespace {

// Attach a k-leg branch state at the attachment points left by removing k
// star-state leaves: branch output j is wired to point j.
void splice_state_branch(Diagram& d, const std::vector<Diagram::Incidence>& points,
                         const Diagram& branch) {
    std::map<VertexId, VertexId> remap;
    for (const auto& [v, vert] : branch.vertices())
        remap[v] = d.add_vertex(vert.type, vert.phase);
    for (const Edge& e : branch.edges())
        d.add_edge(remap[e.u], remap[e.v], e.kind);
    d.mul_scalar(branch.scalar());
    for (std::size_t j = 0; j < points.size(); ++j) {
        VertexId b = remap.at(branch.outputs()[j]);
        auto [x, kind] = *d.incidences(b).begin();
        d.remove_vertex(b);
        // combine the branch wire kind with the attachment kind
        EdgeKind at = points[j].second;
        EdgeKind k;
        if (at == EdgeKind::Plain)
            k = kind;
        else if (kind == EdgeKind::Plain)
            k = at;
        else
            k = EdgeKind::Plain; // H over H
        d.add_edge(x, points[j].first, k);
    }
}

struct GreedyAction {
    enum Kind { Dynamic, StarState, StarEdge } kind = Dynamic;
    double beta = 1.0;
    MasterCandidate master;              // Dynamic
    std::vector<VertexId> leaves;        // StarState
    const DecompositionRule* rule = nullptr;
    std::vector<Edge> star_edges;        // StarEdge
};

std::optional<GreedyAction> pick_greedy_action(const Term& t) {
    const Diagram& d = t.diagram;
    std::optional<GreedyAction> best;
    auto consider = [&](GreedyAction a) {
        if (!best || a.beta < best->beta - 1e-12)
            best = std::move(a);
    };
    // dynamic decomposition at the highest star degree
    std::optional<MasterCandidate> dyn;
    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type != VertexType::Z)
            continue;
        int stars = static_cast<int>(d.star_degree(v));
        if (stars == 0)
            continue;
        if (!dyn || stars > dyn->star_degree ||
            (stars == dyn->star_degree && v < dyn->vertex)) {
            dyn = MasterCandidate{v, stars, 0, d.linked_partner(v)};
        }
    }
    if (dyn) {
        GreedyAction a;
        a.kind = GreedyAction::Dynamic;
        a.master = *dyn;
        a.beta = 1.0 / dyn->star_degree;
        consider(std::move(a));
    }
    // star-state rules on groups of equal-phase star leaves
    std::map<int, std::vector<VertexId>> leaves; // phase eighths -> leaf ids
    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type != VertexType::Z || d.degree(v) != 1)
            continue;
        auto [host, kind] = *d.incidences(v).begin();
        if (kind != EdgeKind::Star || host == v)
            continue;
        leaves[vert.phase.eighths()].push_back(v);
    }
    for (const auto& [ph, vs] : leaves) {
        if (ph == 4)
            continue; // Clifford, the simplifier owns it
        for (int legs : {5, 4, 3}) {
            if (static_cast<int>(vs.size()) < legs)
                continue;
            const DecompositionRule* rule = nullptr;
            try {
                static thread_local std::map<std::pair<int, int>, DecompositionRule>
                    cache;
                auto key = std::make_pair(legs, ph);
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, star_state_rule(legs, Phase(ph))).first;
                rule = &it->second;
            } catch (const std::invalid_argument&) {
                continue;
            }
            GreedyAction a;
            a.kind = GreedyAction::StarState;
            a.rule = rule;
            a.leaves.assign(vs.begin(), vs.begin() + legs);
            a.beta = rule->scaling();
            consider(std::move(a));
            break; // bigger rule dominates smaller for the same phase
        }
    }
    // bare star-edge rules
    std::vector<Edge> stars;
    for (const Edge& e : d.edges())
        if (e.kind == EdgeKind::Star)
            stars.push_back(e);
    if (!stars.empty()) {
        int k = std::min<std::size_t>(3, stars.size());
        static thread_local std::map<int, DecompositionRule> cache;
        auto it = cache.find(k);
        if (it == cache.end())
            it = cache.emplace(k, star_edge_rule(k)).first;
        GreedyAction a;
        a.kind = GreedyAction::StarEdge;
        a.rule = &it->second;
        a.star_edges.assign(stars.begin(), stars.begin() + k);
        a.beta = it->second.scaling();
        consider(std::move(a));
    }
    return best;
}

std::vector<Term> greedy_children(const Term& t) {
    auto action = pick_greedy_action(t);
    if (!action)
        throw std::logic_error("decompose_greedy: starred term without action");
    std::vector<Term> out;
    if (action->kind == GreedyAction::Dynamic)
        return expand_children(t, action->master);
    if (action->kind == GreedyAction::StarState) {
        // remove the chosen leaves, remember attachment points
        for (const auto& [coeff, branch] : action->rule->branches) {
            Term child;
            child.diagram = t.diagram;
            child.coefficient = t.coefficient * coeff;
            std::vector<Diagram::Incidence> points;
            for (VertexId leaf : action->leaves) {
                auto [host, kind] = *child.diagram.incidences(leaf).begin();
                points.push_back({host, EdgeKind::Plain});
                child.diagram.remove_vertex(leaf);
            }
            splice_state_branch(child.diagram, points, branch);
            out.push_back(std::move(child));
        }
        return out;
    }
    // star-edge rule: branch diagrams are k-in k-out operators
    for (const auto& [coeff, branch] : action->rule->branches) {
        Term child;
        child.diagram = t.diagram;
        child.coefficient = t.coefficient * coeff;
        std::map<VertexId, VertexId> remap;
        for (const auto& [v, vert] : branch.vertices())
            remap[v] = child.diagram.add_vertex(vert.type, vert.phase);
        for (const Edge& e : branch.edges())
            child.diagram.add_edge(remap[e.u], remap[e.v], e.kind);
        child.diagram.mul_scalar(branch.scalar());
        for (std::size_t j = 0; j < action->star_edges.size(); ++j) {
            const Edge& se = action->star_edges[j];
            child.diagram.remove_edge(se.u, se.v, EdgeKind::Star);
            auto hook = [&](VertexId boundary, VertexId endpoint) {
                VertexId b = remap.at(boundary);
                auto [x, kind] = *child.diagram.incidences(b).begin();
                child.diagram.remove_vertex(b);
                child.diagram.add_edge(x, endpoint, kind);
            };
            hook(branch.inputs()[j], se.u);
            hook(branch.outputs()[j], se.v);
        }
        out.push_back(std::move(child));
    }
    return out;
}

} // namespace

TermSum decompose_greedy(const Diagram& d, Deadline deadline) {
    return expand(d, deadline, greedy_children);
}

namespace {

// diffusion over the declared register, widened to the full wire count
Diagram widened_diffusion(const Circuit& c) {
    Circuit diff = diffusion_circuit(static_cast<int>(c.diffusion_qubits.size()));
    Circuit widened;
    widened.qubits = c.qubits;
    for (const Gate& g : diff.gates) {
        Gate w = g;
        if (auto* x = std::get_if<XGate>(&w))
            x->target = c.diffusion_qubits[x->target];
        else if (auto* h = std::get_if<HGate>(&w))
            h->target = c.diffusion_qubits[h->target];
        else if (auto* cx = std::get_if<CnotGate>(&w)) {
            cx->control = c.diffusion_qubits[cx->control];
            cx->target = c.diffusion_qubits[cx->target];
        } else {
            auto& m = std::get<MctGate>(w);
            for (int& q : m.controls)
                q = c.diffusion_qubits[q];
            m.target = c.diffusion_qubits[m.target];
        }
        widened.gates.push_back(w);
    }
    return to_diagram(widened);
}

} // namespace

Diagram whole_circuit_diagram(const Circuit& c, DiffusionMode diffusion,
                              bool plug_outputs) {
    Diagram d = to_diagram_closed(c);
    if (diffusion == DiffusionMode::Auto && !c.diffusion_qubits.empty())
        d = d.compose(widened_diffusion(c));
    if (plug_outputs) {
        std::vector<VertexId> outs = d.outputs();
        d.outputs().clear();
        for (VertexId b : outs) {
            auto [n, kind] = *d.incidences(b).begin();
            d.remove_vertex(b);
            VertexId eff = d.add_vertex(VertexType::X, Phase::zero());
            d.add_edge(eff, n, kind);
            d.mul_scalar(ExactScalar::inv_sqrt2());
        }
    }
    return d;
}

std::pair<double, std::vector<std::size_t>>
count_peaks(const std::vector<double>& probabilities) {
    if (probabilities.empty())
        throw std::invalid_argument("count_peaks: empty vector");
    double mx = *std::max_element(probabilities.begin(), probabilities.end());
    double mn = *std::min_element(probabilities.begin(), probabilities.end());
    double threshold = (mx + mn) / 2;
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        if (probabilities[i] > threshold)
            peaks.push_back(i);
    return {threshold, peaks};
}

RunResult run_pipeline(const Circuit& c, Strategy strategy, DiffusionMode diffusion,
                       const PipelineOptions& opts) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) {
        return std::chrono::duration<double, std::milli>(d).count();
    };
    RunResult res;
    auto t0 = clock::now();

    if (static_cast<std::size_t>(c.qubits) > opts.limits.max_wires)
        throw std::runtime_error("run_pipeline: circuit exceeds the oracle wire limit");

    Circuit main = c;
    Diagram stage1_input = to_diagram_closed(main);
    if (opts.plug_outputs) {
        std::vector<VertexId> outs = stage1_input.outputs();
        stage1_input.outputs().clear();
        for (VertexId b : outs) {
            auto [n, kind] = *stage1_input.incidences(b).begin();
            stage1_input.remove_vertex(b);
            VertexId eff = stage1_input.add_vertex(VertexType::X, Phase::zero());
            stage1_input.add_edge(eff, n, kind);
            stage1_input.mul_scalar(ExactScalar::inv_sqrt2());
        }
    }
    auto t1 = clock::now();
    res.timings.prep_ms = ms(t1 - t0);

    auto decompose = [&](const Diagram& d) {
        return strategy == Strategy::Weighted ? decompose_weighted(d, opts.deadline)
                                              : decompose_greedy(d, opts.deadline);
    };
    TermSum stage1 = decompose(stage1_input);
    auto t2 = clock::now();
    res.timings.stage1_ms = ms(t2 - t1);

    std::vector<Term> final_terms;
    if (diffusion == DiffusionMode::Auto && !c.diffusion_qubits.empty()) {
        if (opts.plug_outputs)
            throw std::invalid_argument(
                "run_pipeline: diffusion stage needs open outputs");
        Diagram diff_open = widened_diffusion(c);
        for (Term& t : stage1.terms) {
            check_deadline(opts.deadline);
            Diagram combined = t.diagram.compose(diff_open);
            TermSum sub = decompose(combined);
            for (Term& s : sub.terms) {
                s.coefficient = s.coefficient * t.coefficient;
                final_terms.push_back(std::move(s));
            }
        }
    } else {
        final_terms = std::move(stage1.terms);
    }
    auto t3 = clock::now();
    res.timings.stage2_ms = ms(t3 - t2);

    std::size_t n = final_terms.empty() ? c.qubits : final_terms[0].diagram.outputs().size();
    res.statevector.assign(std::size_t{1} << n, ExactScalar::zero());
    res.terminal_terms = 0;
    for (const Term& t : final_terms) {
        check_deadline(opts.deadline);
        if (t.prunable())
            continue;
        FactoredTensor f = contract_factored(t.diagram, opts.limits);
        f.add_into(t.coefficient, res.statevector);
        ++res.terminal_terms;
    }
    double norm = 0;
    res.probabilities.resize(res.statevector.size());
    for (std::size_t i = 0; i < res.statevector.size(); ++i) {
        res.probabilities[i] = res.statevector[i].abs2();
        norm += res.probabilities[i];
    }
    if (norm > 0)
        for (double& p : res.probabilities)
            p /= norm;
    auto [thr, peaks] = count_peaks(res.probabilities);
    res.threshold = thr;
    res.peaks = std::move(peaks);
    auto t4 = clock::now();
    res.timings.sum_ms = ms(t4 - t3);
    return res;
}

} // namespace zxstar
