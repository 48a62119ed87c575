#include "zxstar/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace zxstar {

namespace {

using LegId = std::uint32_t;

struct Node {
    std::vector<LegId> legs; // leg 0 = most significant bit of the index
    std::vector<ExactScalar> data;
};

std::vector<ExactScalar> z_spider_data(std::size_t deg, Phase phase) {
    std::vector<ExactScalar> t(std::size_t{1} << deg);
    t[0] = ExactScalar::one();
    t[t.size() - 1] = t[t.size() - 1] + ExactScalar::phase_factor(phase);
    return t;
}

std::vector<ExactScalar> x_spider_data(std::size_t deg, Phase phase) {
    // entry(x) = (1 + e^{i a} (-1)^{|x|}) / sqrt2^deg
    std::vector<ExactScalar> t(std::size_t{1} << deg);
    ExactScalar ph = ExactScalar::phase_factor(phase);
    ExactScalar norm = ExactScalar::sqrt2_pow(-static_cast<int>(deg));
    ExactScalar even = (ExactScalar::one() + ph) * norm;
    ExactScalar odd = (ExactScalar::one() - ph) * norm;
    for (std::size_t x = 0; x < t.size(); ++x)
        t[x] = (__builtin_popcountll(x) % 2 == 0) ? even : odd;
    return t;
}

std::vector<ExactScalar> edge_matrix(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::Plain:
        return {ExactScalar::one(), ExactScalar::zero(), ExactScalar::zero(),
                ExactScalar::one()};
    case EdgeKind::Hadamard: {
        ExactScalar h = ExactScalar::inv_sqrt2();
        return {h, h, h, -h};
    }
    default: // Star
        return {ExactScalar::one(), ExactScalar::one(), ExactScalar::one(),
                ExactScalar::zero()};
    }
}

Node contract_pair(const Node& x, const Node& y, std::size_t max_legs) {
    std::vector<LegId> shared;
    for (LegId l : x.legs)
        if (std::find(y.legs.begin(), y.legs.end(), l) != y.legs.end())
            shared.push_back(l);
    Node out;
    std::vector<std::size_t> x_keep, y_keep, x_shared, y_shared;
    for (std::size_t i = 0; i < x.legs.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), x.legs[i]) == shared.end()) {
            out.legs.push_back(x.legs[i]);
            x_keep.push_back(i);
        }
    }
    for (std::size_t i = 0; i < y.legs.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), y.legs[i]) == shared.end()) {
            out.legs.push_back(y.legs[i]);
            y_keep.push_back(i);
        }
    }
    for (LegId l : shared) {
        x_shared.push_back(std::find(x.legs.begin(), x.legs.end(), l) - x.legs.begin());
        y_shared.push_back(std::find(y.legs.begin(), y.legs.end(), l) - y.legs.begin());
    }
    if (out.legs.size() > max_legs)
        throw std::runtime_error("oracle: intermediate tensor exceeds leg limit");

    const std::size_t nx = x.legs.size(), ny = y.legs.size();
    const std::size_t nk = out.legs.size(), ns = shared.size();
    out.data.assign(std::size_t{1} << nk, ExactScalar::zero());
    for (std::size_t a = 0; a < out.data.size(); ++a) {
        std::size_t xi0 = 0, yi0 = 0;
        for (std::size_t i = 0; i < x_keep.size(); ++i)
            if ((a >> (nk - 1 - i)) & 1)
                xi0 |= std::size_t{1} << (nx - 1 - x_keep[i]);
        for (std::size_t i = 0; i < y_keep.size(); ++i)
            if ((a >> (nk - 1 - (x_keep.size() + i))) & 1)
                yi0 |= std::size_t{1} << (ny - 1 - y_keep[i]);
        ExactScalar acc;
        for (std::size_t s = 0; s < (std::size_t{1} << ns); ++s) {
            std::size_t xi = xi0, yi = yi0;
            for (std::size_t i = 0; i < ns; ++i)
                if ((s >> i) & 1) {
                    xi |= std::size_t{1} << (nx - 1 - x_shared[i]);
                    yi |= std::size_t{1} << (ny - 1 - y_shared[i]);
                }
            if (x.data[xi].is_zero() || y.data[yi].is_zero())
                continue;
            acc += x.data[xi] * y.data[yi];
        }
        out.data[a] = acc;
    }
    return out;
}

} // namespace

FactoredTensor contract_factored(const Diagram& d, const OracleLimits& limits) {
    const std::size_t n_out = d.outputs().size();
    const std::size_t n_in = d.inputs().size();
    if (n_out + n_in > limits.max_wires)
        throw std::runtime_error("oracle: wire limit exceeded");

    // Build the network: one node per non-boundary vertex, one 2-leg node per
    // Hadamard/Star edge and per boundary-boundary plain edge.
    std::vector<Node> nodes;
    LegId next_leg = 0;
    std::map<VertexId, std::vector<LegId>> vertex_legs;
    // open legs in wire order (outputs first)
    std::map<LegId, std::size_t> open_slot;
    std::map<VertexId, std::size_t> boundary_slot;
    for (std::size_t i = 0; i < n_out; ++i)
        boundary_slot[d.outputs()[i]] = i;
    for (std::size_t i = 0; i < n_in; ++i)
        boundary_slot[d.inputs()[i]] = n_out + i;

    for (const auto& [v, vert] : d.vertices()) {
        if (vert.type == VertexType::Boundary) {
            if (d.degree(v) != 1)
                throw std::runtime_error("oracle: boundary vertex degree != 1");
            if (!boundary_slot.count(v))
                throw std::runtime_error("oracle: boundary not listed in inputs/outputs");
        }
        vertex_legs[v];
    }

    auto attach = [&](VertexId v, LegId leg) {
        if (d.vertex(v).type == VertexType::Boundary)
            open_slot[leg] = boundary_slot.at(v);
        else
            vertex_legs[v].push_back(leg);
    };

    for (const Edge& e : d.edges()) {
        bool decorate = e.kind != EdgeKind::Plain ||
                        d.vertex(e.u).type == VertexType::Boundary ||
                        d.vertex(e.v).type == VertexType::Boundary;
        if (e.u == e.v)
            decorate = e.kind != EdgeKind::Plain;
        if (!decorate) {
            LegId l = next_leg++;
            attach(e.u, l);
            attach(e.v, l);
        } else {
            LegId l1 = next_leg++, l2 = next_leg++;
            attach(e.u, l1);
            attach(e.v, l2);
            nodes.push_back(Node{{l1, l2}, edge_matrix(e.kind)});
        }
    }

    for (const auto& [v, legs] : vertex_legs) {
        const Vertex& vert = d.vertex(v);
        if (vert.type == VertexType::Boundary)
            continue;
        Node n;
        n.legs = legs;
        n.data = vert.type == VertexType::Z ? z_spider_data(legs.size(), vert.phase)
                                            : x_spider_data(legs.size(), vert.phase);
        nodes.push_back(std::move(n));
    }

    // Contract connected pairs, smallest result first.
    auto shares_leg = [](const Node& a, const Node& b) {
        for (LegId l : a.legs)
            if (std::find(b.legs.begin(), b.legs.end(), l) != b.legs.end())
                return true;
        return false;
    };
    std::vector<Node> active = std::move(nodes);
    // contract self-shared legs (loops within a single node) by pairing the
    // node with a 2-leg identity; simpler: a node never shares a leg with
    // itself here because every self-loop got a decor node or two legs on the
    // same node. Handle the latter via self-trace.
    auto self_trace = [&](Node& n) {
        for (std::size_t i = 0; i < n.legs.size(); ++i)
            for (std::size_t j = i + 1; j < n.legs.size(); ++j)
                if (n.legs[i] == n.legs[j]) {
                    Node traced;
                    for (std::size_t t = 0; t < n.legs.size(); ++t)
                        if (t != i && t != j)
                            traced.legs.push_back(n.legs[t]);
                    const std::size_t nn = n.legs.size();
                    traced.data.assign(std::size_t{1} << traced.legs.size(),
                                       ExactScalar::zero());
                    for (std::size_t a = 0; a < traced.data.size(); ++a) {
                        std::size_t base = 0;
                        std::size_t bit = 0;
                        for (std::size_t t = 0; t < nn; ++t) {
                            if (t == i || t == j)
                                continue;
                            if ((a >> (traced.legs.size() - 1 - bit)) & 1)
                                base |= std::size_t{1} << (nn - 1 - t);
                            ++bit;
                        }
                        for (std::size_t s = 0; s < 2; ++s) {
                            std::size_t idx = base;
                            if (s) {
                                idx |= std::size_t{1} << (nn - 1 - i);
                                idx |= std::size_t{1} << (nn - 1 - j);
                            }
                            traced.data[a] += n.data[idx];
                        }
                    }
                    n = std::move(traced);
                    return true;
                }
        return false;
    };
    for (auto& n : active)
        while (self_trace(n)) {
        }

    bool progress = true;
    while (progress) {
        progress = false;
        std::size_t best_i = 0, best_j = 0;
        std::size_t best_size = SIZE_MAX;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                if (!shares_leg(active[i], active[j]))
                    continue;
                std::size_t sh = 0;
                for (LegId l : active[i].legs)
                    if (std::find(active[j].legs.begin(), active[j].legs.end(), l) !=
                        active[j].legs.end())
                        ++sh;
                std::size_t res = active[i].legs.size() + active[j].legs.size() - 2 * sh;
                if (res < best_size) {
                    best_size = res;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_size != SIZE_MAX) {
            Node merged =
                contract_pair(active[best_i], active[best_j], limits.max_interm_legs);
            while (self_trace(merged)) {
            }
            active.erase(active.begin() + best_j);
            active[best_i] = std::move(merged);
            progress = true;
        }
    }

    // Assemble: fold scalar components into the global scalar, keep the rest.
    FactoredTensor out;
    out.n_out = n_out;
    out.n_in = n_in;
    out.scalar = d.scalar();
    for (auto& n : active) {
        if (n.legs.empty()) {
            out.scalar = out.scalar * n.data[0];
        } else {
            FactoredTensor::Component c;
            for (LegId l : n.legs)
                c.slots.push_back(open_slot.at(l));
            c.data = std::move(n.data);
            out.components.push_back(std::move(c));
        }
    }
    return out;
}

DenseTensor FactoredTensor::to_dense() const {
    DenseTensor out;
    out.n_out = n_out;
    out.n_in = n_in;
    out.data.assign(std::size_t{1} << (n_out + n_in), ExactScalar::zero());
    add_into(ExactScalar::one(), out.data);
    return out;
}

void FactoredTensor::add_into(const ExactScalar& coeff,
                              std::vector<ExactScalar>& acc) const {
    const std::size_t total = n_out + n_in;
    if (acc.size() != (std::size_t{1} << total))
        throw std::invalid_argument("add_into: accumulator size mismatch");
    ExactScalar base = coeff * scalar;
    if (base.is_zero())
        return;
    // enumerate the product of per-component supports
    struct Entry {
        std::size_t idx;
        const ExactScalar* val;
    };
    std::vector<std::vector<Entry>> supports;
    for (const auto& c : components) {
        std::vector<Entry> sup;
        for (std::size_t sub = 0; sub < c.data.size(); ++sub) {
            if (c.data[sub].is_zero())
                continue;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < c.slots.size(); ++i)
                if ((sub >> (c.slots.size() - 1 - i)) & 1)
                    idx |= std::size_t{1} << (total - 1 - c.slots[i]);
            sup.push_back({idx, &c.data[sub]});
        }
        if (sup.empty())
            return; // component identically zero
        supports.push_back(std::move(sup));
    }
    std::vector<std::size_t> pick(supports.size(), 0);
    while (true) {
        std::size_t idx = 0;
        ExactScalar val = base;
        for (std::size_t i = 0; i < supports.size(); ++i) {
            const Entry& e = supports[i][pick[i]];
            idx |= e.idx;
            val = val * (*e.val);
        }
        acc[idx] += val;
        std::size_t i = 0;
        for (; i < supports.size(); ++i) {
            if (++pick[i] < supports[i].size())
                break;
            pick[i] = 0;
        }
        if (i == supports.size())
            break;
    }
}

DenseTensor contract(const Diagram& d, const OracleLimits& limits) {
    return contract_factored(d, limits).to_dense();
}

std::vector<ExactScalar> statevector(const Diagram& d, const OracleLimits& limits) {
    if (!d.inputs().empty())
        throw std::runtime_error("statevector: diagram has inputs");
    return contract(d, limits).data;
}

bool verify_rule(const Diagram& lhs,
                 const std::vector<std::pair<ExactScalar, Diagram>>& branches,
                 const OracleLimits& limits) {
    DenseTensor L = contract(lhs, limits);
    std::vector<ExactScalar> sum(L.data.size());
    for (const auto& [coeff, dia] : branches) {
        DenseTensor B = contract(dia, limits);
        if (B.n_out != L.n_out || B.n_in != L.n_in)
            throw std::invalid_argument("verify_rule: branch arity mismatch");
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += coeff * B.data[i];
    }
    return sum == L.data;
}

} // namespace zxstar
