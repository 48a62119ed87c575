#include "zxstar/circuits.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zxstar {

using nlohmann::json;

void Circuit::validate() const {
    if (qubits < 1)
        throw std::invalid_argument("circuit: qubits must be >= 1");
    auto check = [&](int w, const char* what) {
        if (w < 0 || w >= qubits)
            throw std::invalid_argument(std::string("circuit: ") + what +
                                        " wire out of range");
    };
    for (const Gate& g : gates) {
        if (auto* x = std::get_if<XGate>(&g))
            check(x->target, "x target");
        else if (auto* h = std::get_if<HGate>(&g))
            check(h->target, "h target");
        else if (auto* cx = std::get_if<CnotGate>(&g)) {
            check(cx->control, "cx control");
            check(cx->target, "cx target");
            if (cx->control == cx->target)
                throw std::invalid_argument("circuit: cx control equals target");
        } else {
            const auto& m = std::get<MctGate>(g);
            if (m.controls.empty())
                throw std::invalid_argument("circuit: mct needs controls");
            check(m.target, "mct target");
            for (int c : m.controls) {
                check(c, "mct control");
                if (c == m.target)
                    throw std::invalid_argument("circuit: mct control equals target");
            }
            auto sorted = m.controls;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("circuit: duplicate mct control");
        }
    }
    for (int q : diffusion_qubits)
        check(q, "diffusion");
}

namespace {

// Wire frontier during gate appends: pending edge kind absorbs Hadamards.
struct Frontier {
    VertexId at;
    EdgeKind pending = EdgeKind::Plain;
};

void toggle_h(Frontier& f) {
    f.pending = f.pending == EdgeKind::Plain ? EdgeKind::Hadamard : EdgeKind::Plain;
}

VertexId emit(Diagram& d, Frontier& f, VertexType t, Phase p) {
    VertexId v = d.add_vertex(t, p);
    d.add_edge(f.at, v, f.pending);
    f.at = v;
    f.pending = EdgeKind::Plain;
    return v;
}

// The (1,2)-weighted leaf chain hanging off an MCT master:
// master -star- Z(pi) -star- Z(0).
void attach_master_leaf(Diagram& d, VertexId master) {
    VertexId p = d.add_vertex(VertexType::Z, Phase::pi());
    VertexId q = d.add_vertex(VertexType::Z, Phase::zero());
    d.add_edge(master, p, EdgeKind::Star);
    d.add_edge(p, q, EdgeKind::Star);
}

void append_mct(Diagram& d, std::vector<Frontier>& wires, const MctGate& m) {
    VertexId master = d.add_vertex(VertexType::Z, Phase::pi());
    auto touch_wire = [&](int w, bool is_target) {
        Frontier& f = wires[w];
        if (is_target)
            toggle_h(f);
        emit(d, f, VertexType::X, Phase::pi());
        VertexId spider = emit(d, f, VertexType::Z, Phase::zero());
        d.add_edge(spider, master, EdgeKind::Star);
        emit(d, f, VertexType::X, Phase::pi());
        if (is_target)
            toggle_h(f);
    };
    for (int c : m.controls)
        touch_wire(c, false);
    touch_wire(m.target, true);
    attach_master_leaf(d, master);
}

} // namespace

Diagram to_diagram(const Circuit& c) {
    c.validate();
    Diagram d;
    std::vector<Frontier> wires;
    for (int q = 0; q < c.qubits; ++q) {
        VertexId in = d.add_vertex(VertexType::Boundary);
        d.inputs().push_back(in);
        wires.push_back({in, EdgeKind::Plain});
    }
    for (const Gate& g : c.gates) {
        if (auto* x = std::get_if<XGate>(&g)) {
            emit(d, wires[x->target], VertexType::X, Phase::pi());
        } else if (auto* h = std::get_if<HGate>(&g)) {
            toggle_h(wires[h->target]);
        } else if (auto* cx = std::get_if<CnotGate>(&g)) {
            VertexId zc = emit(d, wires[cx->control], VertexType::Z, Phase::zero());
            VertexId xt = emit(d, wires[cx->target], VertexType::X, Phase::zero());
            d.add_edge(zc, xt, EdgeKind::Plain);
            d.mul_scalar(ExactScalar::sqrt2());
        } else {
            append_mct(d, wires, std::get<MctGate>(g));
        }
    }
    for (int q = 0; q < c.qubits; ++q) {
        VertexId out = d.add_vertex(VertexType::Boundary);
        d.add_edge(wires[q].at, out, wires[q].pending);
        d.outputs().push_back(out);
    }
    return d;
}

Diagram to_diagram_closed(const Circuit& c) {
    Diagram d = to_diagram(c);
    std::vector<VertexId> ins = d.inputs();
    d.inputs().clear();
    for (VertexId b : ins) {
        // |0> = X(0) state / sqrt2
        auto [n, kind] = *d.incidences(b).begin();
        d.remove_vertex(b);
        VertexId leaf = d.add_vertex(VertexType::X, Phase::zero());
        d.add_edge(leaf, n, kind);
        d.mul_scalar(ExactScalar::inv_sqrt2());
    }
    return d;
}

Circuit diffusion_circuit(int n) {
    if (n < 2)
        throw std::invalid_argument("diffusion: need at least 2 wires");
    Circuit c;
    c.qubits = n;
    for (int q = 0; q < n; ++q)
        c.gates.push_back(HGate{q});
    for (int q = 0; q < n; ++q)
        c.gates.push_back(XGate{q});
    // controlled-Z on all wires, realized as an H-conjugated MCT
    c.gates.push_back(HGate{n - 1});
    MctGate m;
    for (int q = 0; q < n - 1; ++q)
        m.controls.push_back(q);
    m.target = n - 1;
    c.gates.push_back(m);
    c.gates.push_back(HGate{n - 1});
    for (int q = 0; q < n; ++q)
        c.gates.push_back(XGate{q});
    for (int q = 0; q < n; ++q)
        c.gates.push_back(HGate{q});
    return c;
}

Diagram diffusion_diagram(int n) {
    return to_diagram(diffusion_circuit(n));
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("SplitMix64::below(0)");
    std::uint64_t threshold = (~bound + 1) % bound; // 2^64 mod bound
    while (true) {
        std::uint64_t r = next();
        if (r >= threshold)
            return r % bound;
    }
}

double SplitMix64::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Circuit random_mct_dense(int qubits, int n_not, int n_cnot, int n_mct,
                         std::uint64_t seed) {
    if (qubits < 3)
        throw std::invalid_argument("random_mct_dense: need at least 3 qubits");
    if (n_not < 0 || n_cnot < 0 || n_mct < 0)
        throw std::invalid_argument("random_mct_dense: negative gate count");
    SplitMix64 rng(seed);
    Circuit c;
    c.qubits = qubits;
    const int band = (qubits + 3) / 4; // MCT targets on the bottom wires
    for (int i = 0; i < n_not; ++i)
        c.gates.push_back(XGate{static_cast<int>(rng.below(qubits))});
    for (int i = 0; i < n_cnot; ++i) {
        int ctrl = static_cast<int>(rng.below(qubits));
        int tgt = static_cast<int>(rng.below(qubits - 1));
        if (tgt >= ctrl)
            ++tgt;
        c.gates.push_back(CnotGate{ctrl, tgt});
    }
    for (int i = 0; i < n_mct; ++i) {
        int target = qubits - band + static_cast<int>(rng.below(band));
        std::vector<int> rest;
        for (int q = 0; q < qubits; ++q)
            if (q != target)
                rest.push_back(q);
        int size = 2 + static_cast<int>(rng.below(rest.size() - 1));
        // partial Fisher-Yates for a uniform subset
        for (int j = 0; j < size; ++j) {
            int k = j + static_cast<int>(rng.below(rest.size() - j));
            std::swap(rest[j], rest[k]);
        }
        MctGate m;
        m.controls.assign(rest.begin(), rest.begin() + size);
        std::sort(m.controls.begin(), m.controls.end());
        m.target = target;
        c.gates.push_back(m);
    }
    // uniform shuffle of the whole gate list
    for (std::size_t j = c.gates.size(); j > 1; --j)
        std::swap(c.gates[j - 1], c.gates[rng.below(j)]);
    c.validate();
    return c;
}

namespace {

json gate_to_json(const Gate& g) {
    if (auto* x = std::get_if<XGate>(&g))
        return {{"type", "x"}, {"target", x->target}};
    if (auto* h = std::get_if<HGate>(&g))
        return {{"type", "h"}, {"target", h->target}};
    if (auto* cx = std::get_if<CnotGate>(&g))
        return {{"type", "cx"}, {"control", cx->control}, {"target", cx->target}};
    const auto& m = std::get<MctGate>(g);
    return {{"type", "mct"}, {"controls", m.controls}, {"target", m.target}};
}

Gate gate_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "x")
        return XGate{j.at("target").get<int>()};
    if (type == "h")
        return HGate{j.at("target").get<int>()};
    if (type == "cx")
        return CnotGate{j.at("control").get<int>(), j.at("target").get<int>()};
    if (type == "mct") {
        MctGate m;
        m.controls = j.at("controls").get<std::vector<int>>();
        m.target = j.at("target").get<int>();
        return m;
    }
    throw std::invalid_argument("circuit json: unknown gate type '" + type + "'");
}

Circuit circuit_from_json_obj(const json& j) {
    Circuit c;
    c.qubits = j.at("qubits").get<int>();
    for (const auto& g : j.at("gates"))
        c.gates.push_back(gate_from_json(g));
    if (j.contains("diffusion_qubits"))
        c.diffusion_qubits = j.at("diffusion_qubits").get<std::vector<int>>();
    c.validate();
    return c;
}

} // namespace

std::string circuit_to_json(const Circuit& c) {
    json j;
    j["qubits"] = c.qubits;
    j["gates"] = json::array();
    for (const Gate& g : c.gates)
        j["gates"].push_back(gate_to_json(g));
    if (!c.diffusion_qubits.empty())
        j["diffusion_qubits"] = c.diffusion_qubits;
    return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
    return circuit_from_json_obj(json::parse(text));
}

Circuit parse_circuit(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is)
        throw std::runtime_error("parse_circuit: cannot open " + file.string());
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse_circuit: " + file.string() + ": " + e.what());
    }
    return circuit_from_json_obj(j);
}

TopologyFixture parse_fixture(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is)
        throw std::runtime_error("parse_fixture: cannot open " + file.string());
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse_fixture: " + file.string() + ": " + e.what());
    }
    TopologyFixture f;
    f.circuit = circuit_from_json_obj(j);
    f.name = j.value("name", file.stem().string());
    f.verified = j.value("verified", false);
    if (j.contains("expected_peaks"))
        f.expected_peaks = j.at("expected_peaks").get<int>();
    if (j.contains("expected_terms"))
        for (const auto& [k, v] : j.at("expected_terms").items())
            f.expected_terms[k] = v.get<int>();
    return f;
}

std::filesystem::path circuit_fixture_dir() {
    namespace fs = std::filesystem;
    const char* env = std::getenv("ZXSTAR_CIRCUIT_DIR");
    if (env && *env)
        return env;
    fs::path base = fs::current_path();
    for (int up = 0; up < 5; ++up) {
        fs::path cand = base / "fixtures" / "circuits";
        if (fs::is_directory(cand))
            return cand;
        base = base.parent_path();
    }
    return "fixtures/circuits";
}

TopologyFixture load_fixture(const std::string& name) {
    namespace fs = std::filesystem;
    fs::path p = circuit_fixture_dir() / (name + ".json");
    if (fs::exists(p))
        return parse_fixture(p);
    if (fs::exists(name))
        return parse_fixture(name);
    throw std::runtime_error("load_fixture: unknown fixture '" + name + "'");
}

} // namespace zxstar
