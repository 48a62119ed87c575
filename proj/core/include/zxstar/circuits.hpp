#pragma once

#include "zxstar/diagram.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace zxstar {

struct XGate { int target; };
struct HGate { int target; };
struct CnotGate { int control, target; };
struct MctGate {
    std::vector<int> controls; // sorted, nonempty, excludes target
    int target;
};
using Gate = std::variant<XGate, HGate, CnotGate, MctGate>;

struct Circuit {
    int qubits = 1;
    std::vector<Gate> gates;
    /// Register the Grover diffusion stage acts on (fixture metadata);
    /// empty means no diffusion stage is defined for this circuit.
    std::vector<int> diffusion_qubits;

    void validate() const; // throws on out-of-range wires
};

struct TopologyFixture {
    std::string name;
    Circuit circuit;
    bool verified = false;
    std::optional<int> expected_peaks;
    std::map<std::string, int> expected_terms; // strategy -> count
};

/// Gate-by-gate translation to the star-edge diagram form; the oracle tensor
/// of the result equals the circuit unitary exactly.
Diagram to_diagram(const Circuit& c);

/// With every wire closed by a |0> state on the input side.
Diagram to_diagram_closed(const Circuit& c);

/// Grover reflection on n >= 2 wires: H/NOT layers around one
/// Hadamard-conjugated multi-control Toffoli. Proportional (tracked scalar)
/// to 2|s><s| - I.
Diagram diffusion_diagram(int n);
Circuit diffusion_circuit(int n);

/// Deterministic splitmix64-based generator; gate counts are exact, order is
/// a uniform shuffle. MCT targets live on the bottom ceil(qubits/4) wires.
Circuit random_mct_dense(int qubits, int n_not, int n_cnot, int n_mct,
                         std::uint64_t seed);

Circuit parse_circuit(const std::filesystem::path& file);
TopologyFixture parse_fixture(const std::filesystem::path& file);
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

/// Bundled fixture registry ("two_eloop_6e", "four_eloop_12e"). Falls back
/// to treating `name` as a path when it is not registered.
TopologyFixture load_fixture(const std::string& name);
std::filesystem::path circuit_fixture_dir();

/// Small deterministic PRNG used across the project.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound);
    double unit(); // [0,1)

private:
    std::uint64_t state_;
};

} // namespace zxstar
