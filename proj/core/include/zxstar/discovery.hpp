#pragma once

#include "zxstar/catalog.hpp"
#include "zxstar/diagram.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace zxstar {

/// Affine normal form of a stabilizer state:
///   psi(t ^ y.B) = i^{l.y} * (-1)^{sum_{j<k} Q_jk y_j y_k}
struct StabRecipe {
    int n = 0;
    std::vector<std::uint32_t> basis; // RREF rows, bit n-1-w = wire w
    std::uint32_t shift = 0;
    std::vector<int> l;                           // i-powers, one per basis row
    std::vector<std::pair<int, int>> quadratic;   // (j,k) pairs with Q_jk = 1
};

struct StabilizerLibrary {
    int n = 0;
    bool real_only = false;
    std::vector<StabRecipe> recipes;
    std::vector<std::vector<ExactScalar>> states; // canonical, entries 0,+-1,+-i
};

/// Complete deduplicated library; 6 / 60 / 1080 states for n = 1 / 2 / 3.
StabilizerLibrary enumerate_stabilizers(int n, bool real_only = false);

/// ZX diagram preparing the recipe's state (graph-state style circuit on
/// |0...0>); the drawn value is the canonical vector up to a tracked positive
/// power of sqrt2 folded into the diagram scalar.
Diagram state_diagram(const StabRecipe& r);

/// Least-squares fit of `target` over the drawn values of `states`, snapped
/// to ExactScalar (k <= 12) and verified exactly. Empty on failure.
std::optional<std::vector<ExactScalar>>
solve_coefficients(const std::vector<std::vector<ExactScalar>>& states,
                   const std::vector<ExactScalar>& target);

struct AnnealSchedule {
    double initial_temperature = 1.0;
    double cooling_factor = 0.999;
    int steps = 2000;
    int moves_per_step = 20;
    std::uint64_t seed = 0;
};

struct AnnealOutcome {
    std::vector<std::size_t> indices; // library positions of the k terms
    double residual = 0;
    long accepted = 0, rejected = 0;
    int steps_taken = 0;
};

/// Simulated annealing over k-subsets of the library; single-element swap
/// moves, energy = least-squares residual. Returns the first subset with
/// residual < 1e-10, none after schedule exhaustion. Deterministic per seed.
std::optional<AnnealOutcome> anneal(const std::vector<ExactScalar>& target,
                                    int k, const AnnealSchedule& schedule,
                                    const StabilizerLibrary& library);

/// The n-leg star-state pattern (each output wire a star edge into a Z(phase)
/// leaf) and its exact statevector.
Diagram star_state_pattern(int legs, Phase phase);
std::vector<ExactScalar> star_state_vector(int legs, Phase phase);

/// Builds a catalog rule from an annealing hit; the coefficients are solved
/// against the branch diagrams and verified exactly. Empty on solve failure.
std::optional<DecompositionRule>
certify(const std::string& id, int legs, Phase phase,
        const std::vector<std::size_t>& indices, const StabilizerLibrary& library);

} // namespace zxstar
