#pragma once

#include "zxstar/diagram.hpp"
#include "zxstar/oracle.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace zxstar {

/// A stabilizer decomposition: matchable left-hand side plus coefficient
/// weighted replacement branches, with scaling metadata.
struct DecompositionRule {
    std::string id;
    Diagram lhs;
    std::vector<std::pair<ExactScalar, Diagram>> branches;
    int terms_p = 0;
    int reduction_r = 0;
    int legs = 0;          // boundary wires of the pattern
    int phase_eighths = 0; // star-state root phase where applicable

    double scaling() const; // log2(terms_p) / reduction_r
    bool verify(const OracleLimits& limits = {}) const;
};

/// Two-branch decomposition of one spider: phase unfused into an X(0)/X(pi)
/// leaf (color swapped for X spiders). Throws if v is a boundary.
std::vector<Term> elementary_decompose(const Diagram& d, VertexId v);

/// Two-branch master decomposition for a Z spider with m >= 1 star edges;
/// eliminates the spider and its stars in both branches. beta = 1/m.
std::vector<Term> dynamic_decompose(const Diagram& d, VertexId v);

/// The k-star-edge decomposition, k in 1..3 (2, 3, 5 terms).
DecompositionRule star_edge_rule(int k);

/// Star-state decompositions: (3,0), (3,+-pi/2), (4,+-pi/2), (5,0),
/// (5,+-pi/2). (3,pi) is Clifford and rejected with a distinct error.
DecompositionRule star_state_rule(int legs, Phase phase);

struct RuleReport {
    std::string id;
    bool pass = false;
    int branch_count = 0;
    double scaling = 0;
};

/// Runs verify() on every shipped rule.
std::vector<RuleReport> catalog_verify_all();
const std::vector<DecompositionRule>& shipped_catalog();

/// Fixture directory override (defaults to the bundled fixtures/rules).
void set_rule_fixture_dir(const std::filesystem::path& dir);
std::filesystem::path rule_fixture_dir();

DecompositionRule load_rule(const std::filesystem::path& file);
void save_rule(const DecompositionRule& rule, const std::filesystem::path& file);

} // namespace zxstar
