#pragma once

#include "zxstar/diagram.hpp"

#include <vector>

namespace zxstar {

enum class RewriteKind : std::uint8_t {
    SpiderFusion,
    ColorChange,
    PiCommutation,
    StateCopy,
    Bialgebra,
    HHCancel,
    Hopf,
    IdentityRemoval,
    EulerDecomposition,
    StarStateXPi,
    StarStateX0,
    StarStateZPi,
};

/// A matched rewrite site. `a` is the primary vertex (kept / removed,
/// rule-dependent), `b` the secondary one where the pattern needs it.
struct MatchHandle {
    RewriteKind kind;
    VertexId a = 0;
    VertexId b = 0;
};

/// All sites where `kind` applies, ascending id order.
std::vector<MatchHandle> find_matches(const Diagram& d, RewriteKind kind);

/// Applies one rewrite. Throws std::invalid_argument on a stale site.
Diagram apply_rewrite(Diagram d, const MatchHandle& site);
void apply_rewrite_inplace(Diagram& d, const MatchHandle& site);

/// Fixpoint of {state copy, spider fusion, identity removal, star-state
/// rules, leaf kind normalization, self-loop and isolated-vertex
/// absorption}. Deliberately partial: no Hopf, pivot or complementation.
void partial_simplify(Diagram& d);

/// Same loop without the star-state rules: moves NOT spiders into states
/// and fuses them along wires, leaving star structure untouched.
void push_nots_to_boundary(Diagram& d);

/// Collapses every run of star-carrying Z spiders separated by degree-2
/// X(pi) interposers into the canonical two-spider stack; the two stack
/// spiders are registered as a linked master pair.
void to_stack_form(Diagram& d);

/// True when every spider phase is a multiple of pi/2 and no star edge
/// remains.
bool is_stabilizer(const Diagram& d);

} // namespace zxstar
