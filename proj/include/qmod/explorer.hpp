#pragma once

#include <optional>

#include "qmod/grmeasure.hpp"
#include "qmod/repcore.hpp"

namespace qmod {

// Indecomposables of length <= bound over one algebra, one representative
// per isomorphism class, sorted by (length, dimension vector, matrix bytes).
struct SubcatSnapshot {
    AlgebraPtr alg;
    int bound = 0;
    std::vector<Module> members;
    std::string provenance;  // "enumeration" or "closure"
};

// Exhaustive per-dimension-vector search: one non-loop arrow of maximal
// format is pinned to its rank normal forms, the remaining matrices range
// over everything, and the survivors of the relation and indecomposability
// filters are deduplicated up to isomorphism.
SubcatSnapshot enumerate_indecomposables(AlgebraPtr alg, int max_len, const Caps& caps = Caps{});

struct TakeoffEntry {
    GRMeasure measure;
    std::vector<int> members;  // indices into the snapshot, ascending
};

struct TakeoffReport {
    std::vector<TakeoffEntry> entries;  // strictly increasing measures
    bool truncated = false;             // fewer distinct measures than asked
};

// The `count` smallest distinct measures among the members, each with the
// classes realizing it.
TakeoffReport take_off_sequence(const SubcatSnapshot& snap, int count, const Caps& caps = Caps{});

// Members of the full enumeration cogenerated by the direct sum of seeds.
SubcatSnapshot cogeneration_closure(AlgebraPtr alg, const std::vector<Module>& seeds, int max_len,
                                    const Caps& caps = Caps{});

// Every indecomposable summand of every submodule of every member must be
// isomorphic to a member; the violation names the first escapee.
CheckResult is_submodule_closed(const SubcatSnapshot& snap, const Caps& caps = Caps{});

// An injective morphism u: x -> m with image meeting m0 in zero, built by
// the kernel-shrinking iteration: while ker(f) != 0, pick a maximal
// submodule m' of m with (m0 + f(x)) intersecting m' in zero and add a map
// x -> m' that does not kill all of ker(f).  Throws ValidationError with the
// stalled state when no such map exists (m too small for the avoidance).
Morphism embed_avoiding(const Module& x, const Module& m, const Submodule& m0,
                        const Caps& caps = Caps{});

// A member whose composition multiplicity is >= d at every vertex that
// appears in some member; nullopt when the bounded snapshot has none.
std::optional<Module> find_high_multiplicity_indec(const SubcatSnapshot& snap, int d);

// For every non-simple member y: length(y) must be bounded by
// length(gr_submodule(y)) * (max projective length) * (max injective length).
CheckResult check_gr_bound(const SubcatSnapshot& snap, const Caps& caps = Caps{});

}  // namespace qmod
