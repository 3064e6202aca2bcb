#pragma once

#include <cstdint>

namespace qmod {

// Feasibility guards for the exhaustive subroutines.  Every guard is a hard
// bound: exceeding it raises CapExceeded with a size estimate, it never
// silently degrades a result.
struct Caps {
    // Submodule lattice enumeration walks all p^length vectors of the ambient
    // module; reject when p^length exceeds this.  4096 = F_2 at length 12.
    std::uint64_t submodule_vector_budget = 4096;

    // Bound on the number of distinct submodules the lattice walk may emit.
    std::uint64_t submodule_count_budget = 1u << 20;

    // Indecomposability via Fitting: after the basis scan stagnates, the full
    // endomorphism space (p^dim) is scanned; reject beyond this budget.
    std::uint64_t end_scan_budget = 1u << 20;

    // Exhaustive search over a Hom space (iso search, embedding search,
    // surjection search) iterates p^dim combinations; reject beyond this.
    std::uint64_t hom_scan_budget = 1u << 20;

    // Indecomposable enumeration per dimension vector enumerates matrix
    // tuples with one arrow pinned to rank normal form; reject a dimension
    // vector whose tuple count exceeds this.
    std::uint64_t tuple_budget = 1u << 22;

    // Length caps for indecomposable enumeration.
    int enum_len_cap_two_vertex = 12;
    int enum_len_cap_general = 6;

    // Total path count cap during algebra validation.
    std::uint64_t path_budget = 200000;

    // Nilpotency bound probed when none is given and relations are present.
    int nilpotency_probe_cap = 16;
};

}  // namespace qmod
