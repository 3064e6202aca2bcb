#pragma once

#include <optional>

#include "qmod/explorer.hpp"
#include "qmod/repcore.hpp"

namespace qmod {

using IntMat = std::vector<std::vector<long long>>;
using IntVec = std::vector<long long>;

// Integral bilinear data of a hereditary presentation: the form
// <x,y> = sum_v x_v y_v - sum_{a: i->j} x_i y_j as a matrix, the
// transformation phi advancing a dimension vector one inverse-translation
// step, and, when phi fixes a one-dimensional space, the primitive positive
// generator h of that space together with the integral linear form delta
// with delta(h) = 0, normalized so projectives get negative values of gcd 1.
struct EulerData {
    IntMat e;
    IntMat phi;
    IntMat phi_inv;
    std::optional<IntVec> null_root;
    std::optional<IntVec> defect;

    long long bilinear(const std::vector<int>& x, const std::vector<int>& y) const;
    std::optional<long long> defect_of(const std::vector<int>& dims) const;
};

EulerData euler_data(AlgebraPtr alg);

// Dimension vector of the j-th inverse translate of P(vertex), knitted by
// repeated application of phi; a ray stops before a coordinate would go
// negative (the module left the preprojective component).
struct KnitRow {
    int vertex = 0;
    int step = 0;
    IntVec dims;
};

std::vector<KnitRow> knit_dim_vectors(AlgebraPtr alg, int steps);

// For projectives P (the cogenerating ray) and P' (the probe), the least
// j <= jmax such that the i-th inverse translate of P' is cogenerated by the
// j'-th inverse translate of P for every j' in [j, jmax].
struct CogenThresholdEntry {
    int ray_vertex = 0;
    int probe_vertex = 0;
    int i = 0;
    std::optional<int> least_j;
};

struct CogenThresholdReport {
    int b = 0;
    int jmax = 0;
    std::vector<CogenThresholdEntry> entries;
    std::vector<std::string> notes;  // caps that cut a pair short
};

CogenThresholdReport cogeneration_threshold_check(AlgebraPtr alg, int b, int jmax,
                                                  const Caps& caps = Caps{});

// Exhaustive check that every map from an enumerated defect -1 member to an
// enumerated defect 0 member whose image is not contained in the target's
// unique maximal proper defect 0 indecomposable submodule is injective or
// surjective.  Requires an affine input (defect form present).
struct MonoEpiReport {
    bool ok = true;
    std::string violation;
    long long maps_checked = 0;
    std::vector<std::string> notes;
};

MonoEpiReport mono_epi_scan(AlgebraPtr alg, int len_cap, const Caps& caps = Caps{});

// For a preprojective of defect -d: d surjections onto enumerated defect -1
// members whose kernels meet in zero, verified exactly; found = false is an
// honest exhaustion of the bounded search, not a disproof.
struct JointSurjectionWitness {
    bool found = false;
    std::vector<Module> parts;
    std::vector<Morphism> maps;
    std::string note;
};

JointSurjectionWitness joint_surjection_search(AlgebraPtr alg, const Module& pre, int len_cap,
                                               const Caps& caps = Caps{});

}  // namespace qmod
