#pragma once

#include "qmod/repcore.hpp"

namespace qmod {

// A direct sum of indecomposable projectives P(vertices[0]) + P(vertices[1])
// + ..., with per-summand coordinate offsets into each vertex component of
// the assembled module.
struct ProjSum {
    Module mod;
    std::vector<int> vertices;
    std::vector<std::vector<int>> offset;  // summand -> vertex -> first coordinate

    int summands() const { return static_cast<int>(vertices.size()); }
    // Coordinate of summand i's generator (its trivial path) inside the
    // component of mod at vertices[i].
    int generator_coordinate(int i) const { return offset[i][vertices[i]]; }
};

ProjSum projective_sum(AlgebraPtr alg, const std::vector<int>& vertices);

// A surjection from a projective sum lifting a basis of top(x); the kernel
// sits inside rad(P).
std::pair<ProjSum, Morphism> projective_cover(const Module& x);

// Minimal projective presentation  P1 --d--> P0 --pi--> x --> 0.
// lambda[i][j] spells out the block of d from summand j of P1 into summand i
// of P0 as a combination of basis paths from P0's vertex u_i to P1's vertex
// v_j (a morphism P(v_j) -> P(u_i) is right-composition with such a path).
struct ProjectivePresentation {
    ProjSum p1;
    ProjSum p0;
    Morphism d;
    Morphism pi;
    std::vector<std::vector<PathCombo>> lambda;
};

ProjectivePresentation minimal_presentation(const Module& x);

bool is_projective(const Module& x);
bool is_injective(const Module& x);

// Auslander-Reiten translate: the kernel of the Nakayama image of d over the
// minimal presentation.  Vanishes exactly on projective modules.
Module translate(const Module& x);

// Inverse translate, computed as the dual of the translate of the dual over
// the opposite algebra.  Vanishes exactly on injective modules.
Module inverse_translate(const Module& x);

}  // namespace qmod
