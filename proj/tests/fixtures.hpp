#pragma once

// Small algebras shared across test files, built straight from the public API.

#include "qmod/presentation.hpp"

namespace fixtures {

// n parallel arrows 1 -> 2, no relations.
inline qmod::AlgebraPtr kronecker(int n, int p) {
    qmod::Quiver q;
    q.vertices = {"1", "2"};
    for (int i = 0; i < n; ++i)
        q.arrows.push_back({std::string(1, static_cast<char>('a' + i)), 0, 1});
    return qmod::Algebra::make(q, {}, p);
}

// Commuting square: a -> b -> d and a -> c -> d with the two length-2
// paths identified.
inline qmod::AlgebraPtr square(int p) {
    qmod::Quiver q;
    q.vertices = {"a", "b", "c", "d"};
    q.arrows = {{"ab", 0, 1}, {"bd", 1, 3}, {"ac", 0, 2}, {"cd", 2, 3}};
    qmod::Relation r;
    r.src = 0;
    r.tgt = 3;
    r.terms = {{1, {0, 1}}, {p - 1, {2, 3}}};
    return qmod::Algebra::make(q, {r}, p);
}

// b -> a, two arrows c -> b, and the zero relation killing the composite
// through the first of them.
inline qmod::AlgebraPtr zero_rel(int p) {
    qmod::Quiver q;
    q.vertices = {"a", "b", "c"};
    q.arrows = {{"al", 1, 0}, {"be", 2, 1}, {"bp", 2, 1}};
    qmod::Relation r;
    r.src = 2;
    r.tgt = 0;
    r.terms = {{1, {1, 0}}};
    return qmod::Algebra::make(q, {r}, p);
}

// One loop with square zero.
inline qmod::AlgebraPtr dual_numbers(int p) {
    qmod::Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"x", 0, 0}};
    qmod::Relation r;
    r.src = 0;
    r.tgt = 0;
    r.terms = {{1, {0, 0}}};
    return qmod::Algebra::make(q, {r}, p);
}

// Two double-arrow steps: b -> a twice, c -> b twice, no relations.
inline qmod::AlgebraPtr double_steps(int p) {
    qmod::Quiver q;
    q.vertices = {"a", "b", "c"};
    q.arrows = {{"al", 1, 0}, {"ap", 1, 0}, {"be", 2, 1}, {"bp", 2, 1}};
    return qmod::Algebra::make(q, {}, p);
}

// Four-subspace star: four arms and a center, arrows pointing away from the
// center when source = true and into it otherwise.
inline qmod::AlgebraPtr four_star(int p, bool source) {
    qmod::Quiver q;
    q.vertices = {"z", "a", "b", "c", "d"};
    for (int k = 1; k <= 4; ++k) {
        std::string label(1, static_cast<char>('a' + k - 1));
        if (source)
            q.arrows.push_back({label, 0, k});
        else
            q.arrows.push_back({label, k, 0});
    }
    return qmod::Algebra::make(q, {}, p);
}

}  // namespace fixtures
