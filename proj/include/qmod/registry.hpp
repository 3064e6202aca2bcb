#pragma once

#include "qmod/explorer.hpp"
#include "qmod/grmeasure.hpp"
#include "qmod/repcore.hpp"
#include "qmod/tame.hpp"

namespace qmod {

// Built-in quivers, all over F_2:
//   k2         two vertices, double arrow
//   k3         two vertices, triple arrow
//   example4   a <== b <== c, both steps doubled, no relations
//   remark     a <- b <== c with the composite through the first double
//              arrow killed
//   remark-alt same quiver, the other composite killed
//   d4         four-subspace star, arrows leaving the center
std::vector<std::string> registry_algebra_ids();
AlgebraPtr registry_algebra(const std::string& id);

// Indecomposable strip over a finite piece of the universal cover of the
// example4 quiver: n sources, a zigzag row of n+1 middle vertices (interior
// ones two-dimensional), two sinks under each middle vertex.  The two maps
// leaving a middle vertex have equal kernels; the constructor asserts that
// and indecomposability.  Push-down along `spec` assembles the fibers into
// an example4 module of length 2+5n with top of length n.
struct StripModule {
    CoveringSpec spec;
    Module total;
};

StripModule zigzag_strip(int n, int p = 2);

// A module over k3 annihilated by the arrow combination named by a point
// (c0:c1:c2) of the projective plane, built from a k2 module by placing its
// two matrices at the surviving arrows of the rewritten basis.
Module plane_point_module(AlgebraPtr k3, const std::vector<int>& point, const Module& x);

struct CheckOutcome {
    std::string name;
    std::string status;  // "pass", "fail", or "skipped-at-cap"
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::string id;
    std::vector<CheckOutcome> checks;
    bool ok = true;        // no check failed
    bool complete = true;  // no check was cut short by a cap
};

struct ExampleEntry {
    std::string id;
    std::string summary;
    std::string algebra;
    std::vector<std::string> checks;
};

std::vector<ExampleEntry> list_examples();
VerifyReport verify_example(const std::string& id, const Caps& caps = Caps{});

}  // namespace qmod
