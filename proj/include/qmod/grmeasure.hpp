#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "qmod/repcore.hpp"

namespace qmod {

// A finite set of positive lengths, kept strictly ascending.
struct GRMeasure {
    std::vector<int> elems;
    bool operator==(const GRMeasure& o) const { return elems == o.elems; }
    bool operator!=(const GRMeasure& o) const { return elems != o.elems; }
};

// Total order on measures: walk the length line upward; at the first length
// present in one set and absent from the other, the set containing it wins.
// When one set is an initial segment of the other, the longer set wins.
bool measure_less(const GRMeasure& a, const GRMeasure& b);

std::string measure_string(const GRMeasure& m);  // "(1,3,7)"

// The measure as an exact fraction: (sum over e of 2^(max-e), 2^max).
// Rejects elements above 63, which would overflow the representation.
std::pair<std::uint64_t, std::uint64_t> measure_value(const GRMeasure& m);

// Measure computation with memoization across isomorphism classes; reusing
// one cache across many modules of the same algebra amortizes the submodule
// walks.
class MeasureCache {
  public:
    explicit MeasureCache(const Caps& caps = Caps{}) : caps_(caps), reg_(caps) {}

    // Measure of a nonzero module: for an indecomposable, the best measure
    // over its proper nonzero indecomposable submodules extended by its own
    // length; for a decomposable, the best among its summands.
    GRMeasure measure(const Module& x);

    // A chain of representatives realizing measure(x), innermost first; its
    // lengths are exactly the measure's elements.  For a decomposable this
    // is the chain of a best summand.
    std::vector<Module> chain(const Module& x);

    // A proper indecomposable submodule representative realizing the measure
    // without its last element; the zero module when the measure is {1}.
    Module gr_submodule_of(const Module& x);

  private:
    GRMeasure measure_indec(int id);

    Caps caps_;
    IsoRegistry reg_;
    std::map<int, GRMeasure> memo_;
    std::map<int, int> best_sub_;
};

GRMeasure gr_measure(const Module& x, const Caps& caps = Caps{});
GRMeasure gr_measure(const Module& x, const Caps& caps, std::vector<Module>* chain);
Module gr_submodule(const Module& x, const Caps& caps = Caps{});

}  // namespace qmod
