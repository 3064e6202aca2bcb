#include "qmod/grmeasure.hpp"

#include <algorithm>

namespace qmod {

bool measure_less(const GRMeasure& a, const GRMeasure& b) {
    size_t n = std::min(a.elems.size(), b.elems.size());
    for (size_t i = 0; i < n; ++i)
        if (a.elems[i] != b.elems[i]) return a.elems[i] > b.elems[i];
    return a.elems.size() < b.elems.size();
}

std::string measure_string(const GRMeasure& m) {
    std::string s = "(";
    for (size_t i = 0; i < m.elems.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m.elems[i]);
    }
    return s + ")";
}

std::pair<std::uint64_t, std::uint64_t> measure_value(const GRMeasure& m) {
    if (m.elems.empty()) return {0, 1};
    int mx = m.elems.back();
    if (mx > 63)
        throw CapExceeded("measure value does not fit a 64-bit fraction",
                          "2^" + std::to_string(mx));
    std::uint64_t num = 0;
    for (int e : m.elems) num += std::uint64_t{1} << (mx - e);
    return {num, std::uint64_t{1} << mx};
}

GRMeasure MeasureCache::measure(const Module& x) {
    if (x.is_zero()) throw ValidationError("the zero module has no measure", "");
    std::vector<Module> parts = decompose(x, caps_);
    GRMeasure best;
    bool have = false;
    for (const Module& s : parts) {
        GRMeasure m = measure_indec(reg_.insert(s));
        if (!have || measure_less(best, m)) {
            best = m;
            have = true;
        }
    }
    return best;
}

GRMeasure MeasureCache::measure_indec(int id) {
    auto it = memo_.find(id);
    if (it != memo_.end()) return it->second;
    const Module x = reg_.rep(id);
    GRMeasure best;
    bool have = false;
    int best_id = -1;
    for (const Submodule& u : enumerate_submodules(x, caps_)) {
        if (u.length() == 0 || u.length() == x.length()) continue;
        Module sub = submodule_module(x, u);
        if (!is_indecomposable(sub, caps_)) continue;
        int sid = reg_.insert(sub);
        GRMeasure m = measure_indec(sid);
        if (!have || measure_less(best, m)) {
            best = m;
            have = true;
            best_id = sid;
        }
    }
    best.elems.push_back(x.length());
    memo_[id] = best;
    best_sub_[id] = best_id;
    return best;
}

std::vector<Module> MeasureCache::chain(const Module& x) {
    measure(x);
    std::vector<Module> parts = decompose(x, caps_);
    int id = -1;
    GRMeasure best;
    for (const Module& s : parts) {
        int sid = reg_.insert(s);
        GRMeasure m = memo_.at(sid);
        if (id < 0 || measure_less(best, m)) {
            best = m;
            id = sid;
        }
    }
    std::vector<Module> out;
    while (id >= 0) {
        out.push_back(reg_.rep(id));
        id = best_sub_.at(id);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Module MeasureCache::gr_submodule_of(const Module& x) {
    std::vector<Module> ch = chain(x);
    if (ch.size() < 2) return zero_module(x.alg);
    return ch[ch.size() - 2];
}

GRMeasure gr_measure(const Module& x, const Caps& caps) {
    MeasureCache cache(caps);
    return cache.measure(x);
}

GRMeasure gr_measure(const Module& x, const Caps& caps, std::vector<Module>* chain) {
    MeasureCache cache(caps);
    GRMeasure m = cache.measure(x);
    if (chain) *chain = cache.chain(x);
    return m;
}

Module gr_submodule(const Module& x, const Caps& caps) {
    MeasureCache cache(caps);
    return cache.gr_submodule_of(x);
}

}  // namespace qmod
