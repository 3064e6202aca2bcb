#include "qmod/explorer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace qmod {

namespace {

std::string module_bytes(const Module& x) {
    std::string k;
    for (const auto& m : x.action) k += m.bytes();
    return k;
}

bool module_order(const Module& a, const Module& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.dims != b.dims) return a.dims < b.dims;
    return module_bytes(a) < module_bytes(b);
}

std::string sub_dims_string(const Submodule& u) {
    std::string s = "(";
    for (std::size_t v = 0; v < u.spaces.size(); ++v) {
        if (v) s += ",";
        s += std::to_string(u.spaces[v].dim());
    }
    return s + ")";
}

// base^exp, saturating just above cap instead of overflowing.
std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

void for_each_dim_vector(int nv, int max_total, const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> cur(nv, 0);
    std::function<void(int, int)> rec = [&](int idx, int used) {
        if (idx == nv) {
            if (used > 0) emit(cur);
            return;
        }
        for (int d = 0; d + used <= max_total; ++d) {
            cur[idx] = d;
            rec(idx + 1, used + d);
        }
        cur[idx] = 0;
    };
    rec(0, 0);
}

// Rank normal form: identity block of size k in the upper left.
FFMatrix rank_normal_form(int rows, int cols, int k, int p) {
    FFMatrix m(rows, cols, p);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

// All modules with the given dimension vector, one arrow pinned to its rank
// normal forms when a non-loop arrow exists (a base change at its endpoints
// brings any module to that shape, so no isomorphism class is missed).
void scan_dim_vector(AlgebraPtr alg, const std::vector<int>& dims, const Caps& caps,
                     IsoRegistry& reg) {
    const Quiver& q = alg->quiver();
    const int na = alg->num_arrows();
    const int p = alg->modulus();

    int pin = -1;
    long pin_entries = -1;
    std::uint64_t free_entries = 0;
    for (int a = 0; a < na; ++a) {
        long e = static_cast<long>(dims[q.arrows[a].tgt]) * dims[q.arrows[a].src];
        if (q.arrows[a].src != q.arrows[a].tgt && e > pin_entries) {
            pin = a;
            pin_entries = e;
        }
    }
    for (int a = 0; a < na; ++a) {
        if (a == pin) continue;
        free_entries += static_cast<std::uint64_t>(dims[q.arrows[a].tgt]) * dims[q.arrows[a].src];
    }

    int ranks = 1;
    if (pin >= 0) ranks = std::min(dims[q.arrows[pin].tgt], dims[q.arrows[pin].src]) + 1;
    std::uint64_t combos = pow_capped(static_cast<std::uint64_t>(p), free_entries, caps.tuple_budget);
    if (combos > caps.tuple_budget / static_cast<std::uint64_t>(ranks)) {
        std::string dv = "(";
        for (std::size_t i = 0; i < dims.size(); ++i) dv += (i ? "," : "") + std::to_string(dims[i]);
        throw CapExceeded("matrix tuple scan at dimension vector " + dv + ")",
                          std::to_string(ranks) + "*" + std::to_string(p) + "^" +
                              std::to_string(free_entries));
    }

    std::vector<int> free_arrows;
    for (int a = 0; a < na; ++a)
        if (a != pin) free_arrows.push_back(a);

    std::vector<FFMatrix> action(na);
    for (int k = 0; k < ranks; ++k) {
        if (pin >= 0)
            action[pin] =
                rank_normal_form(dims[q.arrows[pin].tgt], dims[q.arrows[pin].src], k, p);
        std::vector<std::uint8_t> odo(free_entries, 0);
        while (true) {
            std::size_t off = 0;
            for (int a : free_arrows) {
                FFMatrix m(dims[q.arrows[a].tgt], dims[q.arrows[a].src], p);
                for (auto& e : m.a) e = odo[off++];
                action[a] = std::move(m);
            }
            Module cand{alg, dims, action};
            if (check_module(cand).ok && is_indecomposable(cand, caps)) reg.insert(cand);

            std::size_t i = 0;
            while (i < odo.size() && odo[i] == p - 1) odo[i++] = 0;
            if (i == odo.size()) break;
            ++odo[i];
        }
    }
}

}  // namespace

SubcatSnapshot enumerate_indecomposables(AlgebraPtr alg, int max_len, const Caps& caps) {
    int len_cap =
        alg->num_vertices() == 2 ? caps.enum_len_cap_two_vertex : caps.enum_len_cap_general;
    if (max_len > len_cap)
        throw CapExceeded("indecomposable enumeration to length " + std::to_string(max_len),
                          "length cap " + std::to_string(len_cap));

    IsoRegistry reg(caps);
    for_each_dim_vector(alg->num_vertices(), max_len,
                        [&](const std::vector<int>& dims) { scan_dim_vector(alg, dims, caps, reg); });

    SubcatSnapshot snap{alg, max_len, {}, "enumeration"};
    for (int i = 0; i < reg.size(); ++i) snap.members.push_back(reg.rep(i));
    std::sort(snap.members.begin(), snap.members.end(), module_order);
    return snap;
}

TakeoffReport take_off_sequence(const SubcatSnapshot& snap, int count, const Caps& caps) {
    MeasureCache cache(caps);
    std::map<GRMeasure, std::vector<int>, bool (*)(const GRMeasure&, const GRMeasure&)> groups(
        &measure_less);
    for (std::size_t i = 0; i < snap.members.size(); ++i)
        groups[cache.measure(snap.members[i])].push_back(static_cast<int>(i));

    TakeoffReport rep;
    for (const auto& [mu, idx] : groups) {
        if (static_cast<int>(rep.entries.size()) == count) break;
        rep.entries.push_back({mu, idx});
    }
    rep.truncated = static_cast<int>(groups.size()) < count;
    return rep;
}

SubcatSnapshot cogeneration_closure(AlgebraPtr alg, const std::vector<Module>& seeds, int max_len,
                                    const Caps& caps) {
    Module cog = direct_sum(alg, seeds);
    SubcatSnapshot all = enumerate_indecomposables(alg, max_len, caps);
    SubcatSnapshot out{alg, max_len, {}, "closure"};
    for (const Module& x : all.members)
        if (is_cogenerated(x, cog)) out.members.push_back(x);
    return out;
}

CheckResult is_submodule_closed(const SubcatSnapshot& snap, const Caps& caps) {
    IsoRegistry reg(caps);
    for (const Module& y : snap.members) reg.insert(y);
    for (const Module& y : snap.members) {
        for (const Submodule& u : enumerate_submodules(y, caps)) {
            if (u.length() == 0 || u.length() == y.length()) continue;
            Module s = submodule_module(y, u);
            for (const Module& part : decompose(s, caps)) {
                if (!reg.find(part))
                    return {false, "submodule summand " + part.dims_string() + " of member " +
                                       y.dims_string() + " is outside the collection"};
            }
        }
    }
    return {};
}

Morphism embed_avoiding(const Module& x, const Module& m, const Submodule& m0, const Caps& caps) {
    if (x.alg->signature() != m.alg->signature())
        throw ValidationError("embedding endpoints live over different algebras",
                              x.alg->signature());
    bool shaped = m0.spaces.size() == m.dims.size();
    for (std::size_t v = 0; shaped && v < m0.spaces.size(); ++v)
        if (m0.spaces[v].ambient() != m.dims[v]) shaped = false;
    if (!shaped || !is_stable(m, m0))
        throw ValidationError("avoided subspace is not a submodule of the target",
                              sub_dims_string(m0));

    auto subs = enumerate_submodules(m, caps);
    Morphism f = zero_morphism(x, m);
    Submodule kf = kernel_of(x, m, f);
    int guard = x.length() + 1;
    while (kf.length() > 0) {
        if (--guard < 0) throw std::logic_error("embedding iteration failed to shrink the kernel");
        Submodule reached = submodule_sum(m, m0, image_of(x, m, f));

        int best = -1;
        int best_len = -1;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (submodule_intersection(m, reached, subs[i]).length() > 0) continue;
            if (subs[i].length() > best_len) {
                best_len = subs[i].length();
                best = static_cast<int>(i);
            }
        }

        Morphism incl;
        Module comp = submodule_module(m, subs[best], &incl);
        bool found = false;
        for (const Morphism& b : hom_basis(x, comp)) {
            Morphism cand = compose(x, comp, m, b, incl);
            if (submodule_contains(kernel_of(x, m, cand), kf)) continue;
            for (std::size_t v = 0; v < f.maps.size(); ++v) f.maps[v] = f.maps[v].add(cand.maps[v]);
            found = true;
            break;
        }
        if (!found)
            throw ValidationError(
                "embedding search stalled: every map into the maximal complement kills the "
                "remaining kernel",
                "kernel " + sub_dims_string(kf) + ", complement " + comp.dims_string() +
                    ", reached " + sub_dims_string(reached));

        Submodule nk = kernel_of(x, m, f);
        if (nk.length() >= kf.length())
            throw std::logic_error("embedding iteration failed to shrink the kernel");
        kf = nk;
    }

    if (!is_injective_morphism(f)) throw std::logic_error("embedding result is not injective");
    if (submodule_intersection(m, image_of(x, m, f), m0).length() != 0)
        throw std::logic_error("embedding result meets the avoided submodule");
    return f;
}

std::optional<Module> find_high_multiplicity_indec(const SubcatSnapshot& snap, int d) {
    const int nv = snap.alg->num_vertices();
    std::vector<bool> support(nv, false);
    for (const Module& y : snap.members)
        for (int v = 0; v < nv; ++v)
            if (jh_multiplicity(y, v) > 0) support[v] = true;

    for (const Module& y : snap.members) {
        bool ok = true;
        for (int v = 0; v < nv && ok; ++v)
            if (support[v] && jh_multiplicity(y, v) < d) ok = false;
        if (ok) return y;
    }
    return std::nullopt;
}

CheckResult check_gr_bound(const SubcatSnapshot& snap, const Caps& caps) {
    MeasureCache cache(caps);
    const long pb = snap.alg->max_projective_length();
    const long qb = snap.alg->max_injective_length();
    for (const Module& y : snap.members) {
        if (y.length() <= 1) continue;
        Module g = cache.gr_submodule_of(y);
        long bound = static_cast<long>(g.length()) * pb * qb;
        if (y.length() > bound)
            return {false, "member " + y.dims_string() + " of length " +
                               std::to_string(y.length()) + " exceeds its bound " +
                               std::to_string(bound)};
    }
    return {};
}

}  // namespace qmod
