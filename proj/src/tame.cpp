#include "qmod/tame.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "qmod/artrans.hpp"

namespace qmod {

namespace {

IntMat identity_mat(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int c = static_cast<int>(b[0].size());
    IntMat r(n, IntVec(c, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j)
            for (int t = 0; t < k; ++t) r[i][j] += a[i][t] * b[t][j];
    return r;
}

IntMat mat_transpose(const IntMat& a) {
    int n = static_cast<int>(a.size());
    int c = static_cast<int>(a[0].size());
    IntMat r(c, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) r[j][i] = a[i][j];
    return r;
}

IntMat mat_neg(IntMat a) {
    for (auto& row : a)
        for (auto& x : row) x = -x;
    return a;
}

IntVec mat_vec(const IntMat& a, const IntVec& v) {
    IntVec r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

bool is_zero_mat(const IntMat& a) {
    for (const auto& row : a)
        for (long long x : row)
            if (x != 0) return false;
    return true;
}

long long det(const IntMat& a) {
    int n = static_cast<int>(a.size());
    if (n == 1) return a[0][0];
    long long d = 0;
    long long sign = 1;
    for (int j = 0; j < n; ++j) {
        IntMat minor;
        for (int i = 1; i < n; ++i) {
            IntVec row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(std::move(row));
        }
        d += sign * a[0][j] * det(minor);
        sign = -sign;
    }
    return d;
}

// Adjugate via cofactors; A * adj(A) = det(A) * I.
IntMat adjugate(const IntMat& a) {
    int n = static_cast<int>(a.size());
    IntMat adj(n, IntVec(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            IntMat minor;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                IntVec row;
                for (int c = 0; c < n; ++c)
                    if (c != j) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            long long cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            adj[j][i] = cof;
        }
    }
    return adj;
}

IntVec primitive(IntVec v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (auto& x : v) x /= g;
    long long s = std::accumulate(v.begin(), v.end(), 0ll);
    if (s < 0)
        for (auto& x : v) x = -x;
    return v;
}

std::vector<int> to_int(const IntVec& v) {
    std::vector<int> r;
    for (long long x : v) r.push_back(static_cast<int>(x));
    return r;
}

std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// Every element of the Hom space, as coefficient vectors over the basis.
bool next_coeffs(std::vector<int>& c, int p) {
    std::size_t i = 0;
    while (i < c.size() && c[i] == p - 1) c[i++] = 0;
    if (i == c.size()) return false;
    ++c[i];
    return true;
}

}  // namespace

long long EulerData::bilinear(const std::vector<int>& x, const std::vector<int>& y) const {
    long long r = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r += x[i] * e[i][j] * y[j];
    return r;
}

std::optional<long long> EulerData::defect_of(const std::vector<int>& dims) const {
    if (!defect) return std::nullopt;
    long long r = 0;
    for (std::size_t v = 0; v < dims.size(); ++v) r += (*defect)[v] * dims[v];
    return r;
}

EulerData euler_data(AlgebraPtr alg) {
    if (!alg->hereditary())
        throw ValidationError("bilinear form data needs a relation-free presentation",
                              alg->signature());
    const int n = alg->num_vertices();
    const Quiver& q = alg->quiver();

    IntMat arrow_count(n, IntVec(n, 0));
    for (const Arrow& a : q.arrows) ++arrow_count[a.src][a.tgt];

    EulerData ed;
    ed.e = identity_mat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ed.e[i][j] -= arrow_count[i][j];

    // The quiver is acyclic, so the arrow-count matrix is nilpotent and the
    // geometric series inverts e exactly over the integers.
    IntMat e_inv = identity_mat(n);
    IntMat power = arrow_count;
    for (int step = 0; step < n && !is_zero_mat(power); ++step) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e_inv[i][j] += power[i][j];
        power = mat_mul(power, arrow_count);
    }

    ed.phi = mat_neg(mat_mul(mat_transpose(e_inv), ed.e));
    ed.phi_inv = mat_neg(mat_mul(e_inv, mat_transpose(ed.e)));

    IntMat fix = ed.phi;
    for (int i = 0; i < n; ++i) fix[i][i] -= 1;
    if (det(fix) == 0) {
        IntMat adj = adjugate(fix);
        IntVec h;
        for (int j = 0; j < n && h.empty(); ++j) {
            IntVec col(n);
            bool nonzero = false;
            for (int i = 0; i < n; ++i) {
                col[i] = adj[i][j];
                if (col[i] != 0) nonzero = true;
            }
            if (nonzero) h = primitive(col);
        }
        bool positive = !h.empty();
        for (long long x : h)
            if (x <= 0) positive = false;
        if (positive) {
            ed.null_root = h;

            IntVec d(n, 0);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) d[j] += h[i] * ed.e[i][j];
            d = primitive(d);
            bool has_pos = false;
            bool has_neg = false;
            for (int v = 0; v < n; ++v) {
                long long val = 0;
                for (int u = 0; u < n; ++u)
                    val += d[u] * static_cast<long long>(alg->pair_basis(v, u).size());
                if (val > 0) has_pos = true;
                if (val < 0) has_neg = true;
            }
            if (has_pos && has_neg)
                throw std::logic_error("projective defects of mixed sign");
            if (has_pos)
                for (auto& x : d) x = -x;
            ed.defect = d;

            if (mat_vec(ed.phi, h) != h) throw std::logic_error("fixed vector is not fixed");
            long long dh = 0;
            for (int v = 0; v < n; ++v) dh += d[v] * h[v];
            if (dh != 0) throw std::logic_error("defect does not vanish on the fixed vector");
            IntVec dphi(n, 0);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) dphi[j] += (*ed.defect)[i] * ed.phi[i][j];
            if (dphi != *ed.defect) throw std::logic_error("defect is not phi-invariant");
        }
    }
    return ed;
}

std::vector<KnitRow> knit_dim_vectors(AlgebraPtr alg, int steps) {
    EulerData ed = euler_data(alg);
    const int n = alg->num_vertices();
    std::vector<KnitRow> rows;
    for (int v = 0; v < n; ++v) {
        IntVec x(n);
        for (int u = 0; u < n; ++u) x[u] = static_cast<long long>(alg->pair_basis(v, u).size());
        rows.push_back({v, 0, x});
        for (int j = 1; j <= steps; ++j) {
            IntVec nx = mat_vec(ed.phi, x);
            if (std::any_of(nx.begin(), nx.end(), [](long long c) { return c < 0; })) break;
            rows.push_back({v, j, nx});
            x = std::move(nx);
        }
    }
    return rows;
}

CogenThresholdReport cogeneration_threshold_check(AlgebraPtr alg, int b, int jmax,
                                                  const Caps& caps) {
    if (!alg->hereditary())
        throw ValidationError("translation rays need a relation-free presentation",
                              alg->signature());
    (void)caps;
    const int n = alg->num_vertices();
    std::vector<std::vector<Module>> ray(n);
    for (int v = 0; v < n; ++v) {
        ray[v].push_back(projective_module(alg, v));
        for (int j = 1; j <= std::max(b, jmax); ++j)
            ray[v].push_back(inverse_translate(ray[v].back()));
    }

    CogenThresholdReport rep;
    rep.b = b;
    rep.jmax = jmax;
    for (int pv = 0; pv < n; ++pv) {
        for (int qv = 0; qv < n; ++qv) {
            for (int i = 0; i <= b; ++i) {
                const Module& probe = ray[qv][i];
                std::vector<bool> ok(jmax + 1, false);
                for (int j = 0; j <= jmax; ++j)
                    ok[j] = !probe.is_zero() && is_cogenerated(probe, ray[pv][j]);
                std::optional<int> least;
                for (int j = jmax; j >= 0 && ok[j]; --j) least = j;
                rep.entries.push_back({pv, qv, i, least});
            }
        }
    }
    return rep;
}

MonoEpiReport mono_epi_scan(AlgebraPtr alg, int len_cap, const Caps& caps) {
    EulerData ed = euler_data(alg);
    if (!ed.defect)
        throw ValidationError("mono/epi scan needs a defect form (affine input)",
                              alg->signature());

    SubcatSnapshot snap = enumerate_indecomposables(alg, len_cap, caps);
    std::vector<Module> pres, regs;
    for (const Module& y : snap.members) {
        long long d = *ed.defect_of(y.dims);
        if (d == -1) pres.push_back(y);
        if (d == 0) regs.push_back(y);
    }

    MonoEpiReport rep;
    for (const Module& r : regs) {
        std::vector<Submodule> cands;
        for (const Submodule& u : enumerate_submodules(r, caps)) {
            if (u.length() == 0 || u.length() == r.length()) continue;
            Module s = submodule_module(r, u);
            if (*ed.defect_of(s.dims) != 0) continue;
            if (!is_indecomposable(s, caps)) continue;
            cands.push_back(u);
        }
        std::vector<Submodule> maximal;
        for (const Submodule& u : cands) {
            bool top = true;
            for (const Submodule& w : cands)
                if (!(w == u) && submodule_contains(w, u)) top = false;
            if (top) maximal.push_back(u);
        }
        if (maximal.size() > 1) {
            rep.notes.push_back("skipped " + r.dims_string() +
                                ": maximal proper defect 0 submodule is not unique");
            continue;
        }
        Submodule rad = maximal.empty() ? zero_submodule(r) : maximal[0];

        for (const Module& p : pres) {
            auto basis = hom_basis(p, r);
            std::uint64_t total = pow_capped(static_cast<std::uint64_t>(alg->modulus()),
                                             basis.size(), caps.hom_scan_budget);
            if (total > caps.hom_scan_budget) {
                rep.notes.push_back("skipped " + p.dims_string() + " -> " + r.dims_string() +
                                    ": Hom space too large to scan");
                continue;
            }
            std::vector<int> coeffs(basis.size(), 0);
            do {
                Morphism f = combine(p, r, basis, coeffs);
                if (submodule_contains(rad, image_of(p, r, f))) continue;
                ++rep.maps_checked;
                if (!is_injective_morphism(f) && !is_surjective_morphism(r, f)) {
                    rep.ok = false;
                    rep.violation = "map " + p.dims_string() + " -> " + r.dims_string() +
                                    " with image outside the regular radical is neither "
                                    "injective nor surjective";
                    return rep;
                }
            } while (next_coeffs(coeffs, alg->modulus()));
        }
    }
    return rep;
}

JointSurjectionWitness joint_surjection_search(AlgebraPtr alg, const Module& pre, int len_cap,
                                               const Caps& caps) {
    EulerData ed = euler_data(alg);
    if (!ed.defect)
        throw ValidationError("surjection search needs a defect form (affine input)",
                              alg->signature());
    require_valid(pre);
    long long neg = *ed.defect_of(pre.dims);
    if (neg >= 0)
        throw ValidationError("surjection search needs a negative defect input",
                              pre.dims_string());
    const int d = static_cast<int>(-neg);

    JointSurjectionWitness w;
    if (d == 1) {
        w.found = true;
        w.parts = {pre};
        w.maps = {identity_morphism(pre)};
        w.note = "defect -1: the identity splits it";
        return w;
    }

    SubcatSnapshot snap =
        enumerate_indecomposables(alg, std::min(len_cap, pre.length()), caps);
    std::vector<Module> cands;
    for (const Module& y : snap.members)
        if (*ed.defect_of(y.dims) == -1) cands.push_back(y);

    std::vector<std::vector<Morphism>> epis(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c) {
        auto basis = hom_basis(pre, cands[c]);
        std::uint64_t total = pow_capped(static_cast<std::uint64_t>(alg->modulus()),
                                         basis.size(), caps.hom_scan_budget);
        if (total > caps.hom_scan_budget) {
            w.note = "candidate " + cands[c].dims_string() + " skipped: Hom space too large";
            continue;
        }
        std::vector<int> coeffs(basis.size(), 0);
        do {
            Morphism f = combine(pre, cands[c], basis, coeffs);
            if (is_surjective_morphism(cands[c], f)) epis[c].push_back(f);
        } while (next_coeffs(coeffs, alg->modulus()));
    }

    std::vector<int> pick(d, 0);
    std::vector<Morphism> maps(d);
    std::function<bool(int, int, const Submodule&)> dfs = [&](int slot, int from,
                                                              const Submodule& ker) -> bool {
        if (ker.length() == 0 && slot > 0) {
            // Jointly injective already; fill the remaining slots with any
            // available surjection.
            for (int s = slot; s < d; ++s) {
                int c = pick[slot - 1];
                if (epis[c].empty()) return false;
                pick[s] = c;
                maps[s] = epis[c].front();
            }
            return true;
        }
        if (slot == d) return ker.length() == 0;
        for (std::size_t c = from; c < cands.size(); ++c) {
            for (const Morphism& f : epis[c]) {
                Submodule nk = submodule_intersection(pre, ker, kernel_of(pre, cands[c], f));
                if (nk.length() == static_cast<int>(ker.length())) continue;
                pick[slot] = static_cast<int>(c);
                maps[slot] = f;
                if (dfs(slot + 1, static_cast<int>(c), nk)) return true;
            }
        }
        return false;
    };

    if (dfs(0, 0, full_submodule(pre))) {
        w.found = true;
        for (int s = 0; s < d; ++s) w.parts.push_back(cands[pick[s]]);
        w.maps = maps;
        if (w.note.empty()) w.note = "witness found by bounded search";
    } else if (w.note.empty()) {
        w.note = "no witness among enumerated defect -1 members up to length " +
                 std::to_string(std::min(len_cap, pre.length()));
    }
    return w;
}

}  // namespace qmod
