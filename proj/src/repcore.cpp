#include "qmod/repcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qmod {

int Module::length() const { return std::accumulate(dims.begin(), dims.end(), 0); }

std::string Module::dims_string() const {
    std::string s = "(";
    for (size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + ")";
}

Module make_module(AlgebraPtr alg, std::vector<int> dims, std::vector<FFMatrix> action) {
    Module x{std::move(alg), std::move(dims), std::move(action)};
    require_valid(x);
    return x;
}

Module zero_module(AlgebraPtr alg) {
    Module x;
    x.dims.assign(alg->num_vertices(), 0);
    for (int a = 0; a < alg->num_arrows(); ++a) x.action.emplace_back(0, 0, alg->modulus());
    x.alg = std::move(alg);
    return x;
}

Module simple_module(AlgebraPtr alg, int v) {
    const Quiver& q = alg->quiver();
    Module x;
    x.dims.assign(alg->num_vertices(), 0);
    x.dims[v] = 1;
    for (const auto& ar : q.arrows)
        x.action.emplace_back(ar.tgt == v ? 1 : 0, ar.src == v ? 1 : 0, alg->modulus());
    x.alg = std::move(alg);
    return x;
}

Module projective_module(AlgebraPtr alg, int v) {
    Module x;
    for (int w = 0; w < alg->num_vertices(); ++w)
        x.dims.push_back(static_cast<int>(alg->pair_basis(v, w).size()));
    for (int a = 0; a < alg->num_arrows(); ++a) x.action.push_back(alg->projective_arrow_matrix(v, a));
    x.alg = std::move(alg);
    return x;
}

Module injective_module(AlgebraPtr alg, int v) {
    Module x;
    for (int w = 0; w < alg->num_vertices(); ++w)
        x.dims.push_back(static_cast<int>(alg->pair_basis(w, v).size()));
    for (int a = 0; a < alg->num_arrows(); ++a)
        x.action.push_back(alg->injective_precompose_matrix(v, a).transpose());
    x.alg = std::move(alg);
    return x;
}

Module direct_sum(AlgebraPtr alg, const std::vector<Module>& xs) {
    for (const auto& x : xs)
        if (!same_algebra(*x.alg, *alg)) throw ValidationError("direct sum over mixed algebras", "");
    Module s;
    s.dims.assign(alg->num_vertices(), 0);
    for (const auto& x : xs)
        for (int v = 0; v < alg->num_vertices(); ++v) s.dims[v] += x.dims[v];
    const Quiver& q = alg->quiver();
    for (int a = 0; a < alg->num_arrows(); ++a) {
        FFMatrix m(s.dims[q.arrows[a].tgt], s.dims[q.arrows[a].src], alg->modulus());
        int ro = 0, co = 0;
        for (const auto& x : xs) {
            const FFMatrix& b = x.action[a];
            for (int i = 0; i < b.rows; ++i)
                for (int j = 0; j < b.cols; ++j) m.at(ro + i, co + j) = b.at(i, j);
            ro += x.dims[q.arrows[a].tgt];
            co += x.dims[q.arrows[a].src];
        }
        s.action.push_back(std::move(m));
    }
    s.alg = std::move(alg);
    return s;
}

FFMatrix path_action(const Module& x, int src, const std::vector<int>& word) {
    const Quiver& q = x.alg->quiver();
    FFMatrix m = FFMatrix::identity(x.dims[src], x.alg->modulus());
    int at = src;
    for (int a : word) {
        if (q.arrows[a].src != at) throw std::logic_error("path_action: word not composable");
        m = x.action[a].mul(m);
        at = q.arrows[a].tgt;
    }
    return m;
}

CheckResult check_module(const Module& x) {
    const Quiver& q = x.alg->quiver();
    if (static_cast<int>(x.dims.size()) != x.alg->num_vertices())
        return {false, "dimension vector size mismatch"};
    for (int d : x.dims)
        if (d < 0) return {false, "negative dimension"};
    if (static_cast<int>(x.action.size()) != x.alg->num_arrows())
        return {false, "arrow matrix count mismatch"};
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        const FFMatrix& m = x.action[a];
        if (m.p != x.alg->modulus()) return {false, "matrix modulus mismatch at arrow " + q.arrows[a].label};
        if (m.rows != x.dims[q.arrows[a].tgt] || m.cols != x.dims[q.arrows[a].src])
            return {false, "matrix shape mismatch at arrow " + q.arrows[a].label};
    }
    for (size_t r = 0; r < x.alg->relations().size(); ++r) {
        const Relation& rel = x.alg->relations()[r];
        FFMatrix sum(x.dims[rel.tgt], x.dims[rel.src], x.alg->modulus());
        for (const auto& t : rel.terms)
            sum = sum.add(path_action(x, rel.src, t.arrows).scaled(t.coeff));
        if (!sum.is_zero()) {
            std::ostringstream os;
            os << "relation " << r + 1 << " (";
            for (size_t t = 0; t < rel.terms.size(); ++t) {
                if (t) os << " + ";
                os << rel.terms[t].coeff << "*";
                for (size_t k = 0; k < rel.terms[t].arrows.size(); ++k)
                    os << (k ? "*" : "") << q.arrows[rel.terms[t].arrows[k]].label;
            }
            os << ") does not act by zero";
            return {false, os.str()};
        }
    }
    return {};
}

void require_valid(const Module& x) {
    CheckResult r = check_module(x);
    if (!r.ok) throw ValidationError("invalid module", r.violation);
}

bool is_semisimple(const Module& x) {
    for (const auto& m : x.action)
        if (!m.is_zero()) return false;
    return true;
}

Morphism identity_morphism(const Module& x) {
    Morphism f;
    for (int d : x.dims) f.maps.push_back(FFMatrix::identity(d, x.alg->modulus()));
    return f;
}

Morphism zero_morphism(const Module& x, const Module& y) {
    Morphism f;
    for (size_t v = 0; v < x.dims.size(); ++v)
        f.maps.emplace_back(y.dims[v], x.dims[v], x.alg->modulus());
    return f;
}

bool is_morphism(const Module& x, const Module& y, const Morphism& f) {
    if (f.maps.size() != x.dims.size()) return false;
    const Quiver& q = x.alg->quiver();
    for (size_t v = 0; v < x.dims.size(); ++v)
        if (f.maps[v].rows != y.dims[v] || f.maps[v].cols != x.dims[v]) return false;
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        int i = q.arrows[a].src, j = q.arrows[a].tgt;
        if (!(f.maps[j].mul(x.action[a]) == y.action[a].mul(f.maps[i]))) return false;
    }
    return true;
}

Morphism compose(const Module& x, const Module&, const Module&, const Morphism& f,
                 const Morphism& g) {
    Morphism h;
    for (size_t v = 0; v < x.dims.size(); ++v) h.maps.push_back(g.maps[v].mul(f.maps[v]));
    return h;
}

bool is_injective_morphism(const Morphism& f) {
    for (const auto& m : f.maps)
        if (m.rank() != m.cols) return false;
    return true;
}

bool is_surjective_morphism(const Module& y, const Morphism& f) {
    for (size_t v = 0; v < f.maps.size(); ++v)
        if (f.maps[v].rank() != y.dims[v]) return false;
    return true;
}

bool is_zero_morphism(const Morphism& f) {
    for (const auto& m : f.maps)
        if (!m.is_zero()) return false;
    return true;
}

std::vector<Morphism> hom_basis(const Module& x, const Module& y) {
    if (!same_algebra(*x.alg, *y.alg)) throw ValidationError("hom over mixed algebras", "");
    const Quiver& q = x.alg->quiver();
    int nv = x.alg->num_vertices();
    int p = x.alg->modulus();
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + y.dims[v] * x.dims[v];
    int unknowns = off[nv];
    int nrows = 0;
    for (int a = 0; a < x.alg->num_arrows(); ++a)
        nrows += y.dims[q.arrows[a].tgt] * x.dims[q.arrows[a].src];
    FFMatrix sys(nrows, unknowns, p);
    int row = 0;
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        int i = q.arrows[a].src, j = q.arrows[a].tgt;
        const FFMatrix& Xa = x.action[a];
        const FFMatrix& Ya = y.action[a];
        for (int r = 0; r < y.dims[j]; ++r)
            for (int c = 0; c < x.dims[i]; ++c) {
                for (int k = 0; k < x.dims[j]; ++k) {
                    int idx = off[j] + r * x.dims[j] + k;
                    sys.at(row, idx) = static_cast<uint8_t>((sys.at(row, idx) + Xa.at(k, c)) % p);
                }
                for (int k = 0; k < y.dims[i]; ++k) {
                    int idx = off[i] + k * x.dims[i] + c;
                    int v = sys.at(row, idx) - Ya.at(r, k);
                    sys.at(row, idx) = static_cast<uint8_t>((v % p + p) % p);
                }
                ++row;
            }
    }
    std::vector<Morphism> basis;
    for (const Vec& k : sys.kernel_basis()) {
        Morphism f;
        for (int v = 0; v < nv; ++v) {
            FFMatrix m(y.dims[v], x.dims[v], p);
            for (int r = 0; r < y.dims[v]; ++r)
                for (int c = 0; c < x.dims[v]; ++c) m.at(r, c) = k[off[v] + r * x.dims[v] + c];
            f.maps.push_back(std::move(m));
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

int hom_dim(const Module& x, const Module& y) { return static_cast<int>(hom_basis(x, y).size()); }

Morphism combine(const Module& x, const Module& y, const std::vector<Morphism>& basis,
                 const std::vector<int>& coeffs) {
    Morphism f = zero_morphism(x, y);
    for (size_t i = 0; i < basis.size(); ++i) {
        if (coeffs[i] % x.alg->modulus() == 0) continue;
        for (size_t v = 0; v < f.maps.size(); ++v)
            f.maps[v] = f.maps[v].add(basis[i].maps[v].scaled(coeffs[i]));
    }
    return f;
}

std::vector<int> Submodule::dims() const {
    std::vector<int> d;
    for (const auto& s : spaces) d.push_back(s.dim());
    return d;
}

int Submodule::length() const {
    int t = 0;
    for (const auto& s : spaces) t += s.dim();
    return t;
}

std::string Submodule::bytes() const {
    std::string s;
    for (const auto& sp : spaces) s += sp.bytes();
    return s;
}

Submodule zero_submodule(const Module& x) {
    Submodule u;
    for (int d : x.dims) u.spaces.push_back(Subspace::zero(d, x.alg->modulus()));
    return u;
}

Submodule full_submodule(const Module& x) {
    Submodule u;
    for (int d : x.dims) u.spaces.push_back(Subspace::full(d, x.alg->modulus()));
    return u;
}

bool is_stable(const Module& x, const Submodule& u) {
    const Quiver& q = x.alg->quiver();
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        const Subspace& src = u.spaces[q.arrows[a].src];
        if (src.dim() == 0) continue;
        Subspace img = Subspace::from_columns(x.action[a].mul(src.basis));
        if (!u.spaces[q.arrows[a].tgt].contains(img)) return false;
    }
    return true;
}

bool submodule_contains(const Submodule& big, const Submodule& small) {
    for (size_t v = 0; v < big.spaces.size(); ++v)
        if (!big.spaces[v].contains(small.spaces[v])) return false;
    return true;
}

Submodule submodule_sum(const Module&, const Submodule& a, const Submodule& b) {
    Submodule u;
    for (size_t v = 0; v < a.spaces.size(); ++v) u.spaces.push_back(a.spaces[v].join(b.spaces[v]));
    return u;
}

Submodule submodule_intersection(const Module&, const Submodule& a, const Submodule& b) {
    Submodule u;
    for (size_t v = 0; v < a.spaces.size(); ++v)
        u.spaces.push_back(a.spaces[v].intersect(b.spaces[v]));
    return u;
}

Submodule kernel_of(const Module& x, const Module& y, const Morphism& f) {
    Submodule u;
    for (size_t v = 0; v < x.dims.size(); ++v) {
        std::vector<Vec> ker = f.maps[v].kernel_basis();
        u.spaces.push_back(Subspace::from_vectors(ker, x.dims[v], x.alg->modulus()));
    }
    if (!is_stable(x, u)) throw std::logic_error("kernel of a morphism must be stable");
    (void)y;
    return u;
}

Submodule image_of(const Module& x, const Module& y, const Morphism& f) {
    Submodule u;
    for (size_t v = 0; v < y.dims.size(); ++v) u.spaces.push_back(Subspace::from_columns(f.maps[v]));
    if (!is_stable(y, u)) throw std::logic_error("image of a morphism must be stable");
    (void)x;
    return u;
}

Submodule submodule_from_generators(const Module& x,
                                    const std::vector<std::pair<int, Vec>>& gens) {
    int p = x.alg->modulus();
    std::vector<std::vector<Vec>> vecs(x.dims.size());
    for (const auto& [v, vec] : gens) {
        if (v < 0 || v >= static_cast<int>(x.dims.size()) ||
            static_cast<int>(vec.size()) != x.dims[v])
            throw ValidationError("generator outside the stated component", "");
        vecs[v].push_back(vec);
    }
    Submodule u;
    for (size_t v = 0; v < x.dims.size(); ++v)
        u.spaces.push_back(Subspace::from_vectors(vecs[v], x.dims[v], p));
    const Quiver& q = x.alg->quiver();
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < x.alg->num_arrows(); ++a) {
            const Subspace& src = u.spaces[q.arrows[a].src];
            if (src.dim() == 0) continue;
            Subspace img = Subspace::from_columns(x.action[a].mul(src.basis));
            Subspace joined = u.spaces[q.arrows[a].tgt].join(img);
            if (joined.dim() != u.spaces[q.arrows[a].tgt].dim()) {
                u.spaces[q.arrows[a].tgt] = joined;
                grew = true;
            }
        }
    }
    return u;
}

Submodule radical_submodule(const Module& x) {
    const Quiver& q = x.alg->quiver();
    Submodule u = zero_submodule(x);
    for (int a = 0; a < x.alg->num_arrows(); ++a)
        u.spaces[q.arrows[a].tgt] =
            u.spaces[q.arrows[a].tgt].join(Subspace::from_columns(x.action[a]));
    return u;
}

Submodule socle_submodule(const Module& x) {
    const Quiver& q = x.alg->quiver();
    Submodule u = full_submodule(x);
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        int v = q.arrows[a].src;
        Subspace ker = Subspace::from_vectors(x.action[a].kernel_basis(), x.dims[v],
                                              x.alg->modulus());
        u.spaces[v] = u.spaces[v].intersect(ker);
    }
    if (!is_stable(x, u)) throw std::logic_error("socle must be stable");
    return u;
}

std::vector<int> top_dims(const Module& x) {
    Submodule r = radical_submodule(x);
    std::vector<int> t;
    for (size_t v = 0; v < x.dims.size(); ++v) t.push_back(x.dims[v] - r.spaces[v].dim());
    return t;
}

Module submodule_module(const Module& x, const Submodule& u, Morphism* incl) {
    if (!is_stable(x, u)) throw ValidationError("subspace family is not arrow-stable", "");
    const Quiver& q = x.alg->quiver();
    Module m;
    m.alg = x.alg;
    for (const auto& s : u.spaces) m.dims.push_back(s.dim());
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        const Subspace& src = u.spaces[q.arrows[a].src];
        const Subspace& tgt = u.spaces[q.arrows[a].tgt];
        if (src.dim() == 0) {
            m.action.emplace_back(tgt.dim(), 0, x.alg->modulus());
            continue;
        }
        m.action.push_back(coords_in_basis(tgt.basis, x.action[a].mul(src.basis)));
    }
    if (incl) {
        incl->maps.clear();
        for (const auto& s : u.spaces) incl->maps.push_back(s.basis);
    }
    return m;
}

Module quotient_module(const Module& x, const Submodule& u, Morphism* proj) {
    if (!is_stable(x, u)) throw ValidationError("subspace family is not arrow-stable", "");
    int p = x.alg->modulus();
    const Quiver& q = x.alg->quiver();
    std::vector<FFMatrix> projs;   // per vertex: quotient coords of ambient vectors
    std::vector<FFMatrix> embeds;  // per vertex: chosen complement vectors
    Module m;
    m.alg = x.alg;
    for (size_t v = 0; v < x.dims.size(); ++v) {
        std::vector<int> comp = complement_rows(u.spaces[v].basis);
        FFMatrix emb(x.dims[v], static_cast<int>(comp.size()), p);
        for (size_t j = 0; j < comp.size(); ++j) emb.at(comp[j], static_cast<int>(j)) = 1;
        FFMatrix full = u.spaces[v].basis.hstack(emb);
        FFMatrix inv = full.inverse();
        FFMatrix pr(static_cast<int>(comp.size()), x.dims[v], p);
        for (int i = 0; i < pr.rows; ++i)
            for (int j = 0; j < pr.cols; ++j) pr.at(i, j) = inv.at(u.spaces[v].dim() + i, j);
        m.dims.push_back(static_cast<int>(comp.size()));
        projs.push_back(std::move(pr));
        embeds.push_back(std::move(emb));
    }
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        int i = q.arrows[a].src, j = q.arrows[a].tgt;
        m.action.push_back(projs[j].mul(x.action[a]).mul(embeds[i]));
    }
    if (proj) proj->maps = projs;
    return m;
}

namespace {

uint64_t pow_checked(uint64_t base, int exp, uint64_t limit) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

// All vectors of F_p^d except zero, in base-p counter order.
std::vector<Vec> nonzero_vectors(int d, int p) {
    std::vector<Vec> out;
    Vec v(d, 0);
    while (true) {
        int i = 0;
        while (i < d && v[i] == p - 1) v[i++] = 0;
        if (i == d) break;
        v[i]++;
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<Submodule> enumerate_submodules(const Module& x, const Caps& caps) {
    int p = x.alg->modulus();
    uint64_t total = pow_checked(p, x.length(), caps.submodule_vector_budget);
    if (total > caps.submodule_vector_budget)
        throw CapExceeded("submodule enumeration rejected: module too long",
                          std::to_string(p) + "^" + std::to_string(x.length()) + " vectors");

    std::map<std::string, Submodule> cyclics;
    for (size_t v = 0; v < x.dims.size(); ++v) {
        for (const Vec& vec : nonzero_vectors(x.dims[v], p)) {
            Submodule c = submodule_from_generators(x, {{static_cast<int>(v), vec}});
            cyclics.emplace(c.bytes(), c);
        }
    }
    std::vector<Submodule> gens;
    for (auto& [k, c] : cyclics) gens.push_back(c);

    std::map<std::string, Submodule> all;
    Submodule z = zero_submodule(x);
    all.emplace(z.bytes(), z);
    std::vector<Submodule> frontier{z};
    while (!frontier.empty()) {
        std::vector<Submodule> next;
        for (const Submodule& s : frontier) {
            for (const Submodule& c : gens) {
                if (submodule_contains(s, c)) continue;
                Submodule t = submodule_sum(x, s, c);
                std::string key = t.bytes();
                if (all.emplace(key, t).second) {
                    if (all.size() > caps.submodule_count_budget)
                        throw CapExceeded("submodule count exceeds budget",
                                          "more than " + std::to_string(caps.submodule_count_budget));
                    next.push_back(std::move(t));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Submodule> out;
    for (auto& [k, s] : all) out.push_back(std::move(s));
    std::stable_sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.bytes() < b.bytes();
    });
    return out;
}

std::vector<Submodule> maximal_submodules(const Module& x) {
    int p = x.alg->modulus();
    Submodule rad = radical_submodule(x);
    std::vector<Submodule> out;
    for (size_t v = 0; v < x.dims.size(); ++v) {
        int d = x.dims[v];
        int t = d - rad.spaces[v].dim();
        if (t == 0) continue;
        std::vector<int> comp = complement_rows(rad.spaces[v].basis);
        FFMatrix emb(d, t, p);
        for (int j = 0; j < t; ++j) emb.at(comp[j], j) = 1;
        FFMatrix full = rad.spaces[v].basis.hstack(emb);
        FFMatrix inv = full.inverse();
        FFMatrix pr(t, d, p);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < d; ++j) pr.at(i, j) = inv.at(rad.spaces[v].dim() + i, j);
        // Hyperplanes of the top at v: kernels of nonzero rows, first nonzero
        // coefficient normalized to 1.
        for (const Vec& row : nonzero_vectors(t, p)) {
            int lead = 0;
            while (row[lead] == 0) ++lead;
            if (row[lead] != 1) continue;
            FFMatrix rowm(1, t, p);
            for (int j = 0; j < t; ++j) rowm.at(0, j) = row[j];
            FFMatrix form = rowm.mul(pr);  // 1 x d, kernel = preimage of hyperplane
            Submodule u = full_submodule(x);
            u.spaces[v] = Subspace::from_vectors(form.kernel_basis(), d, p);
            out.push_back(std::move(u));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
        return a.bytes() < b.bytes();
    });
    return out;
}

bool is_cogenerated(const Module& x, const Module& m) {
    if (x.is_zero()) return true;
    std::vector<Morphism> homs = hom_basis(x, m);
    for (size_t v = 0; v < x.dims.size(); ++v) {
        if (x.dims[v] == 0) continue;
        FFMatrix stacked(0, x.dims[v], x.alg->modulus());
        for (const auto& f : homs) stacked = stacked.vstack(f.maps[v]);
        if (stacked.rank() < x.dims[v]) return false;
    }
    return true;
}

int jh_multiplicity(const Module& x, int v) {
    if (v < 0 || v >= static_cast<int>(x.dims.size()))
        throw ValidationError("vertex out of range", std::to_string(v));
    return x.dims[v];
}

namespace {

Morphism morphism_power(const Module& x, Morphism f, int n) {
    Morphism acc = identity_morphism(x);
    while (n > 0) {
        if (n & 1) acc = compose(x, x, x, acc, f);
        f = compose(x, x, x, f, f);
        n >>= 1;
    }
    return acc;
}

bool morphism_invertible(const Module& x, const Morphism& f) {
    for (size_t v = 0; v < x.dims.size(); ++v)
        if (f.maps[v].rank() != x.dims[v]) return false;
    return true;
}

// A Fitting splitting (im g, ker g) from one endomorphism, if it gives one.
std::optional<std::pair<Submodule, Submodule>> fitting_split(const Module& x, const Morphism& f,
                                                             int n) {
    Morphism g = morphism_power(x, f, n);
    if (is_zero_morphism(g) || morphism_invertible(x, g)) return std::nullopt;
    return std::make_pair(image_of(x, x, g), kernel_of(x, x, g));
}

// Either a splitting of x, or nullopt with the guarantee that none exists.
// Every endomorphism of an indecomposable module is nilpotent or invertible,
// and conversely a module whose endomorphisms all are is indecomposable, so
// the exhaustive fallback scan is an exact test.
std::optional<std::pair<Submodule, Submodule>> find_splitting(const Module& x, const Caps& caps) {
    std::vector<Morphism> ends = hom_basis(x, x);
    int n = 1;
    while (n < x.length()) n <<= 1;
    for (const auto& f : ends) {
        auto s = fitting_split(x, f, n);
        if (s) return s;
    }
    int d = static_cast<int>(ends.size());
    int p = x.alg->modulus();
    if (d <= 1) return std::nullopt;
    uint64_t total = pow_checked(p, d, caps.end_scan_budget);
    if (total > caps.end_scan_budget)
        throw CapExceeded("endomorphism scan rejected",
                          std::to_string(p) + "^" + std::to_string(d) + " endomorphisms");
    std::vector<int> coeffs(d, 0);
    for (uint64_t c = 1; c < total; ++c) {
        int i = 0;
        while (coeffs[i] == p - 1) coeffs[i++] = 0;
        coeffs[i]++;
        auto s = fitting_split(x, combine(x, x, ends, coeffs), n);
        if (s) return s;
    }
    return std::nullopt;
}

}  // namespace

bool is_indecomposable(const Module& x, const Caps& caps) {
    if (x.is_zero()) throw ValidationError("indecomposability of the zero module is undefined", "");
    return !find_splitting(x, caps).has_value();
}

std::vector<Module> decompose(const Module& x, const Caps& caps) {
    std::vector<Module> out;
    if (x.is_zero()) return out;
    auto split = find_splitting(x, caps);
    if (!split) {
        out.push_back(x);
        return out;
    }
    for (const Module& part : {submodule_module(x, split->first), submodule_module(x, split->second)})
        for (Module& s : decompose(part, caps)) out.push_back(std::move(s));
    std::stable_sort(out.begin(), out.end(), [](const Module& a, const Module& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        if (a.dims != b.dims) return a.dims < b.dims;
        std::string ka, kb;
        for (const auto& m : a.action) ka += m.bytes();
        for (const auto& m : b.action) kb += m.bytes();
        return ka < kb;
    });
    return out;
}

bool iso_test(const Module& x, const Module& y, const Caps& caps) {
    if (!same_algebra(*x.alg, *y.alg)) return false;
    if (x.dims != y.dims) return false;
    if (x.is_zero()) return true;
    bool xi = is_indecomposable(x, caps);
    bool yi = is_indecomposable(y, caps);
    if (xi != yi) return false;
    if (xi) {
        // Between indecomposables the non-invertible maps form a subspace
        // (the radical image), so a basis without an iso spans no iso.
        for (const auto& f : hom_basis(x, y))
            if (morphism_invertible(x, f)) return true;
        return false;
    }
    std::vector<Module> xs = decompose(x, caps);
    std::vector<Module> ys = decompose(y, caps);
    if (xs.size() != ys.size()) return false;
    std::vector<bool> used(ys.size(), false);
    for (const Module& a : xs) {
        bool matched = false;
        for (size_t j = 0; j < ys.size(); ++j) {
            if (used[j] || ys[j].dims != a.dims) continue;
            if (iso_test(a, ys[j], caps)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

std::string iso_fingerprint(const Module& x) {
    std::ostringstream os;
    os << "d:";
    for (int d : x.dims) os << d << ",";
    os << ";ar:";
    for (const auto& m : x.action) os << m.rank() << ",";
    os << ";rad:";
    Submodule layer = radical_submodule(x);
    while (layer.length() > 0) {
        os << layer.length() << ",";
        Module sub = submodule_module(x, layer);
        Submodule deeper = radical_submodule(sub);
        // Map back into ambient coordinates.
        Submodule next;
        for (size_t v = 0; v < x.dims.size(); ++v) {
            if (deeper.spaces[v].dim() == 0) {
                next.spaces.push_back(Subspace::zero(x.dims[v], x.alg->modulus()));
            } else {
                next.spaces.push_back(
                    Subspace::from_columns(layer.spaces[v].basis.mul(deeper.spaces[v].basis)));
            }
        }
        layer = next;
    }
    os << ";soc:";
    for (const auto& s : socle_submodule(x).spaces) os << s.dim() << ",";
    os << ";end:" << hom_dim(x, x);
    return os.str();
}

std::optional<int> IsoRegistry::find(const Module& x) const {
    auto it = buckets_.find(iso_fingerprint(x));
    if (it == buckets_.end()) return std::nullopt;
    for (int id : it->second)
        if (iso_test(x, reps_[id], caps_)) return id;
    return std::nullopt;
}

int IsoRegistry::insert(const Module& x) {
    std::string fp = iso_fingerprint(x);
    auto& bucket = buckets_[fp];
    for (int id : bucket)
        if (iso_test(x, reps_[id], caps_)) return id;
    int id = static_cast<int>(reps_.size());
    reps_.push_back(x);
    bucket.push_back(id);
    return id;
}

Module transport_module(const Module& x, AlgebraPtr target, const std::vector<int>& vertex_map,
                        const std::vector<int>& arrow_map) {
    Module m;
    for (int v = 0; v < target->num_vertices(); ++v) m.dims.push_back(x.dims[vertex_map[v]]);
    for (int a = 0; a < target->num_arrows(); ++a) m.action.push_back(x.action[arrow_map[a]]);
    m.alg = std::move(target);
    require_valid(m);
    return m;
}

Module dual_module(const Module& x, AlgebraPtr target) {
    if (!same_algebra(*target, *x.alg->opposite()))
        throw ValidationError("dual target is not the opposite algebra", "");
    Module m;
    m.dims = x.dims;
    for (const auto& a : x.action) m.action.push_back(a.transpose());
    m.alg = std::move(target);
    require_valid(m);
    return m;
}

void validate_covering(const CoveringSpec& spec) {
    const Quiver& cq = spec.cover->quiver();
    const Quiver& bq = spec.base->quiver();
    if (spec.cover->modulus() != spec.base->modulus())
        throw ValidationError("covering and base moduli differ", "");
    if (static_cast<int>(spec.vertex_fiber.size()) != spec.cover->num_vertices() ||
        static_cast<int>(spec.arrow_fiber.size()) != spec.cover->num_arrows())
        throw ValidationError("covering maps have wrong size", "");
    for (int v : spec.vertex_fiber)
        if (v < 0 || v >= spec.base->num_vertices())
            throw ValidationError("covering vertex map out of range", "");
    for (int a = 0; a < spec.cover->num_arrows(); ++a) {
        int b = spec.arrow_fiber[a];
        if (b < 0 || b >= spec.base->num_arrows())
            throw ValidationError("covering arrow map out of range", "");
        if (spec.vertex_fiber[cq.arrows[a].src] != bq.arrows[b].src ||
            spec.vertex_fiber[cq.arrows[a].tgt] != bq.arrows[b].tgt)
            throw ValidationError("covering arrow map incompatible with vertex map",
                                  cq.arrows[a].label);
    }
}

Module push_down(const CoveringSpec& spec, const Module& xhat) {
    validate_covering(spec);
    if (!same_algebra(*xhat.alg, *spec.cover))
        throw ValidationError("module does not live on the covering quiver", "");
    const Quiver& cq = spec.cover->quiver();
    const Quiver& bq = spec.base->quiver();
    int p = spec.base->modulus();
    std::vector<int> offset(spec.cover->num_vertices(), 0);
    std::vector<int> bdims(spec.base->num_vertices(), 0);
    for (int v = 0; v < spec.cover->num_vertices(); ++v) {
        offset[v] = bdims[spec.vertex_fiber[v]];
        bdims[spec.vertex_fiber[v]] += xhat.dims[v];
    }
    Module m;
    m.dims = bdims;
    for (int b = 0; b < spec.base->num_arrows(); ++b) {
        FFMatrix mat(bdims[bq.arrows[b].tgt], bdims[bq.arrows[b].src], p);
        for (int a = 0; a < spec.cover->num_arrows(); ++a) {
            if (spec.arrow_fiber[a] != b) continue;
            const FFMatrix& blk = xhat.action[a];
            int ro = offset[cq.arrows[a].tgt], co = offset[cq.arrows[a].src];
            for (int i = 0; i < blk.rows; ++i)
                for (int j = 0; j < blk.cols; ++j) mat.at(ro + i, co + j) = blk.at(i, j);
        }
        m.action.push_back(std::move(mat));
    }
    m.alg = spec.base;
    require_valid(m);
    return m;
}

}  // namespace qmod
