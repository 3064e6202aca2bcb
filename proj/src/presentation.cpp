#include "qmod/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qmod {

int Quiver::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int Quiver::arrow_index(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<int>(i);
    return -1;
}

void Quiver::validate() const {
    if (vertices.empty()) throw ValidationError("quiver has no vertices", "");
    std::set<std::string> names;
    for (const auto& v : vertices) {
        if (v.empty()) throw ValidationError("empty vertex name", "");
        if (!names.insert(v).second) throw ValidationError("duplicate vertex name", v);
    }
    std::set<std::string> labels;
    int n = static_cast<int>(vertices.size());
    for (const auto& a : arrows) {
        if (a.label.empty()) throw ValidationError("empty arrow label", "");
        if (!labels.insert(a.label).second) throw ValidationError("duplicate arrow label", a.label);
        if (a.src < 0 || a.src >= n || a.tgt < 0 || a.tgt >= n)
            throw ValidationError("arrow endpoint out of range", a.label);
    }
}

namespace {

std::string path_key(int src, const std::vector<int>& word) {
    std::string k = std::to_string(src);
    for (int a : word) {
        k.push_back(':');
        k += std::to_string(a);
    }
    return k;
}

// Longest path length in an acyclic quiver; throws with a cycle witness
// when one exists.
int longest_path_or_throw(const Quiver& q) {
    int n = static_cast<int>(q.vertices.size());
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& a : q.arrows) {
        out[a.src].push_back(a.tgt);
        indeg[a.tgt]++;
    }
    std::vector<int> order;
    std::vector<int> deg = indeg;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 0) order.push_back(v);
    for (size_t i = 0; i < order.size(); ++i)
        for (int w : out[order[i]])
            if (--deg[w] == 0) order.push_back(w);
    if (static_cast<int>(order.size()) != n) {
        std::vector<int> state(n, 0);
        std::vector<int> stack;
        std::string witness;
        auto dfs = [&](auto&& self, int v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (int w : out[v]) {
                if (state[w] == 1) {
                    std::ostringstream os;
                    for (size_t i = 0; i < stack.size(); ++i) {
                        if (stack[i] == w) {
                            for (size_t j = i; j < stack.size(); ++j)
                                os << q.vertices[stack[j]] << " -> ";
                            os << q.vertices[w];
                            break;
                        }
                    }
                    witness = os.str();
                    return true;
                }
                if (state[w] == 0 && self(self, w)) return true;
            }
            stack.pop_back();
            state[v] = 2;
            return false;
        };
        for (int v = 0; v < n && witness.empty(); ++v)
            if (state[v] == 0) dfs(dfs, v);
        throw ValidationError("quiver without relations must be acyclic", witness);
    }
    std::vector<int> best(n, 0);
    int top = 0;
    for (int v : order)
        for (int w : out[v]) {
            best[w] = std::max(best[w], best[v] + 1);
            top = std::max(top, best[w]);
        }
    return top;
}

}  // namespace

std::shared_ptr<const Algebra> Algebra::make(Quiver q, std::vector<Relation> rels, int p,
                                             int nilpotency, const Caps& caps) {
    if (!prime_supported(p)) throw ValidationError("unsupported coefficient prime", std::to_string(p));
    q.validate();
    int nv = static_cast<int>(q.vertices.size());
    for (auto& r : rels) {
        if (r.src < 0 || r.src >= nv || r.tgt < 0 || r.tgt >= nv)
            throw ValidationError("relation endpoints out of range", "");
        std::map<std::vector<int>, int> acc;
        for (const auto& t : r.terms) {
            if (t.arrows.size() < 2)
                throw ValidationError("relation term shorter than two arrows", "");
            int at = r.src;
            for (int a : t.arrows) {
                if (a < 0 || a >= static_cast<int>(q.arrows.size()))
                    throw ValidationError("relation term uses unknown arrow", "");
                if (q.arrows[a].src != at)
                    throw ValidationError("relation term is not a composable path", q.arrows[a].label);
                at = q.arrows[a].tgt;
            }
            if (at != r.tgt)
                throw ValidationError("relation term does not end at the relation target", "");
            acc[t.arrows] = ((acc[t.arrows] + t.coeff) % p + p) % p;
        }
        r.terms.clear();
        for (const auto& [word, c] : acc)
            if (c != 0) r.terms.push_back(RelTerm{c, word});
        if (r.terms.empty()) throw ValidationError("relation reduces to zero", "");
    }

    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->quiver_ = std::move(q);
    alg->relations_ = std::move(rels);
    alg->p_ = p;

    if (nilpotency >= 0) {
        alg->nilp_ = nilpotency;
        std::string witness;
        if (!alg->try_nilpotency(nilpotency, caps, &witness))
            throw ValidationError("a path of length one past the nilpotency bound does not vanish",
                                  witness);
    } else if (alg->relations_.empty()) {
        alg->nilp_ = longest_path_or_throw(alg->quiver_);
        std::string witness;
        if (!alg->try_nilpotency(alg->nilp_, caps, &witness))
            throw ValidationError("internal: longest-path bound rejected", witness);
    } else {
        bool ok = false;
        std::string witness;
        for (int n = 1; n <= caps.nilpotency_probe_cap; ++n) {
            if (alg->try_nilpotency(n, caps, &witness)) {
                alg->nilp_ = n;
                ok = true;
                break;
            }
        }
        if (!ok)
            throw ValidationError("relations do not bound path length within the probe cap",
                                  witness);
    }
    alg->build(caps);
    return alg;
}

// Attempt certification at nilpotency n: enumerate paths to length n+1, span
// the relation consequences, and test that every length-(n+1) path reduces to
// zero.  Leaves the path/pair tables populated for the accepted n.
bool Algebra::try_nilpotency(int n, const Caps& caps, std::string* witness) {
    int nv = num_vertices();
    all_paths_.clear();
    path_lookup_.clear();
    pair_all_.assign(static_cast<size_t>(nv) * nv, {});
    pair_rref_.clear();
    pair_pivots_.clear();

    for (int v = 0; v < nv; ++v) {
        Path tp{v, v, {}};
        path_lookup_[path_key(v, {})] = static_cast<int>(all_paths_.size());
        all_paths_.push_back(tp);
    }
    size_t lo = 0;
    for (int len = 1; len <= n + 1; ++len) {
        size_t hi = all_paths_.size();
        for (size_t i = lo; i < hi; ++i) {
            if (all_paths_[i].length() != len - 1) continue;
            for (int a = 0; a < num_arrows(); ++a) {
                if (quiver_.arrows[a].src != all_paths_[i].tgt) continue;
                Path np = all_paths_[i];
                np.arrows.push_back(a);
                np.tgt = quiver_.arrows[a].tgt;
                if (all_paths_.size() >= caps.path_budget)
                    throw CapExceeded("path enumeration exceeds budget",
                                      "more than " + std::to_string(caps.path_budget) + " paths");
                path_lookup_[path_key(np.src, np.arrows)] = static_cast<int>(all_paths_.size());
                all_paths_.push_back(np);
            }
        }
        lo = hi;
    }
    for (size_t i = 0; i < all_paths_.size(); ++i)
        pair_all_[static_cast<size_t>(all_paths_[i].src) * nv + all_paths_[i].tgt].push_back(
            static_cast<int>(i));

    std::vector<int> pos_in_pair(all_paths_.size(), -1);
    for (size_t pr = 0; pr < pair_all_.size(); ++pr)
        for (size_t j = 0; j < pair_all_[pr].size(); ++j)
            pos_in_pair[pair_all_[pr][j]] = static_cast<int>(j);

    pair_rref_.assign(pair_all_.size(), FFMatrix(0, 0, p_));
    pair_pivots_.assign(pair_all_.size(), {});
    std::vector<std::vector<Vec>> rows(pair_all_.size());
    for (const auto& rel : relations_) {
        for (int v = 0; v < nv; ++v) {
            for (int pid : pair_all_[static_cast<size_t>(v) * nv + rel.src]) {
                const Path& left = all_paths_[pid];
                for (int w = 0; w < nv; ++w) {
                    size_t pr = static_cast<size_t>(v) * nv + w;
                    for (int qid : pair_all_[static_cast<size_t>(rel.tgt) * nv + w]) {
                        const Path& right = all_paths_[qid];
                        Vec row(pair_all_[pr].size(), 0);
                        bool any = false;
                        for (const auto& t : rel.terms) {
                            int total = left.length() + static_cast<int>(t.arrows.size()) +
                                        right.length();
                            if (total > n + 1) continue;
                            std::vector<int> word = left.arrows;
                            word.insert(word.end(), t.arrows.begin(), t.arrows.end());
                            word.insert(word.end(), right.arrows.begin(), right.arrows.end());
                            auto it = path_lookup_.find(path_key(v, word));
                            int coord = pos_in_pair[it->second];
                            row[coord] = static_cast<uint8_t>((row[coord] + t.coeff) % p_);
                            any = true;
                        }
                        if (any && !std::all_of(row.begin(), row.end(),
                                                [](uint8_t x) { return x == 0; }))
                            rows[pr].push_back(std::move(row));
                    }
                }
            }
        }
    }
    for (size_t pr = 0; pr < pair_all_.size(); ++pr) {
        if (pair_all_[pr].empty()) continue;
        FFMatrix m(static_cast<int>(rows[pr].size()), static_cast<int>(pair_all_[pr].size()), p_);
        for (size_t i = 0; i < rows[pr].size(); ++i)
            for (size_t j = 0; j < rows[pr][i].size(); ++j)
                m.at(static_cast<int>(i), static_cast<int>(j)) = rows[pr][i][j];
        auto piv = m.rref_in_place();
        FFMatrix kept(static_cast<int>(piv.size()), m.cols, p_);
        for (size_t i = 0; i < piv.size(); ++i)
            for (int j = 0; j < m.cols; ++j) kept.at(static_cast<int>(i), j) = m.at(static_cast<int>(i), j);
        pair_rref_[pr] = kept;
        pair_pivots_[pr] = piv;
    }

    for (size_t i = 0; i < all_paths_.size(); ++i) {
        if (all_paths_[i].length() != n + 1) continue;
        size_t pr = static_cast<size_t>(all_paths_[i].src) * nv + all_paths_[i].tgt;
        Vec v(pair_all_[pr].size(), 0);
        v[pos_in_pair[i]] = 1;
        const FFMatrix& R = pair_rref_[pr];
        const auto& piv = pair_pivots_[pr];
        for (int r = 0; r < R.rows; ++r) {
            uint8_t f = v[piv[r]];
            if (f == 0) continue;
            for (int j = 0; j < R.cols; ++j)
                v[j] = static_cast<uint8_t>(((v[j] - f * R.at(r, j)) % p_ + p_) % p_);
        }
        if (!std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; })) {
            if (witness) *witness = path_string(all_paths_[i]);
            return false;
        }
    }
    nilp_ = n;
    return true;
}

void Algebra::build(const Caps& caps) {
    build_caps_ = caps;
    int nv = num_vertices();
    basis_ids_.clear();
    basis_index_of_path_.assign(all_paths_.size(), -1);
    pair_basis_.assign(pair_all_.size(), {});
    for (size_t pr = 0; pr < pair_all_.size(); ++pr) {
        std::vector<bool> is_pivot(pair_all_[pr].size(), false);
        for (int c : pair_pivots_[pr]) is_pivot[c] = true;
        for (size_t j = 0; j < pair_all_[pr].size(); ++j) {
            int pid = pair_all_[pr][j];
            if (is_pivot[j]) continue;
            if (all_paths_[pid].length() > nilp_)
                throw ValidationError("internal: long path survived reduction",
                                      path_string(all_paths_[pid]));
            basis_index_of_path_[pid] = -2;  // mark, number below in path id order
        }
    }
    for (size_t i = 0; i < all_paths_.size(); ++i) {
        if (basis_index_of_path_[i] == -2) {
            basis_index_of_path_[i] = static_cast<int>(basis_ids_.size());
            basis_ids_.push_back(static_cast<int>(i));
        }
    }
    for (int b = 0; b < num_basis_paths(); ++b) {
        const Path& pth = all_paths_[basis_ids_[b]];
        pair_basis_[static_cast<size_t>(pth.src) * nv + pth.tgt].push_back(b);
    }

    report_.total_dim = num_basis_paths();
    report_.dim_by_length.assign(nilp_ + 1, 0);
    for (int pid : basis_ids_) report_.dim_by_length[all_paths_[pid].length()]++;
    report_.hereditary = hereditary();
    report_.nilpotency = nilp_;

    std::ostringstream sig;
    sig << "p=" << p_ << ";n=" << nilp_ << ";v=";
    for (size_t i = 0; i < quiver_.vertices.size(); ++i)
        sig << (i ? "," : "") << quiver_.vertices[i];
    sig << ";a=";
    for (size_t i = 0; i < quiver_.arrows.size(); ++i)
        sig << (i ? "," : "") << quiver_.arrows[i].label << ":" << quiver_.arrows[i].src << ">"
            << quiver_.arrows[i].tgt;
    sig << ";r=";
    for (size_t i = 0; i < relations_.size(); ++i) {
        if (i) sig << ",";
        for (size_t t = 0; t < relations_[i].terms.size(); ++t) {
            if (t) sig << "+";
            sig << relations_[i].terms[t].coeff << "*";
            for (size_t a = 0; a < relations_[i].terms[t].arrows.size(); ++a)
                sig << (a ? "." : "") << relations_[i].terms[t].arrows[a];
        }
    }
    signature_ = sig.str();
}

const Path& Algebra::basis_path(int basis_idx) const { return all_paths_[basis_ids_[basis_idx]]; }

const std::vector<int>& Algebra::pair_basis(int u, int w) const {
    return pair_basis_[static_cast<size_t>(u) * num_vertices() + w];
}

PathCombo Algebra::unit_combo(int v) const {
    auto it = path_lookup_.find(path_key(v, {}));
    return {{basis_index_of_path_[it->second], 1}};
}

PathCombo Algebra::arrow_combo(int arrow) const {
    const Arrow& a = quiver_.arrows[arrow];
    auto it = path_lookup_.find(path_key(a.src, {arrow}));
    return {{basis_index_of_path_[it->second], 1}};
}

PathCombo Algebra::reduce_raw(int src, const std::vector<int>& word) const {
    if (static_cast<int>(word.size()) > nilp_ + 1) return {};
    auto it = path_lookup_.find(path_key(src, word));
    if (it == path_lookup_.end()) throw std::logic_error("reduce_raw: path not enumerated");
    int pid = it->second;
    int nv = num_vertices();
    size_t pr = static_cast<size_t>(all_paths_[pid].src) * nv + all_paths_[pid].tgt;
    Vec v(pair_all_[pr].size(), 0);
    for (size_t j = 0; j < pair_all_[pr].size(); ++j)
        if (pair_all_[pr][j] == pid) v[j] = 1;
    const FFMatrix& R = pair_rref_[pr];
    const auto& piv = pair_pivots_[pr];
    for (int r = 0; r < R.rows; ++r) {
        uint8_t f = v[piv[r]];
        if (f == 0) continue;
        for (int j = 0; j < R.cols; ++j)
            v[j] = static_cast<uint8_t>(((v[j] - f * R.at(r, j)) % p_ + p_) % p_);
    }
    PathCombo out;
    for (size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) out.emplace_back(basis_index_of_path_[pair_all_[pr][j]], v[j]);
    return out;
}

PathCombo Algebra::concat_reduce(const PathCombo& first, const PathCombo& second) const {
    std::map<int, int> acc;
    for (const auto& [b1, c1] : first) {
        const Path& p1 = basis_path(b1);
        for (const auto& [b2, c2] : second) {
            const Path& p2 = basis_path(b2);
            if (p1.tgt != p2.src) throw std::logic_error("concat_reduce: paths not composable");
            if (p1.length() + p2.length() > nilp_ + 1) continue;
            std::vector<int> word = p1.arrows;
            word.insert(word.end(), p2.arrows.begin(), p2.arrows.end());
            for (const auto& [b, c] : reduce_raw(p1.src, word))
                acc[b] = (acc[b] + c1 * c2 * c) % p_;
        }
    }
    PathCombo out;
    for (const auto& [b, c] : acc)
        if (c % p_ != 0) out.emplace_back(b, ((c % p_) + p_) % p_);
    return out;
}

namespace {
FFMatrix combo_columns(const Algebra& alg, const std::vector<PathCombo>& cols,
                       const std::vector<int>& codomain_basis, int p) {
    std::vector<int> pos(alg.num_basis_paths(), -1);
    for (size_t i = 0; i < codomain_basis.size(); ++i) pos[codomain_basis[i]] = static_cast<int>(i);
    FFMatrix m(static_cast<int>(codomain_basis.size()), static_cast<int>(cols.size()), p);
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [b, c] : cols[j]) {
            if (pos[b] < 0) throw std::logic_error("combo lands outside codomain pair");
            m.at(pos[b], static_cast<int>(j)) = static_cast<uint8_t>(c);
        }
    return m;
}
}  // namespace

FFMatrix Algebra::projective_arrow_matrix(int v, int arrow) const {
    const Arrow& a = quiver_.arrows[arrow];
    const auto& dom = pair_basis(v, a.src);
    const auto& cod = pair_basis(v, a.tgt);
    PathCombo ac = arrow_combo(arrow);
    std::vector<PathCombo> cols;
    cols.reserve(dom.size());
    for (int b : dom) cols.push_back(concat_reduce({{b, 1}}, ac));
    return combo_columns(*this, cols, cod, p_);
}

FFMatrix Algebra::injective_precompose_matrix(int v, int arrow) const {
    const Arrow& a = quiver_.arrows[arrow];
    const auto& dom = pair_basis(a.tgt, v);
    const auto& cod = pair_basis(a.src, v);
    PathCombo ac = arrow_combo(arrow);
    std::vector<PathCombo> cols;
    cols.reserve(dom.size());
    for (int b : dom) cols.push_back(concat_reduce(ac, {{b, 1}}));
    return combo_columns(*this, cols, cod, p_);
}

FFMatrix Algebra::left_mult_matrix(const PathCombo& w, int u, int v, int s) const {
    const auto& dom = pair_basis(s, v);
    const auto& cod = pair_basis(s, u);
    std::vector<PathCombo> cols;
    cols.reserve(dom.size());
    for (int b : dom) cols.push_back(concat_reduce({{b, 1}}, w));
    return combo_columns(*this, cols, cod, p_);
}

int Algebra::projective_length(int v) const {
    int total = 0;
    for (int w = 0; w < num_vertices(); ++w) total += static_cast<int>(pair_basis(v, w).size());
    return total;
}

int Algebra::injective_length(int v) const {
    int total = 0;
    for (int u = 0; u < num_vertices(); ++u) total += static_cast<int>(pair_basis(u, v).size());
    return total;
}

int Algebra::max_projective_length() const {
    int m = 0;
    for (int v = 0; v < num_vertices(); ++v) m = std::max(m, projective_length(v));
    return m;
}

int Algebra::max_injective_length() const {
    int m = 0;
    for (int v = 0; v < num_vertices(); ++v) m = std::max(m, injective_length(v));
    return m;
}

std::shared_ptr<const Algebra> Algebra::opposite() const {
    if (opposite_cache_) return opposite_cache_;
    Quiver q;
    q.vertices = quiver_.vertices;
    for (const auto& a : quiver_.arrows) q.arrows.push_back(Arrow{a.label, a.tgt, a.src});
    std::vector<Relation> rels;
    for (const auto& r : relations_) {
        Relation ro;
        ro.src = r.tgt;
        ro.tgt = r.src;
        for (const auto& t : r.terms) {
            RelTerm to{t.coeff, t.arrows};
            std::reverse(to.arrows.begin(), to.arrows.end());
            ro.terms.push_back(std::move(to));
        }
        rels.push_back(std::move(ro));
    }
    auto op = make(std::move(q), std::move(rels), p_, nilp_, build_caps_);
    op->opposite_cache_ = shared_from_this();
    opposite_cache_ = op;
    return op;
}

std::string Algebra::path_string(const Path& p) const {
    if (p.arrows.empty()) return "e_" + quiver_.vertices[p.src];
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s.push_back('*');
        s += quiver_.arrows[p.arrows[i]].label;
    }
    return s;
}

bool same_algebra(const Algebra& a, const Algebra& b) { return a.signature() == b.signature(); }

}  // namespace qmod
