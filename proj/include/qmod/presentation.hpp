#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmod/caps.hpp"
#include "qmod/errors.hpp"
#include "qmod/ffmatrix.hpp"

namespace qmod {

struct Arrow {
    std::string label;
    int src = 0;
    int tgt = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    int vertex_index(const std::string& name) const;  // -1 if absent
    int arrow_index(const std::string& label) const;
    void validate() const;
};

// One summand of a relation: coeff * (arrow word in traversal order,
// first arrow leaves the source).
struct RelTerm {
    int coeff = 1;
    std::vector<int> arrows;
};

struct Relation {
    int src = 0;
    int tgt = 0;
    std::vector<RelTerm> terms;
};

struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;  // traversal order
    int length() const { return static_cast<int>(arrows.size()); }
};

// Sparse combination of basis-path residues: (basis path id, coeff), ids
// ascending, coeffs nonzero mod p.
using PathCombo = std::vector<std::pair<int, int>>;

struct AlgebraReport {
    int total_dim = 0;
    std::vector<int> dim_by_length;  // basis path count per length 0..N
    bool hereditary = false;
    int nilpotency = 0;
};

// A basic quiver algebra F_p Q / I presented by arrows and admissible
// relations (every relation term is a path of length >= 2).  Validation
// enumerates all paths up to length N+1, spans the relation consequences per
// (source, target) pair, and checks that every path of length N+1 reduces to
// zero; the surviving path residues of length <= N form the basis.
class Algebra : public std::enable_shared_from_this<Algebra> {
  public:
    // nilpotency < 0 means: derive it (longest path when hereditary, else
    // probe upward until the length-(N+1) paths all vanish).
    static std::shared_ptr<const Algebra> make(Quiver q, std::vector<Relation> rels, int p,
                                               int nilpotency = -1, const Caps& caps = Caps{});

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    int modulus() const { return p_; }
    int nilpotency() const { return nilp_; }
    bool hereditary() const { return relations_.empty(); }
    int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }
    int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
    const std::string& signature() const { return signature_; }

    int num_basis_paths() const { return static_cast<int>(basis_ids_.size()); }
    const Path& basis_path(int basis_idx) const;
    // Basis indices for the residues of paths u ~> w, ascending.
    const std::vector<int>& pair_basis(int u, int w) const;

    // Unit combo of the trivial path at v.
    PathCombo unit_combo(int v) const;
    // Product "first then second" of residues; first: u~>v, second: v~>w.
    PathCombo concat_reduce(const PathCombo& first, const PathCombo& second) const;
    // Residue of a single arrow as a combo (arrows always survive reduction).
    PathCombo arrow_combo(int arrow) const;

    // Matrix of right-composition with arrow a on the (v, *) basis:
    // basis paths v ~> a.src mapped into basis paths v ~> a.tgt.
    FFMatrix projective_arrow_matrix(int v, int arrow) const;
    // Matrix of left-composition with arrow a on the (*, v) basis:
    // basis paths a.tgt ~> v mapped into basis paths a.src ~> v.
    FFMatrix injective_precompose_matrix(int v, int arrow) const;

    // Matrix of left multiplication by w (a combo of paths v ~> u) as a map
    // of path spaces e_v.A.e_s -> e_u.A.e_s at vertex s.
    FFMatrix left_mult_matrix(const PathCombo& w, int u, int v, int s) const;

    AlgebraReport report() const { return report_; }
    int projective_length(int v) const;  // number of basis paths starting at v
    int injective_length(int v) const;   // number of basis paths ending at v
    int max_projective_length() const;
    int max_injective_length() const;

    std::shared_ptr<const Algebra> opposite() const;

    std::string path_string(const Path& p) const;

  private:
    Algebra() = default;
    void build(const Caps& caps);
    bool try_nilpotency(int n, const Caps& caps, std::string* witness);

    Quiver quiver_;
    std::vector<Relation> relations_;
    int p_ = 2;
    int nilp_ = 0;
    Caps build_caps_;
    std::string signature_;
    AlgebraReport report_;

    std::vector<Path> all_paths_;                       // length <= N+1, by (length, discovery)
    std::map<std::string, int> path_lookup_;            // key(src, arrows) -> all_paths index
    std::vector<std::vector<int>> pair_all_;            // per (u*V+w): all path ids ascending
    std::vector<FFMatrix> pair_rref_;                   // ideal span, rref rows
    std::vector<std::vector<int>> pair_pivots_;         // pivot coordinate positions
    std::vector<int> basis_ids_;                        // path ids surviving reduction
    std::vector<int> basis_index_of_path_;              // path id -> basis idx or -1
    std::vector<std::vector<int>> pair_basis_;          // per pair: basis indices

    mutable std::shared_ptr<const Algebra> opposite_cache_;

    // Reduce a raw path (arrow word from src); empty combo if it vanishes.
    PathCombo reduce_raw(int src, const std::vector<int>& word) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

bool same_algebra(const Algebra& a, const Algebra& b);

}  // namespace qmod
