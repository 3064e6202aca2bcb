#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/caps.hpp"
#include "qmod/errors.hpp"
#include "qmod/ffmatrix.hpp"
#include "qmod/presentation.hpp"

namespace qmod {

// A finite-length left module, given as one matrix per arrow; the matrix of
// an arrow i -> j has shape dims[j] x dims[i].
struct Module {
    AlgebraPtr alg;
    std::vector<int> dims;
    std::vector<FFMatrix> action;

    int length() const;
    bool is_zero() const { return length() == 0; }
    std::string dims_string() const;
};

struct CheckResult {
    bool ok = true;
    std::string violation;
};

Module make_module(AlgebraPtr alg, std::vector<int> dims, std::vector<FFMatrix> action);
Module zero_module(AlgebraPtr alg);
Module simple_module(AlgebraPtr alg, int v);
Module projective_module(AlgebraPtr alg, int v);
Module injective_module(AlgebraPtr alg, int v);
Module direct_sum(AlgebraPtr alg, const std::vector<Module>& xs);

CheckResult check_module(const Module& x);
void require_valid(const Module& x);  // throws ValidationError on violation
bool is_semisimple(const Module& x);  // all arrow matrices zero

// Matrix of the action of a path (arrows in traversal order) on x.
FFMatrix path_action(const Module& x, int src, const std::vector<int>& word);

struct Morphism {
    std::vector<FFMatrix> maps;  // per vertex, shape dims_y[v] x dims_x[v]
};

Morphism identity_morphism(const Module& x);
Morphism zero_morphism(const Module& x, const Module& y);
bool is_morphism(const Module& x, const Module& y, const Morphism& f);
Morphism compose(const Module& x, const Module& y, const Module& z, const Morphism& f,
                 const Morphism& g);  // g after f
bool is_injective_morphism(const Morphism& f);
bool is_surjective_morphism(const Module& y, const Morphism& f);
bool is_zero_morphism(const Morphism& f);

std::vector<Morphism> hom_basis(const Module& x, const Module& y);
int hom_dim(const Module& x, const Module& y);
Morphism combine(const Module& x, const Module& y, const std::vector<Morphism>& basis,
                 const std::vector<int>& coeffs);

// An arrow-stable family of subspaces of a module.
struct Submodule {
    std::vector<Subspace> spaces;  // per vertex, canonical column bases

    std::vector<int> dims() const;
    int length() const;
    std::string bytes() const;
    bool operator==(const Submodule& other) const { return spaces == other.spaces; }
};

Submodule zero_submodule(const Module& x);
Submodule full_submodule(const Module& x);
bool is_stable(const Module& x, const Submodule& u);
bool submodule_contains(const Submodule& big, const Submodule& small);
Submodule submodule_sum(const Module& x, const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const Module& x, const Submodule& a, const Submodule& b);

Submodule kernel_of(const Module& x, const Module& y, const Morphism& f);
Submodule image_of(const Module& x, const Module& y, const Morphism& f);
Submodule submodule_from_generators(const Module& x, const std::vector<std::pair<int, Vec>>& gens);
Submodule radical_submodule(const Module& x);
Submodule socle_submodule(const Module& x);
std::vector<int> top_dims(const Module& x);

// The module carried by a submodule; inclusion written to *incl if given.
Module submodule_module(const Module& x, const Submodule& u, Morphism* incl = nullptr);
// The quotient x/u; projection written to *proj if given.
Module quotient_module(const Module& x, const Submodule& u, Morphism* proj = nullptr);

// All submodules, deterministic order (by length, then canonical bytes),
// built as joins of cyclic submodules.
std::vector<Submodule> enumerate_submodules(const Module& x, const Caps& caps = Caps{});
// Submodules u with x/u simple (they all contain the radical).
std::vector<Submodule> maximal_submodules(const Module& x);

bool is_cogenerated(const Module& x, const Module& m);
int jh_multiplicity(const Module& x, int v);

bool is_indecomposable(const Module& x, const Caps& caps = Caps{});
std::vector<Module> decompose(const Module& x, const Caps& caps = Caps{});
bool iso_test(const Module& x, const Module& y, const Caps& caps = Caps{});

// Cheap isomorphism invariant used to bucket candidates before exact tests.
std::string iso_fingerprint(const Module& x);

// Dedup store for modules up to isomorphism.
class IsoRegistry {
  public:
    explicit IsoRegistry(Caps caps = Caps{}) : caps_(caps) {}
    std::optional<int> find(const Module& x) const;
    int insert(const Module& x);  // existing id if already present
    int size() const { return static_cast<int>(reps_.size()); }
    const Module& rep(int id) const { return reps_[id]; }

  private:
    Caps caps_;
    std::map<std::string, std::vector<int>> buckets_;
    std::vector<Module> reps_;
};

// Re-index a module along explicit vertex/arrow correspondences: the result
// lives over `target`, with component at v taken from source vertex
// vertex_map[v] and arrow a acting by the matrix of arrow_map[a].
Module transport_module(const Module& x, AlgebraPtr target, const std::vector<int>& vertex_map,
                        const std::vector<int>& arrow_map);

// The dual module over the opposite algebra (matrices transposed).  `target`
// must equal x.alg->opposite() up to signature.
Module dual_module(const Module& x, AlgebraPtr target);

struct CoveringSpec {
    AlgebraPtr cover;
    AlgebraPtr base;
    std::vector<int> vertex_fiber;  // cover vertex -> base vertex
    std::vector<int> arrow_fiber;   // cover arrow -> base arrow
};

void validate_covering(const CoveringSpec& spec);
Module push_down(const CoveringSpec& spec, const Module& xhat);

}  // namespace qmod
