#include "qmod/artrans.hpp"

#include <stdexcept>

namespace qmod {

ProjSum projective_sum(AlgebraPtr alg, const std::vector<int>& vertices) {
    ProjSum ps;
    ps.vertices = vertices;
    std::vector<Module> parts;
    parts.reserve(vertices.size());
    std::vector<int> running(alg->num_vertices(), 0);
    for (int v : vertices) {
        ps.offset.push_back(running);
        Module pv = projective_module(alg, v);
        for (int w = 0; w < alg->num_vertices(); ++w) running[w] += pv.dims[w];
        parts.push_back(std::move(pv));
    }
    ps.mod = direct_sum(alg, parts);
    return ps;
}

std::pair<ProjSum, Morphism> projective_cover(const Module& x) {
    AlgebraPtr alg = x.alg;
    Submodule rad = radical_submodule(x);
    std::vector<int> vertices;
    std::vector<std::vector<int>> lift_coord;  // parallel to vertices
    for (int v = 0; v < alg->num_vertices(); ++v) {
        std::vector<int> comp = complement_rows(rad.spaces[v].basis);
        for (int c : comp) {
            vertices.push_back(v);
            lift_coord.push_back({c});
        }
    }
    ProjSum ps = projective_sum(alg, vertices);
    Morphism pi;
    for (int w = 0; w < alg->num_vertices(); ++w)
        pi.maps.emplace_back(x.dims[w], ps.mod.dims[w], alg->modulus());
    for (int i = 0; i < ps.summands(); ++i) {
        int u = ps.vertices[i];
        int gen = lift_coord[i][0];
        for (int w = 0; w < alg->num_vertices(); ++w) {
            const std::vector<int>& pb = alg->pair_basis(u, w);
            for (size_t l = 0; l < pb.size(); ++l) {
                FFMatrix act = path_action(x, u, alg->basis_path(pb[l]).arrows);
                for (int r = 0; r < x.dims[w]; ++r)
                    pi.maps[w].at(r, ps.offset[i][w] + static_cast<int>(l)) = act.at(r, gen);
            }
        }
    }
    if (!is_morphism(ps.mod, x, pi)) throw std::logic_error("projective_cover: lift failed");
    if (!is_surjective_morphism(x, pi)) throw std::logic_error("projective_cover: not onto");
    return {std::move(ps), std::move(pi)};
}

ProjectivePresentation minimal_presentation(const Module& x) {
    AlgebraPtr alg = x.alg;
    ProjectivePresentation pres;
    auto [p0, pi] = projective_cover(x);
    pres.p0 = std::move(p0);
    pres.pi = std::move(pi);

    Submodule k = kernel_of(pres.p0.mod, x, pres.pi);
    if (k.length() > 0 && !submodule_contains(radical_submodule(pres.p0.mod), k))
        throw std::logic_error("minimal_presentation: kernel escapes the radical");
    Morphism incl;
    Module kmod = submodule_module(pres.p0.mod, k, &incl);
    auto [p1, sigma] = projective_cover(kmod);
    pres.p1 = std::move(p1);
    pres.d = compose(pres.p1.mod, kmod, pres.p0.mod, sigma, incl);
    if (!is_morphism(pres.p1.mod, pres.p0.mod, pres.d))
        throw std::logic_error("minimal_presentation: differential is not a morphism");

    pres.lambda.assign(pres.p0.summands(), std::vector<PathCombo>(pres.p1.summands()));
    for (int j = 0; j < pres.p1.summands(); ++j) {
        int vj = pres.p1.vertices[j];
        int col = pres.p1.generator_coordinate(j);
        const FFMatrix& dm = pres.d.maps[vj];
        for (int i = 0; i < pres.p0.summands(); ++i) {
            int ui = pres.p0.vertices[i];
            const std::vector<int>& pb = alg->pair_basis(ui, vj);
            PathCombo combo;
            for (size_t l = 0; l < pb.size(); ++l) {
                int coeff = dm.at(pres.p0.offset[i][vj] + static_cast<int>(l), col);
                if (coeff) combo.emplace_back(pb[l], coeff);
            }
            pres.lambda[i][j] = std::move(combo);
        }
    }
    return pres;
}

bool is_projective(const Module& x) {
    auto [ps, pi] = projective_cover(x);
    Submodule k = kernel_of(ps.mod, x, pi);
    return k.length() == 0;
}

bool is_injective(const Module& x) {
    return is_projective(dual_module(x, x.alg->opposite()));
}

Module translate(const Module& x) {
    AlgebraPtr alg = x.alg;
    if (x.is_zero()) return zero_module(alg);
    ProjectivePresentation pres = minimal_presentation(x);
    if (pres.p1.summands() == 0) return zero_module(alg);

    std::vector<Module> nu1_parts, nu0_parts;
    for (int v : pres.p1.vertices) nu1_parts.push_back(injective_module(alg, v));
    for (int v : pres.p0.vertices) nu0_parts.push_back(injective_module(alg, v));
    Module nu1 = direct_sum(alg, nu1_parts);
    Module nu0 = direct_sum(alg, nu0_parts);

    // Injective sums reuse the path-space coordinates, so offsets follow the
    // same layout discipline as ProjSum but with the pair roles flipped.
    std::vector<std::vector<int>> off1(pres.p1.summands(),
                                       std::vector<int>(alg->num_vertices(), 0));
    {
        std::vector<int> running(alg->num_vertices(), 0);
        for (int j = 0; j < pres.p1.summands(); ++j) {
            off1[j] = running;
            for (int s = 0; s < alg->num_vertices(); ++s)
                running[s] += static_cast<int>(alg->pair_basis(s, pres.p1.vertices[j]).size());
        }
    }
    std::vector<std::vector<int>> off0(pres.p0.summands(),
                                       std::vector<int>(alg->num_vertices(), 0));
    {
        std::vector<int> running(alg->num_vertices(), 0);
        for (int i = 0; i < pres.p0.summands(); ++i) {
            off0[i] = running;
            for (int s = 0; s < alg->num_vertices(); ++s)
                running[s] += static_cast<int>(alg->pair_basis(s, pres.p0.vertices[i]).size());
        }
    }

    Morphism f;
    for (int s = 0; s < alg->num_vertices(); ++s)
        f.maps.emplace_back(nu0.dims[s], nu1.dims[s], alg->modulus());
    for (int j = 0; j < pres.p1.summands(); ++j) {
        int vj = pres.p1.vertices[j];
        for (int i = 0; i < pres.p0.summands(); ++i) {
            int ui = pres.p0.vertices[i];
            const PathCombo& w = pres.lambda[i][j];
            if (w.empty()) continue;
            for (int s = 0; s < alg->num_vertices(); ++s) {
                FFMatrix blk = alg->left_mult_matrix(w, vj, ui, s).transpose();
                for (int r = 0; r < blk.rows; ++r)
                    for (int c = 0; c < blk.cols; ++c) {
                        std::uint8_t& e = f.maps[s].at(off0[i][s] + r, off1[j][s] + c);
                        e = static_cast<std::uint8_t>((e + blk.at(r, c)) % alg->modulus());
                    }
            }
        }
    }
    if (!is_morphism(nu1, nu0, f))
        throw std::logic_error("translate: Nakayama image is not a morphism");
    return submodule_module(nu1, kernel_of(nu1, nu0, f));
}

Module inverse_translate(const Module& x) {
    AlgebraPtr op = x.alg->opposite();
    Module t = translate(dual_module(x, op));
    return dual_module(t, op->opposite());
}

}  // namespace qmod
