#include "qmod/registry.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmod/artrans.hpp"
#include "qmod/errors.hpp"

namespace qmod {

namespace {

AlgebraPtr make_kronecker(int arrows, int p) {
    Quiver q;
    q.vertices = {"1", "2"};
    for (int i = 0; i < arrows; ++i)
        q.arrows.push_back({std::string(1, static_cast<char>('a' + i)), 0, 1});
    return Algebra::make(q, {}, p);
}

AlgebraPtr make_double_steps(int p) {
    Quiver q;
    q.vertices = {"a", "b", "c"};
    q.arrows = {{"al", 1, 0}, {"ap", 1, 0}, {"be", 2, 1}, {"bp", 2, 1}};
    return Algebra::make(q, {}, p);
}

AlgebraPtr make_zero_rel(int p, bool alt) {
    Quiver q;
    q.vertices = {"a", "b", "c"};
    q.arrows = {{"al", 1, 0}, {"be", 2, 1}, {"bp", 2, 1}};
    Relation r;
    r.src = 2;
    r.tgt = 0;
    r.terms = {{1, {alt ? 2 : 1, 0}}};
    return Algebra::make(q, {r}, p);
}

AlgebraPtr make_four_star(int p) {
    Quiver q;
    q.vertices = {"z", "a", "b", "c", "d"};
    for (int k = 1; k <= 4; ++k)
        q.arrows.push_back({std::string(1, static_cast<char>('a' + k - 1)), 0, k});
    return Algebra::make(q, {}, p);
}

std::string int_dims(const std::vector<int>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

using CheckBody = std::function<std::pair<bool, std::string>()>;

void run_check(VerifyReport& rep, const std::string& name, const CheckBody& body) {
    CheckOutcome out;
    out.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, detail] = body();
        out.status = ok ? "pass" : "fail";
        out.detail = detail;
    } catch (const CapExceeded& e) {
        out.status = "skipped-at-cap";
        out.detail = e.what();
    } catch (const std::exception& e) {
        out.status = "fail";
        out.detail = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.status == "fail") rep.ok = false;
    if (out.status == "skipped-at-cap") rep.complete = false;
    rep.checks.push_back(out);
}

VerifyReport verify_example1(const Caps& caps);
VerifyReport verify_example2(const Caps& caps);
VerifyReport verify_example3(const Caps& caps);
VerifyReport verify_example4(const Caps& caps);
VerifyReport verify_remark(const Caps& caps);

}  // namespace

std::vector<std::string> registry_algebra_ids() {
    return {"k2", "k3", "example4", "remark", "remark-alt", "d4"};
}

AlgebraPtr registry_algebra(const std::string& id) {
    if (id == "k2") return make_kronecker(2, 2);
    if (id == "k3") return make_kronecker(3, 2);
    if (id == "example4") return make_double_steps(2);
    if (id == "remark") return make_zero_rel(2, false);
    if (id == "remark-alt") return make_zero_rel(2, true);
    if (id == "d4") return make_four_star(2);
    throw ValidationError("unknown registry algebra id", id);
}

StripModule zigzag_strip(int n, int p) {
    if (n < 1) throw ValidationError("strip needs at least one source", std::to_string(n));
    AlgebraPtr base = make_double_steps(p);

    Quiver q;
    for (int k = 0; k <= n; ++k) q.vertices.push_back("b" + std::to_string(k));
    for (int k = 0; k <= n; ++k) {
        q.vertices.push_back("a" + std::to_string(k));
        q.vertices.push_back("a" + std::to_string(k) + "p");
    }
    for (int k = 1; k <= n; ++k) q.vertices.push_back("c" + std::to_string(k));
    auto bi = [&](int k) { return k; };
    auto ai = [&](int k) { return (n + 1) + 2 * k; };
    auto api = [&](int k) { return (n + 1) + 2 * k + 1; };
    auto ci = [&](int k) { return 3 * (n + 1) + (k - 1); };

    std::vector<int> arrow_fiber;
    for (int k = 0; k <= n; ++k) {
        q.arrows.push_back({"al" + std::to_string(k), bi(k), ai(k)});
        arrow_fiber.push_back(0);
        q.arrows.push_back({"ap" + std::to_string(k), bi(k), api(k)});
        arrow_fiber.push_back(1);
    }
    for (int k = 1; k <= n; ++k) {
        q.arrows.push_back({"be" + std::to_string(k), ci(k), bi(k - 1)});
        arrow_fiber.push_back(2);
        q.arrows.push_back({"bp" + std::to_string(k), ci(k), bi(k)});
        arrow_fiber.push_back(3);
    }

    StripModule strip;
    strip.spec.cover = Algebra::make(q, {}, p);
    strip.spec.base = base;
    strip.spec.vertex_fiber.assign(q.vertices.size(), 0);
    for (int k = 0; k <= n; ++k) {
        strip.spec.vertex_fiber[bi(k)] = 1;
        strip.spec.vertex_fiber[ai(k)] = 0;
        strip.spec.vertex_fiber[api(k)] = 0;
    }
    for (int k = 1; k <= n; ++k) strip.spec.vertex_fiber[ci(k)] = 2;
    strip.spec.arrow_fiber = arrow_fiber;
    validate_covering(strip.spec);

    std::vector<int> dims(q.vertices.size(), 1);
    for (int k = 0; k <= n; ++k) dims[bi(k)] = (k == 0 || k == n) ? 1 : 2;

    std::vector<FFMatrix> action;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int src = q.arrows[a].src, tgt = q.arrows[a].tgt;
        int r = dims[tgt], c = dims[src];
        int fib = arrow_fiber[a];
        if (fib <= 1) {
            action.push_back(c == 1 ? FFMatrix::from_rows(1, 1, p, {1})
                                    : FFMatrix::from_rows(1, 2, p, {1, 1}));
        } else if (fib == 2) {
            action.push_back(r == 1 ? FFMatrix::from_rows(1, 1, p, {1})
                                    : FFMatrix::from_rows(2, 1, p, {0, 1}));
        } else {
            action.push_back(r == 1 ? FFMatrix::from_rows(1, 1, p, {1})
                                    : FFMatrix::from_rows(2, 1, p, {1, 0}));
        }
    }
    strip.total = make_module(strip.spec.cover, dims, action);

    for (int k = 0; k <= n; ++k) {
        const FFMatrix& f = strip.total.action[2 * k];
        const FFMatrix& g = strip.total.action[2 * k + 1];
        Subspace kf = Subspace::from_vectors(f.kernel_basis(), f.cols, p);
        Subspace kg = Subspace::from_vectors(g.kernel_basis(), g.cols, p);
        if (!(kf == kg))
            throw std::logic_error("strip construction broke the equal-kernel condition");
    }
    if (!is_indecomposable(strip.total))
        throw std::logic_error("strip construction produced a decomposable module");
    return strip;
}

Module plane_point_module(AlgebraPtr k3, const std::vector<int>& point, const Module& x) {
    if (k3->num_arrows() != 3 || k3->num_vertices() != 2)
        throw ValidationError("plane points index arrow combinations of the triple arrow quiver",
                              k3->signature());
    if (x.alg->num_arrows() != 2 || x.alg->num_vertices() != 2 || x.alg->modulus() != k3->modulus())
        throw ValidationError("plane point modules are built from double arrow input",
                              x.alg->signature());
    const int p = k3->modulus();
    std::vector<int> c(3);
    int pivot = -1;
    for (int i = 0; i < 3; ++i) {
        if (static_cast<int>(point.size()) != 3)
            throw ValidationError("a plane point has three coordinates", int_dims(point));
        c[i] = ((point[i] % p) + p) % p;
        if (pivot < 0 && c[i] != 0) pivot = i;
    }
    if (pivot < 0) throw ValidationError("a plane point has a nonzero coordinate", int_dims(point));

    const FFMatrix& A = x.action[0];
    const FFMatrix& B = x.action[1];
    std::vector<FFMatrix> action(3, FFMatrix(A.rows, A.cols, p));
    std::vector<int> rest;
    for (int i = 0; i < 3; ++i)
        if (i != pivot) rest.push_back(i);
    action[rest[0]] = A;
    action[rest[1]] = B;
    int neg_inv = (p - ff_inv(c[pivot], p)) % p;
    action[pivot] = A.scaled(c[rest[0]]).add(B.scaled(c[rest[1]])).scaled(neg_inv);
    return make_module(k3, x.dims, action);
}

std::vector<ExampleEntry> list_examples() {
    return {
        {"example1-kt",
         "cogeneration thresholds along the inverse translation rays of the double arrow quiver",
         "k2",
         {"knit-agreement", "thresholds-found", "threshold-minimal"}},
        {"example2-tame",
         "mono/epi dichotomy and a joint surjection witness on the double arrow quiver",
         "k2",
         {"mono-epi-scan", "defect-witness"}},
        {"example3-k3",
         "two plane point families over the triple arrow quiver meet only in the semisimple "
         "projective",
         "k3",
         {"families-valid", "intersection"}},
        {"example4-covering",
         "zigzag strips over the doubled two-step quiver, their push-downs and measures",
         "example4",
         {"strip-lengths", "push-down-measures", "restricted-translate"}},
        {"remark-zero-relation",
         "strictly growing submodule-closed closures over the zero relation quiver",
         "remark",
         {"closure-growth", "variant-agreement"}},
    };
}

namespace {

VerifyReport verify_example1(const Caps& caps) {
    VerifyReport rep;
    rep.id = "example1-kt";
    AlgebraPtr k2 = registry_algebra("k2");
    const int b = 1, jmax = 4;

    std::vector<std::vector<Module>> ray(2);
    for (int v = 0; v < 2; ++v) {
        ray[v].push_back(projective_module(k2, v));
        for (int j = 1; j <= jmax; ++j) ray[v].push_back(inverse_translate(ray[v].back()));
    }

    run_check(rep, "knit-agreement", [&]() -> std::pair<bool, std::string> {
        auto rows = knit_dim_vectors(k2, jmax);
        int matched = 0;
        for (const auto& row : rows) {
            const Module& m = ray[row.vertex][row.step];
            for (int v = 0; v < 2; ++v)
                if (m.dims[v] != row.dims[v])
                    return {false, "knitted row " + int_dims({(int)row.dims[0], (int)row.dims[1]}) +
                                       " disagrees with the module " + m.dims_string()};
            ++matched;
        }
        return {true, std::to_string(matched) + " knitted dimension vectors match the modules"};
    });

    CogenThresholdReport thresholds = cogeneration_threshold_check(k2, b, jmax, caps);

    run_check(rep, "thresholds-found", [&]() -> std::pair<bool, std::string> {
        int found = 0;
        for (const auto& e : thresholds.entries) {
            if (!e.least_j) {
                std::ostringstream os;
                os << "no threshold for probe step " << e.i << " of vertex " << e.probe_vertex
                   << " against the ray of vertex " << e.ray_vertex << " up to " << jmax;
                return {false, os.str()};
            }
            ++found;
        }
        return {true, std::to_string(found) + " probe/ray pairs, all thresholds found"};
    });

    run_check(rep, "threshold-minimal", [&]() -> std::pair<bool, std::string> {
        int sharp = 0;
        for (const auto& e : thresholds.entries) {
            if (!e.least_j) continue;
            const Module& probe = ray[e.probe_vertex][e.i];
            for (int j = *e.least_j; j <= jmax; ++j)
                if (!is_cogenerated(probe, ray[e.ray_vertex][j]))
                    return {false, "threshold tail broken at step " + std::to_string(j)};
            if (*e.least_j > 0) {
                if (is_cogenerated(probe, ray[e.ray_vertex][*e.least_j - 1]))
                    return {false, "threshold not minimal for probe " + probe.dims_string()};
                ++sharp;
            }
        }
        return {true, "tails verified, " + std::to_string(sharp) + " thresholds sharp"};
    });

    return rep;
}

VerifyReport verify_example2(const Caps& caps) {
    VerifyReport rep;
    rep.id = "example2-tame";
    AlgebraPtr k2 = registry_algebra("k2");

    run_check(rep, "mono-epi-scan", [&]() -> std::pair<bool, std::string> {
        MonoEpiReport scan = mono_epi_scan(k2, 4, caps);
        if (!scan.ok) return {false, scan.violation};
        if (scan.maps_checked <= 0) return {false, "the scan inspected no maps"};
        std::ostringstream os;
        os << scan.maps_checked << " maps checked, each injective or surjective";
        for (const auto& n : scan.notes) os << "; " << n;
        return {true, os.str()};
    });

    run_check(rep, "defect-witness", [&]() -> std::pair<bool, std::string> {
        Module pre = projective_module(k2, 0);
        JointSurjectionWitness w = joint_surjection_search(k2, pre, 4, caps);
        if (!w.found) return {false, "no witness for " + pre.dims_string() + ": " + w.note};
        std::ostringstream os;
        os << w.parts.size() << " joint surjections onto";
        for (const auto& part : w.parts) os << " " << part.dims_string();
        os << "; " << w.note;
        return {true, os.str()};
    });

    return rep;
}

VerifyReport verify_example3(const Caps& caps) {
    VerifyReport rep;
    rep.id = "example3-k3";
    AlgebraPtr k3 = registry_algebra("k3");
    AlgebraPtr k2 = registry_algebra("k2");
    const int bound = 4;
    const std::vector<std::vector<int>> points = {{1, 0, 0}, {0, 1, 0}};

    std::vector<std::vector<Module>> family(points.size());
    run_check(rep, "families-valid", [&]() -> std::pair<bool, std::string> {
        SubcatSnapshot snap = enumerate_indecomposables(k2, bound, caps);
        EulerData ed = euler_data(k2);
        for (std::size_t f = 0; f < points.size(); ++f) {
            for (const auto& m : snap.members) {
                auto d = ed.defect_of(m.dims);
                if (!d || *d >= 0) continue;
                Module y = plane_point_module(k3, points[f], m);
                CheckResult chk = check_module(y);
                if (!chk.ok) return {false, chk.violation};
                if (!is_indecomposable(y, caps))
                    return {false, "transferred member " + y.dims_string() + " is decomposable"};
                FFMatrix combo(y.action[0].rows, y.action[0].cols, k3->modulus());
                for (int i = 0; i < 3; ++i) combo = combo.add(y.action[i].scaled(points[f][i]));
                if (!combo.is_zero())
                    return {false, "member " + y.dims_string() +
                                       " is not annihilated by its plane point"};
                family[f].push_back(y);
            }
        }
        std::ostringstream os;
        os << family[0].size() << " and " << family[1].size()
           << " members transferred, all annihilated and indecomposable";
        return {true, os.str()};
    });

    run_check(rep, "intersection", [&]() -> std::pair<bool, std::string> {
        if (family[0].empty() || family[1].empty())
            return {false, "families were not built"};
        IsoRegistry reg(caps);
        std::set<int> ids;
        for (const auto& m : family[0]) ids.insert(reg.insert(m));
        std::vector<Module> common;
        for (const auto& m : family[1]) {
            auto id = reg.find(m);
            if (id && ids.count(*id)) common.push_back(m);
        }
        for (const auto& m : common) {
            if (!is_semisimple(m))
                return {false, "common member " + m.dims_string() + " is not semisimple"};
            if (!is_projective(m))
                return {false, "common member " + m.dims_string() + " is not projective"};
        }
        if (common.size() != 1)
            return {false, std::to_string(common.size()) + " common classes, expected exactly 1"};
        std::ostringstream os;
        os << "1 common class " << common[0].dims_string() << ", semisimple projective";
        return {true, os.str()};
    });

    return rep;
}

VerifyReport verify_example4(const Caps& caps) {
    VerifyReport rep;
    rep.id = "example4-covering";
    AlgebraPtr e4 = registry_algebra("example4");

    run_check(rep, "strip-lengths", [&]() -> std::pair<bool, std::string> {
        for (int n = 1; n <= 3; ++n) {
            StripModule strip = zigzag_strip(n);
            if (strip.total.length() != 2 + 5 * n)
                return {false, "strip " + std::to_string(n) + " has length " +
                                   std::to_string(strip.total.length())};
            auto top = top_dims(strip.total);
            int t = std::accumulate(top.begin(), top.end(), 0);
            if (t != n)
                return {false, "strip " + std::to_string(n) + " has top length " +
                                   std::to_string(t)};
        }
        return {true, "strips 1..3 have lengths 7, 12, 17 and tops 1, 2, 3"};
    });

    run_check(rep, "push-down-measures", [&]() -> std::pair<bool, std::string> {
        MeasureCache cache(caps);
        StripModule s1 = zigzag_strip(1);
        StripModule s2 = zigzag_strip(2);
        Module y1 = push_down(s1.spec, s1.total);
        Module y2 = push_down(s2.spec, s2.total);
        GRMeasure m1 = cache.measure(y1);
        GRMeasure m2 = cache.measure(y2);
        if (m1.elems != std::vector<int>{1, 3, 7})
            return {false, "push-down of strip 1 has measure " + measure_string(m1)};
        if (!iso_test(y1, projective_module(e4, 2), caps))
            return {false, "push-down of strip 1 is not the big projective"};
        if (m2.elems != std::vector<int>{1, 3, 7, 12})
            return {false, "push-down of strip 2 has measure " + measure_string(m2)};
        std::ostringstream os;
        os << "push-downs " << y1.dims_string() << " and " << y2.dims_string()
           << " have measures " << measure_string(m1) << " and " << measure_string(m2);
        return {true, os.str()};
    });

    run_check(rep, "restricted-translate", [&]() -> std::pair<bool, std::string> {
        Module x = inverse_translate(projective_module(e4, 0));
        if (x.dims != std::vector<int>{3, 2, 0})
            return {false, "inverse translate of the small projective has dims " +
                               x.dims_string()};
        if (!is_indecomposable(x, caps)) return {false, "the (3,2,0) module is decomposable"};
        AlgebraPtr k2 = registry_algebra("k2");
        Module r = make_module(k2, {x.dims[1], x.dims[0]}, {x.action[0], x.action[1]});
        CheckResult chk = check_module(r);
        if (!chk.ok) return {false, chk.violation};
        if (!is_indecomposable(r, caps)) return {false, "the restriction is decomposable"};
        if (is_projective(r)) return {false, "the restriction is projective"};
        if (is_semisimple(r)) return {false, "the restriction is semisimple"};
        return {true, "restriction " + r.dims_string() +
                          " is indecomposable, not projective, not semisimple"};
    });

    return rep;
}

VerifyReport verify_remark(const Caps& caps) {
    VerifyReport rep;
    rep.id = "remark-zero-relation";

    auto closure_counts = [&](AlgebraPtr alg) {
        std::vector<std::size_t> counts;
        for (int bound = 3; bound <= 5; ++bound) {
            SubcatSnapshot all = enumerate_indecomposables(alg, bound, caps);
            std::vector<Module> seeds;
            for (const auto& m : all.members)
                if (m.dims[0] == 0) seeds.push_back(m);
            SubcatSnapshot closed = cogeneration_closure(alg, seeds, bound, caps);
            CheckResult sc = is_submodule_closed(closed, caps);
            if (!sc.ok) throw std::logic_error(sc.violation);
            counts.push_back(closed.members.size());
        }
        return counts;
    };

    std::vector<std::size_t> counts;
    run_check(rep, "closure-growth", [&]() -> std::pair<bool, std::string> {
        counts = closure_counts(registry_algebra("remark"));
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] <= counts[i - 1])
                return {false, "closure stopped growing at bound " + std::to_string(3 + (int)i)};
        AlgebraPtr k2 = registry_algebra("k2");
        for (int bound = 3; bound <= 5; ++bound) {
            std::size_t expect = enumerate_indecomposables(k2, bound, caps).members.size();
            if (counts[bound - 3] != expect) {
                std::ostringstream os;
                os << "closure at bound " << bound << " has " << counts[bound - 3]
                   << " classes, the vanishing-component count is " << expect;
                return {false, os.str()};
            }
        }
        std::ostringstream os;
        os << "submodule-closed closures of sizes " << counts[0] << " < " << counts[1] << " < "
           << counts[2] << " at bounds 3, 4, 5";
        return {true, os.str()};
    });

    run_check(rep, "variant-agreement", [&]() -> std::pair<bool, std::string> {
        auto alt = closure_counts(registry_algebra("remark-alt"));
        if (alt != counts)
            return {false, "the other composite relation gives different closure sizes"};
        return {true, "the variant relation gives the same closure sizes"};
    });

    return rep;
}

}  // namespace

VerifyReport verify_example(const std::string& id, const Caps& caps) {
    if (id == "example1-kt") return verify_example1(caps);
    if (id == "example2-tame") return verify_example2(caps);
    if (id == "example3-k3") return verify_example3(caps);
    if (id == "example4-covering") return verify_example4(caps);
    if (id == "remark-zero-relation") return verify_remark(caps);
    throw ValidationError("unknown example id", id);
}

}  // namespace qmod
