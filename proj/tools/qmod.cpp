#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmod/artrans.hpp"
#include "qmod/errors.hpp"
#include "qmod/explorer.hpp"
#include "qmod/formats.hpp"
#include "qmod/grmeasure.hpp"
#include "qmod/registry.hpp"
#include "qmod/tame.hpp"

namespace {

using nlohmann::json;
using namespace qmod;

struct Options {
    std::string format = "text";
    int threads = 1;
    unsigned long long seed = 0;
    Caps caps;
};

void apply_cap(Caps& caps, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--caps", "expected KEY=VALUE, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    unsigned long long value = 0;
    try {
        value = std::stoull(kv.substr(eq + 1));
    } catch (...) {
        throw CLI::ValidationError("--caps", "'" + kv.substr(eq + 1) + "' is not a number");
    }
    if (key == "submodule_vector_budget")
        caps.submodule_vector_budget = value;
    else if (key == "submodule_count_budget")
        caps.submodule_count_budget = value;
    else if (key == "end_scan_budget")
        caps.end_scan_budget = value;
    else if (key == "hom_scan_budget")
        caps.hom_scan_budget = value;
    else if (key == "tuple_budget")
        caps.tuple_budget = value;
    else if (key == "enum_len_cap_two_vertex")
        caps.enum_len_cap_two_vertex = static_cast<int>(value);
    else if (key == "enum_len_cap_general")
        caps.enum_len_cap_general = static_cast<int>(value);
    else if (key == "path_budget")
        caps.path_budget = value;
    else if (key == "nilpotency_probe_cap")
        caps.nilpotency_probe_cap = static_cast<int>(value);
    else
        throw CLI::ValidationError("--caps", "unknown cap '" + key + "'");
}

int emit(const Options& opt, const json& doc) {
    std::cout << render_document(doc, opt.format);
    return 0;
}

int cmd_algebra_validate(const Options& opt, const std::string& file) {
    json doc = make_document("algebra");
    doc["file"] = file;
    try {
        AlgebraPtr alg = load_algebra(file);
        auto rep = alg->report();
        doc["valid"] = true;
        doc["modulus"] = alg->modulus();
        doc["vertices"] = alg->num_vertices();
        doc["arrows"] = alg->num_arrows();
        doc["relations"] = alg->relations().size();
        doc["hereditary"] = alg->hereditary();
        doc["nilpotency"] = alg->nilpotency();
        doc["dimension"] = rep.total_dim;
        doc["summary"] = "valid: dimension " + std::to_string(rep.total_dim) + " over F_" +
                         std::to_string(alg->modulus());
        return emit(opt, doc);
    } catch (const ValidationError& e) {
        doc["valid"] = false;
        doc["summary"] = std::string("invalid: ") + e.what();
        emit(opt, doc);
        return 1;
    }
}

int cmd_mod_check(const Options& opt, const std::vector<std::string>& files) {
    json doc = make_document("mod-check");
    doc["columns"] = {"file", "ok", "dims", "length", "violation"};
    doc["rows"] = json::array();
    int bad = 0;
    for (const auto& f : files) {
        json row;
        row["file"] = f;
        try {
            Module x = load_module(f);
            CheckResult chk = check_module(x);
            row["ok"] = chk.ok;
            row["dims"] = x.dims_string();
            row["length"] = x.length();
            row["violation"] = chk.violation;
            if (!chk.ok) ++bad;
        } catch (const ValidationError& e) {
            row["ok"] = false;
            row["violation"] = e.what();
            ++bad;
        }
        doc["rows"].push_back(row);
    }
    doc["summary"] = bad ? std::to_string(bad) + " of " + std::to_string(files.size()) +
                               " modules failed"
                         : "all " + std::to_string(files.size()) + " modules check out";
    emit(opt, doc);
    return bad ? 1 : 0;
}

void require_same_algebra(const Module& x, const Module& y) {
    if (x.alg->signature() != y.alg->signature())
        throw ValidationError("the two modules live over different algebras",
                              x.alg->signature() + " vs " + y.alg->signature());
}

int cmd_mod_hom(const Options& opt, const std::vector<std::string>& files) {
    Module x = load_module(files[0]);
    Module y = load_module(files[1]);
    require_same_algebra(x, y);
    auto basis = hom_basis(x, y);
    json doc = make_document("hom");
    doc["source"] = x.dims_string();
    doc["target"] = y.dims_string();
    doc["dim"] = basis.size();
    doc["summary"] = "dim Hom = " + std::to_string(basis.size());
    return emit(opt, doc);
}

int cmd_mod_cogen(const Options& opt, const std::vector<std::string>& files) {
    Module x = load_module(files[0]);
    Module m = load_module(files[1]);
    require_same_algebra(x, m);
    bool ok = is_cogenerated(x, m);
    json doc = make_document("cogen");
    doc["module"] = x.dims_string();
    doc["cogenerator"] = m.dims_string();
    doc["cogenerated"] = ok;
    doc["summary"] = x.dims_string() + (ok ? " embeds into a power of " : " does not embed into any power of ") +
                     m.dims_string();
    emit(opt, doc);
    return ok ? 0 : 1;
}

int cmd_mod_decompose(const Options& opt, const std::vector<std::string>& files) {
    json doc = make_document("decompose");
    doc["columns"] = {"file", "summand", "dims", "length"};
    doc["rows"] = json::array();
    for (const auto& f : files) {
        Module x = load_module(f);
        auto parts = decompose(x, opt.caps);
        std::sort(parts.begin(), parts.end(), module_order_less);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            json row;
            row["file"] = f;
            row["summand"] = i;
            row["dims"] = parts[i].dims_string();
            row["length"] = parts[i].length();
            doc["rows"].push_back(row);
        }
    }
    doc["summary"] = std::to_string(doc["rows"].size()) + " indecomposable summands";
    return emit(opt, doc);
}

int cmd_mod_submodules(const Options& opt, const std::vector<std::string>& files) {
    json doc = make_document("submodules");
    doc["columns"] = {"file", "index", "dims", "length"};
    doc["rows"] = json::array();
    for (const auto& f : files) {
        Module x = load_module(f);
        auto subs = enumerate_submodules(x, opt.caps);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            json row;
            row["file"] = f;
            row["index"] = i;
            std::string d = "(";
            for (std::size_t v = 0; v < subs[i].spaces.size(); ++v)
                d += (v ? "," : "") + std::to_string(subs[i].spaces[v].dim());
            row["dims"] = d + ")";
            row["length"] = subs[i].length();
            doc["rows"].push_back(row);
        }
    }
    doc["summary"] = std::to_string(doc["rows"].size()) + " submodules";
    return emit(opt, doc);
}

int cmd_gr_measure(const Options& opt, const std::string& file) {
    Module x = load_module(file);
    std::vector<Module> chain;
    GRMeasure m = gr_measure(x, opt.caps, &chain);
    json doc = make_document("measure");
    doc["module"] = x.dims_string();
    doc["measure"] = measure_string(m);
    doc["chain"] = json::array();
    for (const auto& c : chain) doc["chain"].push_back(c.dims_string());
    doc["summary"] = measure_string(m);
    return emit(opt, doc);
}

int cmd_takeoff(const Options& opt, const std::string& ref, int max_len, int count) {
    AlgebraPtr alg = resolve_algebra(ref);
    SubcatSnapshot snap = enumerate_indecomposables(alg, max_len, opt.caps);
    TakeoffReport rep = take_off_sequence(snap, count, opt.caps);
    json doc = make_document("takeoff");
    doc["columns"] = {"index", "measure", "classes", "dims"};
    doc["rows"] = json::array();
    std::string joined;
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        const auto& e = rep.entries[i];
        json row;
        row["index"] = i;
        row["measure"] = measure_string(e.measure);
        row["classes"] = e.members.size();
        std::string dims;
        for (std::size_t j = 0; j < e.members.size(); ++j)
            dims += (j ? " " : "") + snap.members[e.members[j]].dims_string();
        row["dims"] = dims;
        doc["rows"].push_back(row);
        joined += (i ? "; " : "") + measure_string(e.measure);
    }
    doc["summary"] = joined;
    if (rep.truncated) doc["notes"] = {"sequence truncated at " + std::to_string(count)};
    return emit(opt, doc);
}

int cmd_closure(const Options& opt, const std::string& ref, const std::vector<std::string>& seeds,
                int max_len) {
    AlgebraPtr alg = resolve_algebra(ref);
    std::vector<Module> seed_mods;
    for (const auto& s : seeds) {
        Module x = load_module(s);
        if (x.alg->signature() != alg->signature())
            throw ValidationError("seed module lives over a different algebra", s);
        seed_mods.push_back(x);
    }
    SubcatSnapshot snap = cogeneration_closure(alg, seed_mods, max_len, opt.caps);
    json doc = make_document("closure");
    doc["columns"] = {"index", "dims", "length"};
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < snap.members.size(); ++i) {
        json row;
        row["index"] = i;
        row["dims"] = snap.members[i].dims_string();
        row["length"] = snap.members[i].length();
        doc["rows"].push_back(row);
    }
    doc["bound"] = snap.bound;
    doc["summary"] = std::to_string(snap.members.size()) + " classes";
    return emit(opt, doc);
}

int cmd_enumerate(const Options& opt, const std::string& ref, int max_len) {
    AlgebraPtr alg = resolve_algebra(ref);
    SubcatSnapshot snap = enumerate_indecomposables(alg, max_len, opt.caps);
    json doc = make_document("enumerate");
    doc["columns"] = {"index", "dims", "length"};
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < snap.members.size(); ++i) {
        json row;
        row["index"] = i;
        row["dims"] = snap.members[i].dims_string();
        row["length"] = snap.members[i].length();
        doc["rows"].push_back(row);
    }
    doc["bound"] = snap.bound;
    doc["summary"] = std::to_string(snap.members.size()) + " classes up to length " +
                     std::to_string(max_len);
    return emit(opt, doc);
}

int cmd_knit(const Options& opt, const std::string& ref, int steps) {
    AlgebraPtr alg = resolve_algebra(ref);
    auto rows = knit_dim_vectors(alg, steps);
    json doc = make_document("knit");
    doc["columns"] = {"vertex", "step", "dims"};
    doc["rows"] = json::array();
    for (const auto& r : rows) {
        json row;
        row["vertex"] = alg->quiver().vertices[r.vertex];
        row["step"] = r.step;
        std::string d = "(";
        for (std::size_t v = 0; v < r.dims.size(); ++v)
            d += (v ? "," : "") + std::to_string(r.dims[v]);
        row["dims"] = d + ")";
        doc["rows"].push_back(row);
    }
    doc["summary"] = std::to_string(rows.size()) + " dimension vectors";
    return emit(opt, doc);
}

int cmd_verify(const Options& opt, const std::string& id) {
    VerifyReport rep = verify_example(id, opt.caps);
    json doc = make_document("verify");
    doc["id"] = rep.id;
    doc["ok"] = rep.ok;
    doc["complete"] = rep.complete;
    doc["columns"] = {"check", "status", "seconds", "detail"};
    doc["rows"] = json::array();
    for (const auto& c : rep.checks) {
        json row;
        row["check"] = c.name;
        row["status"] = c.status;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", c.seconds);
        row["seconds"] = std::string(buf);
        row["detail"] = c.detail;
        doc["rows"].push_back(row);
    }
    doc["summary"] = rep.id + (rep.ok ? (rep.complete ? ": ok" : ": ok, with skipped checks")
                                      : ": FAILED");
    emit(opt, doc);
    if (!rep.ok) return 1;
    if (!rep.complete) return 3;
    return 0;
}

int cmd_list(const Options& opt) {
    json doc = make_document("examples");
    doc["columns"] = {"id", "algebra", "checks", "summary"};
    doc["rows"] = json::array();
    for (const auto& e : list_examples()) {
        json row;
        row["id"] = e.id;
        row["algebra"] = e.algebra;
        std::string checks;
        for (std::size_t i = 0; i < e.checks.size(); ++i) checks += (i ? "," : "") + e.checks[i];
        row["checks"] = checks;
        row["summary"] = e.summary;
        doc["rows"].push_back(row);
    }
    doc["summary"] = std::to_string(doc["rows"].size()) + " examples";
    return emit(opt, doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with finite-length modules over quiver algebras"};
    app.require_subcommand(1);

    Options opt;
    int rc = 0;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "tsv", "text"}));
    app.add_option("--threads", opt.threads, "worker thread count (output-independent)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for randomized subroutines");

    // algebra validate FILE
    auto* algebra = app.add_subcommand("algebra", "algebra file operations");
    algebra->require_subcommand(1);
    auto* validate = algebra->add_subcommand("validate", "parse and validate an algebra file");
    static std::string validate_file;
    validate->add_option("FILE", validate_file, "algebra file")->required();
    validate->callback([&]() { rc = cmd_algebra_validate(opt, validate_file); });

    // mod check|hom|cogen|decompose|submodules FILES
    auto* mod = app.add_subcommand("mod", "module file operations");
    mod->require_subcommand(1);
    static std::vector<std::string> mod_files;
    auto add_mod_sub = [&](const char* name, const char* desc, std::size_t min_files,
                           std::size_t max_files, auto fn) {
        auto* sub = mod->add_subcommand(name, desc);
        sub->add_option("FILES", mod_files, "module files")
            ->required()
            ->expected(static_cast<int>(min_files), static_cast<int>(max_files));
        sub->callback([&opt, &rc, fn]() { rc = fn(opt, mod_files); });
        return sub;
    };
    add_mod_sub("check", "validate module files", 1, -1, cmd_mod_check);
    add_mod_sub("hom", "dimension of the homomorphism space", 2, 2, cmd_mod_hom);
    add_mod_sub("cogen", "does the first module embed into a power of the second", 2, 2,
                cmd_mod_cogen);
    add_mod_sub("decompose", "split modules into indecomposable summands", 1, -1,
                cmd_mod_decompose);
    add_mod_sub("submodules", "enumerate all submodules", 1, -1, cmd_mod_submodules);

    // gr measure FILE
    auto* gr = app.add_subcommand("gr", "Gabriel-Roiter measure");
    gr->require_subcommand(1);
    auto* measure = gr->add_subcommand("measure", "measure of a module");
    static std::string measure_file;
    measure->add_option("FILE", measure_file, "module file")->required();
    measure->callback([&]() { rc = cmd_gr_measure(opt, measure_file); });

    // takeoff ALG --max-len L --count S
    auto* takeoff = app.add_subcommand("takeoff", "smallest measures of an enumerated category");
    static std::string takeoff_alg;
    static int takeoff_len = 0, takeoff_count = 0;
    takeoff->add_option("ALG", takeoff_alg, "algebra id or file")->required();
    takeoff->add_option("--max-len", takeoff_len, "enumeration length bound")->required();
    takeoff->add_option("--count", takeoff_count, "number of measures")->required();
    takeoff->callback([&]() { rc = cmd_takeoff(opt, takeoff_alg, takeoff_len, takeoff_count); });

    // closure ALG --seeds FILES --max-len L
    auto* closure = app.add_subcommand("closure", "submodule-closed closure of seed modules");
    static std::string closure_alg;
    static std::vector<std::string> closure_seeds;
    static int closure_len = 0;
    closure->add_option("ALG", closure_alg, "algebra id or file")->required();
    closure->add_option("--seeds", closure_seeds, "seed module files")->required();
    closure->add_option("--max-len", closure_len, "length bound")->required();
    closure->callback([&]() { rc = cmd_closure(opt, closure_alg, closure_seeds, closure_len); });

    // enumerate ALG --max-len L
    auto* enumerate = app.add_subcommand("enumerate", "indecomposables up to a length bound");
    static std::string enum_alg;
    static int enum_len = 0;
    enumerate->add_option("ALG", enum_alg, "algebra id or file")->required();
    enumerate->add_option("--max-len", enum_len, "length bound")->required();
    enumerate->callback([&]() { rc = cmd_enumerate(opt, enum_alg, enum_len); });

    // knit ALG --steps N
    auto* knit = app.add_subcommand("knit", "inverse translation dimension vectors");
    static std::string knit_alg;
    static int knit_steps = 0;
    knit->add_option("ALG", knit_alg, "algebra id or file")->required();
    knit->add_option("--steps", knit_steps, "translation steps")->required();
    knit->callback([&]() { rc = cmd_knit(opt, knit_alg, knit_steps); });

    // verify ID [--caps KEY=VALUE ...]
    auto* verify = app.add_subcommand("verify", "run a built-in example's checks");
    static std::string verify_id;
    static std::vector<std::string> verify_caps;
    verify->add_option("ID", verify_id, "example id")->required();
    verify->add_option("--caps", verify_caps, "cap overrides as KEY=VALUE");
    verify->callback([&]() {
        for (const auto& kv : verify_caps) apply_cap(opt.caps, kv);
        rc = cmd_verify(opt, verify_id);
    });

    // list
    auto* list = app.add_subcommand("list", "list the built-in examples");
    list->callback([&]() { rc = cmd_list(opt); });

    std::function<void(CLI::App*)> allow_global_options = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            allow_global_options(sub);
        }
    };
    allow_global_options(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qmod::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const qmod::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qmod::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
