#include "qmod/formats.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmod/errors.hpp"
#include "qmod/registry.hpp"

namespace qmod {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, const std::string& what) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos != tok.size()) throw ParseError(what + ": '" + tok + "' is not an integer");
    return v;
}

int find_name(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

AlgebraPtr parse_algebra_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    // Directive stages keep the declaration order fixed:
    // modulus, then vertices, then arrows, then relations.
    int stage = 0;
    int p = 0;
    Quiver q;
    std::vector<Relation> rels;
    std::vector<std::string> arrow_labels;

    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];

        if (key == "modulus") {
            if (stage != 0) fail("'modulus' must come first, exactly once");
            if (toks.size() != 2) fail("'modulus' takes one value");
            p = parse_int(toks[1], "modulus");
            stage = 1;
        } else if (key == "vertices") {
            if (stage != 1) fail("'vertices' must follow 'modulus', exactly once");
            if (toks.size() < 2) fail("'vertices' needs at least one name");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (find_name(q.vertices, toks[i]) >= 0) fail("duplicate vertex '" + toks[i] + "'");
                q.vertices.push_back(toks[i]);
            }
            stage = 2;
        } else if (key == "arrow") {
            if (stage < 2 || stage > 3) fail("'arrow' directives follow 'vertices'");
            if (toks.size() != 4) fail("'arrow' takes label, source, target");
            if (find_name(arrow_labels, toks[1]) >= 0) fail("duplicate arrow '" + toks[1] + "'");
            int src = find_name(q.vertices, toks[2]);
            int tgt = find_name(q.vertices, toks[3]);
            if (src < 0) fail("unknown vertex '" + toks[2] + "'");
            if (tgt < 0) fail("unknown vertex '" + toks[3] + "'");
            arrow_labels.push_back(toks[1]);
            q.arrows.push_back({toks[1], src, tgt});
            stage = 3;
        } else if (key == "relation") {
            if (stage < 3) fail("'relation' directives follow the arrows");
            stage = 4;
            std::vector<std::vector<std::string>> groups(1);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "+")
                    groups.emplace_back();
                else
                    groups.back().push_back(toks[i]);
            }
            Relation r;
            for (const auto& g : groups) {
                if (g.size() < 2) fail("a relation term is a coefficient and arrow labels");
                RelTerm term;
                term.coeff = ((parse_int(g[0], "coefficient") % p) + p) % p;
                if (term.coeff == 0) fail("coefficient '" + g[0] + "' vanishes mod " +
                                          std::to_string(p));
                for (std::size_t i = 1; i < g.size(); ++i) {
                    int a = find_name(arrow_labels, g[i]);
                    if (a < 0) fail("unknown arrow '" + g[i] + "'");
                    if (i > 1 && q.arrows[term.arrows.back()].tgt != q.arrows[a].src)
                        fail("'" + g[i - 1] + "' and '" + g[i] + "' do not compose");
                    term.arrows.push_back(a);
                }
                int src = q.arrows[term.arrows.front()].src;
                int tgt = q.arrows[term.arrows.back()].tgt;
                if (r.terms.empty()) {
                    r.src = src;
                    r.tgt = tgt;
                } else if (r.src != src || r.tgt != tgt) {
                    fail("relation terms have mismatched endpoints");
                }
                r.terms.push_back(std::move(term));
            }
            rels.push_back(std::move(r));
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (stage < 2) throw ParseError("an algebra needs 'modulus' and 'vertices'");
    return Algebra::make(std::move(q), std::move(rels), p);
}

std::string algebra_text(const AlgebraPtr& alg) {
    std::ostringstream out;
    const Quiver& q = alg->quiver();
    out << "modulus " << alg->modulus() << "\n";
    out << "vertices";
    for (const auto& v : q.vertices) out << " " << v;
    out << "\n";
    for (const auto& a : q.arrows)
        out << "arrow " << a.label << " " << q.vertices[a.src] << " " << q.vertices[a.tgt] << "\n";
    for (const auto& r : alg->relations()) {
        out << "relation";
        for (std::size_t t = 0; t < r.terms.size(); ++t) {
            if (t) out << " +";
            out << " " << r.terms[t].coeff;
            for (int a : r.terms[t].arrows) out << " " << q.arrows[a].label;
        }
        out << "\n";
    }
    return out.str();
}

AlgebraPtr load_algebra(const std::string& path) {
    try {
        return parse_algebra_text(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

AlgebraPtr resolve_algebra(const std::string& ref) {
    for (const auto& id : registry_algebra_ids())
        if (id == ref) return registry_algebra(ref);
    return load_algebra(ref);
}

namespace {

AlgebraPtr resolve_algebra_near(const std::string& ref, const std::string& base_dir) {
    for (const auto& id : registry_algebra_ids())
        if (id == ref) return registry_algebra(ref);
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty()) {
        std::filesystem::path near = std::filesystem::path(base_dir) / p;
        if (std::filesystem::exists(near)) return load_algebra(near.string());
    }
    return load_algebra(ref);
}

}  // namespace

Module parse_module_text(const std::string& text, const std::string& base_dir) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    AlgebraPtr alg;
    std::vector<int> dims;
    std::vector<FFMatrix> action;
    std::vector<bool> seen;

    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];

        if (key == "algebra") {
            if (alg) fail("duplicate 'algebra'");
            if (toks.size() != 2) fail("'algebra' takes one reference");
            alg = resolve_algebra_near(toks[1], base_dir);
            seen.assign(alg->num_arrows(), false);
            action.assign(alg->num_arrows(), FFMatrix());
        } else if (key == "dims") {
            if (!alg) fail("'dims' must follow 'algebra'");
            if (!dims.empty()) fail("duplicate 'dims'");
            if (static_cast<int>(toks.size()) - 1 != alg->num_vertices())
                fail("'dims' needs one value per vertex (" +
                     std::to_string(alg->num_vertices()) + ")");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                int d = parse_int(toks[i], "dimension");
                if (d < 0) fail("negative dimension");
                dims.push_back(d);
            }
        } else if (key == "matrix") {
            if (dims.empty()) fail("'matrix' directives follow 'dims'");
            if (toks.size() < 2) fail("'matrix' takes an arrow label and entries");
            int a = alg->quiver().arrow_index(toks[1]);
            if (a < 0) fail("unknown arrow '" + toks[1] + "'");
            if (seen[a]) fail("duplicate matrix for '" + toks[1] + "'");
            int rows = dims[alg->quiver().arrows[a].tgt];
            int cols = dims[alg->quiver().arrows[a].src];
            if (static_cast<int>(toks.size()) - 2 != rows * cols)
                fail("matrix for '" + toks[1] + "' needs " + std::to_string(rows * cols) +
                     " entries (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
            std::vector<int> entries;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                int e = parse_int(toks[i], "entry");
                if (e < 0 || e >= alg->modulus())
                    fail("entry " + toks[i] + " is outside [0," +
                         std::to_string(alg->modulus()) + ")");
                entries.push_back(e);
            }
            action[a] = FFMatrix::from_rows(rows, cols, alg->modulus(), entries);
            seen[a] = true;
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!alg) throw ParseError("a module needs an 'algebra' reference");
    if (dims.empty()) throw ParseError("a module needs 'dims'");
    for (int a = 0; a < alg->num_arrows(); ++a)
        if (!seen[a])
            throw ParseError("missing matrix for arrow '" + alg->quiver().arrows[a].label + "'");
    return make_module(alg, dims, action);
}

std::string module_text(const Module& x, const std::string& algebra_ref) {
    std::ostringstream out;
    const Quiver& q = x.alg->quiver();
    out << "algebra " << algebra_ref << "\n";
    out << "dims";
    for (int d : x.dims) out << " " << d;
    out << "\n";
    for (int a = 0; a < x.alg->num_arrows(); ++a) {
        out << "matrix " << q.arrows[a].label;
        const FFMatrix& m = x.action[a];
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) out << " " << static_cast<int>(m.at(i, j));
        out << "\n";
    }
    return out.str();
}

Module load_module(const std::string& path) {
    std::string base = std::filesystem::path(path).parent_path().string();
    try {
        return parse_module_text(read_file(path), base);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

bool module_order_less(const Module& a, const Module& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.dims != b.dims) return a.dims < b.dims;
    std::string ab, bb;
    for (const auto& m : a.action) ab += m.bytes();
    for (const auto& m : b.action) bb += m.bytes();
    return ab < bb;
}

nlohmann::json make_document(const std::string& kind) {
    nlohmann::json doc;
    doc["schema"] = "qmod/1";
    doc["kind"] = kind;
    return doc;
}

namespace {

std::string cell_string(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::string render_document(const nlohmann::json& doc, const std::string& format) {
    if (format == "json") return doc.dump(2) + "\n";

    const bool tabular = doc.contains("columns") && doc.contains("rows");
    std::ostringstream out;

    if (format == "tsv") {
        if (tabular) {
            const auto& cols = doc["columns"];
            for (std::size_t i = 0; i < cols.size(); ++i)
                out << (i ? "\t" : "") << cols[i].get<std::string>();
            out << "\n";
            for (const auto& row : doc["rows"]) {
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    const std::string c = cols[i].get<std::string>();
                    out << (i ? "\t" : "") << (row.contains(c) ? cell_string(row[c]) : "");
                }
                out << "\n";
            }
        } else {
            for (const auto& [k, v] : doc.items())
                if (k != "schema" && k != "kind" && k != "notes") out << k << "\t" << cell_string(v) << "\n";
        }
        if (doc.contains("notes"))
            for (const auto& n : doc["notes"]) out << "# " << n.get<std::string>() << "\n";
        return out.str();
    }

    if (format == "text") {
        if (doc.contains("summary")) out << doc["summary"].get<std::string>() << "\n";
        for (const auto& [k, v] : doc.items()) {
            if (k == "schema" || k == "kind" || k == "notes" || k == "summary" || k == "columns" ||
                k == "rows")
                continue;
            out << k << ": " << cell_string(v) << "\n";
        }
        if (tabular) {
            const auto& cols = doc["columns"];
            std::vector<std::size_t> width(cols.size());
            std::vector<std::vector<std::string>> cells;
            cells.emplace_back();
            for (std::size_t i = 0; i < cols.size(); ++i) {
                cells.back().push_back(cols[i].get<std::string>());
                width[i] = cells.back().back().size();
            }
            for (const auto& row : doc["rows"]) {
                cells.emplace_back();
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    const std::string c = cols[i].get<std::string>();
                    cells.back().push_back(row.contains(c) ? cell_string(row[c]) : "");
                    width[i] = std::max(width[i], cells.back().back().size());
                }
            }
            for (const auto& row : cells) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) out << "  ";
                    out << row[i];
                    if (i + 1 < row.size())
                        out << std::string(width[i] - row[i].size(), ' ');
                }
                out << "\n";
            }
        }
        if (doc.contains("notes"))
            for (const auto& n : doc["notes"]) out << "note: " << n.get<std::string>() << "\n";
        return out.str();
    }

    throw ValidationError("unknown output format", format);
}

}  // namespace qmod
