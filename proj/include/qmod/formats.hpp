#pragma once

#include <string>

#include "json.hpp"
#include "qmod/presentation.hpp"
#include "qmod/repcore.hpp"

namespace qmod {

// Text algebra description, one directive per line; '#' starts a comment,
// blank lines are skipped, directives appear in this order:
//   modulus P
//   vertices NAME...
//   arrow LABEL SRC TGT
//   relation C LABEL... [+ C LABEL...]
// Arrows reference declared vertex names.  A relation term is an integer
// coefficient followed by arrow labels in traversal order (first applied
// first); terms of one relation share source and target.  Unknown or
// out-of-order directives are rejected.
AlgebraPtr parse_algebra_text(const std::string& text);
std::string algebra_text(const AlgebraPtr& alg);
AlgebraPtr load_algebra(const std::string& path);

// A built-in algebra id when one matches, otherwise a file path.
AlgebraPtr resolve_algebra(const std::string& ref);

// Text module description:
//   algebra REF
//   dims D...
//   matrix LABEL ENTRY...
// REF resolves like resolve_algebra, with paths taken relative to base_dir
// first.  dims are per vertex in declaration order.  Exactly one matrix
// directive per arrow, row-major (rows = target dimension), entries already
// reduced into [0, p).
Module parse_module_text(const std::string& text, const std::string& base_dir = "");
std::string module_text(const Module& x, const std::string& algebra_ref);
Module load_module(const std::string& path);

// Canonical order for collections of modules in output: length, then
// dimension vector lexicographically, then the action bytes.
bool module_order_less(const Module& a, const Module& b);

// Command output document: {"schema": "qmod/1", "kind": ..., payload}.
// Tabular kinds carry fixed "columns" and "rows" arrays; "notes" is an
// optional string array.  json prints the document, tsv prints a header and
// the rows, text prints a human-readable summary.
nlohmann::json make_document(const std::string& kind);
std::string render_document(const nlohmann::json& doc, const std::string& format);

}  // namespace qmod
