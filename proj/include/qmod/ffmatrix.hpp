#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmod/errors.hpp"

namespace qmod {

using Vec = std::vector<std::uint8_t>;

bool prime_supported(int p);
int ff_inv(int a, int p);  // multiplicative inverse, a != 0 mod p

// Dense matrix over F_p, p in {2,3,5,7}.  Entries are stored reduced
// (0 <= a < p), row-major.  Row reduction uses a fixed pivoting order:
// leftmost pivot column, topmost nonzero row, so every derived basis is
// deterministic.
struct FFMatrix {
    int rows = 0;
    int cols = 0;
    int p = 2;
    std::vector<std::uint8_t> a;

    FFMatrix() = default;
    FFMatrix(int r, int c, int p_);
    static FFMatrix identity(int n, int p);
    // Row-major entries; values are reduced mod p.
    static FFMatrix from_rows(int r, int c, int p, const std::vector<int>& entries);

    std::uint8_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::uint8_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const FFMatrix& o) const;
    bool is_zero() const;

    FFMatrix mul(const FFMatrix& o) const;
    FFMatrix add(const FFMatrix& o) const;
    FFMatrix sub(const FFMatrix& o) const;
    FFMatrix scaled(int c) const;
    FFMatrix transpose() const;
    Vec apply(const Vec& v) const;  // matrix * column vector

    FFMatrix hstack(const FFMatrix& o) const;  // [this | o]
    FFMatrix vstack(const FFMatrix& o) const;  // [this ; o]
    FFMatrix columns(const std::vector<int>& idx) const;
    Vec column(int j) const;

    // Reduced row echelon form in place; returns pivot column indices.
    std::vector<int> rref_in_place();
    int rank() const;
    // Basis of the right null space {v : A v = 0}, deterministic order
    // (one vector per free column, free columns ascending).
    std::vector<Vec> kernel_basis() const;
    // One solution of A x = b, or nullopt if inconsistent.
    std::optional<Vec> solve(const Vec& b) const;
    // Inverse of a square invertible matrix; throws std::logic_error otherwise.
    FFMatrix inverse() const;

    std::string bytes() const;  // dims + entries, usable as a map key
};

// A subspace of F_p^d given by a column basis in reduced column echelon form.
// The echelon form is unique per subspace, so `bytes()` is a canonical key.
struct Subspace {
    FFMatrix basis;  // d x k, columns are the basis, RCEF
    static Subspace zero(int d, int p);
    static Subspace full(int d, int p);
    static Subspace from_columns(const FFMatrix& cols);      // reduces them
    static Subspace from_vectors(const std::vector<Vec>& vs, int d, int p);
    int dim() const { return basis.cols; }
    int ambient() const { return basis.rows; }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    Subspace join(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    bool operator==(const Subspace& o) const { return basis == o.basis; }
    std::string bytes() const { return basis.bytes(); }
};

// Reduced column echelon form of an arbitrary column family (canonical
// column basis of its span).
FFMatrix column_echelon(const FFMatrix& m);

// Coordinates C with B * C = Y, where the columns of B are independent.
// Throws std::logic_error if some column of Y is outside the span.
FFMatrix coords_in_basis(const FFMatrix& B, const FFMatrix& Y);

// Unit vectors extending the column span of B to the full space,
// chosen greedily by ascending coordinate (deterministic complement).
std::vector<int> complement_rows(const FFMatrix& B);

}  // namespace qmod
