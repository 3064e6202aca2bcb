#include "qmod/ffmatrix.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <stdexcept>

namespace qmod {

bool prime_supported(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

int ff_inv(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::logic_error("ff_inv: zero");
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw std::logic_error("ff_inv: no inverse");  // unreachable for prime p
}

FFMatrix::FFMatrix(int r, int c, int p_) : rows(r), cols(c), p(p_) {
    if (!prime_supported(p_)) throw std::invalid_argument("FFMatrix: modulus must be one of 2,3,5,7");
    if (r < 0 || c < 0) throw std::invalid_argument("FFMatrix: negative dimension");
    a.assign(static_cast<std::size_t>(r) * c, 0);
}

FFMatrix FFMatrix::identity(int n, int p) {
    FFMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FFMatrix FFMatrix::from_rows(int r, int c, int p, const std::vector<int>& entries) {
    if (static_cast<int>(entries.size()) != r * c)
        throw std::invalid_argument("FFMatrix::from_rows: entry count mismatch");
    FFMatrix m(r, c, p);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        int v = entries[k] % p;
        if (v < 0) v += p;
        m.a[k] = static_cast<std::uint8_t>(v);
    }
    return m;
}

bool FFMatrix::operator==(const FFMatrix& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
}

bool FFMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint8_t x) { return x == 0; });
}

FFMatrix FFMatrix::mul(const FFMatrix& o) const {
    if (cols != o.rows || p != o.p) throw std::invalid_argument("FFMatrix::mul: shape mismatch");
    FFMatrix r(rows, o.cols, p);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            int x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < o.cols; ++j) {
                int v = r.at(i, j) + x * o.at(k, j);
                r.at(i, j) = static_cast<std::uint8_t>(v % p);
            }
        }
    return r;
}

FFMatrix FFMatrix::add(const FFMatrix& o) const {
    if (rows != o.rows || cols != o.cols || p != o.p)
        throw std::invalid_argument("FFMatrix::add: shape mismatch");
    FFMatrix r(rows, cols, p);
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = static_cast<std::uint8_t>((a[k] + o.a[k]) % p);
    return r;
}

FFMatrix FFMatrix::sub(const FFMatrix& o) const {
    if (rows != o.rows || cols != o.cols || p != o.p)
        throw std::invalid_argument("FFMatrix::sub: shape mismatch");
    FFMatrix r(rows, cols, p);
    for (std::size_t k = 0; k < a.size(); ++k)
        r.a[k] = static_cast<std::uint8_t>(((a[k] - o.a[k]) % p + p) % p);
    return r;
}

FFMatrix FFMatrix::scaled(int c) const {
    c %= p;
    if (c < 0) c += p;
    FFMatrix r(rows, cols, p);
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = static_cast<std::uint8_t>(a[k] * c % p);
    return r;
}

FFMatrix FFMatrix::transpose() const {
    FFMatrix r(cols, rows, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

Vec FFMatrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("FFMatrix::apply: size mismatch");
    Vec r(rows, 0);
    for (int i = 0; i < rows; ++i) {
        int s = 0;
        for (int j = 0; j < cols; ++j) s += at(i, j) * v[j];
        r[i] = static_cast<std::uint8_t>(s % p);
    }
    return r;
}

FFMatrix FFMatrix::hstack(const FFMatrix& o) const {
    if (rows != o.rows || p != o.p) throw std::invalid_argument("FFMatrix::hstack: shape mismatch");
    FFMatrix r(rows, cols + o.cols, p);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
}

FFMatrix FFMatrix::vstack(const FFMatrix& o) const {
    if (cols != o.cols || p != o.p) throw std::invalid_argument("FFMatrix::vstack: shape mismatch");
    FFMatrix r(rows + o.rows, cols, p);
    std::copy(a.begin(), a.end(), r.a.begin());
    std::copy(o.a.begin(), o.a.end(), r.a.begin() + a.size());
    return r;
}

FFMatrix FFMatrix::columns(const std::vector<int>& idx) const {
    FFMatrix r(rows, static_cast<int>(idx.size()), p);
    for (int i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return r;
}

Vec FFMatrix::column(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

std::vector<int> FFMatrix::rref_in_place() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(at(pr, j), at(r, j));
        int inv = ff_inv(at(r, c), p);
        if (inv != 1)
            for (int j = 0; j < cols; ++j) at(r, j) = static_cast<std::uint8_t>(at(r, j) * inv % p);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            int f = at(i, c);
            if (!f) continue;
            for (int j = 0; j < cols; ++j) {
                int v = at(i, j) - f * at(r, j);
                at(i, j) = static_cast<std::uint8_t>((v % p + p) % p);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int FFMatrix::rank() const {
    FFMatrix m = *this;
    return static_cast<int>(m.rref_in_place().size());
}

std::vector<Vec> FFMatrix::kernel_basis() const {
    FFMatrix m = *this;
    std::vector<int> pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(cols, 0);
        v[fc] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            int val = m.at(static_cast<int>(r), fc);
            v[pivots[r]] = static_cast<std::uint8_t>(((-val) % p + p) % p);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> FFMatrix::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("FFMatrix::solve: size mismatch");
    FFMatrix aug(rows, cols + 1, p);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols) = b[i];
    }
    std::vector<int> pivots = aug.rref_in_place();
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), cols);
    return x;
}

FFMatrix FFMatrix::inverse() const {
    if (rows != cols) throw std::logic_error("FFMatrix::inverse: not square");
    FFMatrix aug = hstack(identity(rows, p));
    std::vector<int> pivots = aug.rref_in_place();
    if (static_cast<int>(pivots.size()) != rows || (rows > 0 && pivots.back() != rows - 1))
        throw std::logic_error("FFMatrix::inverse: singular matrix");
    FFMatrix inv(rows, rows, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) inv.at(i, j) = aug.at(i, rows + j);
    return inv;
}

std::string FFMatrix::bytes() const {
    std::string s;
    s.reserve(a.size() + 12);
    auto push32 = [&s](int v) {
        for (int k = 0; k < 4; ++k) s.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
    };
    push32(rows);
    push32(cols);
    push32(p);
    s.append(reinterpret_cast<const char*>(a.data()), a.size());
    return s;
}

FFMatrix column_echelon(const FFMatrix& m) {
    FFMatrix t = m.transpose();
    std::vector<int> pivots = t.rref_in_place();
    // Keep only the nonzero rows of the rref, transposed back to columns.
    FFMatrix r(m.rows, static_cast<int>(pivots.size()), m.p);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (int j = 0; j < m.rows; ++j) r.at(j, static_cast<int>(k)) = t.at(static_cast<int>(k), j);
    return r;
}

FFMatrix coords_in_basis(const FFMatrix& B, const FFMatrix& Y) {
    if (B.rows != Y.rows || B.p != Y.p) throw std::invalid_argument("coords_in_basis: shape mismatch");
    FFMatrix aug = B.hstack(Y);
    std::vector<int> pivots = aug.rref_in_place();
    for (int c : pivots)
        if (c >= B.cols) throw std::logic_error("coords_in_basis: column outside span");
    FFMatrix C(B.cols, Y.cols, B.p);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < Y.cols; ++j) C.at(pivots[r], j) = aug.at(static_cast<int>(r), B.cols + j);
    return C;
}

std::vector<int> complement_rows(const FFMatrix& B) {
    FFMatrix t = B.transpose();
    std::vector<int> pivots = t.rref_in_place();
    std::vector<bool> hit(B.rows, false);
    for (int c : pivots) hit[c] = true;
    std::vector<int> out;
    for (int i = 0; i < B.rows; ++i)
        if (!hit[i]) out.push_back(i);
    return out;
}

Subspace Subspace::zero(int d, int p) {
    Subspace s;
    s.basis = FFMatrix(d, 0, p);
    return s;
}

Subspace Subspace::full(int d, int p) {
    Subspace s;
    s.basis = FFMatrix::identity(d, p);
    return s;
}

Subspace Subspace::from_columns(const FFMatrix& cols) {
    Subspace s;
    s.basis = column_echelon(cols);
    return s;
}

Subspace Subspace::from_vectors(const std::vector<Vec>& vs, int d, int p) {
    FFMatrix m(d, static_cast<int>(vs.size()), p);
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (static_cast<int>(vs[j].size()) != d) throw std::invalid_argument("Subspace: vector size mismatch");
        for (int i = 0; i < d; ++i) m.at(i, static_cast<int>(j)) = vs[j][i];
    }
    return from_columns(m);
}

bool Subspace::contains(const Vec& v) const {
    FFMatrix col(basis.rows, 1, basis.p);
    for (int i = 0; i < basis.rows; ++i) col.at(i, 0) = v[i];
    return basis.hstack(col).rank() == basis.cols;
}

bool Subspace::contains(const Subspace& o) const {
    if (o.dim() == 0) return true;
    return basis.hstack(o.basis).rank() == basis.cols;
}

Subspace Subspace::join(const Subspace& o) const { return from_columns(basis.hstack(o.basis)); }

Subspace Subspace::intersect(const Subspace& o) const {
    if (dim() == 0 || o.dim() == 0) return zero(ambient(), basis.p);
    // v in both spans: v = B1 u = B2 w, so (u, w) in ker [B1 | -B2].
    FFMatrix stacked = basis.hstack(o.basis.scaled(-1));
    std::vector<Vec> ker = stacked.kernel_basis();
    FFMatrix cols(ambient(), static_cast<int>(ker.size()), basis.p);
    for (std::size_t j = 0; j < ker.size(); ++j) {
        Vec u(ker[j].begin(), ker[j].begin() + dim());
        Vec v = basis.apply(u);
        for (int i = 0; i < ambient(); ++i) cols.at(i, static_cast<int>(j)) = v[i];
    }
    return from_columns(cols);
}

}  // namespace qmod
