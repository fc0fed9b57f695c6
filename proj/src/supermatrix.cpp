#include "chs/supermatrix.hpp"

#include <algorithm>

namespace chs {

SuperMatrix::SuperMatrix(std::vector<Parity> row_parities, std::vector<Parity> col_parities,
                         int generator_count)
    : row_par_(std::move(row_parities)),
      col_par_(std::move(col_parities)),
      e_(row_par_.size() * col_par_.size(), GrassmannNumber(generator_count)),
      gens_(generator_count) {}

SuperMatrix SuperMatrix::identity(const std::vector<Parity>& parities, int generator_count) {
    SuperMatrix m(parities, parities, generator_count);
    for (int i = 0; i < m.rows(); ++i) m.set(i, i, GrassmannNumber(generator_count, 1));
    return m;
}

SuperMatrix SuperMatrix::from_rationals(int n, const std::vector<Rational>& entries,
                                        int generator_count) {
    if (static_cast<int>(entries.size()) != n * n) throw Error("entry count mismatch");
    SuperMatrix m(std::vector<Parity>(n, Parity::Even), std::vector<Parity>(n, Parity::Even),
                  generator_count);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.set(r, c, GrassmannNumber(generator_count, entries[r * n + c]));
    return m;
}

const GrassmannNumber& SuperMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows() || c < 0 || c >= cols()) throw Error("supermatrix index out of range");
    return e_[r * cols() + c];
}

void SuperMatrix::check_entry_parity(int r, int c, const GrassmannNumber& v) const {
    if (v.is_zero()) return;
    auto p = v.parity();
    if (!p) throw ParityError("mixed-parity entry rejected at (" + std::to_string(r) + "," +
                              std::to_string(c) + ")");
    if (*p != row_par_[r] + col_par_[c])
        throw ParityError("entry parity inconsistent with row/col parities at (" +
                          std::to_string(r) + "," + std::to_string(c) + ")");
}

void SuperMatrix::set(int r, int c, const GrassmannNumber& v) {
    if (r < 0 || r >= rows() || c < 0 || c >= cols()) throw Error("supermatrix index out of range");
    if (v.generator_count() != gens_) throw Error("generator count mismatch in entry");
    check_entry_parity(r, c, v);
    e_[r * cols() + c] = v;
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
    if (row_par_ != o.row_par_ || col_par_ != o.col_par_) throw Error("shape mismatch in add");
    SuperMatrix r(row_par_, col_par_, gens_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const {
    if (row_par_ != o.row_par_ || col_par_ != o.col_par_) throw Error("shape mismatch in sub");
    SuperMatrix r(row_par_, col_par_, gens_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
    if (col_par_ != o.row_par_) throw Error("inner parity lists differ in product");
    SuperMatrix r(row_par_, o.col_par_, gens_);
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < o.cols(); ++j) {
            GrassmannNumber s(gens_);
            for (int k = 0; k < cols(); ++k) s = s + at(i, k) * o.at(k, j);
            r.e_[i * o.cols() + j] = s;
        }
    return r;
}

SuperMatrix SuperMatrix::operator*(const GrassmannNumber& s) const {
    SuperMatrix r(row_par_, col_par_, gens_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
    return row_par_ == o.row_par_ && col_par_ == o.col_par_ && e_ == o.e_;
}

bool SuperMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const GrassmannNumber& x) { return x.is_zero(); });
}

bool SuperMatrix::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j) {
            GrassmannNumber want(gens_, i == j ? 1 : 0);
            if (!(at(i, j) == want)) return false;
        }
    return true;
}

bool SuperMatrix::is_pure_soul() const {
    return std::all_of(e_.begin(), e_.end(),
                       [](const GrassmannNumber& x) { return x.body() == 0; });
}

std::string SuperMatrix::str() const {
    std::string out = "[";
    for (int i = 0; i < rows(); ++i) {
        out += (i ? ", [" : "[");
        for (int j = 0; j < cols(); ++j) {
            if (j) out += ", ";
            out += at(i, j).str();
        }
        out += "]";
    }
    return out + "]";
}

SuperMatrix smat_transpose(const SuperMatrix& m) {
    SuperMatrix r(m.col_parities(), m.row_parities(), m.generator_count());
    for (int a = 0; a < r.rows(); ++a)
        for (int b = 0; b < r.cols(); ++b) {
            int pa = static_cast<int>(r.row_parities()[a]);
            int pb = static_cast<int>(r.col_parities()[b]);
            int sign = ((pa * (pa + pb)) & 1) ? -1 : 1;
            r.set(a, b, m.at(b, a) * Rational(sign));
        }
    return r;
}

SuperMatrix smat_conjugate(const SuperMatrix& m) {
    SuperMatrix r(m.row_parities(), m.col_parities(), m.generator_count());
    for (int a = 0; a < r.rows(); ++a)
        for (int b = 0; b < r.cols(); ++b) {
            int pa = static_cast<int>(r.row_parities()[a]);
            int pb = static_cast<int>(r.col_parities()[b]);
            int sign = ((pb * (pa + pb)) & 1) ? -1 : 1;
            r.set(a, b, m.at(a, b).conjugate() * Rational(sign));
        }
    return r;
}

SuperMatrix smat_dagger(const SuperMatrix& m) { return smat_transpose(smat_conjugate(m)); }

GrassmannNumber supertrace(const SuperMatrix& m) {
    if (!m.is_square() || m.row_parities() != m.col_parities())
        throw Error("supertrace requires a square matrix with matching parities");
    GrassmannNumber s(m.generator_count());
    for (int i = 0; i < m.rows(); ++i)
        s = s + m.at(i, i) * Rational(parity_sign(m.row_parities()[i]));
    return s;
}

namespace {

using Grid = std::vector<std::vector<GrassmannNumber>>;

GrassmannNumber det_laplace(const Grid& g, std::vector<int> cols, int row, int gens) {
    if (cols.empty()) return GrassmannNumber(gens, 1);
    GrassmannNumber acc(gens);
    for (size_t k = 0; k < cols.size(); ++k) {
        const GrassmannNumber& a = g[row][cols[k]];
        if (a.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        GrassmannNumber sub = det_laplace(g, rest, row + 1, gens);
        GrassmannNumber term = a * sub;
        if (k & 1) term = -term;
        acc = acc + term;
    }
    return acc;
}

Grid to_grid(const SuperMatrix& m) {
    Grid g(m.rows(), std::vector<GrassmannNumber>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) g[i][j] = m.at(i, j);
    return g;
}

// Even/odd index lists in original order.
void split_indices(const std::vector<Parity>& p, std::vector<int>& even, std::vector<int>& odd) {
    for (size_t i = 0; i < p.size(); ++i)
        (p[i] == Parity::Even ? even : odd).push_back(static_cast<int>(i));
}

SuperMatrix take_block(const SuperMatrix& m, const std::vector<int>& rs,
                       const std::vector<int>& cs) {
    std::vector<Parity> rp, cp;
    for (int r : rs) rp.push_back(m.row_parities()[r]);
    for (int c : cs) cp.push_back(m.col_parities()[c]);
    SuperMatrix b(rp, cp, m.generator_count());
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j) b.set(static_cast<int>(i), static_cast<int>(j),
                                                     m.at(rs[i], cs[j]));
    return b;
}

}  // namespace

GrassmannNumber even_determinant(const SuperMatrix& m) {
    if (!m.is_square()) throw Error("determinant of non-square matrix");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && m.at(i, j).parity() != Parity::Even)
                throw ParityError("even_determinant requires commuting (even) entries");
    std::vector<int> cols(m.cols());
    for (int j = 0; j < m.cols(); ++j) cols[j] = j;
    return det_laplace(to_grid(m), cols, 0, m.generator_count());
}

SuperMatrix even_inverse(const SuperMatrix& m) {
    if (!m.is_square()) throw Error("inverse of non-square matrix");
    int n = m.rows(), gens = m.generator_count();
    // Split into rational body and nilpotent soul.
    std::vector<Rational> body(n * n);
    SuperMatrix soul(m.row_parities(), m.col_parities(), gens);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [b, s] = m.at(i, j).body_soul_split();
            body[i * n + j] = b.body();
            soul.set(i, j, s);
        }
    // Exact Gauss-Jordan on the rational body.
    std::vector<Rational> inv(n * n, 0);
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
    std::vector<Rational> a = body;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r * n + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularBodyError();
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a[piv * n + j], a[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
        Rational d = a[col * n + col];
        for (int j = 0; j < n; ++j) {
            a[col * n + j] /= d;
            inv[col * n + j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rational f = a[r * n + col];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    SuperMatrix binv(m.col_parities(), m.row_parities(), gens);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inv[i * n + j] != 0) binv.set(i, j, GrassmannNumber(gens, inv[i * n + j]));
    // (B0 + S)^-1 = (1 + B0^-1 S)^-1 B0^-1, geometric series in the nilpotent part.
    SuperMatrix t = binv * soul;  // nilpotent
    SuperMatrix acc = SuperMatrix::identity(m.col_parities(), gens);
    SuperMatrix power = t;
    Rational sign(-1);
    while (!power.is_zero()) {
        acc = acc + power * GrassmannNumber(gens, sign);
        power = power * t;
        sign = -sign;
    }
    return acc * binv;
}

namespace {

// Shared block decomposition for sdet/inverse; returns the even/odd index
// lists of a square parity-consistent matrix (row parities == col parities).
void square_blocks(const SuperMatrix& m, std::vector<int>& even, std::vector<int>& odd) {
    if (!m.is_square() || m.row_parities() != m.col_parities())
        throw Error("block decomposition requires square matrix with matching parities");
    split_indices(m.row_parities(), even, odd);
}

}  // namespace

GrassmannNumber superdeterminant(const SuperMatrix& m) {
    std::vector<int> ev, od;
    square_blocks(m, ev, od);
    if (od.empty()) return even_determinant(take_block(m, ev, ev));
    if (ev.empty()) return even_determinant(take_block(m, od, od)).inverse();
    SuperMatrix A = take_block(m, ev, ev), B = take_block(m, od, od);
    SuperMatrix Psi = take_block(m, ev, od), Theta = take_block(m, od, ev);
    GrassmannNumber detA = even_determinant(A), detB = even_determinant(B);
    if (detA.body() == 0 || detB.body() == 0)
        throw SingularBodyError("sdet requires body-invertible diagonal blocks");
    GrassmannNumber primary =
        even_determinant(A - Psi * even_inverse(B) * Theta) * detB.inverse();
    GrassmannNumber alternative =
        detA * even_determinant(B - Theta * even_inverse(A) * Psi).inverse();
    if (!(primary == alternative))
        throw Error("superdeterminant cross-check failed: the two defining formulas disagree");
    return primary;
}

SuperMatrix smat_inverse(const SuperMatrix& m) {
    std::vector<int> ev, od;
    square_blocks(m, ev, od);
    int gens = m.generator_count();
    if (od.empty() || ev.empty()) return even_inverse(m);
    SuperMatrix A = take_block(m, ev, ev), B = take_block(m, od, od);
    SuperMatrix Psi = take_block(m, ev, od), Theta = take_block(m, od, ev);
    if (even_determinant(A).body() == 0 || even_determinant(B).body() == 0)
        throw SingularBodyError("supermatrix inverse requires body-invertible diagonal blocks");
    SuperMatrix Ainv = even_inverse(A), Binv = even_inverse(B);
    SuperMatrix X = even_inverse(A - Psi * Binv * Theta);  // top-left of M^-1
    SuperMatrix Y = even_inverse(B - Theta * Ainv * Psi);  // bottom-right of M^-1
    SuperMatrix topRight = (Ainv * Psi * Y) * GrassmannNumber(gens, -1);
    SuperMatrix bottomLeft = (Binv * Theta * X) * GrassmannNumber(gens, -1);
    // Reassemble in the original index order.
    SuperMatrix r(m.col_parities(), m.row_parities(), gens);
    for (size_t i = 0; i < ev.size(); ++i) {
        for (size_t j = 0; j < ev.size(); ++j) r.set(ev[i], ev[j], X.at(i, j));
        for (size_t j = 0; j < od.size(); ++j) r.set(ev[i], od[j], topRight.at(i, j));
    }
    for (size_t i = 0; i < od.size(); ++i) {
        for (size_t j = 0; j < ev.size(); ++j) r.set(od[i], ev[j], bottomLeft.at(i, j));
        for (size_t j = 0; j < od.size(); ++j) r.set(od[i], od[j], Y.at(i, j));
    }
    return r;
}

}  // namespace chs
