#pragma once

#include <vector>

#include "chs/grassmann.hpp"

namespace chs {

struct SingularBodyError : Error {
    SingularBodyError() : Error("matrix body is singular") {}
    using Error::Error;
};

/// Dense matrix of GrassmannNumbers with per-row and per-column parities.
/// Entry (a,b) must have parity row_parity(a)+col_parity(b) (zero entries
/// exempt); the (A,Psi;Theta,B) block structure is derived from the parity
/// lists, rows/columns may appear in any order.
class SuperMatrix {
public:
    SuperMatrix() : gens_(0) {}
    SuperMatrix(std::vector<Parity> row_parities, std::vector<Parity> col_parities,
                int generator_count);

    static SuperMatrix identity(const std::vector<Parity>& parities, int generator_count);
    /// Square matrix of even rows/cols from rational entries (row-major).
    static SuperMatrix from_rationals(int n, const std::vector<Rational>& entries,
                                      int generator_count);

    int rows() const { return static_cast<int>(row_par_.size()); }
    int cols() const { return static_cast<int>(col_par_.size()); }
    int generator_count() const { return gens_; }
    const std::vector<Parity>& row_parities() const { return row_par_; }
    const std::vector<Parity>& col_parities() const { return col_par_; }

    const GrassmannNumber& at(int r, int c) const;
    /// Parity-checked assignment.
    void set(int r, int c, const GrassmannNumber& v);

    SuperMatrix operator+(const SuperMatrix& o) const;
    SuperMatrix operator-(const SuperMatrix& o) const;
    SuperMatrix operator*(const SuperMatrix& o) const;
    SuperMatrix operator*(const GrassmannNumber& s) const;  // right scalar multiply
    bool operator==(const SuperMatrix& o) const;

    bool is_square() const { return rows() == cols(); }
    bool is_zero() const;
    bool is_identity() const;
    bool is_pure_soul() const;

    std::string str() const;

private:
    void check_entry_parity(int r, int c, const GrassmannNumber& v) const;
    std::vector<Parity> row_par_, col_par_;
    std::vector<GrassmannNumber> e_;
    int gens_;
};

/// (M^T)_{ab} = (-1)^{#a(#a+#b)} M_{ba}
SuperMatrix smat_transpose(const SuperMatrix& m);
/// (M^*)_{ab} = (-1)^{#b(#a+#b)} (M_{ab})^*, entries conjugated by reversal
SuperMatrix smat_conjugate(const SuperMatrix& m);
/// M^dagger = (M^*)^T, i.e. (M^dagger)_{ab} = (M_{ba})^*
SuperMatrix smat_dagger(const SuperMatrix& m);

/// str M = tr A - tr B = sum_a (-1)^{#a} M_{aa}
GrassmannNumber supertrace(const SuperMatrix& m);

/// Determinant of a square matrix of commuting (even) entries, by Laplace
/// expansion; exact and pivot-free.
GrassmannNumber even_determinant(const SuperMatrix& m);

/// sdet M = det(A - Psi B^-1 Theta)/det B; the alternative formula
/// det A / det(B - Theta A^-1 Psi) is evaluated too and must agree exactly.
GrassmannNumber superdeterminant(const SuperMatrix& m);

/// Exact inverse via the block formula with terminating fermionic series;
/// requires the bodies of det A and det B to be nonzero.
SuperMatrix smat_inverse(const SuperMatrix& m);

/// Inverse of a square matrix of even entries (body inverse + soul series).
SuperMatrix even_inverse(const SuperMatrix& m);

}  // namespace chs
