#include "chs/canonical.hpp"

#include <algorithm>
#include <optional>

namespace chs {

namespace {

// Working triple maintaining L * M * R == C under row/column operations
// expressed as explicit elementary supermatrices.
struct Work {
    SuperMatrix C, L, R;

    explicit Work(const SuperMatrix& m)
        : C(m),
          L(SuperMatrix::identity(m.row_parities(), m.generator_count())),
          R(SuperMatrix::identity(m.col_parities(), m.generator_count())) {}

    void lmul(const SuperMatrix& e) {
        C = e * C;
        L = e * L;
    }
    void rmul(const SuperMatrix& e) {
        C = C * e;
        R = R * e;
    }
    // Congruence step C -> E C E^T; accumulated R stays equal to L^T.
    void congruence(const SuperMatrix& e) {
        SuperMatrix et = smat_transpose(e);
        C = e * C * et;
        L = e * L;
        R = R * et;
    }
};

SuperMatrix elem(const std::vector<Parity>& par, int gens, int r, int s,
                 const GrassmannNumber& f) {
    SuperMatrix e = SuperMatrix::identity(par, gens);
    e.set(r, s, e.at(r, s) + f);
    return e;
}

SuperMatrix elem_scale(const std::vector<Parity>& par, int gens, int r,
                       const GrassmannNumber& f) {
    SuperMatrix e = SuperMatrix::identity(par, gens);
    e.set(r, r, f);
    return e;
}

// Permutation matrix P with (P C) row i = C row sigma[i].
SuperMatrix perm_rows(const std::vector<Parity>& par, int gens, const std::vector<int>& sigma) {
    std::vector<Parity> rp(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) rp[i] = par[sigma[i]];
    SuperMatrix p(rp, par, gens);
    for (size_t i = 0; i < sigma.size(); ++i)
        p.set(static_cast<int>(i), sigma[i], GrassmannNumber(gens, 1));
    return p;
}

// Permutation matrix Q with (C Q) column j = C column sigma[j].
SuperMatrix perm_cols(const std::vector<Parity>& par, int gens, const std::vector<int>& sigma) {
    std::vector<Parity> cp(sigma.size());
    for (size_t j = 0; j < sigma.size(); ++j) cp[j] = par[sigma[j]];
    SuperMatrix q(par, cp, gens);
    for (size_t j = 0; j < sigma.size(); ++j)
        q.set(sigma[j], static_cast<int>(j), GrassmannNumber(gens, 1));
    return q;
}

void check_reconstruction(const SuperMatrix& input, const CanonicalFormResult& r) {
    if (!(r.left * input * r.right == r.canonical))
        throw Error("canonical form reconstruction self-check failed");
}

std::vector<int> indices_of(const std::vector<Parity>& par, Parity p) {
    std::vector<int> out;
    for (size_t i = 0; i < par.size(); ++i)
        if (par[i] == p) out.push_back(static_cast<int>(i));
    return out;
}

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Fact 5 series P = 1 + sum a_n (soul * body^-1)^n with the rational
// recurrence; formally P = (1 + soul body^-1)^{-1/2}, terminating because the
// soul is nilpotent.
SuperMatrix fact5_factor(const SuperMatrix& a) {
    int n = a.rows(), gens = a.generator_count();
    SuperMatrix body(a.row_parities(), a.col_parities(), gens);
    SuperMatrix soul(a.row_parities(), a.col_parities(), gens);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [b, s] = a.at(i, j).body_soul_split();
            body.set(i, j, b);
            soul.set(i, j, s);
        }
    SuperMatrix x = soul * even_inverse(body);  // nilpotent
    std::vector<Rational> coeff = {0, Rational(-1, 2)};
    SuperMatrix p = SuperMatrix::identity(a.row_parities(), gens);
    SuperMatrix power = x;
    size_t k = 1;
    while (!power.is_zero()) {
        while (coeff.size() <= k) {
            size_t m = coeff.size() - 1;  // have a_0..a_m, compute a_{m+1}
            Rational s = -coeff[m];
            for (size_t j = 1; j <= m; ++j)
                s -= Rational(1, 2) * coeff[j] * (coeff[m + 1 - j] + coeff[m - j]);
            coeff.push_back(s);
        }
        p = p + power * GrassmannNumber(gens, coeff[k]);
        power = power * x;
        ++k;
    }
    return p;
}

}  // namespace

bool is_graded_antisymmetric(const SuperMatrix& m) {
    if (!m.is_square() || m.row_parities() != m.col_parities()) return false;
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) {
            int pa = static_cast<int>(m.row_parities()[a]);
            int pb = static_cast<int>(m.row_parities()[b]);
            int sign = ((pa * pb) & 1) ? 1 : -1;
            if (!(m.at(a, b) == m.at(b, a) * Rational(sign))) return false;
        }
    return true;
}

std::pair<SuperMatrix, SuperMatrix> fact1_orthogonalize(const SuperMatrix& m) {
    int gens = m.generator_count();
    Work w(m);
    std::vector<int> accepted, souls;
    for (int c = 0; c < m.cols(); ++c) {
        // Project out the already accepted columns: col c -= col w * (w^dag w)^-1 (w^dag v).
        for (int wc : accepted) {
            GrassmannNumber dot(gens), norm(gens);
            for (int i = 0; i < m.rows(); ++i) {
                dot = dot + w.C.at(i, wc).conjugate() * w.C.at(i, c);
                norm = norm + w.C.at(i, wc).conjugate() * w.C.at(i, wc);
            }
            GrassmannNumber f = -(norm.inverse() * dot);
            if (!f.is_zero()) w.rmul(elem(m.col_parities(), gens, wc, c, f));
        }
        bool has_body = false;
        for (int i = 0; i < m.rows(); ++i)
            if (w.C.at(i, c).body() != 0) has_body = true;
        (has_body ? accepted : souls).push_back(c);
    }
    std::vector<int> sigma = accepted;
    sigma.insert(sigma.end(), souls.begin(), souls.end());
    w.rmul(perm_cols(w.C.col_parities(), gens, sigma));
    return {w.R, w.C};
}

CanonicalFormResult canonical_form_generic(const SuperMatrix& m) {
    int gens = m.generator_count();
    bool mixed = false;
    {
        auto evr = indices_of(m.row_parities(), Parity::Even);
        auto odr = indices_of(m.row_parities(), Parity::Odd);
        auto evc = indices_of(m.col_parities(), Parity::Even);
        auto odc = indices_of(m.col_parities(), Parity::Odd);
        mixed = (!evr.empty() || !evc.empty()) && (!odr.empty() || !odc.empty());
    }
    Work w(m);
    std::vector<int> pivot_rows, pivot_cols;
    std::vector<std::vector<int>> rank_per_parity;
    for (Parity p : {Parity::Even, Parity::Odd}) {
        std::vector<int> rows = indices_of(m.row_parities(), p);
        std::vector<int> cols = indices_of(m.col_parities(), p);
        std::vector<int> block_pivots;
        for (;;) {
            // First column with a body-nonzero candidate, lowest row index first.
            int pr = -1, pc = -1;
            for (int c : cols) {
                if (contains(pivot_cols, c)) continue;
                for (int r : rows) {
                    if (contains(pivot_rows, r)) continue;
                    if (w.C.at(r, c).body() != 0) {
                        pr = r;
                        pc = c;
                        break;
                    }
                }
                if (pr >= 0) break;
            }
            if (pr < 0) break;
            if (mixed) {
                w.lmul(elem_scale(w.C.row_parities(), gens, pr, w.C.at(pr, pc).inverse()));
            }
            GrassmannNumber piv = w.C.at(pr, pc);
            GrassmannNumber piv_inv = piv.inverse();
            for (int r = 0; r < w.C.rows(); ++r) {
                if (r == pr) continue;
                const GrassmannNumber& x = w.C.at(r, pc);
                if (x.is_zero()) continue;
                w.lmul(elem(w.C.row_parities(), gens, r, pr, -(x * piv_inv)));
            }
            for (int c = 0; c < w.C.cols(); ++c) {
                if (c == pc) continue;
                const GrassmannNumber& x = w.C.at(pr, c);
                if (x.is_zero()) continue;
                w.rmul(elem(w.C.col_parities(), gens, pc, c, -(piv_inv * x)));
            }
            pivot_rows.push_back(pr);
            pivot_cols.push_back(pc);
            block_pivots.push_back(pr);
        }
        rank_per_parity.push_back(block_pivots);
    }
    // Reorder: [even pivots, even rest, odd pivots, odd rest] on both sides.
    auto order = [&](const std::vector<Parity>& par, const std::vector<int>& pivots) {
        std::vector<int> sigma;
        for (Parity p : {Parity::Even, Parity::Odd}) {
            for (int i : pivots)
                if (par[i] == p) sigma.push_back(i);
            for (int i : indices_of(par, p))
                if (!contains(pivots, i)) sigma.push_back(i);
        }
        return sigma;
    };
    w.lmul(perm_rows(w.C.row_parities(), gens, order(w.C.row_parities(), pivot_rows)));
    w.rmul(perm_cols(w.C.col_parities(), gens, order(w.C.col_parities(), pivot_cols)));

    CanonicalFormResult res{w.L, w.R, w.C, {}};
    if (mixed) {
        res.rank_data["k1"] = static_cast<int>(rank_per_parity[0].size());
        res.rank_data["k2"] = static_cast<int>(rank_per_parity[1].size());
    } else {
        res.rank_data["k"] =
            static_cast<int>(rank_per_parity[0].size() + rank_per_parity[1].size());
    }
    check_reconstruction(m, res);
    return res;
}

CanonicalFormResult desoul(const SuperMatrix& a) {
    if (!a.is_square()) throw Error("desoul requires a square matrix");
    SuperMatrix at = smat_transpose(a);
    bool sym = (at == a), antisym = false;
    if (!sym) {
        antisym = (at == a * GrassmannNumber(a.generator_count(), -1));
        if (!antisym) throw Error("desoul requires A^T = A or A^T = -A");
    }
    SuperMatrix p = fact5_factor(a);  // throws SingularBodyError when the body is singular
    CanonicalFormResult res{p, smat_transpose(p), p * a * smat_transpose(p), {}};
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!res.canonical.at(i, j).soul().is_zero())
                throw Error("desoul failed to remove the soul part");
    check_reconstruction(a, res);
    return res;
}

namespace {

// Shared congruence elimination for the +-symmetric even case and for the
// graded antisymmetric case. Pivots are searched within `rows` (one parity
// class); coupling entries of every other row are cleared through the pivot.
struct CongruenceElim {
    Work& w;
    int gens;

    // Symmetric diagonal pivoting; returns pivot indices in discovery order.
    std::vector<int> symmetric(const std::vector<int>& rows) {
        std::vector<int> pivots;
        for (;;) {
            int d = -1;
            for (int r : rows)
                if (!contains(pivots, r) && w.C.at(r, r).body() != 0) {
                    d = r;
                    break;
                }
            if (d < 0) {
                // No body on the diagonal: symmetrize the first body-nonzero
                // off-diagonal entry onto the diagonal.
                int pr = -1, pc = -1;
                for (int c : rows) {
                    if (contains(pivots, c)) continue;
                    for (int r : rows) {
                        if (contains(pivots, r) || r == c) continue;
                        if (w.C.at(r, c).body() != 0) {
                            pr = r;
                            pc = c;
                            break;
                        }
                    }
                    if (pr >= 0) break;
                }
                if (pr < 0) break;
                w.congruence(elem(w.C.row_parities(), gens, pc, pr, GrassmannNumber(gens, 1)));
                d = pc;
            }
            GrassmannNumber inv = w.C.at(d, d).inverse();
            for (int r = 0; r < w.C.rows(); ++r) {
                if (r == d) continue;
                const GrassmannNumber& x = w.C.at(r, d);
                if (x.is_zero()) continue;
                w.congruence(elem(w.C.row_parities(), gens, r, d, -(x * inv)));
            }
            pivots.push_back(d);
        }
        return pivots;
    }

    // Antisymmetric 2x2-block pivoting; returns pivot indices pairwise.
    std::vector<int> antisymmetric(const std::vector<int>& rows) {
        std::vector<int> pivots;
        for (;;) {
            int pa = -1, pb = -1;
            for (int c : rows) {
                if (contains(pivots, c)) continue;
                for (int r : rows) {
                    if (contains(pivots, r) || r == c) continue;
                    if (w.C.at(r, c).body() != 0) {
                        pa = c;
                        pb = r;
                        break;
                    }
                }
                if (pa >= 0) break;
            }
            if (pa < 0) break;
            GrassmannNumber lab = w.C.at(pa, pb), lba = w.C.at(pb, pa);
            GrassmannNumber lab_inv = lab.inverse(), lba_inv = lba.inverse();
            for (int r = 0; r < w.C.rows(); ++r) {
                if (r == pa || r == pb) continue;
                GrassmannNumber alpha = -(w.C.at(r, pb) * lab_inv);
                GrassmannNumber beta = -(w.C.at(r, pa) * lba_inv);
                if (alpha.is_zero() && beta.is_zero()) continue;
                SuperMatrix e = SuperMatrix::identity(w.C.row_parities(), gens);
                if (!alpha.is_zero()) e.set(r, pa, alpha);
                if (!beta.is_zero()) e.set(r, pb, beta);
                w.congruence(e);
            }
            pivots.push_back(pa);
            pivots.push_back(pb);
        }
        return pivots;
    }

    // Removes the soul from the pivot block through an embedded Fact 5 step.
    void desoul_pivots(const std::vector<int>& pivots) {
        if (pivots.empty()) return;
        std::vector<Parity> bp;
        for (int i : pivots) bp.push_back(w.C.row_parities()[i]);
        SuperMatrix block(bp, bp, gens);
        bool any_soul = false;
        for (size_t i = 0; i < pivots.size(); ++i)
            for (size_t j = 0; j < pivots.size(); ++j) {
                block.set(static_cast<int>(i), static_cast<int>(j),
                          w.C.at(pivots[i], pivots[j]));
                if (!block.at(i, j).soul().is_zero()) any_soul = true;
            }
        if (!any_soul) return;
        SuperMatrix p = fact5_factor(block);
        SuperMatrix e = SuperMatrix::identity(w.C.row_parities(), gens);
        for (size_t i = 0; i < pivots.size(); ++i)
            for (size_t j = 0; j < pivots.size(); ++j)
                e.set(pivots[i], pivots[j], p.at(static_cast<int>(i), static_cast<int>(j)));
        w.congruence(e);
    }
};

}  // namespace

CanonicalFormResult canonical_form_antisym(const SuperMatrix& a) {
    if (!a.is_square()) throw Error("canonical_form_antisym requires a square matrix");
    SuperMatrix at = smat_transpose(a);
    int gens = a.generator_count();
    bool sym = (at == a);
    bool antisym = (at == a * GrassmannNumber(gens, -1));
    if (!sym && !antisym) throw Error("matrix is neither symmetric nor antisymmetric");
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero() && a.at(i, j).parity() != Parity::Even)
                throw ParityError("canonical_form_antisym requires even entries");
    Work w(a);
    CongruenceElim elim{w, gens};
    std::vector<int> all(a.rows());
    for (int i = 0; i < a.rows(); ++i) all[i] = i;
    // The zero matrix is symmetric and antisymmetric at once; prefer the
    // structure the caller declared through the actual entries.
    std::vector<int> pivots = (antisym && !sym) ? elim.antisymmetric(all) : elim.symmetric(all);
    elim.desoul_pivots(pivots);
    std::vector<int> sigma = pivots;
    for (int i : all)
        if (!contains(pivots, i)) sigma.push_back(i);
    w.congruence(perm_rows(w.C.row_parities(), gens, sigma));
    CanonicalFormResult res{w.L, w.R, w.C, {{"k", static_cast<int>(pivots.size())}}};
    check_reconstruction(a, res);
    return res;
}

CanonicalFormResult canonical_form_antihermitian(const SuperMatrix& omega) {
    if (!is_graded_antisymmetric(omega))
        throw Error("canonical_form_antihermitian: graded antisymmetry violated");
    int gens = omega.generator_count();
    Work w(omega);
    CongruenceElim elim{w, gens};
    std::vector<int> evens = indices_of(omega.row_parities(), Parity::Even);
    std::vector<int> odds = indices_of(omega.row_parities(), Parity::Odd);
    std::vector<int> even_pivots = elim.antisymmetric(evens);
    elim.desoul_pivots(even_pivots);
    std::vector<int> odd_pivots = elim.symmetric(odds);
    elim.desoul_pivots(odd_pivots);
    // [b- | s- rows | b+ | s+ rows]
    std::vector<int> sigma = even_pivots;
    for (int i : evens)
        if (!contains(even_pivots, i)) sigma.push_back(i);
    sigma.insert(sigma.end(), odd_pivots.begin(), odd_pivots.end());
    for (int i : odds)
        if (!contains(odd_pivots, i)) sigma.push_back(i);
    w.congruence(perm_rows(w.C.row_parities(), gens, sigma));
    CanonicalFormResult res{w.L, w.R, w.C,
                            {{"kminus", static_cast<int>(even_pivots.size())},
                             {"kplus", static_cast<int>(odd_pivots.size())}}};
    check_reconstruction(omega, res);
    if (!is_graded_antisymmetric(res.canonical))
        throw Error("canonical_form_antihermitian: symmetry lost during reduction");
    return res;
}

}  // namespace chs
