#pragma once

#include <map>
#include <string>

#include "chs/supermatrix.hpp"

namespace chs {

/// Result of a canonical-form construction: left * input * right == canonical
/// exactly, with left and right invertible (body-determinant nonzero).
/// rank_data keys depend on the construction: "k" (bosonic), "k1"/"k2"
/// (generic supermatrix), "kminus"/"kplus" (graded antisymmetric).
struct CanonicalFormResult {
    SuperMatrix left;
    SuperMatrix right;
    SuperMatrix canonical;
    std::map<std::string, int> rank_data;
};

/// Graded Gram-Schmidt on the columns of a bosonic matrix with the dagger
/// scalar product: returns (Q, MQ) where MQ has mutually orthogonal
/// body-nonzero columns first and pure-soul columns last.
std::pair<SuperMatrix, SuperMatrix> fact1_orthogonalize(const SuperMatrix& m);

/// Canonical form of a generic supermatrix. Purely bosonic input yields the
/// diag(Lambda_k) (+) soul shape with rank_data["k"]; mixed input yields the
/// four-block (1,0,0,0 / 0,s1,0,psi / 0,0,1,0 / 0,chi,0,s2) shape with
/// rank_data["k1"], rank_data["k2"] the body ranks of the diagonal blocks.
CanonicalFormResult canonical_form_generic(const SuperMatrix& m);

/// For A = A0 + soul with A^T = +-A and body-invertible A0, produces a real P
/// with P A P^T = A0 exactly (left = P, right = P^T, canonical = A0).
CanonicalFormResult desoul(const SuperMatrix& a);

/// Congruence canonical form of a real even (anti)symmetric matrix:
/// P A P^T = diag(b, s) with b body-invertible pure body, s pure soul;
/// rank_data["k"] = body rank.
CanonicalFormResult canonical_form_antisym(const SuperMatrix& a);

/// Congruence canonical form of a graded-antisymmetric supermatrix
/// Omega_{ab} = -(-1)^{#a #b} Omega_{ba}: L Omega L^T has the four-block
/// shape (b-,0,0,0 / 0,s-,0,psi / 0,0,b+,0 / 0,-psi^T,0,s+) with b-+
/// body-invertible; rank_data["kminus"], rank_data["kplus"].
CanonicalFormResult canonical_form_antihermitian(const SuperMatrix& omega);

/// True when m satisfies the graded antisymmetry m_{ab} = -(-1)^{#a#b} m_{ba}.
bool is_graded_antisymmetric(const SuperMatrix& m);

}  // namespace chs
