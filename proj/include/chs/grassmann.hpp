#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chs/rational.hpp"

namespace chs {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline int parity_sign(Parity p) { return p == Parity::Odd ? -1 : 1; }

struct ZeroBodyError : Error {
    ZeroBodyError() : Error("Grassmann number has zero body and is not invertible") {}
};

struct ParityError : Error {
    using Error::Error;
};

/// Element of the Grassmann algebra over N generators with exact rational
/// coefficients. Monomials are keyed by generator subsets encoded as bitmasks
/// (bit i <-> generator i+1); generators inside a monomial are implicitly in
/// ascending order, reordering signs live in the coefficients. Zero
/// coefficients are never stored.
class GrassmannNumber {
public:
    GrassmannNumber() : gens_(0) {}
    explicit GrassmannNumber(int generator_count) : gens_(generator_count) {}
    GrassmannNumber(int generator_count, const Rational& body) : gens_(generator_count) {
        if (body != 0) terms_[0u] = body;
    }

    static GrassmannNumber generator(int generator_count, int index);
    /// Builds c * z^{i1} z^{i2} ... for an ascending index list.
    static GrassmannNumber monomial(int generator_count, const std::vector<int>& indices,
                                    const Rational& c);

    int generator_count() const { return gens_; }
    const std::map<uint32_t, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of the basis monomial named by the (ascending) subset.
    Rational coeff(const std::vector<int>& subset) const;
    Rational coeff_mask(uint32_t mask) const;
    Rational body() const { return coeff_mask(0u); }

    /// Even, Odd, or nullopt for mixed-parity elements (zero counts as even).
    std::optional<Parity> parity() const;
    bool is_constant_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0u);
    }

    std::pair<GrassmannNumber, GrassmannNumber> body_soul_split() const;
    GrassmannNumber soul() const { return body_soul_split().second; }

    GrassmannNumber operator-() const;
    GrassmannNumber operator+(const GrassmannNumber& o) const;
    GrassmannNumber operator-(const GrassmannNumber& o) const;
    GrassmannNumber operator*(const GrassmannNumber& o) const;
    GrassmannNumber operator*(const Rational& c) const;
    bool operator==(const GrassmannNumber& o) const {
        return gens_ == o.gens_ && terms_ == o.terms_;
    }

    /// Exact inverse via the terminating geometric series in the soul;
    /// throws ZeroBodyError when the body vanishes.
    GrassmannNumber inverse() const;

    /// Conjugation: reverses products and fixes generators, so a k-generator
    /// monomial picks up (-1)^{k(k-1)/2}. Rational coefficients are self-conjugate.
    GrassmannNumber conjugate() const;

    std::string str() const;

    void set_coeff_mask(uint32_t mask, const Rational& c);

private:
    void check_same_algebra(const GrassmannNumber& o) const;
    int gens_;
    std::map<uint32_t, Rational> terms_;
};

inline GrassmannNumber operator*(const Rational& c, const GrassmannNumber& x) { return x * c; }

/// Sign of z^I z^J -> z^{I|J} (monomials disjoint, both ascending).
int interleave_sign(uint32_t I, uint32_t J);

}  // namespace chs
