#include "chs/grassmann.hpp"

#include <bit>

namespace chs {

int interleave_sign(uint32_t I, uint32_t J) {
    // Each generator j in J moves left past the generators of I above j.
    int swaps = 0;
    uint32_t j = J;
    while (j) {
        int b = std::countr_zero(j);
        swaps += std::popcount(I >> (b + 1));
        j &= j - 1;
    }
    return (swaps & 1) ? -1 : 1;
}

GrassmannNumber GrassmannNumber::generator(int generator_count, int index) {
    if (index < 1 || index > generator_count)
        throw Error("generator index out of range: " + std::to_string(index));
    GrassmannNumber x(generator_count);
    x.terms_[1u << (index - 1)] = 1;
    return x;
}

GrassmannNumber GrassmannNumber::monomial(int generator_count, const std::vector<int>& indices,
                                          const Rational& c) {
    uint32_t mask = 0;
    for (size_t i = 0; i < indices.size(); ++i) {
        int idx = indices[i];
        if (idx < 1 || idx > generator_count)
            throw Error("generator index out of range: " + std::to_string(idx));
        if (i > 0 && indices[i - 1] >= idx)
            throw Error("monomial indices must be strictly ascending");
        mask |= 1u << (idx - 1);
    }
    GrassmannNumber x(generator_count);
    if (c != 0) x.terms_[mask] = c;
    return x;
}

Rational GrassmannNumber::coeff(const std::vector<int>& subset) const {
    uint32_t mask = 0;
    for (int idx : subset) {
        if (idx < 1 || idx > gens_)
            throw Error("generator index out of range: " + std::to_string(idx));
        mask |= 1u << (idx - 1);
    }
    return coeff_mask(mask);
}

Rational GrassmannNumber::coeff_mask(uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Parity> GrassmannNumber::parity() const {
    std::optional<Parity> p;
    for (const auto& [mask, c] : terms_) {
        Parity tp = (std::popcount(mask) & 1) ? Parity::Odd : Parity::Even;
        if (!p)
            p = tp;
        else if (*p != tp)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

std::pair<GrassmannNumber, GrassmannNumber> GrassmannNumber::body_soul_split() const {
    GrassmannNumber body(gens_), soul(gens_);
    for (const auto& [mask, c] : terms_) {
        if (mask == 0)
            body.terms_[mask] = c;
        else
            soul.terms_[mask] = c;
    }
    return {body, soul};
}

void GrassmannNumber::check_same_algebra(const GrassmannNumber& o) const {
    if (gens_ != o.gens_)
        throw Error("Grassmann generator counts differ: " + std::to_string(gens_) + " vs " +
                    std::to_string(o.gens_));
}

GrassmannNumber GrassmannNumber::operator-() const {
    GrassmannNumber r(gens_);
    for (const auto& [mask, c] : terms_) r.terms_[mask] = -c;
    return r;
}

GrassmannNumber GrassmannNumber::operator+(const GrassmannNumber& o) const {
    check_same_algebra(o);
    GrassmannNumber r = *this;
    for (const auto& [mask, c] : o.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(mask, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

GrassmannNumber GrassmannNumber::operator-(const GrassmannNumber& o) const { return *this + (-o); }

GrassmannNumber GrassmannNumber::operator*(const GrassmannNumber& o) const {
    check_same_algebra(o);
    GrassmannNumber r(gens_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma & mb) continue;  // repeated generator squares to zero
            Rational c = ca * cb * interleave_sign(ma, mb);
            uint32_t m = ma | mb;
            auto [it, inserted] = r.terms_.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

GrassmannNumber GrassmannNumber::operator*(const Rational& c) const {
    GrassmannNumber r(gens_);
    if (c == 0) return r;
    for (const auto& [mask, cc] : terms_) r.terms_[mask] = cc * c;
    return r;
}

GrassmannNumber GrassmannNumber::inverse() const {
    Rational b = body();
    if (b == 0) throw ZeroBodyError();
    GrassmannNumber binv(gens_, 1 / b);
    GrassmannNumber s = soul();
    // (b+s)^-1 = b^-1 sum_k (-s/b)^k; s is nilpotent so this terminates.
    GrassmannNumber result(gens_, 1);
    GrassmannNumber t = s * binv * Rational(-1);
    GrassmannNumber power = t;
    while (!power.is_zero()) {
        result = result + power;
        power = power * t;
    }
    return result * binv;
}

GrassmannNumber GrassmannNumber::conjugate() const {
    GrassmannNumber r(gens_);
    for (const auto& [mask, c] : terms_) {
        int k = std::popcount(mask);
        int sign = ((k * (k - 1) / 2) & 1) ? -1 : 1;
        r.terms_[mask] = c * sign;
    }
    return r;
}

void GrassmannNumber::set_coeff_mask(uint32_t mask, const Rational& c) {
    if (mask >= (gens_ >= 32 ? 0xffffffffu : (1u << gens_)) && mask != 0)
        throw Error("subset mask exceeds generator count");
    if (c == 0)
        terms_.erase(mask);
    else
        terms_[mask] = c;
}

std::string GrassmannNumber::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mask, c] : terms_) {
        Rational a = c;
        if (!first) {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        uint32_t m = mask;
        while (m) {
            int b = std::countr_zero(m);
            if (!mono.empty()) mono += "*";
            mono += "z" + std::to_string(b + 1);
            m &= m - 1;
        }
        if (mono.empty())
            out += to_string(a);
        else if (a == 1)
            out += mono;
        else if (a == -1)
            out += "-" + mono;
        else
            out += to_string(a) + "*" + mono;
    }
    return out;
}

}  // namespace chs
