#include "chs/expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace chs {

bool Monomial::operator<(const Monomial& o) const {
    if (evens != o.evens) return evens < o.evens;
    if (odds != o.odds) return odds < o.odds;
    return std::lexicographical_compare(
        exp_linear.begin(), exp_linear.end(), o.exp_linear.begin(), o.exp_linear.end(),
        [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
}

Parity monomial_parity(const Monomial& m) {
    return (m.odds.size() & 1) ? Parity::Odd : Parity::Even;
}

GradedExpr GradedExpr::constant(TablePtr table, const Rational& c) {
    GradedExpr e(std::move(table));
    if (c != 0) e.terms_[Monomial{}] = c;
    return e;
}

GradedExpr GradedExpr::variable(TablePtr table, int id) {
    GradedExpr e(table);
    const VarEntry& v = table->entry(id);
    Monomial m;
    if (v.parity == Parity::Odd)
        m.odds.push_back(id);
    else
        m.evens.push_back({id, 1});
    e.terms_[m] = 1;
    return e;
}

GradedExpr GradedExpr::variable(TablePtr table, const std::string& name) {
    int id = table->require(name);
    return variable(std::move(table), id);
}

GradedExpr GradedExpr::exponential(TablePtr table,
                                   const std::vector<std::pair<int, Rational>>& lf) {
    GradedExpr e(table);
    Monomial m;
    std::map<int, Rational> merged;
    for (const auto& [v, c] : lf) {
        if (table->entry(v).parity != Parity::Even)
            throw Error("exponential of a non-even variable: " + table->entry(v).name);
        merged[v] += c;
    }
    for (const auto& [v, c] : merged)
        if (c != 0) m.exp_linear.push_back({v, c});
    e.terms_[m] = 1;
    return e;
}

GradedExpr GradedExpr::from_grassmann(TablePtr table, const GrassmannNumber& g) {
    if (g.generator_count() != table->generator_count())
        throw Error("Grassmann generator count does not match the variable table");
    GradedExpr e(table);
    for (const auto& [mask, c] : g.terms()) {
        Monomial m;
        uint32_t mm = mask;
        while (mm) {
            int b = std::countr_zero(mm);
            m.odds.push_back(table->zeta_id(b + 1));
            mm &= mm - 1;
        }
        // zeta variables are appended in generator order, so ascending
        // generator index is ascending variable id and no sign arises
        e.terms_[m] = c;
    }
    return e;
}

void GradedExpr::check_compatible(const GradedExpr& o) const {
    if (table_ == o.table_) return;
    if (!table_ || !o.table_) throw Error("expression without a variable table");
    if (!table_->extends(*o.table_) && !o.table_->extends(*table_))
        throw Error("expressions over incompatible variable tables");
}

GradedExpr lift_to_table(const GradedExpr& e, const TablePtr& bigger) {
    if (e.table() == bigger) return e;
    if (!bigger->extends(*e.table())) throw Error("table does not extend the expression's table");
    GradedExpr out(bigger);
    for (const auto& [m, c] : e.terms()) out.add_term(m, c);
    return out;
}

void GradedExpr::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedExpr GradedExpr::operator-() const {
    GradedExpr r(table_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

GradedExpr GradedExpr::operator+(const GradedExpr& o) const {
    check_compatible(o);
    const TablePtr& big = (table_ && o.table_ && o.table_->extends(*table_)) ? o.table_ : table_;
    GradedExpr r = lift_to_table(*this, big);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

GradedExpr GradedExpr::operator-(const GradedExpr& o) const { return *this + (-o); }

namespace {

// Sign for concatenating two ascending odd factor lists; 0 for a repeat.
int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps left past the remaining elements of a
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (inversions & 1) ? -1 : 1;
}

}  // namespace

GradedExpr GradedExpr::operator*(const GradedExpr& o) const {
    check_compatible(o);
    const TablePtr& big = (table_ && o.table_ && o.table_->extends(*table_)) ? o.table_ : table_;
    GradedExpr a = lift_to_table(*this, big);
    GradedExpr b = lift_to_table(o, big);
    GradedExpr r(big);
    std::vector<int> odds;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            int sign = merge_sign(ma.odds, mb.odds, odds);
            if (sign == 0) continue;
            Monomial m;
            m.odds = odds;
            // merge even exponents
            size_t i = 0, j = 0;
            while (i < ma.evens.size() || j < mb.evens.size()) {
                if (j == mb.evens.size() ||
                    (i < ma.evens.size() && ma.evens[i].first < mb.evens[j].first)) {
                    m.evens.push_back(ma.evens[i++]);
                } else if (i == ma.evens.size() || mb.evens[j].first < ma.evens[i].first) {
                    m.evens.push_back(mb.evens[j++]);
                } else {
                    m.evens.push_back({ma.evens[i].first, ma.evens[i].second + mb.evens[j].second});
                    ++i;
                    ++j;
                }
            }
            // merge exponential linear forms
            i = j = 0;
            while (i < ma.exp_linear.size() || j < mb.exp_linear.size()) {
                if (j == mb.exp_linear.size() ||
                    (i < ma.exp_linear.size() && ma.exp_linear[i].first < mb.exp_linear[j].first)) {
                    m.exp_linear.push_back(ma.exp_linear[i++]);
                } else if (i == ma.exp_linear.size() ||
                           mb.exp_linear[j].first < ma.exp_linear[i].first) {
                    m.exp_linear.push_back(mb.exp_linear[j++]);
                } else {
                    Rational s = ma.exp_linear[i].second + mb.exp_linear[j].second;
                    if (s != 0) m.exp_linear.push_back({ma.exp_linear[i].first, s});
                    ++i;
                    ++j;
                }
            }
            r.add_term(m, ca * cb * sign);
        }
    }
    return r;
}

GradedExpr GradedExpr::operator*(const Rational& c) const {
    GradedExpr r(table_);
    if (c == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
    return r;
}

bool GradedExpr::operator==(const GradedExpr& o) const {
    if (table_ == o.table_) return terms_ == o.terms_;
    return (*this - o).is_zero();
}

std::optional<Parity> GradedExpr::parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        Parity tp = monomial_parity(m);
        if (!p)
            p = tp;
        else if (*p != tp)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

Parity GradedExpr::parity_or_throw(const std::string& what) const {
    auto p = parity();
    if (!p) throw ParityError("mixed-parity expression rejected: " + what);
    return *p;
}

std::optional<int> GradedExpr::ghost_number() const {
    std::optional<int> g;
    for (const auto& [m, c] : terms_) {
        int tg = 0;
        for (const auto& [v, k] : m.evens) tg += k * table_->entry(v).ghost_number;
        for (int v : m.odds) tg += table_->entry(v).ghost_number;
        if (!g)
            g = tg;
        else if (*g != tg)
            return std::nullopt;
    }
    return g ? g : std::optional<int>(0);
}

std::set<int> GradedExpr::used_variables() const {
    std::set<int> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& [v, k] : m.evens) out.insert(v);
        for (int v : m.odds) out.insert(v);
        for (const auto& [v, k] : m.exp_linear) out.insert(v);
    }
    return out;
}

bool GradedExpr::depends_on(int var) const {
    for (const auto& [m, c] : terms_) {
        for (const auto& [v, k] : m.evens)
            if (v == var) return true;
        for (int v : m.odds)
            if (v == var) return true;
        for (const auto& [v, k] : m.exp_linear)
            if (v == var) return true;
    }
    return false;
}

int GradedExpr::max_jet_order() const {
    int order = 0;
    for (int v : used_variables()) {
        const VarEntry& e = table_->entry(v);
        if (e.kind == VarKind::Velocity) order = std::max(order, e.jet_order);
    }
    return order;
}

int GradedExpr::degree_in(const std::set<int>& vars) const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [v, k] : m.evens)
            if (vars.count(v)) d += k;
        for (int v : m.odds)
            if (vars.count(v)) d += 1;
        deg = std::max(deg, d);
    }
    return deg;
}

bool GradedExpr::has_exp() const {
    for (const auto& [m, c] : terms_)
        if (!m.exp_linear.empty()) return true;
    return false;
}

GradedExpr GradedExpr::left_derivative(int var) const {
    const VarEntry& v = table_->entry(var);
    GradedExpr r(table_);
    for (const auto& [m, c] : terms_) {
        if (v.parity == Parity::Odd) {
            auto it = std::find(m.odds.begin(), m.odds.end(), var);
            if (it == m.odds.end()) continue;
            int pos = static_cast<int>(it - m.odds.begin());
            Monomial n = m;
            n.odds.erase(n.odds.begin() + pos);
            r.add_term(n, (pos & 1) ? -c : c);
        } else {
            // polynomial part
            for (size_t i = 0; i < m.evens.size(); ++i) {
                if (m.evens[i].first != var) continue;
                Monomial n = m;
                if (n.evens[i].second == 1)
                    n.evens.erase(n.evens.begin() + i);
                else
                    n.evens[i].second -= 1;
                r.add_term(n, c * m.evens[i].second);
                break;
            }
            // exponential part: d/dv exp(lambda v + ...) = lambda * exp(...)
            for (const auto& [ev, lambda] : m.exp_linear) {
                if (ev != var) continue;
                r.add_term(m, c * lambda);
                break;
            }
        }
    }
    return r;
}

GradedExpr GradedExpr::right_derivative(int var) const {
    const VarEntry& v = table_->entry(var);
    if (v.parity == Parity::Even) return left_derivative(var);
    GradedExpr r(table_);
    for (const auto& [m, c] : terms_) {
        // (LRD) per homogeneous term: right = (-1)^{#v(#F + #v)} left
        GradedExpr single(table_);
        single.add_term(m, c);
        GradedExpr left = single.left_derivative(var);
        int sign = ((static_cast<int>(monomial_parity(m)) + 1) & 1) ? -1 : 1;
        r = r + left * Rational(sign);
    }
    return r;
}

GradedExpr GradedExpr::substitute(int var, const GradedExpr& replacement) const {
    const VarEntry& v = table_->entry(var);
    GradedExpr rep = replacement;
    if (!rep.is_zero() && rep.parity_or_throw("substitution value") != v.parity)
        throw ParityError("substitution changes parity of " + v.name);
    const TablePtr big = table_->extends(*rep.table()) || table_ == rep.table()
                             ? table_
                             : rep.table();
    GradedExpr result(big);
    GradedExpr repl = lift_to_table(rep, big);
    for (const auto& [m, c] : terms_) {
        bool in_exp = false;
        for (const auto& [ev, lambda] : m.exp_linear)
            if (ev == var) in_exp = true;
        Monomial base = m;
        Rational coeff = c;
        GradedExpr factor = GradedExpr::constant(big, 1);
        if (in_exp) {
            // exp(lambda v + rest) -> exp(lambda * replacement + rest);
            // the replacement must be a pure linear form in even variables.
            Rational lambda;
            Monomial stripped = m;
            for (size_t i = 0; i < stripped.exp_linear.size(); ++i)
                if (stripped.exp_linear[i].first == var) {
                    lambda = stripped.exp_linear[i].second;
                    stripped.exp_linear.erase(stripped.exp_linear.begin() + i);
                    break;
                }
            std::vector<std::pair<int, Rational>> lf;
            for (const auto& [rm, rc] : repl.terms()) {
                if (rm.evens.size() != 1 || rm.evens[0].second != 1 || !rm.odds.empty() ||
                    !rm.exp_linear.empty())
                    throw Error("substitution into an exponential requires a linear form");
                lf.push_back({rm.evens[0].first, lambda * rc});
            }
            base = stripped;
            factor = GradedExpr::exponential(big, lf);
        }
        if (v.parity == Parity::Even) {
            int expo = 0;
            Monomial stripped = base;
            for (size_t i = 0; i < stripped.evens.size(); ++i)
                if (stripped.evens[i].first == var) {
                    expo = stripped.evens[i].second;
                    stripped.evens.erase(stripped.evens.begin() + i);
                    break;
                }
            GradedExpr term(big);
            term.add_term(stripped, coeff);
            for (int k = 0; k < expo; ++k) term = term * repl;
            result = result + term * factor;
        } else {
            auto it = std::find(base.odds.begin(), base.odds.end(), var);
            if (it == base.odds.end()) {
                GradedExpr term(big);
                term.add_term(base, coeff);
                result = result + term * factor;
            } else {
                int pos = static_cast<int>(it - base.odds.begin());
                Monomial leftm, rightm;
                leftm.evens = base.evens;  // evens commute, keep them left
                leftm.odds.assign(base.odds.begin(), base.odds.begin() + pos);
                rightm.odds.assign(base.odds.begin() + pos + 1, base.odds.end());
                rightm.exp_linear = base.exp_linear;
                GradedExpr lhs(big), rhs(big);
                lhs.add_term(leftm, coeff);
                rhs.add_term(rightm, 1);
                result = result + lhs * repl * rhs * factor;
            }
        }
    }
    return result;
}

GradedExpr GradedExpr::hermitian_conjugate() const {
    GradedExpr r(table_);
    for (const auto& [m, c] : terms_) {
        size_t k = m.odds.size();
        int sign = ((k * (k - 1) / 2) & 1) ? -1 : 1;
        for (int v : m.odds) {
            VarKind kind = table_->entry(v).kind;
            if (kind == VarKind::Momentum || kind == VarKind::Auxiliary) sign = -sign;
        }
        r.add_term(m, c * sign);
    }
    return r;
}

std::pair<GradedExpr, GradedExpr> GradedExpr::linear_coefficient(int var) const {
    GradedExpr coeff = left_derivative(var);
    GradedExpr rest = *this - GradedExpr::variable(table_, var) * coeff;
    if (rest.depends_on(var))
        throw Error("expression is not linear in " + table_->entry(var).name);
    return {coeff, rest};
}

std::optional<GrassmannNumber> GradedExpr::as_grassmann_constant() const {
    GrassmannNumber g(table_->generator_count());
    for (const auto& [m, c] : terms_) {
        if (!m.evens.empty() || !m.exp_linear.empty()) return std::nullopt;
        uint32_t mask = 0;
        for (int v : m.odds) {
            const VarEntry& e = table_->entry(v);
            if (e.kind != VarKind::GrassmannConstant) return std::nullopt;
            mask |= 1u << (e.zeta_index - 1);
        }
        g.set_coeff_mask(mask, c);
    }
    return g;
}

double GradedExpr::evaluate(const std::map<int, double>& values) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        if (!m.odds.empty()) continue;  // numeric value of the body part
        double t = to_double(c);
        for (const auto& [v, k] : m.evens) {
            auto it = values.find(v);
            if (it == values.end())
                throw Error("no value for variable " + table_->entry(v).name);
            t *= std::pow(it->second, k);
        }
        double arg = 0.0;
        for (const auto& [v, lam] : m.exp_linear) {
            auto it = values.find(v);
            if (it == values.end())
                throw Error("no value for variable " + table_->entry(v).name);
            arg += to_double(lam) * it->second;
        }
        if (arg != 0.0) t *= std::exp(arg);
        total += t;
    }
    return total;
}

std::map<int, GradedExpr> GradedExpr::split_by_degree(const std::set<int>& vars) const {
    std::map<int, GradedExpr> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& [v, k] : m.exp_linear)
            if (vars.count(v)) throw Error("degree split across an exponential factor");
        int d = 0;
        for (const auto& [v, k] : m.evens)
            if (vars.count(v)) d += k;
        for (int v : m.odds)
            if (vars.count(v)) d += 1;
        auto [it, inserted] = out.try_emplace(d, GradedExpr(table_));
        it->second.add_term(m, c);
    }
    return out;
}

bool GradedExpr::is_affine_in(const std::set<int>& vars) const {
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [v, k] : m.evens)
            if (vars.count(v)) d += k;
        for (int v : m.odds)
            if (vars.count(v)) d += 1;
        if (d > 1) return false;
        for (const auto& [v, k] : m.exp_linear)
            if (vars.count(v)) return false;
    }
    return true;
}

std::string GradedExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (!first) {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::vector<std::string> parts;
        for (const auto& [v, k] : m.evens) {
            std::string p = table_->entry(v).name;
            if (k > 1) p += "^" + std::to_string(k);
            parts.push_back(p);
        }
        for (int v : m.odds) parts.push_back(table_->entry(v).name);
        if (!m.exp_linear.empty()) {
            std::string e = "exp(";
            bool efirst = true;
            for (const auto& [v, lam] : m.exp_linear) {
                Rational l = lam;
                if (!efirst) {
                    e += (l < 0) ? "-" : "+";
                    if (l < 0) l = -l;
                }
                efirst = false;
                if (l == 1)
                    e += table_->entry(v).name;
                else if (l == -1)
                    e += "-" + table_->entry(v).name;
                else
                    e += to_string(l) + "*" + table_->entry(v).name;
            }
            e += ")";
            parts.push_back(e);
        }
        std::string term;
        if (parts.empty()) {
            term = to_string(a);
        } else {
            if (a != 1) term = to_string(a) + "*";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) term += "*";
                term += parts[i];
            }
        }
        out += term;
    }
    return out;
}

}  // namespace chs
