#include "chs/jet.hpp"

#include <algorithm>

namespace chs {

std::string JetSpace::jet_name(const std::string& base, int order) {
    if (order == 0) return base;
    if (order == 1) return base + "_dot";
    if (order == 2) return base + "_ddot";
    return base + "_d" + std::to_string(order);
}

JetSpace::JetSpace(TablePtr base, int max_order) : base_(std::move(base)), max_order_(max_order) {
    if (max_order_ < 1) throw Error("jet order must be at least 1");
    auto ext = std::make_shared<VariableTable>(*base_);
    positions_ = base_->ids_of_kind(VarKind::Position);
    // Jets are appended order by order so that widening the space extends the
    // table and keeps existing variable ids stable.
    for (int n = 1; n <= max_order_; ++n) {
        for (int p : positions_) {
            const VarEntry& pe = base_->entry(p);
            VarEntry e;
            e.name = jet_name(pe.name, n);
            e.parity = pe.parity;
            e.kind = VarKind::Velocity;
            e.jet_base = p;
            e.jet_order = n;
            jets_[{p, n}] = ext->add(std::move(e));
        }
    }
    table_ = ext;
}

int JetSpace::jet(int position, int order) const {
    if (order == 0) return position;
    auto it = jets_.find({position, order});
    if (it == jets_.end())
        throw JetOrderError("jet order " + std::to_string(order) + " exceeds the declared maximum " +
                            std::to_string(max_order_));
    return it->second;
}

std::pair<int, int> JetSpace::base_of(int var) const {
    const VarEntry& e = table_->entry(var);
    if (e.kind == VarKind::Position) return {var, 0};
    if (e.kind == VarKind::Velocity) return {e.jet_base, e.jet_order};
    throw Error("not a jet-family variable: " + e.name);
}

bool JetSpace::is_jet_family(int var) const {
    VarKind k = table_->entry(var).kind;
    return k == VarKind::Position || k == VarKind::Velocity;
}

JetSpace JetSpace::with_order(int order) const {
    return JetSpace(base_, std::max(order, max_order_));
}

GradedExpr total_time_derivative(const GradedExpr& f, const JetSpace& js) {
    GradedExpr g = lift_to_table(f, js.table());
    GradedExpr out(js.table());
    int t = js.table()->time_id();
    if (t >= 0) out = g.left_derivative(t);
    for (int v : g.used_variables()) {
        const VarEntry& e = js.table()->entry(v);
        int order = -1, pos = -1;
        if (e.kind == VarKind::Position) {
            pos = v;
            order = 0;
        } else if (e.kind == VarKind::Velocity) {
            pos = e.jet_base;
            order = e.jet_order;
        } else {
            continue;
        }
        GradedExpr d = g.left_derivative(v);
        if (d.is_zero()) continue;
        if (order + 1 > js.max_order())
            throw JetOrderError("total derivative overflows jet order " +
                                std::to_string(js.max_order()));
        out = out + GradedExpr::variable(js.table(), js.jet(pos, order + 1)) * d;
    }
    return out;
}

std::vector<GradedExpr> euler_lagrange(const GradedExpr& f, const JetSpace& js) {
    int m = lift_to_table(f, js.table()).max_jet_order();
    // (d/dt)^n of the partials can climb to order 2m; give the space headroom.
    JetSpace wide = js.with_order(std::max(2 * m + 1, js.max_order()));
    GradedExpr g = lift_to_table(f, wide.table());
    std::vector<GradedExpr> out;
    for (int p : wide.positions()) {
        GradedExpr acc(wide.table());
        for (int n = 0; n <= m; ++n) {
            GradedExpr d = g.left_derivative(wide.jet(p, n));
            if (d.is_zero()) continue;
            for (int k = 0; k < n; ++k) d = -total_time_derivative(d, wide);
            acc = acc + d;
        }
        out.push_back(acc);
    }
    return out;
}

GradedExpr prolong(const GradedExpr& f, int n, const JetSpace& js) {
    GradedExpr g = lift_to_table(f, js.table());
    for (int k = 0; k < n; ++k) g = total_time_derivative(g, js);
    return g;
}

namespace {

// Integrates a polynomial-in-t expression (optionally times exp(lambda t))
// with respect to the time variable.
GradedExpr integrate_time(const GradedExpr& f, const JetSpace& js) {
    int t = js.table()->time_id();
    if (t < 0) {
        if (f.is_zero()) return f;
        throw Error("cannot integrate in time: no time variable declared");
    }
    GradedExpr out(js.table());
    for (const auto& [m, c] : f.terms()) {
        int tdeg = 0;
        Rational lambda;
        Monomial base = m;
        for (size_t i = 0; i < base.evens.size(); ++i)
            if (base.evens[i].first == t) {
                tdeg = base.evens[i].second;
                base.evens.erase(base.evens.begin() + i);
                break;
            }
        for (const auto& [v, lam] : base.exp_linear)
            if (v == t) lambda = lam;
        if (lambda == 0) {
            // c t^k -> c t^{k+1}/(k+1)
            Monomial n = base;
            std::vector<std::pair<int, int>> evens;
            bool placed = false;
            for (const auto& ev : n.evens) {
                if (!placed && ev.first > t) {
                    evens.push_back({t, tdeg + 1});
                    placed = true;
                }
                evens.push_back(ev);
            }
            if (!placed) evens.push_back({t, tdeg + 1});
            std::sort(evens.begin(), evens.end());
            n.evens = evens;
            out.add_term(n, c / Rational(tdeg + 1));
        } else {
            // c t^k e^{lambda t} -> e^{lambda t} sum_j (-1)^j k!/(k-j)! t^{k-j} / lambda^{j+1}
            Rational fact(1);
            for (int j = 0; j <= tdeg; ++j) {
                Monomial n = base;  // keeps the exp factor incl. lambda t
                if (tdeg - j > 0) {
                    std::vector<std::pair<int, int>> evens;
                    bool placed = false;
                    for (const auto& ev : n.evens) {
                        if (!placed && ev.first > t) {
                            evens.push_back({t, tdeg - j});
                            placed = true;
                        }
                        evens.push_back(ev);
                    }
                    if (!placed) evens.push_back({t, tdeg - j});
                    std::sort(evens.begin(), evens.end());
                    n.evens = evens;
                }
                Rational coeff = c * fact;
                Rational lpow(1);
                for (int u = 0; u <= j; ++u) lpow *= lambda;
                coeff /= lpow;
                if (j & 1) coeff = -coeff;
                out.add_term(n, coeff);
                fact *= Rational(tdeg - j);
            }
        }
    }
    return out;
}

}  // namespace

std::optional<GradedExpr> extract_total_derivative(const GradedExpr& f, const JetSpace& js) {
    for (const GradedExpr& el : euler_lagrange(f, js))
        if (!el.is_zero()) return std::nullopt;
    int m0 = lift_to_table(f, js.table()).max_jet_order();
    JetSpace wide = js.with_order(std::max({2 * m0 + 2, js.max_order(), 2}));
    GradedExpr rest = lift_to_table(f, wide.table());
    GradedExpr k_total(wide.table());
    for (;;) {
        int m = rest.max_jet_order();
        if (m == 0) {
            // No jets left: a vanishing Euler-Lagrange derivative leaves a
            // function of t alone, integrated directly.
            for (int p : wide.positions())
                if (rest.depends_on(p))
                    throw Error("extraction left an order-0 remainder depending on positions");
            k_total = k_total + integrate_time(rest, wide);
            break;
        }
        // rest is linear in the top-order jets; peel K_m = sum_d G_d / d with
        // G = sum_A q_{m-1}^A * (del rest / del q_m^A).
        GradedExpr g(wide.table());
        std::set<int> family;
        for (int p : wide.positions()) {
            int top = wide.jet(p, m);
            GradedExpr fa = rest.left_derivative(top);
            if (fa.depends_on(top))
                throw Error("extraction: expression is not linear in the top jet order");
            family.insert(wide.jet(p, m - 1));
            if (fa.is_zero()) continue;
            g = g + GradedExpr::variable(wide.table(), wide.jet(p, m - 1)) * fa;
        }
        GradedExpr k(wide.table());
        for (const auto& [d, part] : g.split_by_degree(family)) {
            if (d == 0) {
                if (!part.is_zero()) throw Error("extraction: inexact one-form");
                continue;
            }
            k = k + part * Rational(1, d);
        }
        k_total = k_total + k;
        rest = rest - total_time_derivative(k, wide);
        if (rest.max_jet_order() >= m) throw Error("extraction failed to reduce the jet order");
    }
    GradedExpr check = total_time_derivative(k_total, wide);
    GradedExpr orig = lift_to_table(f, wide.table());
    if (!(check == orig)) throw Error("extraction self-check failed: dK/dt != F");
    return k_total;
}

}  // namespace chs
