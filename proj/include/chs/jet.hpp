#pragma once

#include "chs/expr.hpp"

namespace chs {

struct JetOrderError : Error {
    using Error::Error;
};

/// Variable table extended by jet towers q, q_dot, q_ddot, q_d3, ... for each
/// position variable, plus the time variable. Extending the order produces a
/// new table; variable ids of lower orders are stable.
class JetSpace {
public:
    /// Builds a jet space over the positions of `base` (which must already
    /// contain its positions, time and any Grassmann constants).
    JetSpace(TablePtr base, int max_order);

    const TablePtr& table() const { return table_; }
    int max_order() const { return max_order_; }
    const std::vector<int>& positions() const { return positions_; }

    /// Variable id of (d/dt)^n q for a position id; n = 0 gives the position.
    int jet(int position, int order) const;
    /// Inverse lookup: (position, order) of a jet/position variable.
    std::pair<int, int> base_of(int var) const;
    bool is_jet_family(int var) const;  // position or one of its jets

    /// A copy of this space with at least the given maximum order.
    JetSpace with_order(int order) const;

    static std::string jet_name(const std::string& base, int order);

private:
    TablePtr base_;
    TablePtr table_;
    int max_order_;
    std::vector<int> positions_;
    std::map<std::pair<int, int>, int> jets_;  // (position, order>=1) -> var
};

/// d/dt = del_t + sum_n q_{n+1} del/del q_n; throws JetOrderError when the
/// expression already uses the top order.
GradedExpr total_time_derivative(const GradedExpr& f, const JetSpace& js);

/// delta F / delta q^A = sum_n (-d/dt)^n del F / del q^A_n, one entry per
/// position variable (in table order).
std::vector<GradedExpr> euler_lagrange(const GradedExpr& f, const JetSpace& js);

/// Constructive inverse of the total derivative: returns K with dK/dt == F
/// when euler_lagrange(F) vanishes identically, nullopt otherwise.
std::optional<GradedExpr> extract_total_derivative(const GradedExpr& f, const JetSpace& js);

/// (d/dt)^n f
GradedExpr prolong(const GradedExpr& f, int n, const JetSpace& js);

}  // namespace chs
