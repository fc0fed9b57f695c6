#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "chs/variables.hpp"

namespace chs {

/// Normal-form monomial: even variables as exponents, odd variables as an
/// ascending factor list (reordering signs absorbed into the coefficient),
/// and an exponential of a linear form in even variables.
struct Monomial {
    std::vector<std::pair<int, int>> evens;           // (var, exponent > 0), sorted by var
    std::vector<int> odds;                            // ascending var ids
    std::vector<std::pair<int, Rational>> exp_linear;  // (even var, coeff != 0), sorted by var

    bool operator==(const Monomial& o) const = default;
    bool operator<(const Monomial& o) const;
};

/// Polynomial over a graded variable table, optionally multiplied by
/// exponentials of linear forms in even variables; rational coefficients.
/// Grassmann generators participate as odd constant variables, so a
/// GrassmannNumber-coefficient view is a regrouping of the same data.
class GradedExpr {
public:
    GradedExpr() = default;
    explicit GradedExpr(TablePtr table) : table_(std::move(table)) {}

    static GradedExpr constant(TablePtr table, const Rational& c);
    static GradedExpr variable(TablePtr table, int id);
    static GradedExpr variable(TablePtr table, const std::string& name);
    /// exp of a linear form sum coeff * even-var.
    static GradedExpr exponential(TablePtr table, const std::vector<std::pair<int, Rational>>& lf);
    static GradedExpr from_grassmann(TablePtr table, const GrassmannNumber& g);

    const TablePtr& table() const { return table_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GradedExpr operator-() const;
    GradedExpr operator+(const GradedExpr& o) const;
    GradedExpr operator-(const GradedExpr& o) const;
    GradedExpr operator*(const GradedExpr& o) const;
    GradedExpr operator*(const Rational& c) const;
    bool operator==(const GradedExpr& o) const;

    /// Even/Odd when every term agrees, nullopt for mixed (zero is even).
    std::optional<Parity> parity() const;
    Parity parity_or_throw(const std::string& what) const;

    /// Ghost number when every term agrees (zero reports 0); nullopt otherwise.
    std::optional<int> ghost_number() const;

    std::set<int> used_variables() const;
    bool depends_on(int var) const;
    /// Largest jet order among used Velocity variables (0 when none).
    int max_jet_order() const;
    /// Total polynomial degree counting only the given variables.
    int degree_in(const std::set<int>& vars) const;
    bool has_exp() const;

    /// Graded left derivative with respect to a table variable.
    GradedExpr left_derivative(int var) const;
    /// Right derivative, via (LRD): dF/dq (right) = (-1)^{#v(#F+#v)} dF/dq (left)
    /// per homogeneous term.
    GradedExpr right_derivative(int var) const;

    /// Substitutes a variable by a homogeneous expression of equal parity.
    /// When the variable occurs inside exponential factors the replacement
    /// must itself be a pure linear form in even variables.
    GradedExpr substitute(int var, const GradedExpr& replacement) const;

    /// q -> q, p -> (-1)^# p (Momentum and Auxiliary kinds), products reversed.
    GradedExpr hermitian_conjugate() const;

    /// Splits into (coefficient-of-var, remainder) for a variable occurring
    /// at most linearly: F = var * coeff + rest (left coefficient).
    std::pair<GradedExpr, GradedExpr> linear_coefficient(int var) const;

    /// Constant GrassmannNumber view; nullopt when any term carries dynamic
    /// variables or exponentials.
    std::optional<GrassmannNumber> as_grassmann_constant() const;

    /// Numeric value of the body part (terms without odd factors) at a point.
    double evaluate(const std::map<int, double>& values) const;

    /// Terms grouped by total degree in the given variable set.
    std::map<int, GradedExpr> split_by_degree(const std::set<int>& vars) const;

    /// true when the expression is a polynomial in (q,p) of degree <= 1 with
    /// no exponentials (coefficients may involve t and Grassmann constants).
    bool is_affine_in(const std::set<int>& vars) const;

    void add_term(const Monomial& m, const Rational& c);

    std::string str() const;  // parser-compatible rendering

private:
    void check_compatible(const GradedExpr& o) const;
    TablePtr table_;
    std::map<Monomial, Rational> terms_;
};

inline GradedExpr operator*(const Rational& c, const GradedExpr& e) { return e * c; }

/// Lifts an expression onto an extending table (prefix-compatible).
GradedExpr lift_to_table(const GradedExpr& e, const TablePtr& bigger);

/// Term parity: number of odd factors mod 2.
Parity monomial_parity(const Monomial& m);

}  // namespace chs
