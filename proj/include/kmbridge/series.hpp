#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmbridge/fields.hpp"

namespace kmb {

constexpr int kMaxVars = 4;
/// Exponent order used for polynomial-exact values (nothing truncated).
constexpr int kPolyOrder = 1 << 20;

using Expv = std::array<uint16_t, kMaxVars>;

inline int total_degree(const Expv& e) {
    int s = 0;
    for (auto v : e) s += v;
    return s;
}

/// Sparse multivariate power series truncated at a total-degree bound.
/// Coefficients of total degree < order are trusted; operations propagate
/// the minimum order and exact divisions by nilpotents lose one degree.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(FieldCtxPtr ctx, int nvars, int order);

    static TruncSeries constant(FieldCtxPtr ctx, int nvars, int order, const FieldElement& c);
    static TruncSeries variable(FieldCtxPtr ctx, int nvars, int order, int k);

    const FieldCtxPtr& ctx() const { return ctx_; }
    int nvars() const { return nvars_; }
    int order() const { return order_; }

    bool is_zero() const { return c_.empty(); }
    FieldElement constant_term() const;
    FieldElement coeff(const Expv& e) const;
    void set_coeff(const Expv& e, const FieldElement& v);
    const std::map<Expv, FieldElement>& terms() const { return c_; }
    /// Smallest total degree of a nonzero term (order() if zero).
    int valuation() const;

    TruncSeries operator-() const;
    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
    TruncSeries scale(const FieldElement& c) const;

    TruncSeries truncated(int new_order) const;
    /// Keep coefficients but adjust the trusted order downward.
    TruncSeries with_order(int new_order) const;

    /// Multiplicative inverse; requires a unit constant term.
    TruncSeries inv() const;

    /// The square root with constant term c0 (c0^2 must equal the constant
    /// term, which must be a unit).
    TruncSeries sqrt_branch(const FieldElement& c0) const;

    /// Substitute variables by series with zero constant term. Unmapped
    /// variables stay themselves.
    TruncSeries subst(const std::map<int, TruncSeries>& assignments) const;

    /// z_k -> -z_k
    TruncSeries neg_var(int k) const;
    /// Rename variables: exponent of old slot k moves to slot perm[k].
    TruncSeries relabel(const std::array<int, kMaxVars>& perm) const;
    /// Substitute variable `from` by variable `to` (diagonal evaluation).
    TruncSeries merge_vars(int from, int to) const;

    /// Exact division by (z_a - sign*z_b), sign in {+1,-1}. The remainder
    /// must vanish (mod order), else DivisibilityFailure. Result order
    /// drops by one.
    TruncSeries div_linear(int a, int b, int sign) const;

    /// Demazure operator on the pair (a, b): (f - f^{swap})/(z_a - z_b).
    TruncSeries demazure(int a, int b) const;

    /// Swap variables a and b.
    TruncSeries swap_vars(int a, int b) const;

    bool equals_mod(const TruncSeries& o, int ord) const;
    /// First offending term of (*this - o) below `ord`, if any.
    std::optional<std::pair<Expv, FieldElement>> residual_witness(const TruncSeries& o, int ord) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    FieldCtxPtr ctx_;
    int nvars_ = 0;
    int order_ = 0;
    std::map<Expv, FieldElement> c_;
    void check_compat(const TruncSeries& o) const;
};

/// Truncated Laurent expansion in u^{-1}: sum of c_r u^r for r <= top,
/// coefficients trusted for r > bottom.
class LaurentU {
public:
    LaurentU(FieldCtxPtr ctx, long bottom) : ctx_(std::move(ctx)), bottom_(bottom) {}

    /// Expansion of num(u)/den(u) at u = infinity, trusted above `bottom`.
    static LaurentU expand(const std::vector<FieldElement>& num, const std::vector<FieldElement>& den, long bottom);

    void set(long r, const FieldElement& v);
    /// Coefficient of u^r; InsufficientOrder below the trusted horizon.
    FieldElement coeff(long r) const;
    long bottom() const { return bottom_; }

private:
    FieldCtxPtr ctx_;
    long bottom_;
    std::map<long, FieldElement> c_;
};

} // namespace kmb
