#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kmbridge/errors.hpp"

namespace kmb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldContext;
using FieldCtxPtr = std::shared_ptr<const FieldContext>;

/// Ground field descriptor: Q, F_p, F_{p^2} (p odd, p <= 101), or a
/// multiquadratic tower Q(sqrt(d_1), ..., sqrt(d_m)) with m <= 4.
///
/// The formal symbol adjoined for radicand d_k is the *distinguished* square
/// root of d_k: the positive orientation of each tower generator is the one
/// selected by the branch convention. Contexts are immutable; adjoining a
/// root produces a new context.
class FieldContext : public std::enable_shared_from_this<FieldContext> {
public:
    static FieldCtxPtr rationals();
    static FieldCtxPtr prime_field(long p);

    long characteristic() const { return p_; }
    bool is_char_zero() const { return p_ == 0; }

    /// char p: theta generates F_{p^2}, theta^2 = theta_sq (a non-square).
    long theta_sq() const { return theta_sq_; }

    /// char 0: the adjoined radicands, in adjunction order.
    const std::vector<Rational>& radicands() const { return rads_; }
    std::size_t tower_rank() const { return rads_.size(); }
    std::size_t dim() const { return std::size_t(1) << rads_.size(); }

    /// Adjoin a square root of d (char 0 only). Rejects squares and zero.
    FieldCtxPtr adjoin_root(const Rational& d) const;

    bool same_as(const FieldContext& other) const;
    std::string describe() const;

private:
    FieldContext() = default;
    long p_ = 0;
    long theta_sq_ = 0;
    std::vector<Rational> rads_;
};

/// Exact field element. Canonical form: char 0 elements are coordinate
/// vectors over the square-free root monomials; char p elements are
/// a + b*theta with canonical residues.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(FieldCtxPtr ctx); // zero
    static FieldElement from_rational(FieldCtxPtr ctx, const Rational& q);
    static FieldElement from_int(FieldCtxPtr ctx, long n);
    /// char p only: a + b*theta.
    static FieldElement fp2(FieldCtxPtr ctx, long a, long b);
    /// char 0 only: q times the product of the roots in `mask`.
    static FieldElement monomial(FieldCtxPtr ctx, const Rational& q, unsigned mask);

    const FieldCtxPtr& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    /// char p: coordinates (a, b) with value a + b*theta.
    std::pair<long, long> fp2_parts() const;

    /// char 0: coordinate of the given root monomial.
    Rational coord(unsigned mask) const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inv() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    /// Deterministic total order (for use as map keys).
    int cmp(const FieldElement& o) const;
    bool operator<(const FieldElement& o) const { return cmp(o) < 0; }

    /// Some square root in this context, if one exists here.
    /// char 0: only rational values are searched (tower monomial ansatz).
    std::optional<FieldElement> try_sqrt() const;

    /// char 0: true if the element is q * (single root monomial), q != 0.
    bool is_pure_monomial() const;
    /// For pure monomials: sign of the coefficient (+1/-1).
    int monomial_sign() const;

    std::string str() const;

private:
    friend class FieldContext;
    FieldCtxPtr ctx_;
    std::vector<Rational> q_; // char 0: size = ctx->dim()
    long a_ = 0, b_ = 0;      // char p: a + b*theta
    void check_ctx(const FieldElement& o) const;
};

struct SqrtResult {
    FieldElement root;  ///< the distinguished square root
    FieldCtxPtr ctx;    ///< context (extended if adjunction happened)
    bool adjoined = false;
};

/// The distinguished square root of `a` per the branch convention:
/// when both candidates +-r live in the current field, `j_test` selects the
/// one lying in J (exactly one must pass, otherwise AmbiguousRoot). When the
/// root does not exist and `allow_adjoin` is set (char 0), the radicand is
/// adjoined and the fresh symbol is the distinguished root.
SqrtResult distinguished_sqrt(const FieldElement& a,
                              const std::function<bool(const FieldElement&)>& j_test,
                              bool allow_adjoin);

/// Lift an element of an older (smaller) context into `ctx`.
FieldElement lift(const FieldCtxPtr& ctx, const FieldElement& x);

FieldElement operator*(long n, const FieldElement& x);

} // namespace kmb
