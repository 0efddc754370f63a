#pragma once

#include <string>
#include <vector>

#include "kmbridge/fields.hpp"

namespace kmb {

/// Dense univariate polynomial in u over a field context.
class PolyU {
public:
    PolyU() = default;
    explicit PolyU(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}
    PolyU(FieldCtxPtr ctx, std::vector<FieldElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        normalize();
    }

    static PolyU constant(FieldCtxPtr ctx, const FieldElement& a) { return PolyU(ctx, {a}); }
    static PolyU one(FieldCtxPtr ctx) { return constant(ctx, FieldElement::from_int(ctx, 1)); }
    /// u - a
    static PolyU linear_root(FieldCtxPtr ctx, const FieldElement& a) {
        return PolyU(ctx, {-a, FieldElement::from_int(ctx, 1)});
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return long(c_.size()) - 1; } // -1 for zero
    FieldElement coeff(long k) const {
        return (k >= 0 && k < long(c_.size())) ? c_[k] : FieldElement(ctx_);
    }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement leading() const;
    bool is_monic() const { return !is_zero() && leading().is_one(); }

    PolyU operator-() const;
    PolyU operator+(const PolyU& o) const;
    PolyU operator-(const PolyU& o) const;
    PolyU operator*(const PolyU& o) const;
    PolyU scale(const FieldElement& a) const;
    PolyU monic() const;

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<PolyU, PolyU> divmod(const PolyU& d) const;
    PolyU gcd(const PolyU& o) const; // monic gcd

    FieldElement eval(const FieldElement& x) const;
    /// Multiplicity of x as a root (by repeated exact division).
    int root_multiplicity(const FieldElement& x) const;
    /// p(u) == (-1)^deg p(-u)?  (only alternating-parity coefficients)
    bool alternating_parity() const;

    bool operator==(const PolyU& o) const { return c_ == o.c_; }
    bool operator!=(const PolyU& o) const { return !(*this == o); }
    std::string str(const std::string& var = "u") const;

private:
    FieldCtxPtr ctx_;
    std::vector<FieldElement> c_; // c_[k] * u^k, no leading zeros
    void normalize();
};

} // namespace kmb
