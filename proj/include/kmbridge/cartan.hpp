#pragma once

#include <map>
#include <string>
#include <vector>

#include "kmbridge/fields.hpp"

namespace kmb {

/// Dynkin type of a connected component of I.
enum class DynkinType { A_inf, B_inf, C_inf, A1_affine, A2_twisted, Ap_twisted };

std::string dynkin_name(DynkinType t);

/// Finitely supported weight in the fundamental-weight basis {w_i}.
struct Weight {
    std::map<FieldElement, long> coords; // color -> coefficient of w_i

    long h(const FieldElement& i) const {
        auto it = coords.find(i);
        return it == coords.end() ? 0 : it->second;
    }
    void add(const FieldElement& i, long v) {
        if (v == 0) return;
        auto [it, fresh] = coords.emplace(i, 0);
        it->second += v;
        if (it->second == 0) coords.erase(it);
    }
    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (auto& [c, v] : o.coords) r.add(c, v);
        return r;
    }
    Weight operator-(const Weight& o) const {
        Weight r = *this;
        for (auto& [c, v] : o.coords) r.add(c, -v);
        return r;
    }
    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool is_zero() const { return coords.empty(); }
};

/// The super Cartan datum: sets I and J, the bijection b, Cartan matrix,
/// symmetrizers and parities, over a ground field that grows lazily in
/// char 0 as square roots are adjoined for b values.
///
/// Class-representative policy (rep_rule):
///  * char 0: I = N  u  {negative half-integers}  u  {q : frac(q) in (0,1/2)};
///    tower elements with a single irrational coordinate lie in I iff that
///    coordinate is positive.
///  * char p: a + t*theta lies in I iff t in {1..(p-1)/2}, or t = 0 and the
///    canonical residue a is <= (p-1)/2.
class CartanDatum {
public:
    explicit CartanDatum(FieldCtxPtr ctx);

    const FieldCtxPtr& ctx() const { return ctx_; }
    long characteristic() const { return ctx_->characteristic(); }
    FieldElement hbar() const; // the element -1/2
    FieldElement el(long n) const { return FieldElement::from_int(ctx_, n); }
    FieldElement el(const Rational& q) const { return FieldElement::from_rational(ctx_, q); }

    bool in_I(const FieldElement& i) const;
    bool in_J(const FieldElement& j) const; // j + hbar in I

    /// b(i) = distinguished sqrt(i(i+1)) on I, extended by b(-i) = -b(i).
    /// May extend the tower in char 0; previously returned elements remain
    /// valid in the extended context via lift().
    FieldElement b_map(const FieldElement& i);
    /// Inverse on J: sqrt(j^2 + 1/4) - 1/2.
    FieldElement b_inv(const FieldElement& j);

    /// Pre-adjoin every root needed for b on the window and its negatives.
    void extend_for_window(const std::vector<FieldElement>& window);

    Rational cartan_entry(const FieldElement& i, const FieldElement& j) const; // c_ij
    Rational d_sym(const FieldElement& i) const;                               // d_i

    int parity_color(const FieldElement& i) const;   // p(0)=1, else 0
    int parity_weight(const Weight& lambda) const;   // h_1 + h_3 + ... (mod 2)

    long pairing(const FieldElement& i, const Weight& lambda) const; // h_i(lambda)
    Weight alpha_weight(const FieldElement& j) const;                // column of the Cartan matrix

    DynkinType component_classification(const FieldElement& i) const;

    /// The component I_0 = {0, ..., (p-1)/2} in char p.
    std::vector<FieldElement> I0_colors() const;

    /// Distinguished square root with this datum's J test.
    FieldElement dsqrt(const FieldElement& a);

    std::string rep_rule_description() const;

private:
    FieldCtxPtr ctx_;
    void require_in_I(const FieldElement& i, const char* who) const;
};

} // namespace kmb
