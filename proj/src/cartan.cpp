#include "kmbridge/cartan.hpp"

#include <sstream>

namespace kmb {

namespace {

// frac(q) in [0,1)
Rational frac_part(const Rational& q) {
    BigInt fl = numerator(q) / denominator(q);
    if (q < 0 && fl * denominator(q) != numerator(q)) fl -= 1;
    return q - Rational(fl);
}

bool rational_in_I(const Rational& q) {
    if (denominator(q) == 1) return q >= 0; // N
    if (denominator(q) == 2) return q < 0;  // negative half-integers
    Rational f = frac_part(q);
    return f > 0 && 2 * f < 1;
}

} // namespace

std::string dynkin_name(DynkinType t) {
    switch (t) {
        case DynkinType::A_inf: return "A_inf";
        case DynkinType::B_inf: return "B_inf";
        case DynkinType::C_inf: return "C_inf";
        case DynkinType::A1_affine: return "A_{p-1}^(1)";
        case DynkinType::A2_twisted: return "A_2^(2)";
        case DynkinType::Ap_twisted: return "A_{p-1}^(2)";
    }
    return "?";
}

CartanDatum::CartanDatum(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}

FieldElement CartanDatum::hbar() const {
    return FieldElement::from_rational(ctx_, Rational(-1, 2));
}

bool CartanDatum::in_I(const FieldElement& x) const {
    FieldElement i = lift(ctx_, x);
    if (ctx_->is_char_zero()) {
        if (i.is_rational()) return rational_in_I(i.rational_value());
        // one irrational coordinate: orientation rule
        int seen = 0, sign = 0;
        for (unsigned m = 1; m < ctx_->dim(); ++m) {
            Rational c = i.coord(m);
            if (c != 0) {
                ++seen;
                sign = c > 0 ? 1 : -1;
            }
        }
        if (seen != 1) fail(errc::unsupported_color, "no I membership rule for " + i.str());
        return sign > 0;
    }
    long p = ctx_->characteristic();
    auto [a, t] = i.fp2_parts();
    if (t != 0) return t >= 1 && t <= (p - 1) / 2;
    return a <= (p - 1) / 2;
}

bool CartanDatum::in_J(const FieldElement& j) const { return in_I(lift(ctx_, j) + hbar()); }

void CartanDatum::require_in_I(const FieldElement& i, const char* who) const {
    if (!in_I(i)) fail(errc::not_in_I, std::string(who) + ": color " + i.str() + " is not in I");
}

FieldElement CartanDatum::dsqrt(const FieldElement& a) {
    SqrtResult r = distinguished_sqrt(lift(ctx_, a), [this](const FieldElement& c) { return in_J(lift(ctx_, c)); },
                                      /*allow_adjoin=*/true);
    if (r.adjoined) ctx_ = r.ctx;
    return r.root;
}

FieldElement CartanDatum::b_map(const FieldElement& x) {
    FieldElement i = lift(ctx_, x);
    if (i.is_zero()) return i;
    FieldElement one = el(1);
    if (in_I(i)) {
        FieldElement rad = i * (i + one);
        return dsqrt(rad);
    }
    if (in_I(-i)) return -b_map(-i);
    fail(errc::unsupported_color, "b: " + i.str() + " lies in neither I nor -I");
}

FieldElement CartanDatum::b_inv(const FieldElement& j0) {
    FieldElement j = lift(ctx_, j0);
    FieldElement rad = j * j + el(Rational(1, 4));
    return dsqrt(rad) - el(Rational(1, 2));
}

void CartanDatum::extend_for_window(const std::vector<FieldElement>& window) {
    for (const auto& c : window) {
        b_map(c);
        b_map(-lift(ctx_, c));
    }
}

Rational CartanDatum::cartan_entry(const FieldElement& i0, const FieldElement& j0) const {
    FieldElement i = lift(ctx_, i0), j = lift(ctx_, j0);
    require_in_I(i, "cartan_entry");
    require_in_I(j, "cartan_entry");
    if (i == j) return Rational(2);
    FieldElement one = el(1);
    if (i == j + one || i == j - one) {
        long e = (i.is_zero() ? 1 : 0) + (j == hbar() ? 1 : 0);
        return Rational(-(1L << e));
    }
    return Rational(0);
}

Rational CartanDatum::d_sym(const FieldElement& i0) const {
    FieldElement i = lift(ctx_, i0);
    require_in_I(i, "d_sym");
    if (i == hbar()) return Rational(2);
    if (i.is_zero()) return Rational(1, 2);
    return Rational(1);
}

int CartanDatum::parity_color(const FieldElement& i0) const {
    FieldElement i = lift(ctx_, i0);
    require_in_I(i, "parity_color");
    return i.is_zero() ? 1 : 0;
}

int CartanDatum::parity_weight(const Weight& lambda) const {
    long s = 0;
    for (const auto& [c, v] : lambda.coords) {
        bool odd_integer_color = false;
        if (ctx_->is_char_zero()) {
            if (c.is_rational()) {
                Rational q = c.rational_value();
                odd_integer_color = denominator(q) == 1 && q > 0 && numerator(q) % 2 == 1;
            }
        } else {
            auto [a, t] = c.fp2_parts();
            odd_integer_color = t == 0 && a % 2 == 1 && a <= (ctx_->characteristic() - 1) / 2;
        }
        if (odd_integer_color) s += v;
    }
    return int(((s % 2) + 2) % 2);
}

long CartanDatum::pairing(const FieldElement& i0, const Weight& lambda) const {
    FieldElement i = lift(ctx_, i0);
    require_in_I(i, "pairing");
    return lambda.h(i);
}

Weight CartanDatum::alpha_weight(const FieldElement& j0) const {
    FieldElement j = lift(ctx_, j0);
    require_in_I(j, "alpha_weight");
    Weight w;
    FieldElement one = el(1);
    for (const FieldElement& i : {j - one, j, j + one}) {
        if (!in_I(i)) continue;
        Rational c = cartan_entry(i, j);
        if (c != 0) w.add(i, long(numerator(c)));
    }
    return w;
}

DynkinType CartanDatum::component_classification(const FieldElement& i0) const {
    FieldElement i = lift(ctx_, i0);
    require_in_I(i, "component_classification");
    if (ctx_->is_char_zero()) {
        if (!i.is_rational()) return DynkinType::A_inf;
        Rational q = i.rational_value();
        if (denominator(q) == 1) return DynkinType::B_inf;
        if (denominator(q) == 2) return DynkinType::C_inf;
        return DynkinType::A_inf;
    }
    auto [a, t] = i.fp2_parts();
    (void)a;
    if (t != 0) return DynkinType::A1_affine;
    return ctx_->characteristic() == 3 ? DynkinType::A2_twisted : DynkinType::Ap_twisted;
}

std::vector<FieldElement> CartanDatum::I0_colors() const {
    if (ctx_->is_char_zero()) fail(errc::config_error, "I0_colors: finite I_0 exists only in char p");
    std::vector<FieldElement> out;
    for (long a = 0; a <= (ctx_->characteristic() - 1) / 2; ++a) out.push_back(el(a));
    return out;
}

std::string CartanDatum::rep_rule_description() const {
    std::ostringstream os;
    if (ctx_->is_char_zero()) {
        os << "char 0: I = N u {negative half-integers} u {frac in (0,1/2)}; "
           << "tower monomials distinguished positive; tower = " << ctx_->describe();
    } else {
        long p = ctx_->characteristic();
        os << "char " << p << ": I_0 = {0..." << (p - 1) / 2 << "}, a+t*theta in I iff 1 <= t <= " << (p - 1) / 2
           << "; theta^2 = " << ctx_->theta_sq();
    }
    return os.str();
}

} // namespace kmb
