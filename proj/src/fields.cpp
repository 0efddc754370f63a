#include "kmbridge/fields.hpp"

#include <algorithm>
#include <sstream>

namespace kmb {

namespace {

constexpr long kMaxPrime = 101;
constexpr std::size_t kMaxTowerRank = 4;

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

long mod_pos(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

long fp_inv(long a, long p) {
    if (a % p == 0) fail(errc::division_by_zero, "inverse of 0 in F_p");
    // extended Euclid
    long t = 0, newt = 1, r = p, newr = mod_pos(a, p);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return mod_pos(t, p);
}

long rational_mod_p(const Rational& q, long p) {
    long num = long(numerator(q) % p);
    long den = long(denominator(q) % p);
    if (den == 0) fail(errc::division_by_zero, "denominator divisible by p");
    return mod_pos(mod_pos(num, p) * fp_inv(den, p), p);
}

bool is_square_mod_p(long a, long p) {
    a = mod_pos(a, p);
    for (long r = 0; r <= (p - 1) / 2; ++r)
        if (r * r % p == a) return true;
    return false;
}

std::optional<BigInt> bigint_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto ns = bigint_sqrt(numerator(q));
    auto ds = bigint_sqrt(denominator(q));
    if (!ns || !ds) return std::nullopt;
    return Rational(*ns, *ds);
}

} // namespace

FieldCtxPtr FieldContext::rationals() {
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = 0;
    return ctx;
}

FieldCtxPtr FieldContext::prime_field(long p) {
    if (!is_odd_prime(p) || p > kMaxPrime)
        fail(errc::config_error, "characteristic must be an odd prime <= 101, got " + std::to_string(p));
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = p;
    long d = 2;
    while (is_square_mod_p(d, p)) ++d;
    ctx->theta_sq_ = d;
    return ctx;
}

FieldCtxPtr FieldContext::adjoin_root(const Rational& d) const {
    if (p_ != 0) fail(errc::config_error, "adjoin_root: only one quadratic extension in char p");
    if (d == 0) fail(errc::zero_radicand, "cannot adjoin a root of 0");
    if (rads_.size() >= kMaxTowerRank)
        fail(errc::config_error, "tower rank limit (4) exceeded");
    FieldElement dv = FieldElement::from_rational(shared_from_this(), d);
    if (dv.try_sqrt())
        fail(errc::already_resolvable, "radicand already has a square root in the tower");
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = 0;
    ctx->rads_ = rads_;
    ctx->rads_.push_back(d);
    return ctx;
}

bool FieldContext::same_as(const FieldContext& other) const {
    return p_ == other.p_ && theta_sq_ == other.theta_sq_ && rads_ == other.rads_;
}

std::string FieldContext::describe() const {
    std::ostringstream os;
    if (p_ == 0) {
        os << "Q";
        for (const auto& d : rads_) os << "(sqrt(" << d << "))";
    } else {
        os << "F_" << p_ << "^2 (theta^2=" << theta_sq_ << ")";
    }
    return os.str();
}

FieldElement::FieldElement(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {
    if (ctx_->is_char_zero()) q_.assign(ctx_->dim(), Rational(0));
}

FieldElement FieldElement::from_rational(FieldCtxPtr ctx, const Rational& q) {
    FieldElement x(std::move(ctx));
    if (x.ctx_->is_char_zero())
        x.q_[0] = q;
    else
        x.a_ = rational_mod_p(q, x.ctx_->characteristic());
    return x;
}

FieldElement FieldElement::from_int(FieldCtxPtr ctx, long n) {
    return from_rational(std::move(ctx), Rational(n));
}

FieldElement FieldElement::fp2(FieldCtxPtr ctx, long a, long b) {
    if (ctx->is_char_zero()) fail(errc::context_mismatch, "fp2 constructor needs char p");
    FieldElement x(std::move(ctx));
    long p = x.ctx_->characteristic();
    x.a_ = mod_pos(a, p);
    x.b_ = mod_pos(b, p);
    return x;
}

FieldElement FieldElement::monomial(FieldCtxPtr ctx, const Rational& q, unsigned mask) {
    if (!ctx->is_char_zero()) fail(errc::context_mismatch, "monomial constructor needs char 0");
    FieldElement x(std::move(ctx));
    if (mask >= x.ctx_->dim()) fail(errc::index_out_of_range, "monomial mask out of range");
    x.q_[mask] = q;
    return x;
}

void FieldElement::check_ctx(const FieldElement& o) const {
    if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
        fail(errc::context_mismatch, "field elements from different contexts");
}

bool FieldElement::is_zero() const {
    if (ctx_->is_char_zero())
        return std::all_of(q_.begin(), q_.end(), [](const Rational& c) { return c == 0; });
    return a_ == 0 && b_ == 0;
}

bool FieldElement::is_one() const {
    if (ctx_->is_char_zero()) {
        if (q_[0] != 1) return false;
        for (std::size_t i = 1; i < q_.size(); ++i)
            if (q_[i] != 0) return false;
        return true;
    }
    return a_ == 1 && b_ == 0;
}

bool FieldElement::is_rational() const {
    if (ctx_->is_char_zero()) {
        for (std::size_t i = 1; i < q_.size(); ++i)
            if (q_[i] != 0) return false;
        return true;
    }
    return b_ == 0;
}

Rational FieldElement::rational_value() const {
    if (!ctx_->is_char_zero()) fail(errc::context_mismatch, "rational_value in char p");
    if (!is_rational()) fail(errc::unsupported_color, "element is not rational");
    return q_[0];
}

std::pair<long, long> FieldElement::fp2_parts() const {
    if (ctx_->is_char_zero()) fail(errc::context_mismatch, "fp2_parts in char 0");
    return {a_, b_};
}

Rational FieldElement::coord(unsigned mask) const {
    if (!ctx_->is_char_zero()) fail(errc::context_mismatch, "coord in char p");
    if (mask >= q_.size()) return Rational(0);
    return q_[mask];
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    if (ctx_->is_char_zero()) {
        for (auto& c : r.q_) c = -c;
    } else {
        long p = ctx_->characteristic();
        r.a_ = mod_pos(-a_, p);
        r.b_ = mod_pos(-b_, p);
    }
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_ctx(o);
    FieldElement r = *this;
    if (ctx_->is_char_zero()) {
        for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i] += o.q_[i];
    } else {
        long p = ctx_->characteristic();
        r.a_ = mod_pos(a_ + o.a_, p);
        r.b_ = mod_pos(b_ + o.b_, p);
    }
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_ctx(o);
    FieldElement r(ctx_);
    if (ctx_->is_char_zero()) {
        const auto& rads = ctx_->radicands();
        for (std::size_t s = 0; s < q_.size(); ++s) {
            if (q_[s] == 0) continue;
            for (std::size_t t = 0; t < o.q_.size(); ++t) {
                if (o.q_[t] == 0) continue;
                Rational c = q_[s] * o.q_[t];
                unsigned common = unsigned(s) & unsigned(t);
                for (std::size_t k = 0; k < rads.size(); ++k)
                    if (common & (1u << k)) c *= rads[k];
                r.q_[s ^ t] += c;
            }
        }
    } else {
        long p = ctx_->characteristic();
        long d = ctx_->theta_sq();
        r.a_ = mod_pos(a_ * o.a_ + d * (b_ * o.b_ % p) % p, p);
        r.b_ = mod_pos(a_ * o.b_ + b_ * o.a_, p);
    }
    return r;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) fail(errc::division_by_zero, "field inverse of zero");
    if (!ctx_->is_char_zero()) {
        long p = ctx_->characteristic();
        long d = ctx_->theta_sq();
        long n = mod_pos(a_ * a_ % p - d * (b_ * b_ % p) % p, p); // norm, nonzero since theta irrational
        long ni = fp_inv(n, p);
        return fp2(ctx_, a_ * ni % p, mod_pos(-b_ * ni % p, p));
    }
    // Recursive conjugate descent: write x = u + v*s over the top root s,
    // then x^-1 = (u - v s) * (u^2 - d v^2)^-1 in the subtower.
    std::function<std::vector<Rational>(const std::vector<Rational>&, std::size_t)> rec =
        [&](const std::vector<Rational>& c, std::size_t rank) -> std::vector<Rational> {
        if (rank == 0) {
            if (c[0] == 0) fail(errc::division_by_zero, "field inverse of zero");
            return {1 / c[0]};
        }
        std::size_t half = std::size_t(1) << (rank - 1);
        std::vector<Rational> u(c.begin(), c.begin() + half);
        std::vector<Rational> v(c.begin() + half, c.end());
        const Rational& d = ctx_->radicands()[rank - 1];
        // norm = u^2 - d v^2 in the subtower
        auto mul_sub = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
            std::vector<Rational> r(half, Rational(0));
            for (std::size_t s = 0; s < half; ++s) {
                if (x[s] == 0) continue;
                for (std::size_t t = 0; t < half; ++t) {
                    if (y[t] == 0) continue;
                    Rational c2 = x[s] * y[t];
                    unsigned common = unsigned(s) & unsigned(t);
                    for (std::size_t k = 0; k + 1 < rank; ++k)
                        if (common & (1u << k)) c2 *= ctx_->radicands()[k];
                    r[s ^ t] += c2;
                }
            }
            return r;
        };
        std::vector<Rational> norm = mul_sub(u, u);
        std::vector<Rational> vv = mul_sub(v, v);
        for (std::size_t i = 0; i < half; ++i) norm[i] -= d * vv[i];
        std::vector<Rational> ninv = rec(norm, rank - 1);
        std::vector<Rational> ru = mul_sub(u, ninv);
        std::vector<Rational> rv = mul_sub(v, ninv);
        std::vector<Rational> out(half * 2);
        for (std::size_t i = 0; i < half; ++i) {
            out[i] = ru[i];
            out[half + i] = -rv[i];
        }
        return out;
    };
    FieldElement r(ctx_);
    r.q_ = rec(q_, ctx_->tower_rank());
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_ctx(o);
    if (ctx_->is_char_zero()) return q_ == o.q_;
    return a_ == o.a_ && b_ == o.b_;
}

int FieldElement::cmp(const FieldElement& o) const {
    check_ctx(o);
    if (ctx_->is_char_zero()) {
        for (std::size_t i = 0; i < q_.size(); ++i) {
            if (q_[i] < o.q_[i]) return -1;
            if (q_[i] > o.q_[i]) return 1;
        }
        return 0;
    }
    if (a_ != o.a_) return a_ < o.a_ ? -1 : 1;
    if (b_ != o.b_) return b_ < o.b_ ? -1 : 1;
    return 0;
}

std::optional<FieldElement> FieldElement::try_sqrt() const {
    if (is_zero()) return FieldElement(ctx_);
    if (!ctx_->is_char_zero()) {
        long p = ctx_->characteristic();
        for (long x = 0; x < p; ++x)
            for (long y = 0; y < p; ++y) {
                FieldElement c = fp2(ctx_, x, y);
                if (c * c == *this) return c;
            }
        return std::nullopt;
    }
    if (!is_rational()) return std::nullopt;
    Rational q = q_[0];
    const auto& rads = ctx_->radicands();
    for (unsigned mask = 0; mask < ctx_->dim(); ++mask) {
        Rational scale(1);
        for (std::size_t k = 0; k < rads.size(); ++k)
            if (mask & (1u << k)) scale *= rads[k];
        if (scale == 0) continue;
        if (auto r = rational_sqrt(q / scale))
            return monomial(ctx_, *r, mask);
    }
    return std::nullopt;
}

bool FieldElement::is_pure_monomial() const {
    if (!ctx_->is_char_zero()) return false;
    int nz = 0;
    for (std::size_t i = 0; i < q_.size(); ++i)
        if (q_[i] != 0) ++nz;
    return nz == 1 && q_[0] == 0;
}

int FieldElement::monomial_sign() const {
    for (std::size_t i = 1; i < q_.size(); ++i)
        if (q_[i] != 0) return q_[i] > 0 ? 1 : -1;
    fail(errc::internal, "monomial_sign on non-monomial");
}

std::string FieldElement::str() const {
    std::ostringstream os;
    if (!ctx_->is_char_zero()) {
        os << a_;
        if (b_ != 0) os << "+" << b_ << "*th";
        return os.str();
    }
    bool first = true;
    for (std::size_t m = 0; m < q_.size(); ++m) {
        if (q_[m] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << q_[m];
        for (std::size_t k = 0; k < ctx_->tower_rank(); ++k)
            if (m & (std::size_t(1) << k)) os << "*r" << k;
    }
    if (first) os << "0";
    return os.str();
}

SqrtResult distinguished_sqrt(const FieldElement& a,
                              const std::function<bool(const FieldElement&)>& j_test,
                              bool allow_adjoin) {
    if (a.is_zero()) return {a, a.ctx(), false};
    if (auto r = a.try_sqrt()) {
        FieldElement plus = *r, minus = -*r;
        bool jp = j_test(plus), jm = j_test(minus);
        if (jp == jm)
            fail(errc::ambiguous_root, "J test selects " + std::string(jp ? "both" : "neither") +
                                           " of the square-root candidates of " + a.str());
        return {jp ? plus : minus, a.ctx(), false};
    }
    if (!allow_adjoin || !a.ctx()->is_char_zero())
        fail(errc::no_root, "no square root of " + a.str() + " in " + a.ctx()->describe());
    if (!a.is_rational())
        fail(errc::unsupported_color, "auto-adjunction supports rational radicands only");
    FieldCtxPtr ext = a.ctx()->adjoin_root(a.rational_value());
    unsigned mask = 1u << (ext->tower_rank() - 1);
    return {FieldElement::monomial(ext, Rational(1), mask), ext, true};
}

FieldElement lift(const FieldCtxPtr& ctx, const FieldElement& x) {
    if (ctx->same_as(*x.ctx())) return x;
    if (ctx->characteristic() != x.ctx()->characteristic())
        fail(errc::context_mismatch, "lift across characteristics");
    if (!ctx->is_char_zero()) return FieldElement::fp2(ctx, x.fp2_parts().first, x.fp2_parts().second);
    const auto& sub = x.ctx()->radicands();
    const auto& sup = ctx->radicands();
    if (sub.size() > sup.size() || !std::equal(sub.begin(), sub.end(), sup.begin()))
        fail(errc::context_mismatch, "lift target is not an extension of the source tower");
    FieldElement r(ctx);
    for (unsigned m = 0; m < x.ctx()->dim(); ++m) {
        Rational c = x.coord(m);
        if (c != 0) r += FieldElement::monomial(ctx, c, m);
    }
    return r;
}

FieldElement operator*(long n, const FieldElement& x) {
    return FieldElement::from_int(x.ctx(), n) * x;
}

} // namespace kmb
