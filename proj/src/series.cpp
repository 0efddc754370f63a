#include "kmbridge/series.hpp"

#include <algorithm>
#include <sstream>

namespace kmb {

TruncSeries::TruncSeries(FieldCtxPtr ctx, int nvars, int order)
    : ctx_(std::move(ctx)), nvars_(nvars), order_(order) {
    if (nvars < 0 || nvars > kMaxVars) fail(errc::config_error, "nvars out of range");
    if (order < 1) fail(errc::config_error, "series order must be >= 1");
}

TruncSeries TruncSeries::constant(FieldCtxPtr ctx, int nvars, int order, const FieldElement& c) {
    TruncSeries s(std::move(ctx), nvars, order);
    if (!c.is_zero()) s.c_[Expv{}] = lift(s.ctx_, c);
    return s;
}

TruncSeries TruncSeries::variable(FieldCtxPtr ctx, int nvars, int order, int k) {
    TruncSeries s(std::move(ctx), nvars, order);
    if (k < 0 || k >= nvars) fail(errc::index_out_of_range, "variable index");
    if (order > 1) {
        Expv e{};
        e[k] = 1;
        s.c_[e] = FieldElement::from_int(s.ctx_, 1);
    }
    return s;
}

FieldElement TruncSeries::constant_term() const { return coeff(Expv{}); }

FieldElement TruncSeries::coeff(const Expv& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? FieldElement(ctx_) : it->second;
}

void TruncSeries::set_coeff(const Expv& e, const FieldElement& v) {
    if (v.is_zero() || total_degree(e) >= order_)
        c_.erase(e);
    else
        c_[e] = lift(ctx_, v);
}

int TruncSeries::valuation() const {
    int v = order_;
    for (const auto& [e, x] : c_) v = std::min(v, total_degree(e));
    return v;
}

void TruncSeries::check_compat(const TruncSeries& o) const {
    if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
        fail(errc::context_mismatch, "series over different field contexts");
    if (nvars_ != o.nvars_) fail(errc::context_mismatch, "series with different variable sets");
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& [e, x] : r.c_) x = -x;
    return r;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(ctx_, nvars_, std::min(order_, o.order_));
    for (const auto& [e, x] : c_)
        if (total_degree(e) < r.order_) r.c_[e] = x;
    for (const auto& [e, x] : o.c_) {
        if (total_degree(e) >= r.order_) continue;
        auto [it, fresh] = r.c_.emplace(e, x);
        if (!fresh) {
            it->second += x;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    check_compat(o);
    // Trusted order of a product: unknown tails enter at (valuation + other's order).
    int ord = std::min({order_ + o.valuation(), o.order_ + valuation(), kPolyOrder});
    TruncSeries r(ctx_, nvars_, ord);
    for (const auto& [e1, x1] : c_) {
        int d1 = total_degree(e1);
        for (const auto& [e2, x2] : o.c_) {
            if (d1 + total_degree(e2) >= ord) continue;
            Expv e{};
            for (int k = 0; k < kMaxVars; ++k) e[k] = uint16_t(e1[k] + e2[k]);
            FieldElement v = x1 * x2;
            auto [it, fresh] = r.c_.emplace(e, v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

TruncSeries TruncSeries::scale(const FieldElement& cst) const {
    TruncSeries r(ctx_, nvars_, order_);
    if (cst.is_zero()) return r;
    FieldElement c0 = lift(ctx_, cst);
    for (const auto& [e, x] : c_) {
        FieldElement v = x * c0;
        if (!v.is_zero()) r.c_[e] = v;
    }
    return r;
}

TruncSeries TruncSeries::truncated(int new_order) const {
    TruncSeries r(ctx_, nvars_, std::min(order_, new_order));
    for (const auto& [e, x] : c_)
        if (total_degree(e) < r.order_) r.c_[e] = x;
    return r;
}

TruncSeries TruncSeries::with_order(int new_order) const { return truncated(new_order); }

TruncSeries TruncSeries::inv() const {
    FieldElement c0 = constant_term();
    if (c0.is_zero()) fail(errc::not_a_unit, "series inverse requires a unit constant term");
    FieldElement c0i = c0.inv();
    // 1/f = c0i * sum_k h^k with h = 1 - f*c0i (nilpotent mod order)
    TruncSeries one = constant(ctx_, nvars_, order_, FieldElement::from_int(ctx_, 1));
    TruncSeries h = one - scale(c0i);
    if (!h.is_zero() && order_ >= kPolyOrder)
        fail(errc::config_error, "inverse of an untruncated non-constant series; truncate first");
    TruncSeries acc = one;
    TruncSeries pw = one;
    int ord = std::min(order_, 1 << 12);
    for (int k = 1; k < ord; ++k) {
        pw = (pw * h).truncated(ord);
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc.scale(c0i).with_order(order_);
}

TruncSeries TruncSeries::sqrt_branch(const FieldElement& c0in) const {
    FieldElement c0 = lift(ctx_, c0in);
    FieldElement f0 = constant_term();
    if (f0.is_zero()) fail(errc::not_a_unit, "sqrt_branch of a series with zero constant term");
    if (!(c0 * c0 == f0)) fail(errc::branch_mismatch, "c0^2 differs from the constant term");
    if (c_.size() > 1 && order_ >= kPolyOrder)
        fail(errc::config_error, "sqrt of an untruncated non-constant series; truncate first");
    FieldElement half = FieldElement::from_rational(ctx_, Rational(1, 2));
    TruncSeries g = constant(ctx_, nvars_, order_, c0);
    // Newton: g <- (g + f/g)/2, quadratic convergence
    int steps = 1;
    while ((1 << steps) < order_ + 1) ++steps;
    for (int s = 0; s <= steps; ++s) g = (g + *this * g.inv()).scale(half);
    return g.with_order(order_);
}

TruncSeries TruncSeries::subst(const std::map<int, TruncSeries>& assignments) const {
    int ord = order_;
    for (const auto& [k, s] : assignments) {
        if (k < 0 || k >= nvars_) fail(errc::index_out_of_range, "subst variable");
        if (!s.constant_term().is_zero())
            fail(errc::non_nilpotent_substitution, "substituted series must have zero constant term");
        ord = std::min(ord, s.order());
    }
    if (assignments.empty()) return *this;
    if (ord >= kPolyOrder) fail(errc::config_error, "substitution into an untruncated series; truncate first");
    int nv = nvars_;
    for (const auto& [k, s] : assignments) nv = std::max(nv, s.nvars());
    TruncSeries r(ctx_, nv, ord);
    // cache powers of each substituted series
    std::map<int, std::vector<TruncSeries>> pows;
    for (const auto& [k, s] : assignments) {
        auto& v = pows[k];
        v.push_back(constant(ctx_, nv, ord, FieldElement::from_int(ctx_, 1)));
        TruncSeries base(ctx_, nv, ord);
        for (const auto& [e, x] : s.terms())
            if (total_degree(e) < ord) base.set_coeff(e, x);
        for (int d = 1; d < ord; ++d) v.push_back((v.back() * base).truncated(ord));
    }
    for (const auto& [e, x] : c_) {
        if (total_degree(e) >= ord) continue;
        TruncSeries term = constant(ctx_, nv, ord, x);
        bool dead = false;
        for (int k = 0; k < nvars_ && !dead; ++k) {
            if (e[k] == 0) continue;
            auto it = assignments.find(k);
            if (it == assignments.end()) {
                TruncSeries zv = variable(ctx_, nv, ord, k);
                for (int rep = 0; rep < e[k]; ++rep) term = (term * zv).truncated(ord);
            } else {
                if (e[k] >= int(pows[k].size()))
                    dead = true; // valuation >= 1 each: contributes only above ord
                else
                    term = (term * pows[k][e[k]]).truncated(ord);
            }
            if (term.is_zero()) dead = true;
        }
        if (!dead) r += term;
    }
    return r;
}

TruncSeries TruncSeries::neg_var(int k) const {
    TruncSeries r(ctx_, nvars_, order_);
    for (const auto& [e, x] : c_) r.c_[e] = (e[k] % 2 == 1) ? -x : x;
    return r;
}

TruncSeries TruncSeries::relabel(const std::array<int, kMaxVars>& perm) const {
    TruncSeries r(ctx_, nvars_, order_);
    for (const auto& [e, x] : c_) {
        Expv ne{};
        for (int k = 0; k < kMaxVars; ++k) {
            if (e[k] == 0) continue;
            ne[perm[k]] = uint16_t(ne[perm[k]] + e[k]);
        }
        r.c_[ne] = x;
    }
    return r;
}

TruncSeries TruncSeries::merge_vars(int from, int to) const {
    std::array<int, kMaxVars> perm{};
    for (int k = 0; k < kMaxVars; ++k) perm[k] = k;
    perm[from] = to;
    return relabel(perm);
}

TruncSeries TruncSeries::swap_vars(int a, int b) const {
    std::array<int, kMaxVars> perm{};
    for (int k = 0; k < kMaxVars; ++k) perm[k] = k;
    perm[a] = b;
    perm[b] = a;
    return relabel(perm);
}

TruncSeries TruncSeries::div_linear(int a, int b, int sign) const {
    // Divide by (z_a - sign*z_b), remainder must vanish.
    TruncSeries q(ctx_, nvars_, order_ > 1 && order_ < kPolyOrder ? order_ - 1 : order_);
    FieldElement sg = FieldElement::from_int(ctx_, sign);
    std::map<Expv, FieldElement> rem(c_.begin(), c_.end());
    // process terms with the largest z_a-exponent first
    while (true) {
        auto best = rem.end();
        for (auto it = rem.begin(); it != rem.end(); ++it) {
            if (it->first[a] == 0) continue;
            if (best == rem.end() || it->first[a] > best->first[a] ||
                (it->first[a] == best->first[a] && it->first < best->first))
                best = it;
        }
        if (best == rem.end()) break;
        Expv e = best->first;
        FieldElement v = best->second;
        rem.erase(best);
        Expv qe = e;
        qe[a] -= 1;
        if (total_degree(qe) < q.order_) {
            auto [it, fresh] = q.c_.emplace(qe, v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) q.c_.erase(it);
            }
        }
        // remainder gains sign * v * z_b * (e / z_a)
        Expv re = qe;
        re[b] += 1;
        FieldElement rv = sg * v;
        auto [it2, fresh2] = rem.emplace(re, rv);
        if (!fresh2) {
            it2->second += rv;
            if (it2->second.is_zero()) rem.erase(it2);
        }
    }
    for (const auto& [e, x] : rem)
        if (total_degree(e) < order_ && !x.is_zero())
            fail(errc::divisibility_failure, "inexact division by linear binomial");
    return q;
}

TruncSeries TruncSeries::demazure(int a, int b) const {
    return (*this - swap_vars(a, b)).div_linear(a, b, 1);
}

bool TruncSeries::equals_mod(const TruncSeries& o, int ord) const {
    return !residual_witness(o, ord).has_value();
}

std::optional<std::pair<Expv, FieldElement>> TruncSeries::residual_witness(const TruncSeries& o, int ord) const {
    TruncSeries d = *this - o;
    int lim = std::min(ord, d.order());
    for (const auto& [e, x] : d.c_)
        if (total_degree(e) < lim && !x.is_zero()) return std::make_pair(e, x);
    return std::nullopt;
}

std::string TruncSeries::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, x] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << x.str() << ")";
        for (int k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            os << "*" << (k < int(names.size()) ? names[k] : "z" + std::to_string(k + 1));
            if (e[k] > 1) os << "^" << e[k];
        }
    }
    if (first) os << "0";
    os << "  (mod deg " << (order_ >= kPolyOrder ? std::string("inf") : std::to_string(order_)) << ")";
    return os.str();
}

LaurentU LaurentU::expand(const std::vector<FieldElement>& num, const std::vector<FieldElement>& den, long bottom) {
    if (num.empty() || den.empty()) fail(errc::config_error, "empty polynomial in Laurent expansion");
    FieldCtxPtr ctx = num.front().ctx();
    long dn = long(num.size()) - 1, dd = long(den.size()) - 1;
    while (dn > 0 && num[dn].is_zero()) --dn;
    while (dd > 0 && den[dd].is_zero()) --dd;
    if (den[dd].is_zero()) fail(errc::division_by_zero, "zero denominator");
    // f = u^(dn-dd) * N(t)/D(t) with t = 1/u, reversed coefficients.
    long top = dn - dd;
    long horizon = top - bottom; // need t-coefficients 0..horizon
    if (horizon < 0) horizon = 0;
    std::vector<FieldElement> N(horizon + 1, FieldElement(ctx)), D(horizon + 1, FieldElement(ctx));
    for (long k = 0; k <= horizon; ++k) {
        if (dn - k >= 0) N[k] = num[dn - k];
        if (dd - k >= 0) D[k] = den[dd - k];
    }
    // series division N/D in t
    std::vector<FieldElement> q(horizon + 1, FieldElement(ctx));
    FieldElement d0i = D[0].inv();
    for (long k = 0; k <= horizon; ++k) {
        FieldElement acc = N[k];
        for (long j = 0; j < k; ++j) acc -= q[j] * D[k - j];
        q[k] = acc * d0i;
    }
    LaurentU out(ctx, bottom);
    for (long k = 0; k <= horizon; ++k) out.set(top - k, q[k]);
    return out;
}

void LaurentU::set(long r, const FieldElement& v) {
    if (!v.is_zero()) c_[r] = v;
}

FieldElement LaurentU::coeff(long r) const {
    if (r <= bottom_) fail(errc::insufficient_order, "Laurent coefficient below the trusted horizon");
    auto it = c_.find(r);
    return it == c_.end() ? FieldElement(ctx_) : it->second;
}

} // namespace kmb
