#include "drmf/tate.hpp"

#include <algorithm>
#include <string>

namespace drmf {

namespace {
long q_pow(long q, int j) {
    long r = 1;
    for (int i = 0; i < j; ++i) {
        if (r > Laurent::kInfExp / q) throw precision_error("q^j overflow");
        r *= q;
    }
    return r;
}
}  // namespace

TatePoly::TatePoly(const Field& F, long D) : F_(&F), D_(D) {
    if (D < 0) throw domain_error("negative t-degree cap");
    c_.assign(static_cast<std::size_t>(D + 1), Laurent::zero(F));
}

TatePoly TatePoly::constant(const Laurent& c, long D) {
    TatePoly f(c.field(), D);
    f.c_[0] = c;
    return f;
}

TatePoly TatePoly::t_monomial(const Field& F, long D, long i) {
    TatePoly f(F, D);
    if (i > D) {
        f.truncated_ = true;
        return f;
    }
    f.c_[static_cast<std::size_t>(i)] = Laurent::one(F);
    return f;
}

bool TatePoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Laurent& x) { return x.is_zero(); });
}

void TatePoly::set_coeff(long i, Laurent v) {
    if (i < 0 || i > D_) throw domain_error("t-degree out of range");
    c_[static_cast<std::size_t>(i)] = std::move(v);
}

long TatePoly::gauss_lead() const {
    long best = Laurent::kInfExp;
    for (const auto& x : c_)
        if (!x.is_zero()) best = std::min(best, x.lead());
    if (best == Laurent::kInfExp) throw domain_error("Gauss norm of zero TatePoly");
    return best;
}

Valuation TatePoly::gauss_val() const { return gauss_val_upto(D_); }

Valuation TatePoly::gauss_val_upto(long maxdeg) const {
    Valuation best;
    best.infinite = true;
    best.den = F_->q() - 1;
    for (long i = 0; i <= std::min(maxdeg, D_); ++i) {
        Valuation v = c_[static_cast<std::size_t>(i)].val();
        if (v.infinite) continue;
        if (best.infinite || v.num < best.num ||
            (v.num == best.num && best.lower_bound && !v.lower_bound)) {
            best = v;
        }
    }
    return best;
}

TatePoly TatePoly::tau(int k) const {
    TatePoly r = *this;
    for (auto& x : r.c_) x = x.frobenius(k);
    return r;
}

TatePoly TatePoly::scaled(const Laurent& c) const {
    TatePoly r = *this;
    for (auto& x : r.c_) x = x * c;
    return r;
}

TatePoly operator+(const TatePoly& a, const TatePoly& b) {
    if (a.D_ != b.D_) throw domain_error("TatePoly degree caps differ");
    TatePoly r = a;
    r.truncated_ = a.truncated_ || b.truncated_;
    for (long i = 0; i <= a.D_; ++i)
        r.c_[static_cast<std::size_t>(i)] =
            a.c_[static_cast<std::size_t>(i)] + b.c_[static_cast<std::size_t>(i)];
    return r;
}

TatePoly TatePoly::operator-() const {
    TatePoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TatePoly operator-(const TatePoly& a, const TatePoly& b) { return a + (-b); }

TatePoly operator*(const TatePoly& a, const TatePoly& b) {
    if (a.D_ != b.D_) throw domain_error("TatePoly degree caps differ");
    TatePoly r(*a.F_, a.D_);
    r.truncated_ = a.truncated_ || b.truncated_;
    for (long i = 0; i <= a.D_; ++i) {
        if (a.c_[static_cast<std::size_t>(i)].is_zero()) continue;
        for (long j = 0; j + i <= a.D_; ++j) {
            auto& dst = r.c_[static_cast<std::size_t>(i + j)];
            dst = dst + a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
        }
        for (long j = a.D_ - i + 1; j <= a.D_; ++j)
            if (!b.c_[static_cast<std::size_t>(j)].is_zero()) r.truncated_ = true;
    }
    return r;
}

TatePoly TatePoly::invert_unit() const {
    const Field& F = *F_;
    const Laurent& c0 = c_[0];
    if (c0.is_zero()) throw domain_error("invert_unit: constant term (index 0) vanishes");
    bool constant = true;
    for (long i = 1; i <= D_; ++i) {
        const Laurent& ci = c_[static_cast<std::size_t>(i)];
        if (ci.is_zero()) continue;
        constant = false;
        if (ci.lead() <= c0.lead())
            throw domain_error("invert_unit: coefficient at index " + std::to_string(i) +
                               " is not dominated by the constant term");
    }
    Laurent c0inv = c0.inverse();
    if (constant) return TatePoly::constant(c0inv, D_);
    // f = c0 (1 + h) with h of positive t-degree; geometric series ends at D.
    TatePoly h(F, D_);
    for (long i = 1; i <= D_; ++i)
        h.c_[static_cast<std::size_t>(i)] = -(c_[static_cast<std::size_t>(i)] * c0inv);
    TatePoly acc = TatePoly::constant(Laurent::one(F), D_);
    TatePoly p = h;
    for (long n = 1; n <= D_; ++n) {
        acc = acc + p;
        if (n < D_) p = p * h;
    }
    return acc.scaled(c0inv);
}

Laurent TatePoly::eval(const Laurent& t0) const {
    Laurent r = Laurent::zero(*F_);
    for (long i = D_; i >= 0; --i) r = r * t0 + c_[static_cast<std::size_t>(i)];
    return r;
}

PoleSeparated::PoleSeparated(const Field& F, long D)
    : F_(&F), D_(D), remainder_(F, D) {}

void PoleSeparated::add_term(int j, Laurent c) {
    if (j < 0) throw domain_error("negative pole index");
    for (auto& [jj, cc] : terms_)
        if (jj == j) {
            cc = cc + c;
            return;
        }
    terms_.emplace_back(j, std::move(c));
}

PoleSeparated PoleSeparated::tau(int k) const {
    PoleSeparated r(*F_, D_);
    for (const auto& [j, c] : terms_) r.add_term(j + k, c.frobenius(k));
    r.remainder_ = remainder_.tau(k);
    return r;
}

PoleSeparated PoleSeparated::scaled(const Laurent& c) const {
    PoleSeparated r(*F_, D_);
    for (const auto& [j, cj] : terms_) r.add_term(j, cj * c);
    r.remainder_ = remainder_.scaled(c);
    return r;
}

PoleSeparated operator+(const PoleSeparated& a, const PoleSeparated& b) {
    PoleSeparated r = a;
    for (const auto& [j, c] : b.terms_) r.add_term(j, c);
    r.remainder_ = a.remainder_ + b.remainder_;
    return r;
}

Laurent PoleSeparated::eval(const Laurent& t0) const {
    const Field& F = *F_;
    long q = F.q();
    if (!t0.is_zero() && t0.lead() <= -q * (q - 1))
        throw domain_error("eval_pole_separated: |t0| >= q^q");
    Laurent r = remainder_.eval(t0);
    for (const auto& [j, c] : terms_) {
        if (c.is_zero()) continue;
        Laurent den = Laurent::theta_pow(F, q_pow(q, j)) - t0;
        if (den.is_zero())
            throw domain_error("eval_pole_separated: t0 within precision of pole theta^{q^" +
                               std::to_string(j) + "}");
        r = r + c / den;
    }
    return r;
}

TatePoly PoleSeparated::to_tatepoly() const {
    const Field& F = *F_;
    long q = F.q();
    TatePoly f = remainder_;
    for (const auto& [j, c] : terms_) {
        if (c.is_zero()) continue;
        // 1/(theta^{q^j} - t) = sum_i t^i theta^{-q^j (i+1)}
        Laurent thinv = Laurent::theta_pow(F, q_pow(q, j)).inverse();
        Laurent p = c * thinv;
        for (long i = 0; i <= D_; ++i) {
            f.set_coeff(i, f.coeff(i) + p);
            if (i < D_) p = p * thinv;
        }
    }
    return f;
}

long PoleSeparated::expansion_tail_lead() const {
    long q = F_->q();
    long best = Laurent::kInfExp;
    for (const auto& [j, c] : terms_) {
        if (c.is_zero()) continue;
        long bound = c.lead() + (D_ + 2) * q_pow(q, j) * (q - 1);
        best = std::min(best, bound);
    }
    return best;
}

}  // namespace drmf
