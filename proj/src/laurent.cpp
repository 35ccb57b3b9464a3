#include "drmf/laurent.hpp"

#include <algorithm>

namespace drmf {

namespace {
constexpr long kExpGuard = Laurent::kInfExp / 4;

long add_capped(long a, long b) {
    if (a >= Laurent::kInfExp || b >= Laurent::kInfExp) return Laurent::kInfExp;
    return a + b;
}

void check_exp(long v) {
    if (v > kExpGuard || v < -kExpGuard)
        throw precision_error("lambda-exponent overflow");
}
}  // namespace

Laurent::Laurent(const Field& F, long lead, long prec, std::vector<Field::Elem> d)
    : F_(&F), zero_(false), lead_(lead), prec_(prec), d_(std::move(d)) {
    normalize();
}

Laurent Laurent::zero(const Field& F) {
    Laurent x;
    x.F_ = &F;
    return x;
}

Laurent Laurent::zero_below(const Field& F, long prec) {
    Laurent x;
    x.F_ = &F;
    x.prec_ = prec;
    return x;
}

Laurent Laurent::monomial(const Field& F, Field::Elem c, long lead) {
    if (c == 0) return zero(F);
    return Laurent(F, lead, kInfExp, {c});
}

Laurent Laurent::theta(const Field& F) {
    return monomial(F, F.neg(F.one()), -(F.q() - 1));
}

Laurent Laurent::theta_pow(const Field& F, long k) {
    return theta(F).pow(k);
}

void Laurent::normalize() {
    std::size_t i = 0;
    while (i < d_.size() && d_[i] == 0) ++i;
    if (i > 0) {
        d_.erase(d_.begin(), d_.begin() + static_cast<long>(i));
        lead_ += static_cast<long>(i);
    }
    if (d_.empty() || lead_ >= prec_) {
        zero_ = true;
        d_.clear();
        return;
    }
    const long P = F_->prec();
    if (static_cast<long>(d_.size()) > P) {
        d_.resize(static_cast<std::size_t>(P));
        prec_ = std::min(prec_, lead_ + P);
    }
    if (prec_ < kInfExp && static_cast<long>(d_.size()) > prec_ - lead_)
        d_.resize(static_cast<std::size_t>(prec_ - lead_));
    while (!d_.empty() && d_.back() == 0) d_.pop_back();
    if (d_.empty()) {
        // All known digits vanished; the value is zero to precision prec_.
        zero_ = true;
    }
    check_exp(lead_);
}

long Laurent::lead() const {
    if (zero_) throw domain_error("zero Laurent number has no leading exponent");
    return lead_;
}

Field::Elem Laurent::lead_digit() const {
    if (zero_) throw domain_error("zero Laurent number has no leading digit");
    return d_[0];
}

Valuation Laurent::val() const {
    Valuation v;
    v.den = F_->q() - 1;
    if (v.den == 0) v.den = 1;
    if (zero_) {
        if (exact()) {
            v.infinite = true;
        } else {
            v.num = prec_;
            v.lower_bound = true;
        }
    } else {
        v.num = lead_;
    }
    return v;
}

bool Laurent::norm_le(long texp) const {
    if (zero_) {
        if (exact() || prec_ >= texp) return true;
        throw precision_error("norm comparison undecidable: value vanished below precision " +
                              std::to_string(prec_) + " but threshold is " + std::to_string(texp));
    }
    return lead_ >= texp;
}

Laurent Laurent::operator-() const {
    if (zero_) return *this;
    Laurent r = *this;
    for (auto& c : r.d_) c = F_->neg(c);
    return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    const Field& F = a.F_ ? *a.F_ : *b.F_;
    if (a.zero_ && a.exact()) return b;
    if (b.zero_ && b.exact()) return a;
    if (a.zero_ && b.zero_)
        return Laurent::zero_below(F, std::min(a.prec_, b.prec_));
    if (a.zero_) {
        // |a| < lambda^{-prec_a}: b's digits at or past prec_a become unknown.
        Laurent r = b;
        r.prec_ = std::min(r.prec_, a.prec_);
        r.normalize();
        if (r.zero_) r.prec_ = std::min(a.prec_, b.prec_);
        return r;
    }
    if (b.zero_) return b + a;

    long lead = std::min(a.lead_, b.lead_);
    long W = std::min(a.prec_, b.prec_);
    long len = std::min(W, add_capped(lead, F.prec())) - lead;
    // If either operand has digits past the window, they are lost: cap precision.
    if (a.lead_ + static_cast<long>(a.d_.size()) - lead > len ||
        b.lead_ + static_cast<long>(b.d_.size()) - lead > len)
        W = lead + len;
    std::vector<Field::Elem> d(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 0; i < a.d_.size(); ++i) {
        long pos = a.lead_ + static_cast<long>(i) - lead;
        if (pos >= 0 && pos < len) d[static_cast<std::size_t>(pos)] = a.d_[i];
    }
    for (std::size_t i = 0; i < b.d_.size(); ++i) {
        long pos = b.lead_ + static_cast<long>(i) - lead;
        if (pos >= 0 && pos < len)
            d[static_cast<std::size_t>(pos)] = F.add(d[static_cast<std::size_t>(pos)], b.d_[i]);
    }
    return Laurent(F, lead, W, std::move(d));
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
    const Field& F = a.F_ ? *a.F_ : *b.F_;
    if (a.zero_ || b.zero_) {
        if ((a.zero_ && a.exact()) || (b.zero_ && b.exact())) return Laurent::zero(F);
        long bound = Laurent::kInfExp;
        if (a.zero_)
            bound = std::min(bound, add_capped(a.prec_, b.zero_ ? b.prec_ : b.lead_));
        if (b.zero_)
            bound = std::min(bound, add_capped(b.prec_, a.zero_ ? a.prec_ : a.lead_));
        return Laurent::zero_below(F, bound);
    }
    check_exp(a.lead_);
    check_exp(b.lead_);
    long lead = a.lead_ + b.lead_;
    long W = std::min(add_capped(a.lead_, b.prec_), add_capped(b.lead_, a.prec_));
    long len = std::min(W, add_capped(lead, F.prec())) - lead;
    if (static_cast<long>(a.d_.size() + b.d_.size()) - 1 > len) W = lead + len;
    std::vector<Field::Elem> d(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 0; i < a.d_.size(); ++i) {
        if (static_cast<long>(i) >= len) break;
        if (a.d_[i] == 0) continue;
        for (std::size_t j = 0; j < b.d_.size(); ++j) {
            long pos = static_cast<long>(i + j);
            if (pos >= len) break;
            d[static_cast<std::size_t>(pos)] =
                F.add(d[static_cast<std::size_t>(pos)], F.mul(a.d_[i], b.d_[j]));
        }
    }
    return Laurent(F, lead, W, std::move(d));
}

Laurent Laurent::scaled(Field::Elem c) const {
    if (c == 0) return zero_ ? *this : Laurent::zero(*F_);
    if (zero_) return *this;
    Laurent r = *this;
    for (auto& x : r.d_) x = F_->mul(x, c);
    return r;
}

Laurent Laurent::shifted(long dlead) const {
    if (zero_) {
        if (exact()) return *this;
        return Laurent::zero_below(*F_, add_capped(prec_, dlead));
    }
    Laurent r = *this;
    r.lead_ += dlead;
    if (r.prec_ < kInfExp) r.prec_ += dlead;
    check_exp(r.lead_);
    return r;
}

Laurent Laurent::inverse() const {
    if (zero_)
        throw domain_error(exact() ? "inversion of exact zero"
                                   : "inversion of value vanished below precision");
    const Field& F = *F_;
    if (exact() && d_.size() == 1)
        return Laurent::monomial(F, F.inv(d_[0]), -lead_);
    long K = exact() ? F.prec() : std::min<long>(prec_ - lead_, F.prec());
    Field::Elem c0inv = F.inv(d_[0]);
    std::vector<Field::Elem> e(static_cast<std::size_t>(K), 0);
    for (std::size_t i = 1; i < d_.size() && static_cast<long>(i) < K; ++i)
        e[i] = F.mul(d_[i], c0inv);
    std::vector<Field::Elem> w(static_cast<std::size_t>(K), 0);
    w[0] = F.one();
    for (long k = 1; k < K; ++k) {
        Field::Elem s = 0;
        for (long j = 1; j <= k; ++j) {
            if (e[static_cast<std::size_t>(j)] == 0) continue;
            s = F.add(s, F.mul(e[static_cast<std::size_t>(j)],
                               w[static_cast<std::size_t>(k - j)]));
        }
        w[static_cast<std::size_t>(k)] = F.neg(s);
    }
    for (auto& x : w) x = F.mul(x, c0inv);
    return Laurent(F, -lead_, -lead_ + K, std::move(w));
}

Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

Laurent Laurent::pow(long k) const {
    const Field& F = *F_;
    if (k == 0) return Laurent::one(F);
    if (k < 0) return inverse().pow(-k);
    Laurent r = Laurent::one(F);
    Laurent base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        if (k >>= 1) base = base * base;
    }
    return r;
}

Laurent Laurent::frobenius(int k) const {
    const Field& F = *F_;
    long q = F.q();
    Laurent x = *this;
    for (int it = 0; it < k; ++it) {
        if (x.zero_) {
            if (x.exact()) continue;
            check_exp(x.prec_);
            x = Laurent::zero_below(F, q * x.prec_);
            continue;
        }
        check_exp(x.lead_ * q >= 0 ? x.lead_ : x.lead_);
        if (x.lead_ > kExpGuard / q || x.lead_ < -kExpGuard / q)
            throw precision_error("lambda-exponent overflow in frobenius");
        long lead = q * x.lead_;
        long W = x.exact() ? kInfExp : q * x.prec_;
        long len = std::min(W, add_capped(lead, F.prec())) - lead;
        std::vector<Field::Elem> d(static_cast<std::size_t>(len), 0);
        bool still_exact = x.exact();
        for (std::size_t i = 0; i < x.d_.size(); ++i) {
            long pos = q * static_cast<long>(i);
            if (pos < len)
                d[static_cast<std::size_t>(pos)] = F.frob_q(x.d_[i]);
            else if (x.d_[i] != 0 && still_exact)
                still_exact = false;
        }
        x = Laurent(F, lead, still_exact ? kInfExp : std::min(W, lead + F.prec()), std::move(d));
    }
    return x;
}

Laurent Laurent::capped(long prec) const {
    if (prec >= prec_) return *this;
    if (zero_) return Laurent::zero_below(*F_, prec);
    Laurent r = *this;
    r.prec_ = prec;
    r.normalize();
    if (r.zero_) r.prec_ = prec;
    return r;
}

bool Laurent::close(const Laurent& a, const Laurent& b, long texp) {
    return (a - b).norm_le(texp);
}

}  // namespace drmf
