#include "drmf/poly_a.hpp"

namespace drmf {

PolyA::PolyA(const Field& F, std::vector<Field::Elem> c) : F_(&F), c_(std::move(c)) {
    for (auto x : c_)
        if (!F.in_subfield_fq(x)) throw domain_error("PolyA coefficient outside F_q");
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyA PolyA::theta_pow(const Field& F, int d) {
    std::vector<Field::Elem> c(static_cast<std::size_t>(d + 1), 0);
    c.back() = F.one();
    return PolyA(F, std::move(c));
}

Field::Elem PolyA::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

PolyA operator+(const PolyA& a, const PolyA& b) {
    const Field& F = a.F_ ? *a.F_ : *b.F_;
    std::vector<Field::Elem> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return PolyA(F, std::move(c));
}

PolyA PolyA::operator-() const {
    if (!F_) return *this;
    auto c = c_;
    for (auto& x : c) x = F_->neg(x);
    return PolyA(*F_, std::move(c));
}

PolyA operator-(const PolyA& a, const PolyA& b) { return a + (-b); }

PolyA operator*(const PolyA& a, const PolyA& b) {
    const Field& F = a.F_ ? *a.F_ : *b.F_;
    if (a.is_zero() || b.is_zero()) return PolyA::zero(F);
    std::vector<Field::Elem> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
    return PolyA(F, std::move(c));
}

Laurent PolyA::eval_theta() const {
    Laurent r = Laurent::zero(*F_);
    for (int i = degree(); i >= 0; --i)
        r = r * Laurent::theta(*F_) + Laurent::scalar(*F_, c_[static_cast<std::size_t>(i)]);
    return r;
}

Laurent PolyA::eval(const Laurent& t0) const {
    Laurent r = Laurent::zero(*F_);
    for (int i = degree(); i >= 0; --i)
        r = r * t0 + Laurent::scalar(*F_, c_[static_cast<std::size_t>(i)]);
    return r;
}

TatePoly PolyA::chi_t(long D) const {
    TatePoly f(*F_, D);
    for (int i = 0; i <= degree() && i <= D; ++i)
        f.set_coeff(i, Laurent::scalar(*F_, c_[static_cast<std::size_t>(i)]));
    if (degree() > D) throw domain_error("chi_t image exceeds t-degree cap");
    return f;
}

std::vector<PolyA> PolyA::all_of_degree_le(const Field& F, int maxdeg) {
    const auto& fq = F.subfield_fq();
    std::vector<PolyA> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(maxdeg + 1), 0);
    for (;;) {
        std::vector<Field::Elem> c(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) c[i] = fq[idx[i]];
        out.emplace_back(F, std::move(c));
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == fq.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return out;
}

std::vector<PolyA> PolyA::monic_of_degree(const Field& F, int d) {
    std::vector<PolyA> out;
    if (d == 0) return {PolyA::one(F)};
    for (const auto& lower : all_of_degree_le(F, d - 1))
        out.push_back(lower + PolyA::theta_pow(F, d));
    return out;
}

}  // namespace drmf
