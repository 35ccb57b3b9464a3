#pragma once

#include <vector>

#include "drmf/laurent.hpp"
#include "drmf/tate.hpp"

namespace drmf {

// Element of A = F_q[theta], coefficients in the F_q subfield of the residue
// field, little-endian. The zero polynomial has an empty coefficient vector.
class PolyA {
  public:
    PolyA() = default;
    PolyA(const Field& F, std::vector<Field::Elem> c);

    static PolyA zero(const Field& F) { return PolyA(F, {}); }
    static PolyA constant(const Field& F, Field::Elem c) { return PolyA(F, {c}); }
    static PolyA one(const Field& F) { return constant(F, F.one()); }
    static PolyA theta_pow(const Field& F, int d);

    const Field& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_monic() const { return !c_.empty() && c_.back() == F_->one(); }
    const std::vector<Field::Elem>& coeffs() const { return c_; }
    Field::Elem coeff(int i) const;

    friend PolyA operator+(const PolyA& a, const PolyA& b);
    friend PolyA operator-(const PolyA& a, const PolyA& b);
    friend PolyA operator*(const PolyA& a, const PolyA& b);
    PolyA operator-() const;
    bool operator==(const PolyA& o) const { return c_ == o.c_; }

    Laurent eval_theta() const;                 // a(theta) in L
    Laurent eval(const Laurent& t0) const;      // chi_t(a) at t = t0
    TatePoly chi_t(long D) const;               // chi_t(a) as element of T

    // All polynomials of degree <= maxdeg, in a fixed deterministic order.
    static std::vector<PolyA> all_of_degree_le(const Field& F, int maxdeg);
    // All monic polynomials of exact degree d.
    static std::vector<PolyA> monic_of_degree(const Field& F, int d);

  private:
    const Field* F_ = nullptr;
    std::vector<Field::Elem> c_;
};

}  // namespace drmf
