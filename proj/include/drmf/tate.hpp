#pragma once

#include <utility>
#include <vector>

#include "drmf/laurent.hpp"

namespace drmf {

// Truncated Tate algebra: polynomials in t of degree <= D with LaurentNumber
// coefficients, carrying the Gauss norm and the coefficient-wise tau action.
class TatePoly {
  public:
    TatePoly() = default;
    TatePoly(const Field& F, long D);

    static TatePoly zero(const Field& F, long D) { return TatePoly(F, D); }
    static TatePoly constant(const Laurent& c, long D);
    static TatePoly t_monomial(const Field& F, long D, long i);  // t^i

    const Field& field() const { return *F_; }
    long cap() const { return D_; }
    bool truncated() const { return truncated_; }
    bool is_zero() const;

    const Laurent& coeff(long i) const { return c_[static_cast<std::size_t>(i)]; }
    void set_coeff(long i, Laurent v);

    // Smallest lambda-lead over nonzero coefficients; the Gauss norm is
    // q^{-gauss_lead()/(q-1)}. Throws domain_error when all coefficients vanish.
    long gauss_lead() const;
    Valuation gauss_val() const;
    // Gauss valuation restricted to t-degrees <= maxdeg (for residuals whose
    // top coefficient is polluted by degree truncation).
    Valuation gauss_val_upto(long maxdeg) const;

    TatePoly tau(int k = 1) const;
    TatePoly scaled(const Laurent& c) const;
    // Inverse modulo t^{D+1}; requires a strictly dominating constant term.
    TatePoly invert_unit() const;
    Laurent eval(const Laurent& t0) const;

    friend TatePoly operator+(const TatePoly& a, const TatePoly& b);
    friend TatePoly operator-(const TatePoly& a, const TatePoly& b);
    friend TatePoly operator*(const TatePoly& a, const TatePoly& b);
    TatePoly operator-() const;

  private:
    const Field* F_ = nullptr;
    long D_ = 0;
    bool truncated_ = false;
    std::vector<Laurent> c_;
};

// Sum_j c_j / (theta^{q^j} - t) plus an entire remainder; the representation of
// Anderson generating functions that stays valid outside |t| <= 1.
class PoleSeparated {
  public:
    PoleSeparated() = default;
    PoleSeparated(const Field& F, long D);

    void add_term(int j, Laurent c);
    void set_remainder(TatePoly r) { remainder_ = std::move(r); }
    const std::vector<std::pair<int, Laurent>>& terms() const { return terms_; }
    const TatePoly& remainder() const { return remainder_; }

    PoleSeparated tau(int k = 1) const;
    PoleSeparated scaled(const Laurent& c) const;
    friend PoleSeparated operator+(const PoleSeparated& a, const PoleSeparated& b);

    // Direct evaluation at t0 with |t0| < q^q, t0 away from every pole.
    Laurent eval(const Laurent& t0) const;
    // Geometric-series expansion to t-degree D (valid on |t| <= 1).
    TatePoly to_tatepoly() const;
    // Lambda-lead lower bound of the expansion tail dropped by to_tatepoly on
    // |t0| <= 1: min_j [ lead(c_j) + (D+2) q^j (q-1) ].
    long expansion_tail_lead() const;

  private:
    const Field* F_ = nullptr;
    long D_ = 0;
    std::vector<std::pair<int, Laurent>> terms_;
    TatePoly remainder_;
};

}  // namespace drmf
