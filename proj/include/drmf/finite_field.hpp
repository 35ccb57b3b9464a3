#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace drmf {

// Run-wide arithmetic parameters: q = p^e, working residue field F_{q^m},
// and the number of retained lambda-adic digits per Laurent number.
struct FieldParams {
    int p = 3;
    int e = 1;
    int m = 2;
    int prec = 60;
};

class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// The residue field F_{q^m} = F_p[x]/(f), f monic irreducible of degree e*m.
// Elements are integer codes 0..p^{em}-1 whose base-p digits are the
// coordinates in the power basis of the class of x. The defining polynomial
// is the Conway polynomial where tabulated, otherwise the first monic
// primitive polynomial in coefficient-lexicographic order; it is fixed per
// run and recorded in reports.
class Field {
public:
    using Elem = std::uint16_t;

    explicit Field(const FieldParams& params);

    int p() const { return p_; }
    int e() const { return e_; }
    int m() const { return m_; }
    int degree() const { return n_; }       // e*m
    long q() const { return q_; }           // p^e
    long size() const { return size_; }     // p^{e*m}
    int prec() const { return prec_; }
    const FieldParams& params() const { return params_; }

    // Coefficients of the defining polynomial, low degree first, monic.
    const std::vector<int>& defining_poly() const { return defpoly_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    // Class of x; for em >= 2 this generates F_{q^m} over F_p (primitive).
    Elem gen() const;
    // Embedding of the prime field: c mod p.
    Elem from_int(long c) const;

    Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
    Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long k) const;
    // x -> x^q, the q-power Frobenius generating Gal(F_{q^m}/F_q).
    Elem frob_q(Elem a) const { return frob_[a]; }
    Elem frob_q_pow(Elem a, long k) const;

    // Elements of the subfield F_q (fixed points of frob_q), code-sorted.
    const std::vector<Elem>& subfield_fq() const { return fq_; }
    bool in_subfield_fq(Elem a) const { return frob_[a] == a; }

private:
    std::size_t idx(Elem a, Elem b) const {
        return static_cast<std::size_t>(a) * size_ + b;
    }

    FieldParams params_;
    int p_, e_, m_, n_, prec_;
    long q_, size_;
    std::vector<int> defpoly_;
    std::vector<Elem> add_, mul_, neg_, inv_, frob_;
    std::vector<Elem> fq_;
};

}  // namespace drmf
