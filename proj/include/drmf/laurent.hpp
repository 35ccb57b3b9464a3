#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "drmf/finite_field.hpp"

namespace drmf {

// Valuation in theta-degree units: a rational num/den with den = q-1,
// or +infinity for an exact zero.
struct Valuation {
    long num = 0;
    long den = 1;
    bool infinite = false;
    bool lower_bound = false;  // value known only as "at least num/den"

    double approx() const {
        return infinite ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(num) / den;
    }
};

// Truncated element of L = F_{q^m}((lambda^{-1})) with lambda^{q-1} = -theta.
//
//   x = sum_{i >= 0} d[i] * lambda^{-(lead + i)},   d[0] != 0,
//
// carrying the first unknown exponent `prec`: digits at exponents in
// [lead, prec) are known, later ones are not. An exact value (all further
// digits zero) has prec = kInfExp. The distinguished zero has no digits; an
// exact zero has prec = kInfExp, a value that cancelled below working
// precision keeps the finite prec at which it is known to vanish.
class Laurent {
public:
    static constexpr long kInfExp = std::numeric_limits<long>::max() / 4;

    Laurent() : F_(nullptr), zero_(true), lead_(0), prec_(kInfExp) {}

    static Laurent zero(const Field& F);
    static Laurent zero_below(const Field& F, long prec);
    // c * lambda^{-lead}, exact.
    static Laurent monomial(const Field& F, Field::Elem c, long lead);
    static Laurent one(const Field& F) { return monomial(F, F.one(), 0); }
    static Laurent lambda(const Field& F) { return monomial(F, F.one(), -1); }
    // theta = -lambda^{q-1}, so |theta| = q.
    static Laurent theta(const Field& F);
    static Laurent scalar(const Field& F, Field::Elem c) { return c == 0 ? zero(F) : monomial(F, c, 0); }
    static Laurent theta_pow(const Field& F, long k);

    const Field& field() const { return *F_; }
    bool is_zero() const { return zero_; }
    bool exact() const { return prec_ >= kInfExp; }
    long lead() const;
    long prec() const { return prec_; }
    const std::vector<Field::Elem>& digits() const { return d_; }
    Field::Elem lead_digit() const;

    Valuation val() const;
    // True iff norm(x) <= q^{-texp/(q-1)}, i.e. the valuation is >= texp in
    // lambda units. Throws precision_error if undecidable at this precision.
    bool norm_le(long texp) const;
    bool norm_known() const { return !zero_ || exact(); }

    Laurent operator-() const;
    friend Laurent operator+(const Laurent& a, const Laurent& b);
    friend Laurent operator-(const Laurent& a, const Laurent& b);
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend Laurent operator/(const Laurent& a, const Laurent& b);

    Laurent scaled(Field::Elem c) const;      // multiply by residue-field scalar
    Laurent shifted(long dlead) const;        // multiply by lambda^{-dlead}
    Laurent inverse() const;
    Laurent pow(long k) const;
    Laurent frobenius(int k = 1) const;       // x -> x^{q^k}
    // Forget digits at exponents >= prec (declare them unknown); used to
    // account for truncation tails that the arithmetic itself cannot see.
    Laurent capped(long prec) const;

    // Difference has valuation >= texp (lambda units)?
    static bool close(const Laurent& a, const Laurent& b, long texp);

private:
    Laurent(const Field& F, long lead, long prec, std::vector<Field::Elem> d);
    void normalize();
    long eff_prec() const { return prec_; }

    const Field* F_;
    bool zero_;
    long lead_;
    long prec_;
    std::vector<Field::Elem> d_;
};

}  // namespace drmf
