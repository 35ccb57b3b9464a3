#pragma once

#include <cstdint>

#include "drmf/eisenstein.hpp"

namespace drmf {

// Element of GL_r(A): matrix over A = F_q[theta] whose determinant lies in
// F_q^x. Rows and columns are slot-aligned with OmegaPoint: index 0 pairs
// with the z_r coordinate, index r-1 with z_1. The determinant is computed
// on construction; a non-unit determinant raises domain_error.
class GLrMatrix {
  public:
    GLrMatrix(const Field& F, int r, std::vector<std::vector<PolyA>> entries);

    static GLrMatrix identity(const Field& F, int r);
    // Identity plus `a` in position (i, j), i != j.
    static GLrMatrix elementary(const Field& F, int r, int i, int j, const PolyA& a);
    static GLrMatrix diagonal(const Field& F, int r, const std::vector<Field::Elem>& d);
    // Row i has its 1 in column p[i]; p must be a permutation of 0..r-1.
    static GLrMatrix permutation(const Field& F, int r, const std::vector<int>& p);
    // The shift alpha(a) in Gamma_alpha: identity with first column
    // (1, a_1, ..., a_{r-1})^tr; `a` has r-1 entries.
    static GLrMatrix shift(const Field& F, int r, const std::vector<PolyA>& a);

    const Field& field() const { return *F_; }
    int rank() const { return r_; }
    const PolyA& at(int i, int j) const;
    Field::Elem det_unit() const { return det_; }
    // Largest theta-degree over the entries (0 for the zero-degree matrices).
    int max_deg() const;

    GLrMatrix operator*(const GLrMatrix& o) const;
    GLrMatrix inverse() const;  // adjugate divided by the unit determinant
    bool operator==(const GLrMatrix& o) const { return a_ == o.a_; }

    // Entrywise chi_t.
    TateMatrix rho_t(long D) const;

  private:
    const Field* F_;
    int r_;
    std::vector<std::vector<PolyA>> a_;
    Field::Elem det_;
};

// Deterministic pseudo-random element of GL_r(A): a seeded product of a few
// elementary matrices (entry degree <= 1), diagonal units and transpositions.
GLrMatrix random_gamma(const Field& F, int r, std::uint64_t seed);

struct GlAction {
    OmegaPoint z;  // gamma z, last coordinate exactly 1
    Laurent j;     // j(gamma, z) = z gamma^{-1} e_r
};

// gamma z = j^{-1} z gamma^{-1}. The certified lattice floor propagates as
// floor(gamma z) = floor(z) + (q-1) maxdeg(gamma) - lead(j).
GlAction gl_act(const GLrMatrix& g, const OmegaPoint& z);

// z = (xi^{r-1} theta^{s_r}, ..., xi theta^{s_2}, 1) with xi the residue-field
// generator; s lists (s_2, ..., s_r), strictly increasing, s_2 >= 1. Requires
// m >= r so the coordinate leads lie on r distinct F_q xi-lines, which
// certifies floor_lead = 0.
OmegaPoint canonical_point(const Field& F, int r, const std::vector<int>& s);

// Lower bound on the imaginary part |z|_im as a lambda-lead
// (|z|_im >= q^{-lead/(q-1)}). `certified` is true when the coordinate lead
// digits lie on distinct F_q-lines of the residue field (canonical-family
// points); otherwise `lead` falls back to the enumeration witness, which is
// only an upper bound for the infimum. witness_lead is the smallest
// normalized lattice value |z a| / |a| seen over coordinate degrees <= degCap.
struct ImBound {
    long lead = 0;
    long witness_lead = 0;
    bool certified = false;
};

ImBound im_part_bound(const OmegaPoint& z, int degCap);

enum class ModKind { eis, agf, detxi, detpsi };

// Gauss valuation of the residual of the transformation law at (gamma, z),
// normalized to the scale of the z-side values:
//   eis:    j^{-k} E_k(gamma z) - rho_t(gamma) E_k(z)          (weight = k)
//   agf:    j F(gamma z) rho_t(gamma) - F(z)
//   detxi:  j^{-W} det(gamma)^{-1} det Xi(gamma z) - det Xi(z), W = 1+q+...+q^{r-1}
//   detpsi: det(gamma) j^{W} det Psi(gamma z) - det Psi(z)
// Both sides are evaluated with the degree-<= N box truncation.
Valuation check_modularity(ModKind kind, long weight, const GLrMatrix& g,
                           const OmegaPoint& z, int N, long D);

}  // namespace drmf
