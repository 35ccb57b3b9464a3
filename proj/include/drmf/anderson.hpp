#pragma once

#include <functional>
#include <vector>

#include "drmf/lattice.hpp"

namespace drmf {

// One Anderson generating function f_k, in both models: the t-polynomial
// truncation (valid on |t| <= 1) and the partial-fraction form over the poles
// theta^{q^j} (valid up to |t| < q^q, used for residue work at t = theta).
struct AGFEntry {
    TatePoly poly;
    PoleSeparated poles;
};

struct AGFVector {
    const Field* F = nullptr;
    DrinfeldData d;
    OmegaPoint z;
    long D = 0;
    std::vector<AGFEntry> fs;  // fs[k-1] = f_k, built from z*e_k = z_k
};

AGFVector build_agf(const DrinfeldData& d, const OmegaPoint& z, long D);

// The Drinfeld action on T-valued functions: d_theta(f) = theta f + sum g_k tau^k(f).
TatePoly d_theta_tate(const DrinfeldData& d, const TatePoly& f);
TatePoly d_a_tate(const DrinfeldData& d, const PolyA& a, const TatePoly& f);

using TateMatrix = std::vector<std::vector<TatePoly>>;
using LaurentMatrix = std::vector<std::vector<Laurent>>;

TatePoly tate_det(const TateMatrix& m);      // Leibniz expansion, r <= 5
Laurent laurent_det(const LaurentMatrix& m);
// det of the Moore matrix [tau^{i-1}(m_k)]_{i,k}.
TatePoly moore_det(const std::vector<TatePoly>& m);

struct PsiPhiPair {
    int r = 0;
    TateMatrix phi;
    TateMatrix psi;                                   // row i = tau^i(F)
    std::vector<std::vector<PoleSeparated>> psi_poles;
    Laurent delta;
};

PsiPhiPair build_phi_psi(const AGFVector& agf);

// Quasi-period function F_i attached to the biderivation delta^(i):
// F_0(w) = e(w) - w, F_i(w) = sum_n theta^n e(w theta^{-n-1})^{q^i}.
Laurent quasi_period(const OmegaPoint& z, int N, int i, const Laurent& w);

// [F_i(z_j)]_{i=0..r-1, j=1..r}; column j-1 holds the period z_j.
LaurentMatrix cycle_class_matrix(const OmegaPoint& z, int N);

// Laurent fit c_{-1}/(t-theta) + c_0 + c_1 (t-theta) through samples
// t = theta(1 - lambda^{-n}), n = P/4, P/2, 3P/4, with the residual of the
// fit at a fourth point (n = P/3) certifying pole order <= 1.
struct ResidueFit {
    Laurent c_m1, c_0, c_1;
    Laurent fit_residual;
};

ResidueFit residue_fit(const Field& F, const std::function<Laurent(const Laurent&)>& f);

Laurent eval_detpsi_at(const PsiPhiPair& pair, const Laurent& t0);
ResidueFit residue_detpsi(const PsiPhiPair& pair);

// Residual of tau(det Psi) * Delta - (-1)^{r+1} (t-theta) det Psi, plus the
// leading-order norm identity ||tau(det Psi)|| = ||(t-theta)/Delta||*||det Psi||.
struct TwistedDetReport {
    TatePoly residual;
    TatePoly det_psi;
    bool norm_identity = false;
};

TwistedDetReport check_twisted_det(const PsiPhiPair& pair);

}  // namespace drmf
