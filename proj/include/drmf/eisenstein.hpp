#pragma once

#include "drmf/anderson.hpp"

namespace drmf {

// Vectorial Eisenstein series E_k(z) = sum'_{a in A^r} (za)^{-k} rho_t(a),
// truncated to coordinate degrees <= N. Coordinates are slot-aligned with
// OmegaPoint: eps[0] = eps_r, ..., eps[r-1] = eps_1. err_lead[i] is a
// certified lambda-lead bound on the absolute error (the omitted strata).
struct EisVector {
    const Field* F = nullptr;
    int r = 0;
    long k = 1;
    int N = 0;
    std::vector<TatePoly> eps;
    std::vector<long> err_lead;
};

// Collapsed evaluator: exact on the degree-<= N box. Requires k = 1 mod q-1.
EisVector eisenstein_vec(const OmegaPoint& z, long k, int N, long D);

// Brute-force sum over the same box; oracle for small boxes.
EisVector eisenstein_vec_direct(const OmegaPoint& z, long k, int N, long D);

// eps_r by resummation over monic a_r, with the inner A^{r-1} sum collapsed
// through the truncated z-tilde lattice at depth Nt. The error is relative to
// the (u-sized) value, which is what the cusp expansions need. err_lead, when
// non-null, receives the certified absolute error lead.
TatePoly eps_r_resummed(const OmegaPoint& z, long k, int Nt, long D,
                        long* err_lead = nullptr);

// Lattice depth for the truncated-lattice evaluations at z (u_param and the
// resummed eps_r): deep enough for arguments up to z_r * theta^2.
int depth_for(const OmegaPoint& z, int N);

// Xi = [E_1 E_q ... E_{q^{r-1}}]; xi[row][col], rows slot-aligned (row 0 is
// the eps_r coordinate), column j holds weight q^j. The eps_r row uses the
// resummed evaluator for r >= 2. xi_tilde is the rank-(r-1) matrix at the
// truncated point (empty for r = 1).
struct XiMatrix {
    int r = 0;
    TateMatrix xi;
    std::vector<std::vector<long>> err;
    TatePoly det;
    long det_err_lead = 0;
    TateMatrix xi_tilde;
    TatePoly det_tilde;
};

XiMatrix xi_matrix(const OmegaPoint& z, int N, long D);

// L(chi_t, k) = sum over monic a of chi_t(a) / a^k, strata of degree <= N.
// Throws precision_error when the per-stratum Gauss norms fail to decay.
TatePoly pellarin_L(const Field& F, long k, int N, long D);

// Leading u-coefficient across a family with strictly decreasing |u|:
// c1 = det/u at the deepest point; err_lead certifies the remaining drift
// from the observed differences plus the computational error of the dets.
struct UCoeffFit {
    TatePoly c1;
    long err_lead = 0;
    bool monotone = false;
    bool cuspidal = false;
};

UCoeffFit u_coefficient_fit(const std::vector<Laurent>& us,
                            const std::vector<TatePoly>& dets,
                            const std::vector<long>& det_errs);

enum class Verdict { vanishes, nonzero, indeterminate };

// det [E_{k_1} ... E_{k_r}] with a three-way verdict against the certified
// truncation error. "vanishes": Gauss lead >= tol_lead; "nonzero": Gauss lead
// <= nonzero_lead; otherwise indeterminate.
struct VanishReport {
    TatePoly det;
    long det_err_lead = 0;
    long tol_lead = 0;
    long nonzero_lead = 0;
    Verdict verdict = Verdict::indeterminate;
};

VanishReport vanishing_det(const OmegaPoint& z, const std::vector<long>& weights,
                           int N, long D);

// Error lead of a Leibniz determinant from entry values and entrywise
// absolute-error leads.
long det_error_lead(const TateMatrix& m, const std::vector<std::vector<long>>& err);

}  // namespace drmf
