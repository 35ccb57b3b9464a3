#pragma once

#include <vector>

#include "drmf/poly_a.hpp"
#include "drmf/tate.hpp"

namespace drmf {

// Point of the Drinfeld period domain Omega^r, stored as the row vector
// (z_r, ..., z_2, z_1) with z_1 = 1, so z[0] = z_r and z[r-1] = z_1.
// floor_lead is a certified bound: every nonzero lattice value z*a has
// lambda-lead <= floor_lead (i.e. |z*a| >= q^{-floor_lead/(q-1)}).
struct OmegaPoint {
    const Field* F = nullptr;
    int r = 0;
    std::vector<Laurent> z;
    long floor_lead = 0;

    const Laurent& z_top() const { return z[0]; }  // z_r
    // The truncated point (z_{r-1},...,z_1) in Omega^{r-1}.
    OmegaPoint truncated() const;
};

// F_q-linearized tower for the span V of a generator list: the chain of
// normalized exponentials e_j of span(b_1..b_j), built from
//   e_j(w) = e_{j-1}(w) - e_{j-1}(w)^q / c_j^{q-1},   c_j = e_{j-1}(b_j).
// e_n is the derivative-1 exponential of V, a product over q^n points folded
// into n steps.
class LatticeTower {
  public:
    LatticeTower(const Field& F, std::vector<Laurent> gens);

    std::size_t size() const { return gens_.size(); }
    const std::vector<Laurent>& gens() const { return gens_; }
    const std::vector<Laurent>& chain() const { return c_; }  // c_1..c_n

    // Reduces w modulo the F_q-span first (e is F_q-linear with the span as
    // kernel), so arguments near the span do not cancel catastrophically
    // through the recursion.
    Laurent exp(const Laurent& w) const;
    Laurent exp_prefix(std::size_t j, const Laurent& w) const;
    // w minus its nearest F_q-span element reachable by greedy reduction.
    Laurent reduce_mod_span(Laurent w) const;
    // alpha_0..alpha_J of e_n (alpha_0 = 1).
    std::vector<Laurent> alphas(long J) const;

  private:
    const Field* F_;
    std::vector<Laurent> gens_;
    std::vector<Laurent> red_;      // F_q-reduced generators, size ascending
    std::vector<Laurent> c_;
    std::vector<Laurent> inv_cq1_;  // 1 / c_j^{q-1}
};

struct DrinfeldData {
    const Field* F = nullptr;
    int r = 0;
    long N = 0;
    long J = 0;
    std::vector<Laurent> alphas;  // alpha_0..alpha_J
    std::vector<Laurent> gs;      // g_1..g_{r-1}
    Laurent delta;                // g_r

    // g_k with the convention g_r = delta; g_0 = theta.
    Laurent g(int k) const;
    // d_theta applied to y: theta*y + sum_k g_k y^{q^k}.
    Laurent d_theta(const Laurent& y) const;
    // d_a for a in A, by composing d_theta A-linearly.
    Laurent d_a(const PolyA& a, const Laurent& y) const;
};

// All nonzero lattice values z*a, a in A^r with coordinate degrees <= N.
// Throws domain_error if a value vanishes to precision (independence failure).
std::vector<Laurent> enumerate_lattice(const OmegaPoint& z, int N);

// Generators z_i theta^d (degree ascending, |z_i| ascending within a degree)
// of the degree-<= N truncation of zA^r.
std::vector<Laurent> lattice_generators(const OmegaPoint& z, int N);

DrinfeldData exp_coeffs(const OmegaPoint& z, int N, int J);

// Series evaluation (small arguments); throws precision_error when the tail
// is not certifiably below the last computed term.
Laurent exp_eval(const DrinfeldData& d, const Laurent& w);

// Product-form evaluation over the truncated lattice (any argument size).
// Result precision is capped by the omitted-factor bound.
Laurent exp_eval_product(const OmegaPoint& z, int N, const Laurent& w);

Laurent carlitz_period(const Field& F);

// omega(t) = lambda * prod_i (1 - t theta^{-q^i})^{-1}.
TatePoly anderson_thakur_omega(const Field& F, long D);
Laurent anderson_thakur_omega_at(const Field& F, const Laurent& t0);

// u = 1 / (pi * e_{ztilde}(z_r)), the parameter at infinity.
Laurent u_param(const OmegaPoint& z, int N);

}  // namespace drmf
