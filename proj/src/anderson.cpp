#include "drmf/anderson.hpp"

#include <algorithm>
#include <numeric>

namespace drmf {

namespace {

long q_pow(long q, long j) {
    long r = 1;
    for (long i = 0; i < j; ++i) {
        if (r > Laurent::kInfExp / q) throw precision_error("q^j overflow");
        r *= q;
    }
    return r;
}

// Visit all permutations of {0..n-1} with their signs.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
        fn(p, inv % 2 == 0);
    } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

AGFVector build_agf(const DrinfeldData& d, const OmegaPoint& z, long D) {
    const Field& F = *d.F;
    long q = F.q();
    AGFVector out;
    out.F = &F;
    out.d = d;
    out.z = z;
    out.D = D;
    for (int k = 1; k <= z.r; ++k) {
        const Laurent& zk = z.z[static_cast<std::size_t>(z.r - k)];  // z * e_k
        PoleSeparated poles(F, D);
        long glead_prev = -Laurent::kInfExp, glead_last = -Laurent::kInfExp;
        for (long j = 0; j <= d.J; ++j) {
            Laurent c = d.alphas[static_cast<std::size_t>(j)] * zk.frobenius(static_cast<int>(j));
            if (c.is_zero()) continue;
            poles.add_term(static_cast<int>(j), c);
            glead_prev = glead_last;
            glead_last = c.lead() + q_pow(q, j) * (q - 1);  // Gauss lead on |t| <= 1
        }
        if (glead_prev == -Laurent::kInfExp || glead_last <= glead_prev)
            throw precision_error("AGF tail not certified: expTerms J too small");
        long ext = glead_last + (glead_last - glead_prev);
        TatePoly poly = poles.to_tatepoly();
        for (long i = 0; i <= D; ++i) poly.set_coeff(i, poly.coeff(i).capped(ext));
        out.fs.push_back({std::move(poly), std::move(poles)});
    }
    return out;
}

TatePoly d_theta_tate(const DrinfeldData& d, const TatePoly& f) {
    TatePoly s = f.scaled(Laurent::theta(*d.F));
    for (int k = 1; k <= d.r; ++k) s = s + f.tau(k).scaled(d.g(k));
    return s;
}

TatePoly d_a_tate(const DrinfeldData& d, const PolyA& a, const TatePoly& f) {
    TatePoly s(*d.F, f.cap());
    TatePoly cur = f;
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) != 0) s = s + cur.scaled(Laurent::scalar(*d.F, a.coeff(i)));
        if (i < a.degree()) cur = d_theta_tate(d, cur);
    }
    return s;
}

TatePoly tate_det(const TateMatrix& m) {
    int n = static_cast<int>(m.size());
    const Field& F = m[0][0].field();
    TatePoly det(F, m[0][0].cap());
    for_each_permutation(n, [&](const std::vector<int>& p, bool even) {
        TatePoly prod = TatePoly::constant(Laurent::one(F), det.cap());
        for (int i = 0; i < n; ++i)
            prod = prod * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
        det = even ? det + prod : det - prod;
    });
    return det;
}

Laurent laurent_det(const LaurentMatrix& m) {
    int n = static_cast<int>(m.size());
    const Field& F = m[0][0].field();
    Laurent det = Laurent::zero(F);
    for_each_permutation(n, [&](const std::vector<int>& p, bool even) {
        Laurent prod = Laurent::one(F);
        for (int i = 0; i < n; ++i)
            prod = prod * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
        det = even ? det + prod : det - prod;
    });
    return det;
}

TatePoly moore_det(const std::vector<TatePoly>& m) {
    int n = static_cast<int>(m.size());
    TateMatrix mm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            mm[static_cast<std::size_t>(i)].push_back(m[static_cast<std::size_t>(k)].tau(i));
    return tate_det(mm);
}

PsiPhiPair build_phi_psi(const AGFVector& agf) {
    const Field& F = *agf.F;
    int r = agf.z.r;
    if (r < 2) throw domain_error("Psi/Phi need rank >= 2");
    long D = agf.D;
    PsiPhiPair pair;
    pair.r = r;
    pair.delta = agf.d.delta;

    Laurent dinv = agf.d.delta.inverse();
    pair.phi.assign(static_cast<std::size_t>(r),
                    std::vector<TatePoly>(static_cast<std::size_t>(r), TatePoly(F, D)));
    for (int i = 0; i + 1 < r; ++i)
        pair.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] =
            TatePoly::constant(Laurent::one(F), D);
    // last row: ((t-theta)/Delta, -g_1/Delta, ..., -g_{r-1}/Delta)
    TatePoly tmth(F, D);
    tmth.set_coeff(0, -Laurent::theta(F));
    tmth.set_coeff(1, Laurent::one(F));
    pair.phi[static_cast<std::size_t>(r - 1)][0] = tmth.scaled(dinv);
    for (int k = 1; k < r; ++k)
        pair.phi[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(k)] =
            TatePoly::constant(-(agf.d.g(k) * dinv), D);

    for (int i = 0; i < r; ++i) {
        std::vector<TatePoly> row;
        std::vector<PoleSeparated> prow;
        for (int k = 0; k < r; ++k) {
            row.push_back(agf.fs[static_cast<std::size_t>(k)].poly.tau(i));
            prow.push_back(agf.fs[static_cast<std::size_t>(k)].poles.tau(i));
        }
        pair.psi.push_back(std::move(row));
        pair.psi_poles.push_back(std::move(prow));
    }
    return pair;
}

Laurent quasi_period(const OmegaPoint& z, int N, int i, const Laurent& w) {
    const Field& F = *z.F;
    long q = F.q(), P = F.prec();
    if (i == 0) return exp_eval_product(z, N, w) - w;
    long decay = (q_pow(q, i) - 1) * (q - 1);  // per-step lambda-lead gain
    Laurent th = Laurent::theta(F);
    Laurent s = Laurent::zero(F);
    Laurent thn = Laurent::one(F);          // theta^n
    Laurent arg = w / th;                   // w theta^{-n-1}
    long best_lead = Laurent::kInfExp, term_lead = 0;
    for (long n = 0;; ++n) {
        Laurent e = exp_eval_product(z, N, arg);
        Laurent term = thn * e.frobenius(i);
        if (!term.is_zero()) {
            term_lead = term.lead();
            best_lead = std::min(best_lead, term_lead);
            s = s + term;
        }
        if (!term.is_zero() && term_lead > best_lead + P + decay)
            return s.capped(term_lead + decay);
        if (n > 4 * P + 16)
            throw precision_error("quasi-period series did not certify convergence");
        thn = thn * th;
        arg = arg / th;
    }
}

LaurentMatrix cycle_class_matrix(const OmegaPoint& z, int N) {
    int r = z.r;
    LaurentMatrix m(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 1; j <= r; ++j)
            m[static_cast<std::size_t>(i)].push_back(
                quasi_period(z, N, i, z.z[static_cast<std::size_t>(r - j)]));
    return m;
}

namespace {

// Solve a small linear system by Gaussian elimination with norm pivoting.
std::vector<Laurent> solve_linear(LaurentMatrix a, std::vector<Laurent> b) {
    const Field& F = b[0].field();
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (!a[row][col].is_zero() &&
                (a[piv][col].is_zero() || a[row][col].lead() < a[piv][col].lead()))
                piv = row;
        if (a[piv][col].is_zero()) throw domain_error("singular fit system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col].is_zero()) continue;
            Laurent f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] = a[row][k] - f * a[col][k];
            b[row] = b[row] - f * b[col];
        }
    }
    std::vector<Laurent> x(n, Laurent::zero(F));
    for (std::size_t col = n; col-- > 0;) {
        Laurent s = b[col];
        for (std::size_t k = col + 1; k < n; ++k) s = s - a[col][k] * x[k];
        x[col] = s / a[col][col];
    }
    return x;
}

}  // namespace

ResidueFit residue_fit(const Field& F, const std::function<Laurent(const Laurent&)>& f) {
    long P = F.prec();
    Laurent th = Laurent::theta(F);
    auto sample_x = [&](long n) { return -(th * Laurent::lambda(F).inverse().pow(n)); };
    // Depths balance fit accuracy (deeper is better) against the absolute
    // digits surviving in the large values f(t) ~ c_{-1}/(t-theta).
    std::vector<long> ns = {P / 5, (3 * P) / 10, (2 * P) / 5};
    LaurentMatrix a;
    std::vector<Laurent> b;
    for (long n : ns) {
        Laurent x = sample_x(n);
        a.push_back({x.inverse(), Laurent::one(F), x});
        b.push_back(f(th + x));
    }
    auto c = solve_linear(std::move(a), std::move(b));
    ResidueFit fit{c[0], c[1], c[2], Laurent::zero(F)};
    Laurent x4 = sample_x(P / 3);
    fit.fit_residual = f(th + x4) - (fit.c_m1 * x4.inverse() + fit.c_0 + fit.c_1 * x4);
    return fit;
}

Laurent eval_detpsi_at(const PsiPhiPair& pair, const Laurent& t0) {
    LaurentMatrix m(static_cast<std::size_t>(pair.r));
    for (int i = 0; i < pair.r; ++i)
        for (int k = 0; k < pair.r; ++k)
            m[static_cast<std::size_t>(i)].push_back(
                pair.psi_poles[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].eval(t0));
    return laurent_det(m);
}

ResidueFit residue_detpsi(const PsiPhiPair& pair) {
    const Field& F = pair.delta.field();
    return residue_fit(F, [&](const Laurent& t0) { return eval_detpsi_at(pair, t0); });
}

TwistedDetReport check_twisted_det(const PsiPhiPair& pair) {
    const Field& F = pair.delta.field();
    TwistedDetReport rep;
    rep.det_psi = tate_det(pair.psi);
    long D = rep.det_psi.cap();
    TatePoly tmth(F, D);
    tmth.set_coeff(0, -Laurent::theta(F));
    tmth.set_coeff(1, Laurent::one(F));
    TatePoly rhs = (tmth * rep.det_psi).scaled(
        pair.r % 2 == 0 ? -Laurent::one(F) : Laurent::one(F));
    rep.residual = rep.det_psi.tau().scaled(pair.delta) - rhs;
    // Leading-order norm identity from the proof of the main theorem.
    long q = F.q();
    long lhs_lead = rep.det_psi.tau().gauss_lead() + pair.delta.lead();
    long rhs_lead = -(q - 1) + rep.det_psi.gauss_lead();
    rep.norm_identity = (lhs_lead == rhs_lead);
    return rep;
}

}  // namespace drmf
