#include "drmf/modular_action.hpp"

#include <algorithm>
#include <random>

namespace drmf {

namespace {

// Visit all permutations of 0..n-1 with their signs (+1/-1).
template <typename Fn>
void for_each_perm(int n, Fn&& fn) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
        fn(p, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(p.begin(), p.end()));
}

PolyA poly_det(const Field& F, const std::vector<std::vector<PolyA>>& m) {
    int n = static_cast<int>(m.size());
    PolyA det = PolyA::zero(F);
    for_each_perm(n, [&](const std::vector<int>& p, int sign) {
        PolyA term = PolyA::one(F);
        for (int i = 0; i < n; ++i)
            term = term * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                               p[static_cast<std::size_t>(i)])];
        det = sign > 0 ? det + term : det - term;
    });
    return det;
}

std::vector<std::vector<PolyA>> poly_minor(const std::vector<std::vector<PolyA>>& m,
                                           int di, int dj) {
    std::vector<std::vector<PolyA>> out;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        if (i == di) continue;
        std::vector<PolyA> row;
        for (int j = 0; j < static_cast<int>(m.size()); ++j)
            if (j != dj) row.push_back(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        out.push_back(std::move(row));
    }
    return out;
}

Valuation combine_val(Valuation acc, const Valuation& v) {
    if (v.infinite) return acc;
    if (acc.infinite || v.num < acc.num ||
        (v.num == acc.num && acc.lower_bound && !v.lower_bound))
        return v;
    return acc;
}

long pow_q(long q, int k) {
    long r = 1;
    while (k-- > 0) r *= q;
    return r;
}

}  // namespace

GLrMatrix::GLrMatrix(const Field& F, int r, std::vector<std::vector<PolyA>> entries)
    : F_(&F), r_(r), a_(std::move(entries)) {
    if (r < 1 || static_cast<int>(a_.size()) != r)
        throw domain_error("GLrMatrix: bad shape");
    for (const auto& row : a_)
        if (static_cast<int>(row.size()) != r) throw domain_error("GLrMatrix: bad shape");
    PolyA det = poly_det(F, a_);
    if (det.degree() != 0)
        throw domain_error("GLrMatrix: determinant is not a unit of A");
    det_ = det.coeff(0);
}

GLrMatrix GLrMatrix::identity(const Field& F, int r) {
    std::vector<std::vector<PolyA>> a(
        static_cast<std::size_t>(r),
        std::vector<PolyA>(static_cast<std::size_t>(r), PolyA::zero(F)));
    for (int i = 0; i < r; ++i)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = PolyA::one(F);
    return GLrMatrix(F, r, std::move(a));
}

GLrMatrix GLrMatrix::elementary(const Field& F, int r, int i, int j, const PolyA& a) {
    if (i == j || i < 0 || j < 0 || i >= r || j >= r)
        throw domain_error("elementary: bad position");
    GLrMatrix m = identity(F, r);
    m.a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
    return m;  // det already 1 (triangular up to permutation of the pair)
}

GLrMatrix GLrMatrix::diagonal(const Field& F, int r, const std::vector<Field::Elem>& d) {
    if (static_cast<int>(d.size()) != r) throw domain_error("diagonal: bad size");
    GLrMatrix m = identity(F, r);
    Field::Elem det = F.one();
    for (int i = 0; i < r; ++i) {
        if (d[static_cast<std::size_t>(i)] == 0 || !F.in_subfield_fq(d[static_cast<std::size_t>(i)]))
            throw domain_error("diagonal: entries must be units of F_q");
        m.a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            PolyA::constant(F, d[static_cast<std::size_t>(i)]);
        det = F.mul(det, d[static_cast<std::size_t>(i)]);
    }
    m.det_ = det;
    return m;
}

GLrMatrix GLrMatrix::permutation(const Field& F, int r, const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != r) throw domain_error("permutation: bad size");
    std::vector<std::vector<PolyA>> a(
        static_cast<std::size_t>(r),
        std::vector<PolyA>(static_cast<std::size_t>(r), PolyA::zero(F)));
    for (int i = 0; i < r; ++i)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] =
            PolyA::one(F);
    return GLrMatrix(F, r, std::move(a));
}

GLrMatrix GLrMatrix::shift(const Field& F, int r, const std::vector<PolyA>& a) {
    if (static_cast<int>(a.size()) != r - 1) throw domain_error("shift: need r-1 entries");
    GLrMatrix m = identity(F, r);
    for (int i = 1; i < r; ++i)
        m.a_[static_cast<std::size_t>(i)][0] = a[static_cast<std::size_t>(i - 1)];
    return m;
}

const PolyA& GLrMatrix::at(int i, int j) const {
    return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

int GLrMatrix::max_deg() const {
    int d = 0;
    for (const auto& row : a_)
        for (const auto& x : row) d = std::max(d, x.degree());
    return d;
}

GLrMatrix GLrMatrix::operator*(const GLrMatrix& o) const {
    if (r_ != o.r_) throw domain_error("GLrMatrix: rank mismatch");
    std::vector<std::vector<PolyA>> a(
        static_cast<std::size_t>(r_),
        std::vector<PolyA>(static_cast<std::size_t>(r_), PolyA::zero(*F_)));
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) {
            PolyA s = PolyA::zero(*F_);
            for (int l = 0; l < r_; ++l) s = s + at(i, l) * o.at(l, j);
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    return GLrMatrix(*F_, r_, std::move(a));
}

GLrMatrix GLrMatrix::inverse() const {
    Field::Elem c = F_->inv(det_);
    std::vector<std::vector<PolyA>> a(
        static_cast<std::size_t>(r_),
        std::vector<PolyA>(static_cast<std::size_t>(r_), PolyA::zero(*F_)));
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) {
            PolyA cof = r_ == 1 ? PolyA::one(*F_) : poly_det(*F_, poly_minor(a_, j, i));
            if ((i + j) % 2 != 0) cof = -cof;
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cof * PolyA::constant(*F_, c);
        }
    return GLrMatrix(*F_, r_, std::move(a));
}

TateMatrix GLrMatrix::rho_t(long D) const {
    TateMatrix m(static_cast<std::size_t>(r_),
                 std::vector<TatePoly>(static_cast<std::size_t>(r_)));
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(i, j).chi_t(D);
    return m;
}

GLrMatrix random_gamma(const Field& F, int r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& fq = F.subfield_fq();  // code-sorted, fq[0] = 0
    GLrMatrix g = GLrMatrix::identity(F, r);
    int nf = 3 + static_cast<int>(rng() % 3);
    for (int f = 0; f < nf; ++f) {
        switch (r > 1 ? rng() % 4 : 2) {
            case 0:
            case 1: {  // elementary with entry degree <= 1
                int i = static_cast<int>(rng() % static_cast<std::uint64_t>(r));
                int j = static_cast<int>(rng() % static_cast<std::uint64_t>(r - 1));
                if (j >= i) ++j;
                std::vector<Field::Elem> c(1 + rng() % 2);
                for (auto& x : c) x = fq[rng() % fq.size()];
                g = g * GLrMatrix::elementary(F, r, i, j, PolyA(F, std::move(c)));
                break;
            }
            case 2: {  // diagonal units
                std::vector<Field::Elem> d(static_cast<std::size_t>(r));
                for (auto& x : d) x = fq[1 + rng() % (fq.size() - 1)];
                g = g * GLrMatrix::diagonal(F, r, d);
                break;
            }
            default: {  // transposition
                std::vector<int> p(static_cast<std::size_t>(r));
                for (int i = 0; i < r; ++i) p[static_cast<std::size_t>(i)] = i;
                int i = static_cast<int>(rng() % static_cast<std::uint64_t>(r));
                int j = static_cast<int>(rng() % static_cast<std::uint64_t>(r - 1));
                if (j >= i) ++j;
                std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
                g = g * GLrMatrix::permutation(F, r, p);
                break;
            }
        }
    }
    return g;
}

GlAction gl_act(const GLrMatrix& g, const OmegaPoint& z) {
    const Field& F = g.field();
    int r = g.rank();
    if (z.r != r) throw domain_error("gl_act: rank mismatch");
    GLrMatrix gi = g.inverse();
    std::vector<Laurent> w(static_cast<std::size_t>(r), Laurent::zero(F));
    for (int c = 0; c < r; ++c)
        for (int i = 0; i < r; ++i)
            w[static_cast<std::size_t>(c)] =
                w[static_cast<std::size_t>(c)] +
                z.z[static_cast<std::size_t>(i)] * gi.at(i, c).eval_theta();
    GlAction out;
    out.j = w[static_cast<std::size_t>(r - 1)];
    if (out.j.is_zero()) throw domain_error("gl_act: factor of automorphy vanished");
    Laurent jin = out.j.inverse();
    out.z.F = &F;
    out.z.r = r;
    out.z.z.resize(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) out.z.z[static_cast<std::size_t>(c)] = w[static_cast<std::size_t>(c)] * jin;
    out.z.z[static_cast<std::size_t>(r - 1)] = Laurent::one(F);  // exact by construction
    out.z.floor_lead =
        z.floor_lead + static_cast<long>(F.q() - 1) * g.max_deg() - out.j.lead();
    return out;
}

OmegaPoint canonical_point(const Field& F, int r, const std::vector<int>& s) {
    if (F.m() < r) throw domain_error("canonical_point: requires m >= r");
    if (static_cast<int>(s.size()) != r - 1)
        throw domain_error("canonical_point: need exponents s_2..s_r");
    for (int i = 0; i < r - 1; ++i) {
        if (s[static_cast<std::size_t>(i)] < 1)
            throw domain_error("canonical_point: exponents must be >= 1");
        if (i > 0 && s[static_cast<std::size_t>(i)] <= s[static_cast<std::size_t>(i - 1)])
            throw domain_error("canonical_point: exponents must increase");
    }
    OmegaPoint z;
    z.F = &F;
    z.r = r;
    z.z.resize(static_cast<std::size_t>(r));
    z.z[static_cast<std::size_t>(r - 1)] = Laurent::one(F);
    for (int slot = 0; slot < r - 1; ++slot) {
        // slot holds z_{r - slot} = xi^{r-1-slot} theta^{s_{r-slot}}
        Field::Elem c = F.pow(F.gen(), r - 1 - slot);
        z.z[static_cast<std::size_t>(slot)] =
            Laurent::monomial(F, c, 0) *
            Laurent::theta_pow(F, s[static_cast<std::size_t>(r - 2 - slot)]);
    }
    z.floor_lead = 0;
    return z;
}

ImBound im_part_bound(const OmegaPoint& z, int degCap) {
    const Field& F = *z.F;
    long q1 = F.q() - 1;
    ImBound out;

    // Witness: smallest normalized lattice value |z a| / |a| on the box.
    auto box = PolyA::all_of_degree_le(F, degCap);
    std::vector<std::size_t> idx(static_cast<std::size_t>(z.r), 0);
    out.witness_lead = -Laurent::kInfExp;
    while (true) {
        bool nonzero = false;
        int maxdeg = 0;
        Laurent v = Laurent::zero(F);
        for (int i = 0; i < z.r; ++i) {
            const PolyA& a = box[idx[static_cast<std::size_t>(i)]];
            if (a.is_zero()) continue;
            nonzero = true;
            maxdeg = std::max(maxdeg, a.degree());
            v = v + z.z[static_cast<std::size_t>(i)] * a.eval_theta();
        }
        if (nonzero && !v.is_zero())
            out.witness_lead = std::max(out.witness_lead, v.lead() + q1 * maxdeg);
        int i = 0;
        for (; i < z.r; ++i) {
            if (++idx[static_cast<std::size_t>(i)] < box.size()) break;
            idx[static_cast<std::size_t>(i)] = 0;
        }
        if (i == z.r) break;
    }
    // Smallest norm = largest lead; report the extremal witness.
    out.witness_lead = out.witness_lead == -Laurent::kInfExp ? 0 : out.witness_lead;

    // Structural certificate: monomial coordinates whose lead digits lie on
    // pairwise distinct F_q-lines cannot cancel under K_infty combinations,
    // so |z|_im >= min_i |z_i| = |z_1| = 1.
    bool lines = true;
    for (int i = 0; lines && i < z.r; ++i) {
        const Laurent& x = z.z[static_cast<std::size_t>(i)];
        if (x.is_zero() || x.digits().size() != 1) lines = false;
    }
    for (int i = 0; lines && i < z.r; ++i)
        for (int j = i + 1; lines && j < z.r; ++j) {
            Field::Elem ratio = F.div(z.z[static_cast<std::size_t>(i)].lead_digit(),
                                      z.z[static_cast<std::size_t>(j)].lead_digit());
            if (F.in_subfield_fq(ratio)) lines = false;
        }
    if (lines) {
        out.certified = true;
        out.lead = 0;
    } else {
        out.certified = false;
        out.lead = out.witness_lead;
    }
    return out;
}

namespace {

// det Xi from the box evaluator (tau-ladder over E_1), usable at transformed
// points where the resummed eps_r is not certified.
TatePoly detxi_box(const OmegaPoint& z, int N, long D) {
    EisVector e = eisenstein_vec(z, 1, N, D);
    TateMatrix xi(static_cast<std::size_t>(z.r),
                  std::vector<TatePoly>(static_cast<std::size_t>(z.r)));
    for (int i = 0; i < z.r; ++i)
        for (int jc = 0; jc < z.r; ++jc)
            xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(jc)] =
                e.eps[static_cast<std::size_t>(i)].tau(jc);
    return tate_det(xi);
}

TatePoly detpsi_at(const OmegaPoint& z, int N, long D) {
    DrinfeldData d = exp_coeffs(z, N, z.r + 6);
    AGFVector agf = build_agf(d, z, D);
    PsiPhiPair pair = build_phi_psi(agf);
    return tate_det(pair.psi);
}

}  // namespace

Valuation check_modularity(ModKind kind, long weight, const GLrMatrix& g,
                           const OmegaPoint& z, int N, long D) {
    const Field& F = *z.F;
    int r = z.r;
    GlAction act = gl_act(g, z);
    Laurent jin = act.j.inverse();
    Valuation res;
    res.infinite = true;
    res.den = F.q() - 1;

    switch (kind) {
        case ModKind::eis: {
            TateMatrix rho = g.rho_t(D);
            EisVector egz = eisenstein_vec(act.z, weight, N, D);
            EisVector ez = eisenstein_vec(z, weight, N, D);
            Laurent jk = jin.pow(weight);
            for (int i = 0; i < r; ++i) {
                TatePoly lhs = egz.eps[static_cast<std::size_t>(i)].scaled(jk);
                for (int l = 0; l < r; ++l)
                    lhs = lhs - rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                                    ez.eps[static_cast<std::size_t>(l)];
                res = combine_val(res, lhs.gauss_val());
            }
            return res;
        }
        case ModKind::agf: {
            TateMatrix rho = g.rho_t(D);
            DrinfeldData dz = exp_coeffs(z, N, r + 6);
            DrinfeldData dgz = exp_coeffs(act.z, N, r + 6);
            AGFVector fz = build_agf(dz, z, D);
            AGFVector fgz = build_agf(dgz, act.z, D);
            // fs[k-1] is built from z e_{r-k+1}, so matrix index i pairs with
            // fs[r-1-i].
            for (int c = 0; c < r; ++c) {
                TatePoly lhs = TatePoly::zero(F, D);
                for (int l = 0; l < r; ++l)
                    lhs = lhs + fgz.fs[static_cast<std::size_t>(r - 1 - l)].poly *
                                    rho[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)];
                lhs = lhs.scaled(act.j) - fz.fs[static_cast<std::size_t>(r - 1 - c)].poly;
                res = combine_val(res, lhs.gauss_val());
            }
            return res;
        }
        case ModKind::detxi: {
            long W = 0;
            for (int i = 0; i < r; ++i) W += pow_q(F.q(), i);
            Laurent scale =
                Laurent::scalar(F, F.inv(g.det_unit())) * jin.pow(W);
            TatePoly lhs = detxi_box(act.z, N, D).scaled(scale) - detxi_box(z, N, D);
            return lhs.gauss_val();
        }
        case ModKind::detpsi: {
            long W = 0;
            for (int i = 0; i < r; ++i) W += pow_q(F.q(), i);
            Laurent scale = Laurent::scalar(F, g.det_unit()) * act.j.pow(W);
            TatePoly lhs = detpsi_at(act.z, N, D).scaled(scale) - detpsi_at(z, N, D);
            return lhs.gauss_val();
        }
    }
    throw domain_error("check_modularity: unknown kind");
}

}  // namespace drmf
