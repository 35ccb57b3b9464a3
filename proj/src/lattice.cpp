#include "drmf/lattice.hpp"

#include <algorithm>
#include <map>

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
}  // namespace

namespace {

// Exact F_q-span membership certificate for exact Laurent values, used to
// recognize genuine lattice points (where the exponential vanishes exactly)
// behind the finite-precision chain arithmetic. Only implemented for e = 1
// (F_q prime), where the F_q-coordinates of a residue-field element are its
// base-p code digits; otherwise we decline to certify, which is sound.
bool in_fq_span(const Field& F, const std::vector<Laurent>& gens, const Laurent& w) {
    if (F.params().e != 1) return false;
    if (!w.exact()) return false;
    long p = F.p(), m = F.m();
    auto to_vec = [&](const Laurent& x) {
        std::map<long, long> v;  // key = exponent*m + basis index, value in F_p
        if (x.is_zero()) return v;
        const auto& d = x.digits();
        for (std::size_t i = 0; i < d.size(); ++i) {
            long code = d[i];
            for (long j = 0; j < m; ++j) {
                long digit = code % p;
                code /= p;
                if (digit) v[(x.lead() + static_cast<long>(i)) * m + j] = digit;
            }
        }
        return v;
    };
    auto axpy = [&](std::map<long, long>& dst, long c, const std::map<long, long>& src) {
        for (const auto& [k, val] : src) {
            long nv = (dst[k] + c * val) % p;
            if (nv == 0)
                dst.erase(k);
            else
                dst[k] = nv;
        }
    };
    std::vector<std::map<long, long>> echelon;
    auto reduce = [&](std::map<long, long> v) {
        for (const auto& e : echelon) {
            if (v.empty()) break;
            auto it = v.find(e.begin()->first);
            if (it == v.end()) continue;
            long c = (p - it->second * e.begin()->second % p) % p;  // e pivot normalized below
            axpy(v, c, e);
        }
        return v;
    };
    auto normalize = [&](std::map<long, long>& v) {
        // scale so the pivot entry is 1 (p is prime: Fermat inverse)
        long piv = v.begin()->second, inv = 1;
        for (long k = 0; k < p - 2; ++k) inv = inv * piv % p;
        for (auto& [k, val] : v) val = val * inv % p;
    };
    for (const auto& g : gens) {
        if (!g.exact()) return false;
        auto v = reduce(to_vec(g));
        if (v.empty()) continue;
        normalize(v);
        echelon.push_back(std::move(v));
        std::sort(echelon.begin(), echelon.end(),
                  [](const auto& a, const auto& b) { return a.begin()->first < b.begin()->first; });
    }
    return reduce(to_vec(w)).empty();
}

}  // namespace

OmegaPoint OmegaPoint::truncated() const {
    if (r < 2) throw domain_error("cannot truncate a rank-1 point");
    OmegaPoint zt;
    zt.F = F;
    zt.r = r - 1;
    zt.z.assign(z.begin() + 1, z.end());
    zt.floor_lead = floor_lead;
    return zt;
}

namespace {

// Minimize |w| over w + span_Fq(basis): repeatedly cancel the lead digit of w
// with an F_q-combination of basis elements of the same lead. Groups of
// same-lead elements are searched jointly, since a cancelling combination
// need not pass through any single element. Returns an exact zero when w is
// absorbed entirely.
Laurent reduce_against(const Field& F, Laurent w, const std::vector<const Laurent*>& basis) {
    const auto& fq = F.subfield_fq();
    while (!w.is_zero()) {
        std::vector<const Laurent*> group;
        for (const auto* b : basis)
            if (!b->is_zero() && b->lead() == w.lead()) group.push_back(b);
        if (group.empty()) break;
        bool improved = false;
        std::vector<std::size_t> cs(group.size(), 0);
        while (true) {
            std::size_t i = 0;
            for (; i < cs.size(); ++i) {
                if (++cs[i] < fq.size()) break;
                cs[i] = 0;
            }
            if (i == cs.size()) break;  // odometer wrapped: no combination left
            Laurent cand = w;
            for (std::size_t l = 0; l < group.size(); ++l)
                if (cs[l] != 0) cand = cand + group[l]->scaled(fq[cs[l]]);
            if (cand.is_zero() || cand.lead() > w.lead()) {
                w = std::move(cand);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return w;
}

}  // namespace

LatticeTower::LatticeTower(const Field& F, std::vector<Laurent> gens)
    : F_(&F), gens_(std::move(gens)) {
    long qm1 = F.q() - 1;
    // F_q-reduce the generator list: make each element minimal modulo the
    // others. Near-collisions between generators are isolated as explicit
    // small elements at input scale, before the tower can amplify them.
    std::vector<Laurent> pending = gens_;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < pending.size(); ++j) {
            std::vector<const Laurent*> others;
            for (std::size_t i = 0; i < pending.size(); ++i)
                if (i != j) others.push_back(&pending[i]);
            Laurent r = reduce_against(F, pending[j], others);
            if (r.is_zero())
                throw domain_error("lattice generator dependent over F_q on earlier ones "
                                   "(point outside Omega at this precision)");
            if (r.lead() != pending[j].lead()) changed = true;
            pending[j] = std::move(r);
        }
    }
    // Chain in ascending size (descending lead): cancellations then happen at
    // small scale, where digits remain; the exponential itself depends only
    // on the span.
    std::sort(pending.begin(), pending.end(),
              [](const Laurent& a, const Laurent& b) { return a.lead() > b.lead(); });
    red_ = pending;
    for (const auto& b : pending) {
        Laurent y = b;
        for (std::size_t k = 0; k < c_.size(); ++k)
            y = y - y.frobenius() * inv_cq1_[k];
        if (y.is_zero())
            throw domain_error("lattice generator dependent over F_q on earlier ones "
                               "(point outside Omega at this precision)");
        c_.push_back(y);
        inv_cq1_.push_back(y.pow(qm1).inverse());
    }
}

Laurent LatticeTower::reduce_mod_span(Laurent w) const {
    std::vector<const Laurent*> basis;
    basis.reserve(red_.size());
    for (const auto& b : red_) basis.push_back(&b);
    return reduce_against(*F_, std::move(w), basis);
}

Laurent LatticeTower::exp(const Laurent& w) const {
    return exp_prefix(size(), reduce_mod_span(w));
}

Laurent LatticeTower::exp_prefix(std::size_t j, const Laurent& w) const {
    Laurent y = w;
    for (std::size_t k = 0; k < j; ++k)
        y = y - y.frobenius() * inv_cq1_[k];
    return y;
}

std::vector<Laurent> LatticeTower::alphas(long J) const {
    std::vector<Laurent> a(static_cast<std::size_t>(J + 1), Laurent::zero(*F_));
    a[0] = Laurent::one(*F_);
    for (std::size_t j = 0; j < c_.size(); ++j)
        for (long i = J; i >= 1; --i)
            a[static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(i)] -
                a[static_cast<std::size_t>(i - 1)].frobenius() * inv_cq1_[j];
    return a;
}

std::vector<Laurent> lattice_generators(const OmegaPoint& z, int N) {
    std::vector<Laurent> gens;
    const Field& F = *z.F;
    Laurent thd = Laurent::one(F);
    for (int d = 0; d <= N; ++d) {
        // |z_i| ascending: z_1 (index r-1) first.
        for (int i = z.r - 1; i >= 0; --i) gens.push_back(z.z[static_cast<std::size_t>(i)] * thd);
        thd = thd * Laurent::theta(F);
    }
    return gens;
}

std::vector<Laurent> enumerate_lattice(const OmegaPoint& z, int N) {
    const Field& F = *z.F;
    auto basis = lattice_generators(z, N);
    const auto& fq = F.subfield_fq();
    std::size_t n = basis.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<Laurent> out;
    for (;;) {
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == fq.size()) idx[pos++] = 0;
        if (pos == n) break;
        Laurent v = Laurent::zero(F);
        for (std::size_t k = 0; k < n; ++k)
            if (idx[k] != 0) v = v + basis[k].scaled(fq[idx[k]]);
        if (v.is_zero())
            throw domain_error("lattice value vanished below precision: "
                               "independence violation");
        out.push_back(std::move(v));
    }
    return out;
}

DrinfeldData exp_coeffs(const OmegaPoint& z, int N, int J) {
    const Field& F = *z.F;
    long q = F.q();
    if (J < z.r) throw domain_error("expTerms J must be >= rank");
    LatticeTower tower(F, lattice_generators(z, N));
    // The span of the generators is an F_q-space, so e_span is exactly
    // F_q-linear: non-q-power coefficients vanish identically and only the
    // alpha_i need computing. alpha_i is the elementary symmetric sum of
    // degree q^i - 1 in the 1/v; an error term contains one omitted factor
    // (norm <= q^{-(N+1)}) and at most q^i - 2 others, each bounded by the
    // reciprocals of the smallest lattice norms. Those smallest norms come
    // from a cheap low-degree enumeration.
    std::vector<long> small_leads;
    for (const auto& v : enumerate_lattice(z, std::min(N, 2))) small_leads.push_back(v.lead());
    std::sort(small_leads.begin(), small_leads.end(), std::greater<long>());
    auto tail = [&](int i) {
        long bound = (static_cast<long>(N) + 1) * (q - 1) - std::max(z.floor_lead, 0L);
        if (bound <= 0)
            throw precision_error("lattice floor too weak: alpha tail bound unavailable");
        long cnt = q_pow(q, i) - 2;
        for (long k = 0; k < cnt && k < static_cast<long>(small_leads.size()); ++k)
            bound -= small_leads[static_cast<std::size_t>(k)];
        return bound;
    };
    auto al = tower.alphas(z.r);

    DrinfeldData d;
    d.F = &F;
    d.r = z.r;
    d.N = N;
    d.J = J;
    d.alphas.assign(static_cast<std::size_t>(J + 1), Laurent::zero(F));
    d.alphas[0] = Laurent::one(F);
    for (int i = 1; i <= z.r; ++i)
        d.alphas[static_cast<std::size_t>(i)] = al[static_cast<std::size_t>(i)].capped(tail(i));

    // Rank 1 is the lattice A; rescale to pi*A so that d_theta is the
    // classical Carlitz module theta*tau^0 + tau (monic, Delta = 1), the
    // normalization the omega / pi cross-checks expect.
    if (z.r == 1)
        d.alphas[1] = d.alphas[1] * carlitz_period(F).pow(1 - q);

    Laurent th = Laurent::theta(F);
    std::vector<Laurent> g;  // g_1..g_r
    for (int k = 1; k <= z.r; ++k) {
        Laurent gk = d.alphas[static_cast<std::size_t>(k)] *
                     (Laurent::theta_pow(F, q_pow(q, k)) - th);
        for (int i = 1; i < k; ++i)
            gk = gk - g[static_cast<std::size_t>(i - 1)] *
                          d.alphas[static_cast<std::size_t>(k - i)].frobenius(i);
        g.push_back(std::move(gk));
    }
    if (g.back().is_zero()) throw domain_error("degenerate lattice: Delta below tolerance");
    d.delta = g.back();
    d.gs.assign(g.begin(), g.end() - 1);

    for (int j = z.r + 1; j <= J; ++j) {
        Laurent s = Laurent::zero(F);
        for (int k = 1; k <= z.r; ++k)
            s = s + g[static_cast<std::size_t>(k - 1)] *
                        d.alphas[static_cast<std::size_t>(j - k)].frobenius(k);
        d.alphas[static_cast<std::size_t>(j)] =
            s / (Laurent::theta_pow(F, q_pow(q, j)) - th);
    }
    return d;
}

Laurent DrinfeldData::g(int k) const {
    if (k < 1 || k > r) throw domain_error("g index out of range");
    if (k == r) return delta;
    return gs[static_cast<std::size_t>(k - 1)];
}

Laurent DrinfeldData::d_theta(const Laurent& y) const {
    Laurent s = Laurent::theta(*F) * y;
    for (int k = 1; k <= r; ++k) s = s + g(k) * y.frobenius(k);
    return s;
}

Laurent DrinfeldData::d_a(const PolyA& a, const Laurent& y) const {
    // d_a = sum_i c_i d_theta^i applied to y.
    Laurent s = Laurent::zero(*F);
    Laurent cur = y;
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) != 0) s = s + cur.scaled(a.coeff(i));
        if (i < a.degree()) cur = d_theta(cur);
    }
    return s;
}

Laurent exp_eval(const DrinfeldData& d, const Laurent& w) {
    const Field& F = *d.F;
    if (w.is_zero()) return w;
    Laurent s = Laurent::zero(F);
    long prev_lead = Laurent::kInfExp, last_lead = Laurent::kInfExp;
    for (long j = 0; j <= d.J; ++j) {
        Laurent t = d.alphas[static_cast<std::size_t>(j)] * w.frobenius(static_cast<int>(j));
        if (!t.is_zero()) {
            prev_lead = last_lead;
            last_lead = t.lead();
        }
        s = s + t;
    }
    if (prev_lead == Laurent::kInfExp || last_lead <= prev_lead)
        throw precision_error("divergence-risk: exponential series tail not certified");
    // q-power decay accelerates, so one more linear step under-estimates the tail.
    return s.capped(last_lead + (last_lead - prev_lead));
}

Laurent exp_eval_product(const OmegaPoint& z, int N, const Laurent& w) {
    const Field& F = *z.F;
    long q = F.q();
    LatticeTower tower(F, lattice_generators(z, N));
    Laurent e = tower.exp(w);
    if (e.is_zero()) {
        // Certify exact vanishing at genuine truncated-lattice points; else
        // keep the bounded zero the chain produced.
        if (!e.exact() && in_fq_span(F, tower.gens(), w)) return Laurent::zero(F);
        return e;
    }
    // Omitted factors (1 - w/v) have |w/v| <= |w| q^{-(N+1)} / |z|_im.
    long rel = (static_cast<long>(N) + 1) * (q - 1) - std::max(z.floor_lead, 0L) + w.lead();
    if (rel <= 0)
        throw precision_error("lattice truncation too small for argument of this size");
    return e.capped(e.lead() + rel);
}

Laurent carlitz_period(const Field& F) {
    long q = F.q(), P = F.prec();
    Laurent r = Laurent::lambda(F) * Laurent::theta(F);
    for (long j = 1; (q_pow(q, j) - 1) * (q - 1) <= P; ++j) {
        Laurent f = Laurent::one(F) - Laurent::theta_pow(F, 1 - q_pow(q, j));
        r = r * f.inverse();
    }
    return r.capped(r.lead() + P);
}

TatePoly anderson_thakur_omega(const Field& F, long D) {
    long q = F.q(), P = F.prec();
    TatePoly f = TatePoly::constant(Laurent::lambda(F), D);
    for (long i = 0; q_pow(q, i) * (q - 1) <= P; ++i) {
        TatePoly fac(F, D);
        fac.set_coeff(0, Laurent::one(F));
        fac.set_coeff(1, -Laurent::theta_pow(F, q_pow(q, i)).inverse());
        f = f * fac.invert_unit();
    }
    // |omega| = q^{1/(q-1)}; omitted factors perturb below lambda-lead P-1.
    for (long i = 0; i <= D; ++i) f.set_coeff(i, f.coeff(i).capped(P - 1));
    return f;
}

Laurent anderson_thakur_omega_at(const Field& F, const Laurent& t0) {
    long q = F.q(), P = F.prec();
    if (!t0.is_zero() && t0.lead() <= -q * (q - 1))
        throw domain_error("omega evaluation: |t0| >= q^q");
    long t0lead = t0.is_zero() ? 0 : t0.lead();
    Laurent r = Laurent::lambda(F);
    for (long i = 0; t0lead + q_pow(q, i) * (q - 1) <= P + q * (q - 1); ++i) {
        Laurent f = Laurent::one(F) - t0 * Laurent::theta_pow(F, q_pow(q, i)).inverse();
        if (f.is_zero())
            throw domain_error("omega has a pole at t0 (factor i=" + std::to_string(i) +
                               " vanished)");
        r = r * f.inverse();
    }
    return r;
}

Laurent u_param(const OmegaPoint& z, int N) {
    if (z.r < 2) throw domain_error("u_param requires rank >= 2");
    const Field& F = *z.F;
    Laurent e = exp_eval_product(z.truncated(), N, z.z_top());
    if (e.is_zero())
        throw domain_error("z_r within precision of the truncated-lattice span: "
                           "point degenerate for u");
    return (carlitz_period(F) * e).inverse();
}

}  // namespace drmf
