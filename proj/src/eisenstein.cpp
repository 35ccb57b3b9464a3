#include "drmf/eisenstein.hpp"

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

// c_{k,m} = [eps^{k-1}] e(eps)^m for m = 0..k-1, where e is the lattice
// exponential with coefficients alphas (alphas[0] = 1 unused, alphas[i] on
// eps^{q^i}). These drive the power-sum collapse
//   sum_{w in W} (x - w)^{-k} = sum_m c_{k,m} e_W(x)^{-(m+1)},
// obtained by expanding 1/(e_W(x) - e_W(eps)) in eps.
std::vector<Laurent> composition_coeffs(const Field& F, long k,
                                        const std::vector<Laurent>& alphas) {
    long q = F.q();
    std::vector<Laurent> e(static_cast<std::size_t>(k), Laurent::zero(F));
    if (k >= 2) e[1] = Laurent::one(F);
    for (long i = 1, pw = q; pw <= k - 1; ++i, pw *= q)
        e[static_cast<std::size_t>(pw)] = alphas[static_cast<std::size_t>(i)];
    std::vector<Laurent> cur(static_cast<std::size_t>(k), Laurent::zero(F));
    cur[0] = Laurent::one(F);
    std::vector<Laurent> out;
    for (long m = 0; m <= k - 1; ++m) {
        out.push_back(cur[static_cast<std::size_t>(k - 1)]);
        std::vector<Laurent> next(static_cast<std::size_t>(k), Laurent::zero(F));
        for (long a = 0; a <= k - 1; ++a) {
            if (cur[static_cast<std::size_t>(a)].is_zero()) continue;
            for (long b = 1; a + b <= k - 1; ++b)
                if (!e[static_cast<std::size_t>(b)].is_zero())
                    next[static_cast<std::size_t>(a + b)] =
                        next[static_cast<std::size_t>(a + b)] +
                        cur[static_cast<std::size_t>(a)] * e[static_cast<std::size_t>(b)];
        }
        cur = std::move(next);
    }
    return out;
}

long weight_log_q(long q, long k) {
    long j = 0, pw = 1;
    while (pw < k) {
        pw *= q;
        ++j;
    }
    return pw == k ? j : -1;
}

void check_weight(const Field& F, long k) {
    if (k < 1 || (k - 1) % (F.q() - 1) != 0)
        throw domain_error("Eisenstein weight must be positive and = 1 mod q-1");
}

long alpha_count(long q, long k) {
    long i = 0;
    while (q_pow(q, i + 1) <= k - 1) ++i;
    return i;
}

}  // namespace

EisVector eisenstein_vec(const OmegaPoint& z, long k, int N, long D) {
    const Field& F = *z.F;
    long q = F.q();
    int r = z.r;
    check_weight(F, k);
    long tail = k * ((static_cast<long>(N) + 1) * (q - 1) - std::max(z.floor_lead, 0L));
    if (tail <= 0)
        throw precision_error("Eisenstein tail not certified: latDeg too small for this point");

    auto gens = lattice_generators(z, N);
    std::size_t n = gens.size();
    long imax = alpha_count(q, k);

    EisVector out;
    out.F = &F;
    out.r = r;
    out.k = k;
    out.N = N;
    out.eps.assign(static_cast<std::size_t>(r), TatePoly(F, D));
    out.err_lead.assign(static_cast<std::size_t>(r), tail);

    for (std::size_t j = 0; j < n; ++j) {
        long d = static_cast<long>(j) / r;
        int slot = r - 1 - static_cast<int>(j) % r;
        if (d > D) continue;  // chi-weight beyond the t-truncation
        std::vector<Laurent> others;
        others.reserve(n - 1);
        for (std::size_t l = 0; l < n; ++l)
            if (l != j) others.push_back(gens[l]);
        LatticeTower tw(F, std::move(others));
        Laurent E = tw.exp(gens[j]);
        auto c = composition_coeffs(F, k, tw.alphas(imax));
        Laurent Einv = E.inverse();
        Laurent Epow = Einv;
        Laurent T = Laurent::zero(F);
        for (long m = 0; m <= k - 1; ++m) {
            // F_q^x-averaging kills all but the m = 0 mod q-1 powers.
            if (m % (q - 1) == 0 && !c[static_cast<std::size_t>(m)].is_zero())
                T = T + c[static_cast<std::size_t>(m)] * Epow;
            if (m < k - 1) Epow = Epow * Einv;
        }
        out.eps[static_cast<std::size_t>(slot)].set_coeff(
            d, out.eps[static_cast<std::size_t>(slot)].coeff(d) - T);
    }
    return out;
}

EisVector eisenstein_vec_direct(const OmegaPoint& z, long k, int N, long D) {
    const Field& F = *z.F;
    long q = F.q();
    int r = z.r;
    check_weight(F, k);
    long tail = k * ((static_cast<long>(N) + 1) * (q - 1) - std::max(z.floor_lead, 0L));
    if (tail <= 0) throw precision_error("Eisenstein tail not certified");

    auto gens = lattice_generators(z, N);
    const auto& fq = F.subfield_fq();
    std::size_t n = gens.size();
    std::vector<std::size_t> idx(n, 0);

    EisVector out;
    out.F = &F;
    out.r = r;
    out.k = k;
    out.N = N;
    out.eps.assign(static_cast<std::size_t>(r), TatePoly(F, D));
    out.err_lead.assign(static_cast<std::size_t>(r), tail);

    for (;;) {
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == fq.size()) idx[pos++] = 0;
        if (pos == n) break;
        Laurent v = Laurent::zero(F);
        for (std::size_t l = 0; l < n; ++l)
            if (idx[l] != 0) v = v + gens[l].scaled(fq[idx[l]]);
        Laurent w = v.inverse().pow(k);
        for (std::size_t l = 0; l < n; ++l) {
            if (idx[l] == 0) continue;
            long d = static_cast<long>(l) / r;
            int slot = r - 1 - static_cast<int>(l) % r;
            if (d > D) continue;
            auto& e = out.eps[static_cast<std::size_t>(slot)];
            e.set_coeff(d, e.coeff(d) + w.scaled(fq[idx[l]]));
        }
    }
    return out;
}

int depth_for(const OmegaPoint& z, int N) {
    long q = z.F->q();
    long neg = std::max(0L, -z.z_top().lead());
    return N + 2 + static_cast<int>((neg + q - 2) / (q - 1));
}

TatePoly eps_r_resummed(const OmegaPoint& z, long k, int Nt, long D, long* err_lead) {
    const Field& F = *z.F;
    long q = F.q(), P = F.prec();
    check_weight(F, k);
    if (z.r < 2) throw domain_error("resummed eps_r needs rank >= 2");
    OmegaPoint zt = z.truncated();
    LatticeTower tw(F, lattice_generators(zt, Nt));
    auto cmat = composition_coeffs(F, k, tw.alphas(alpha_count(q, k)));
    long base_rel = (static_cast<long>(Nt) + 1) * (q - 1) - std::max(zt.floor_lead, 0L);

    TatePoly sum(F, D);
    long first_lead = Laurent::kInfExp;
    long err = Laurent::kInfExp;
    for (int deg = 0;; ++deg) {
        long deg_lead = Laurent::kInfExp;
        for (const auto& a : PolyA::monic_of_degree(F, deg)) {
            Laurent x = a.eval_theta() * z.z_top();
            long rel = base_rel + x.lead();
            if (rel <= 0)
                throw precision_error(
                    "resummed Eisenstein: truncated-lattice depth too small for |a z_r|");
            Laurent E = tw.exp(x);
            E = E.capped(E.lead() + rel);
            Laurent Einv = E.inverse();
            Laurent Epow = Einv;
            Laurent Pk = Laurent::zero(F);
            for (long m = 0; m <= k - 1; ++m) {
                if (!cmat[static_cast<std::size_t>(m)].is_zero())
                    Pk = Pk + cmat[static_cast<std::size_t>(m)] * Epow;
                if (m < k - 1) Epow = Epow * Einv;
            }
            deg_lead = std::min(deg_lead, Pk.lead());
            err = std::min(err, Pk.lead() + rel);
            sum = sum - a.chi_t(D).scaled(Pk);
        }
        first_lead = std::min(first_lead, deg_lead);
        if (deg_lead > first_lead + P) break;  // deeper strata below precision
        if (deg > 8)
            throw precision_error("resummed Eisenstein: outer strata failed to decay");
    }
    if (err_lead) *err_lead = std::min(err, first_lead + P);
    return sum;
}

XiMatrix xi_matrix(const OmegaPoint& z, int N, long D) {
    const Field& F = *z.F;
    long q = F.q();
    int r = z.r;
    XiMatrix X;
    X.r = r;

    EisVector E1 = eisenstein_vec(z, 1, N, D);
    TatePoly epsr = E1.eps[0];
    long err_r = E1.err_lead[0];
    if (r >= 2) epsr = eps_r_resummed(z, 1, depth_for(z, N), D, &err_r);

    X.xi.assign(static_cast<std::size_t>(r),
                std::vector<TatePoly>(static_cast<std::size_t>(r), TatePoly(F, D)));
    X.err.assign(static_cast<std::size_t>(r), std::vector<long>(static_cast<std::size_t>(r), 0));
    for (int j = 0; j < r; ++j) {
        long pw = q_pow(q, j);
        X.xi[0][static_cast<std::size_t>(j)] = epsr.tau(j);
        X.err[0][static_cast<std::size_t>(j)] = pw * err_r;
        for (int i = 1; i < r; ++i) {
            X.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                E1.eps[static_cast<std::size_t>(i)].tau(j);
            X.err[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                pw * E1.err_lead[static_cast<std::size_t>(i)];
        }
    }
    X.det = tate_det(X.xi);
    X.det_err_lead = det_error_lead(X.xi, X.err);

    if (r >= 2) {
        XiMatrix Xt = xi_matrix(z.truncated(), N, D);
        X.xi_tilde = std::move(Xt.xi);
        X.det_tilde = std::move(Xt.det);
    }
    return X;
}

TatePoly pellarin_L(const Field& F, long k, int N, long D) {
    long q = F.q();
    if (k < 1) throw domain_error("Pellarin L-value needs k >= 1");
    TatePoly s(F, D);
    long prev = -Laurent::kInfExp;
    for (int d = 0; d <= N; ++d) {
        TatePoly stratum(F, D);
        for (const auto& a : PolyA::monic_of_degree(F, d))
            stratum = stratum + a.chi_t(D).scaled(a.eval_theta().inverse().pow(k));
        if (stratum.is_zero()) continue;  // collapsed below precision: fully decayed
        long gl = stratum.gauss_lead();
        if (d >= 1 && gl <= prev)
            throw precision_error("Pellarin L strata failed to decay: series not certified");
        prev = gl;
        s = s + stratum;
    }
    long tail = k * (static_cast<long>(N) + 1) * (q - 1);
    for (long i = 0; i <= D; ++i) s.set_coeff(i, s.coeff(i).capped(tail));
    return s;
}

UCoeffFit u_coefficient_fit(const std::vector<Laurent>& us,
                            const std::vector<TatePoly>& dets,
                            const std::vector<long>& det_errs) {
    std::size_t n = us.size();
    if (n < 2 || dets.size() != n || det_errs.size() != n)
        throw domain_error("u-coefficient fit needs >= 2 matching family points");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (us[i + 1].lead() <= us[i].lead())
            throw domain_error("|u| not strictly decreasing along the family");

    std::vector<TatePoly> ratio;
    std::vector<long> gl;
    for (std::size_t i = 0; i < n; ++i) {
        if (dets[i].is_zero()) throw domain_error("det vanished: no u-coefficient to fit");
        ratio.push_back(dets[i].scaled(us[i].inverse()));
        gl.push_back(ratio.back().gauss_lead());
    }

    UCoeffFit fit;
    fit.cuspidal = true;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (gl[i] != gl[i + 1]) fit.cuspidal = false;

    std::vector<long> diff;
    std::vector<bool> measured;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        TatePoly d = ratio[i + 1] - ratio[i];
        auto v = d.gauss_val();
        diff.push_back(v.infinite ? Laurent::kInfExp : v.num);
        // a lower-bound valuation means the difference vanished below the
        // carried precision: converged as far as we can measure
        measured.push_back(!v.infinite && !v.lower_bound);
    }
    fit.monotone = true;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i)
        if (measured[i + 1] && diff[i + 1] <= diff[i]) fit.monotone = false;

    // Drift model: ratio = c1 + c2 u + ..., so the remaining error at the
    // deepest point is ~ |u_last| * |c2|, with |c2| read off the last
    // observed difference.
    long err_model = us[n - 1].lead() + (diff.back() - us[n - 2].lead());
    long err_comp = det_errs[n - 1] - us[n - 1].lead();
    fit.err_lead = std::min(err_model, err_comp);
    fit.c1 = ratio[n - 1];
    return fit;
}

long det_error_lead(const TateMatrix& m, const std::vector<std::vector<long>>& err) {
    int n = static_cast<int>(m.size());
    // |true entry| <= max(|computed|, error)
    std::vector<std::vector<long>> eff(m.size(), std::vector<long>(m.size(), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            long gl = e.is_zero() ? Laurent::kInfExp : e.gauss_lead();
            eff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::min(gl, err[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    long best = Laurent::kInfExp;
    for_each_permutation(n, [&](const std::vector<int>& p, bool) {
        for (int epos = 0; epos < n; ++epos) {
            long s = 0;
            for (int i = 0; i < n; ++i) {
                long v = i == epos
                             ? err[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                                   p[static_cast<std::size_t>(i)])]
                             : eff[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                                   p[static_cast<std::size_t>(i)])];
                if (v >= Laurent::kInfExp / 2) {
                    s = Laurent::kInfExp;
                    break;
                }
                s += v;
            }
            best = std::min(best, s);
        }
    });
    return best;
}

VanishReport vanishing_det(const OmegaPoint& z, const std::vector<long>& weights, int N,
                           long D) {
    const Field& F = *z.F;
    long q = F.q(), P = F.prec();
    int r = z.r;
    if (static_cast<int>(weights.size()) != r)
        throw domain_error("vanishing_det needs one weight per rank");
    for (long k : weights) check_weight(F, k);

    EisVector E1;
    TatePoly epsr1;
    long err_r1 = 0;
    bool have1 = false;
    auto ensure_base = [&]() {
        if (have1) return;
        E1 = eisenstein_vec(z, 1, N, D);
        epsr1 = E1.eps[0];
        err_r1 = E1.err_lead[0];
        if (r >= 2) epsr1 = eps_r_resummed(z, 1, depth_for(z, N), D, &err_r1);
        have1 = true;
    };

    TateMatrix m(static_cast<std::size_t>(r),
                 std::vector<TatePoly>(static_cast<std::size_t>(r), TatePoly(F, D)));
    std::vector<std::vector<long>> err(static_cast<std::size_t>(r),
                                       std::vector<long>(static_cast<std::size_t>(r), 0));
    for (int c = 0; c < r; ++c) {
        long k = weights[static_cast<std::size_t>(c)];
        long j = weight_log_q(q, k);
        if (j >= 0) {
            ensure_base();
            long pw = q_pow(q, j);
            m[0][static_cast<std::size_t>(c)] = epsr1.tau(static_cast<int>(j));
            err[0][static_cast<std::size_t>(c)] = pw * err_r1;
            for (int i = 1; i < r; ++i) {
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    E1.eps[static_cast<std::size_t>(i)].tau(static_cast<int>(j));
                err[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    pw * E1.err_lead[static_cast<std::size_t>(i)];
            }
        } else {
            EisVector Ek = eisenstein_vec(z, k, N, D);
            for (int i = 0; i < r; ++i) {
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    Ek.eps[static_cast<std::size_t>(i)];
                err[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    Ek.err_lead[static_cast<std::size_t>(i)];
            }
            if (r >= 2) {
                long er = 0;
                m[0][static_cast<std::size_t>(c)] =
                    eps_r_resummed(z, k, depth_for(z, N), D, &er);
                err[0][static_cast<std::size_t>(c)] = er;
            }
        }
    }

    VanishReport rep;
    rep.det = tate_det(m);
    rep.det_err_lead = det_error_lead(m, err);
    rep.tol_lead = rep.det_err_lead - 2 * (q - 1);
    rep.nonzero_lead = std::min(rep.tol_lead - (q - 1), P / 4);
    auto v = rep.det.is_zero() ? Valuation{0, 1, true, false} : rep.det.gauss_val();
    if (v.infinite || v.num >= rep.tol_lead)
        rep.verdict = Verdict::vanishes;
    else if (!v.lower_bound && v.num <= rep.nonzero_lead)
        rep.verdict = Verdict::nonzero;
    else
        rep.verdict = Verdict::indeterminate;
    return rep;
}

}  // namespace drmf
