#include "drmf/runner.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <functional>
#include <sstream>

namespace drmf {

namespace {

std::pair<int, int> factor_prime_power(int q) {
    for (int p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        int t = q, e = 0;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        if (t != 1) throw usage_error("q must be a prime power");
        return {p, e};
    }
    throw usage_error("q must be >= 2");
}

Field make_field(const RunConfig& cfg) {
    auto [p, e] = factor_prime_power(cfg.q);
    return Field({p, e, cfg.m, cfg.precisionDigits});
}

OmegaPoint rank1_point(const Field& F) {
    OmegaPoint z;
    z.F = &F;
    z.r = 1;
    z.z = {Laurent::one(F)};
    z.floor_lead = 0;
    return z;
}

// Canonical family point with cusp parameter s: exponents (1,...,r-2,s), so
// the truncated point is shared across a family varying only s.
OmegaPoint family_point(const Field& F, const RunConfig& cfg, int s) {
    if (cfg.r == 1) return rank1_point(F);
    std::vector<int> sv;
    for (int j = 2; j < cfg.r; ++j) sv.push_back(j - 1);
    sv.push_back(s);
    return canonical_point(F, cfg.r, sv);
}

// Shallowest canonical point, exponents (1,...,r-1).
OmegaPoint base_point(const Field& F, const RunConfig& cfg) {
    if (cfg.r == 1) return rank1_point(F);
    std::vector<int> sv;
    for (int j = 1; j < cfg.r; ++j) sv.push_back(j);
    return canonical_point(F, cfg.r, sv);
}

// Point for the exponential-based suites. Canonical points at rank >= 3 sit
// too close to the cusp: Delta cancels below the alpha tail bound at any box
// degree the tower can reach. The unit-ball point z_i = xi^{i-1} has q^r - 1
// unit-size lattice values, which makes Delta as large (and as cheap to
// certify) as it gets.
OmegaPoint exp_base_point(const Field& F, const RunConfig& cfg) {
    if (cfg.r == 1) return rank1_point(F);
    if (cfg.r == 2) return base_point(F, cfg);
    OmegaPoint z;
    z.F = &F;
    z.r = cfg.r;
    for (int i = cfg.r; i >= 1; --i)
        z.z.push_back(Laurent::monomial(F, F.pow(F.gen(), i - 1), 0));
    z.floor_lead = 0;
    return z;
}

// Largest lattice box degree the F_q-linear tower can handle: chain leads
// grow like q^{#generators}, and lambda exponents are stored in a long.
int tower_degree_cap(const Field& F, int r) {
    int gmax = static_cast<int>(39.5 / std::log(static_cast<double>(F.q())));
    return gmax / r - 1;
}

// Lattice box degree for exp_coeffs at z: deep enough for the tolerance and
// for Delta (which sits roughly (q-1)*lead(u) below the generators), capped
// by exponent overflow.
int exp_depth(const OmegaPoint& z, const RunConfig& cfg) {
    if (z.r == 1) return cfg.latticeDegree;
    const Field& F = *z.F;
    long ul = u_param(z, depth_for(z, 2)).lead();
    long want = std::max<long>({static_cast<long>(cfg.latticeDegree), ul + 5,
                                cfg.toleranceExponent / (F.q() - 1) + 8});
    return static_cast<int>(std::min<long>(want, tower_degree_cap(F, z.r)));
}

// exp_coeffs at a runner-chosen Omega point: a "degenerate lattice" there is
// a truncation failure (Delta below the certified tail), not bad input.
DrinfeldData exp_data(const OmegaPoint& z, const RunConfig& cfg) {
    try {
        return exp_coeffs(z, exp_depth(z, cfg), cfg.expTerms);
    } catch (const domain_error& e) {
        throw precision_error(e.what());
    }
}

ojson val_to_json(const Valuation& v) {
    ojson j;
    if (v.infinite) {
        j["infinite"] = true;
        return j;
    }
    j["num"] = v.num;
    j["den"] = v.den;
    if (v.lower_bound) j["lowerBound"] = true;
    return j;
}

// Accumulates per-check residuals and the three-way suite verdict.
struct Checks {
    std::vector<ojson>* residuals;
    bool all_pass = true;
    bool indeterminate = false;

    void push(const Valuation& v) { residuals->push_back(val_to_json(v)); }
    // "~ 0": valuation at least texp lambda-units.
    void abs_ge(const Valuation& v, long texp) {
        push(v);
        if (v.infinite || v.num >= texp) return;
        if (v.lower_bound)
            indeterminate = true;  // vanished below precision, above tolerance
        else
            all_pass = false;
    }
    // "!= 0": resolved lead at most lead_max lambda-units.
    void nonzero_le(const Valuation& v, long lead_max) {
        push(v);
        if (v.infinite) {
            all_pass = false;
        } else if (v.lower_bound) {
            if (v.num > lead_max) indeterminate = true;
            // a lower bound <= lead_max still certifies the norm floor
        } else if (v.num > lead_max) {
            all_pass = false;
        }
    }
    void flag(bool ok, long num = 0, long den = 1) {
        Valuation v;
        v.num = num;
        v.den = den;
        v.infinite = ok && num == 0;
        residuals->push_back(val_to_json(v));
        if (!ok) all_pass = false;
    }
};

TateMatrix matmul(const TateMatrix& a, const TateMatrix& b) {
    std::size_t n = a.size();
    TateMatrix out(n, std::vector<TatePoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TatePoly s = a[i][0] * b[0][j];
            for (std::size_t l = 1; l < n; ++l) s = s + a[i][l] * b[l][j];
            out[i][j] = s;
        }
    return out;
}

long rel_num(const Valuation& v, long base_lead) {
    return v.infinite ? Laurent::kInfExp : v.num - base_lead;
}

// ---- suites ---------------------------------------------------------------

void suite_at_omega(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    const long D = cfg.tDegree;
    TatePoly omega = anderson_thakur_omega(F, D);
    TatePoly tmth = TatePoly::t_monomial(F, D, 1) - TatePoly::constant(Laurent::theta(F), D);
    TatePoly resid = omega.tau(1) - tmth * omega;
    chk.abs_ge(resid.gauss_val_upto(D - 1), T);
    auto fit = residue_fit(F, [&](const Laurent& t0) { return anderson_thakur_omega_at(F, t0); });
    chk.abs_ge(fit.fit_residual.val(), cfg.precisionDigits / 2);
    chk.nonzero_le(fit.c_m1.val(), T / 2);  // residue nonzero: the pole is simple
    rec.witnesses["omegaGaussLead"] = omega.gauss_lead();
    rec.witnesses["residueLead"] = fit.c_m1.lead();
}

void suite_difference_eq(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    OmegaPoint z = exp_base_point(F, cfg);
    DrinfeldData d = exp_data(z, cfg);
    AGFVector agf = build_agf(d, z, cfg.tDegree);
    PsiPhiPair pair = build_phi_psi(agf);
    TateMatrix phipsi = matmul(pair.phi, pair.psi);
    for (int i = 0; i < pair.r; ++i)
        for (int j = 0; j < pair.r; ++j) {
            TatePoly resid = pair.psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].tau(1) -
                             phipsi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            chk.abs_ge(resid.gauss_val_upto(cfg.tDegree - 1), T);
        }
    rec.witnesses["deltaLead"] = pair.delta.lead();
}

void suite_twisted_det(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    OmegaPoint z = exp_base_point(F, cfg);
    DrinfeldData d = exp_data(z, cfg);
    PsiPhiPair pair = build_phi_psi(build_agf(d, z, cfg.tDegree));
    TwistedDetReport rep = check_twisted_det(pair);
    chk.abs_ge(rep.residual.gauss_val_upto(cfg.tDegree - 1), T);
    chk.flag(rep.norm_identity);
    rec.witnesses["detPsiGaussLead"] = rep.det_psi.gauss_lead();
    rec.witnesses["normIdentity"] = rep.norm_identity;
}

void suite_eigen_property(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    const long D = cfg.tDegree;
    OmegaPoint z = exp_base_point(F, cfg);
    DrinfeldData d = exp_data(z, cfg);
    AGFVector agf = build_agf(d, z, D);
    std::vector<PolyA> as = {PolyA::theta_pow(F, 1), PolyA(F, {F.one(), F.one(), F.one()})};
    for (const auto& a : as) {
        TatePoly chi = a.chi_t(D);
        for (const auto& f : agf.fs) {
            TatePoly resid = d_a_tate(d, a, f.poly) - f.poly * chi;
            chk.abs_ge(resid.gauss_val_upto(D - 2), T);
        }
    }
    rec.witnesses["eigenvalues"] = {"theta", "theta^2+theta+1"};
}

void suite_modularity(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    const long q1 = F.q() - 1;
    OmegaPoint z = exp_base_point(F, cfg);
    const int ncap = tower_degree_cap(F, cfg.r);
    ojson gammas = ojson::array();
    for (int i = 0; i < 5; ++i) {
        GLrMatrix g = random_gamma(F, cfg.r, cfg.seed + static_cast<std::uint64_t>(i));
        GlAction act = gl_act(g, z);
        // Choose the box truncation so the certified tails at the transformed
        // point stay below the tolerance.
        int N = static_cast<int>(std::min<long>(
            std::max<long>(cfg.latticeDegree,
                           (T + std::max(act.z.floor_lead, 0L)) / q1 + 4),
            ncap));
        chk.abs_ge(check_modularity(ModKind::eis, 1, g, z, N, cfg.tDegree), T);
        chk.abs_ge(check_modularity(ModKind::eis, F.q(), g, z, N, cfg.tDegree), T);
        chk.abs_ge(check_modularity(ModKind::agf, 0, g, z, N, cfg.tDegree), T);
        chk.abs_ge(check_modularity(ModKind::detxi, 0, g, z, N, cfg.tDegree), T);
        gammas.push_back({{"seed", cfg.seed + static_cast<std::uint64_t>(i)},
                          {"maxDeg", g.max_deg()},
                          {"jLead", act.j.lead()},
                          {"floorLead", act.z.floor_lead},
                          {"boxDegree", N}});
    }
    rec.witnesses["gammas"] = gammas;
}

void suite_nonvanishing(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long half = cfg.toleranceExponent / 2;
    const long D = cfg.tDegree;
    const int N = cfg.latticeDegree;
    OmegaPoint z = exp_base_point(F, cfg);
    EisVector e = eisenstein_vec(z, 1, N, D);
    for (const auto& eps : e.eps) chk.nonzero_le(eps.gauss_val(), half);
    XiMatrix X = xi_matrix(z, N, D);
    chk.nonzero_le(X.det.gauss_val(), half);
    DrinfeldData d = exp_data(z, cfg);
    int Ne = d.N;
    PsiPhiPair pair = build_phi_psi(build_agf(d, z, D));
    TatePoly detPsi = tate_det(pair.psi);
    chk.nonzero_le(detPsi.gauss_val(), half);
    Laurent detC = laurent_det(cycle_class_matrix(z, Ne));
    chk.nonzero_le(detC.val(), half);
    rec.witnesses["detXiGaussLead"] = X.det.gauss_lead();
    rec.witnesses["detPsiGaussLead"] = detPsi.gauss_lead();
    rec.witnesses["detCycleLead"] = detC.lead();
}

void suite_residue_cycle(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    OmegaPoint z = exp_base_point(F, cfg);
    DrinfeldData d = exp_data(z, cfg);
    const int N = static_cast<int>(d.N);
    PsiPhiPair pair = build_phi_psi(build_agf(d, z, cfg.tDegree));
    ResidueFit fit = residue_detpsi(pair);
    chk.abs_ge(fit.fit_residual.val(), cfg.precisionDigits / 2);
    Laurent detC = laurent_det(cycle_class_matrix(z, N));
    // |c_-1| vs |det[F_i(z_j)]|: value agreement up to an F_q^x scalar; the
    // achieved sign is reported, not asserted.
    Valuation best;
    best.num = -Laurent::kInfExp;
    best.den = F.q() - 1;
    int sign = 0;
    for (auto c : F.subfield_fq()) {
        if (c == 0) continue;
        Valuation v = (fit.c_m1 - detC.scaled(c)).val();
        if (v.infinite || v.num > best.num) {
            best = v;
            sign = static_cast<int>(c);
            if (v.infinite) break;
        }
    }
    Valuation rel = best;
    if (!rel.infinite) rel.num = rel_num(best, detC.lead());
    chk.abs_ge(rel, T / 2);
    rec.witnesses["sign"] = sign;
    rec.witnesses["residueLead"] = fit.c_m1.lead();
    rec.witnesses["detCycleLead"] = detC.lead();
}

void family_fit(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk,
                const TatePoly& target, const std::string& targetName) {
    const long T = cfg.toleranceExponent;
    const long D = cfg.tDegree;
    const int N = cfg.latticeDegree;
    std::vector<Laurent> us;
    std::vector<TatePoly> dets;
    std::vector<long> errs;
    ojson points = ojson::array();
    for (int s : cfg.sVector) {
        OmegaPoint z = family_point(F, cfg, s);
        XiMatrix X = xi_matrix(z, N, D);
        Laurent u = u_param(z, depth_for(z, N));
        us.push_back(u);
        dets.push_back(X.det);
        errs.push_back(X.det_err_lead);
        points.push_back({{"s", s}, {"uLead", u.lead()}, {"detGaussLead", X.det.gauss_lead()},
                          {"detErrorLead", X.det_err_lead}});
    }
    UCoeffFit fit = u_coefficient_fit(us, dets, errs);
    chk.flag(fit.cuspidal);
    chk.flag(fit.monotone);
    Valuation rel = (fit.c1 - target).gauss_val();
    if (!rel.infinite) rel.num = rel_num(rel, target.gauss_lead());
    chk.abs_ge(rel, T / 2);
    // certified error of the extracted coefficient, relative to its size
    Valuation cert;
    cert.num = fit.err_lead - fit.c1.gauss_lead();
    cert.den = F.q() - 1;
    chk.abs_ge(cert, T / 2);
    rec.witnesses["points"] = points;
    rec.witnesses["target"] = targetName;
    rec.witnesses["coefficientGaussLead"] = fit.c1.gauss_lead();
    rec.witnesses["coefficientErrorLead"] = fit.err_lead;
}

void suite_u_coeff_rank2(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    TatePoly target = pellarin_L(F, F.q(), std::max(cfg.latticeDegree, 8), cfg.tDegree)
                          .scaled(carlitz_period(F));
    family_fit(cfg, F, rec, chk, target, "pi*L(chi_t,q)");
}

void suite_u_coeff_rank3(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    OmegaPoint z0 = family_point(F, cfg, cfg.sVector.front());
    XiMatrix X0 = xi_matrix(z0, cfg.latticeDegree, cfg.tDegree);
    TatePoly target = (-X0.det_tilde.tau(1)).scaled(carlitz_period(F));
    family_fit(cfg, F, rec, chk, target, "-pi*tau(detXiTilde)");
}

void suite_low_weight(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    OmegaPoint z = base_point(F, cfg);
    std::vector<long> lo, hi;
    for (int k = 1; k <= cfg.r; ++k) lo.push_back(k);
    hi = lo;
    hi.back() += 1;
    VanishReport a = vanishing_det(z, lo, cfg.latticeDegree, cfg.tDegree);
    chk.push(a.det.is_zero() ? Valuation{0, F.q() - 1, true, false} : a.det.gauss_val());
    chk.flag(a.verdict == Verdict::vanishes);
    VanishReport b = vanishing_det(z, hi, cfg.latticeDegree, cfg.tDegree);
    chk.push(b.det.is_zero() ? Valuation{0, F.q() - 1, true, false} : b.det.gauss_val());
    chk.flag(b.verdict == Verdict::nonzero);
    rec.witnesses["lowWeights"] = lo;
    rec.witnesses["highWeights"] = hi;
    rec.witnesses["lowTolLead"] = a.tol_lead;
    rec.witnesses["highNonzeroLead"] = b.nonzero_lead;
}

// Three distinct shallow canonical points for the weight-0 invariant: the
// leading multiplier xi^{r-1} of the top coordinate is replaced by variants
// outside the F_q-span of the lower multipliers (deep family points are out of
// reach: det Psi needs Delta, see exp_depth).
OmegaPoint variant_point(const Field& F, const RunConfig& cfg, int which) {
    OmegaPoint z = exp_base_point(F, cfg);
    Field::Elem c0 = F.pow(F.gen(), cfg.r - 1);
    Field::Elem c = c0;
    if (which == 1) {
        c = F.add(c0, F.one());
    } else if (which == 2) {
        if (F.q() > 2)
            c = F.add(c0, F.from_int(2));
        else if (cfg.r >= 3)
            c = F.add(c0, F.gen());
        else
            c = F.mul(F.gen(), F.gen());  // q = 2, r = 2 (m >= 3 at desk scale)
    }
    z.z[0] = z.z[0].scaled(F.mul(c, F.inv(c0)));
    return z;
}

void suite_one_dim(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    std::vector<TatePoly> prods;
    ojson points = ojson::array();
    for (int i = 0; i < 3; ++i) {
        OmegaPoint z = variant_point(F, cfg, i);
        XiMatrix X = xi_matrix(z, cfg.latticeDegree, cfg.tDegree);
        DrinfeldData d = exp_data(z, cfg);
        PsiPhiPair pair = build_phi_psi(build_agf(d, z, cfg.tDegree));
        prods.push_back(X.det * tate_det(pair.psi));
        points.push_back({{"variant", i}, {"productGaussLead", prods.back().gauss_lead()}});
    }
    for (std::size_t i = 1; i < prods.size(); ++i) {
        Valuation rel = (prods[i] - prods[0]).gauss_val();
        if (!rel.infinite) rel.num = rel_num(rel, prods[0].gauss_lead());
        chk.abs_ge(rel, T / 2);
    }
    rec.witnesses["points"] = points;
}

void suite_cusp_order(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long q1 = F.q() - 1;
    std::vector<long> dlead, ulead;
    // Two shallow points a lambda-step apart; deeper family points push
    // Delta below the certified tail.
    for (std::size_t i = 0; i < 2; ++i) {
        OmegaPoint z = exp_base_point(F, cfg);
        if (i == 1) z.z[0] = z.z[0] * Laurent::lambda(F);
        DrinfeldData d = exp_data(z, cfg);
        if (d.delta.is_zero())
            throw precision_error("Delta vanished below working precision at this depth");
        dlead.push_back(d.delta.lead());
        ulead.push_back(u_param(z, depth_for(z, cfg.latticeDegree)).lead());
    }
    long lhs = dlead[1] - dlead[0];
    long rhs = q1 * (ulead[1] - ulead[0]);
    chk.flag(lhs == rhs, std::abs(lhs - rhs), q1);
    rec.witnesses["deltaLeads"] = dlead;
    rec.witnesses["uLeads"] = ulead;
}

void suite_single_cuspidal(const RunConfig& cfg, const Field& F, SuiteRecord& rec, Checks& chk) {
    const long T = cfg.toleranceExponent;
    const long D = cfg.tDegree;
    const int N = cfg.latticeDegree;
    const long w = 1 + 2 * (F.q() - 1);
    std::vector<Laurent> us;
    std::vector<TatePoly> dets;
    std::vector<long> errs;
    ojson points = ojson::array();
    for (int s : cfg.sVector) {
        OmegaPoint z = family_point(F, cfg, s);
        EisVector e1 = eisenstein_vec(z, 1, N, D);
        EisVector ew = eisenstein_vec(z, w, N, D);
        long er1 = 0, erw = 0;
        TatePoly r1 = eps_r_resummed(z, 1, depth_for(z, N), D, &er1);
        TatePoly rw = eps_r_resummed(z, w, depth_for(z, N), D, &erw);
        TateMatrix m = {{r1, rw}, {e1.eps[1], ew.eps[1]}};
        std::vector<std::vector<long>> err = {{er1, erw}, {e1.err_lead[1], ew.err_lead[1]}};
        us.push_back(u_param(z, depth_for(z, N)));
        dets.push_back(tate_det(m));
        errs.push_back(det_error_lead(m, err));
        points.push_back({{"s", s}, {"detGaussLead", dets.back().gauss_lead()}});
    }
    UCoeffFit fit = u_coefficient_fit(us, dets, errs);
    chk.flag(fit.cuspidal);  // u-order exactly 1 across the family
    chk.flag(!fit.c1.is_zero());
    Valuation cert;
    cert.num = fit.err_lead - fit.c1.gauss_lead();
    cert.den = F.q() - 1;
    chk.abs_ge(cert, T / 2);
    rec.witnesses["weight"] = w;
    rec.witnesses["points"] = points;
}

using SuiteFn = void (*)(const RunConfig&, const Field&, SuiteRecord&, Checks&);

struct SuiteInfo {
    const char* name;
    SuiteFn fn;
    int min_r;        // minimal rank
    int need_s;       // required sVector entries
    bool only_q2r3;   // restricted to (q, r) = (2, 3)
    bool rank2_only;
};

const SuiteInfo kSuites[] = {
    {"at-omega", suite_at_omega, 1, 1, false, false},
    {"difference-eq", suite_difference_eq, 1, 1, false, false},
    {"twisted-det", suite_twisted_det, 1, 1, false, false},
    {"eigen-property", suite_eigen_property, 1, 1, false, false},
    {"modularity", suite_modularity, 2, 1, false, false},
    {"nonvanishing", suite_nonvanishing, 2, 1, false, false},
    {"residue-cycle", suite_residue_cycle, 2, 1, false, false},
    {"u-coefficient-rank2", suite_u_coeff_rank2, 2, 2, false, true},
    {"u-coefficient-rank3", suite_u_coeff_rank3, 3, 2, false, false},
    {"low-weight-vanishing", suite_low_weight, 3, 1, true, false},
    {"one-dimensionality", suite_one_dim, 2, 3, false, false},
    {"cusp-order", suite_cusp_order, 2, 1, false, true},
    {"single-cuspidal", suite_single_cuspidal, 2, 2, false, true},
};

const SuiteInfo* find_suite(const std::string& name) {
    for (const auto& s : kSuites)
        if (name == s.name) return &s;
    return nullptr;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string residual_str(const ojson& v) {
    if (v.contains("infinite")) return "inf";
    std::ostringstream os;
    os << v["num"].get<long>() << "/" << v["den"].get<long>();
    if (v.contains("lowerBound")) os << "+";
    return os.str();
}

}  // namespace

ojson config_to_json(const RunConfig& cfg) {
    ojson j;
    j["q"] = cfg.q;
    j["m"] = cfg.m;
    j["r"] = cfg.r;
    j["precisionDigits"] = cfg.precisionDigits;
    j["tDegree"] = cfg.tDegree;
    j["latticeDegree"] = cfg.latticeDegree;
    j["expTerms"] = cfg.expTerms;
    j["sVector"] = cfg.sVector;
    j["seed"] = cfg.seed;
    j["suites"] = cfg.suites;
    j["outputPath"] = cfg.outputPath;
    j["toleranceExponent"] = cfg.toleranceExponent;
    j["timings"] = cfg.timings;
    return j;
}

RunConfig config_from_json(const ojson& j) {
    RunConfig cfg;
    try {
        if (j.contains("q")) cfg.q = j["q"].get<int>();
        if (j.contains("m")) cfg.m = j["m"].get<int>();
        if (j.contains("r")) cfg.r = j["r"].get<int>();
        if (j.contains("precisionDigits")) cfg.precisionDigits = j["precisionDigits"].get<int>();
        if (j.contains("tDegree")) cfg.tDegree = j["tDegree"].get<long>();
        if (j.contains("latticeDegree")) cfg.latticeDegree = j["latticeDegree"].get<int>();
        if (j.contains("expTerms")) cfg.expTerms = j["expTerms"].get<int>();
        if (j.contains("sVector")) cfg.sVector = j["sVector"].get<std::vector<int>>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("suites")) cfg.suites = j["suites"].get<std::vector<std::string>>();
        if (j.contains("outputPath")) cfg.outputPath = j["outputPath"].get<std::string>();
        if (j.contains("toleranceExponent")) cfg.toleranceExponent = j["toleranceExponent"].get<long>();
        if (j.contains("timings")) cfg.timings = j["timings"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("bad config: ") + e.what());
    }
    return cfg;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : kSuites) v.push_back(s.name);
        return v;
    }();
    return names;
}

std::vector<std::string> default_suites(const RunConfig& cfg) {
    std::vector<std::string> v = {"at-omega", "difference-eq", "twisted-det", "eigen-property"};
    if (cfg.r >= 2) {
        v.push_back("nonvanishing");
        v.push_back("residue-cycle");
    }
    return v;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.q < 2 || cfg.m < 1 || cfg.r < 1 || cfg.precisionDigits < 4 || cfg.tDegree < 1 ||
        cfg.latticeDegree < 0 || cfg.expTerms < 1 || cfg.toleranceExponent < 1)
        throw usage_error("all config parameters must be positive");
    factor_prime_power(cfg.q);
    if (cfg.m < cfg.r) throw usage_error("config requires m >= r");
    if (cfg.expTerms < cfg.r) throw usage_error("expTerms must be >= r");
    if (cfg.sVector.empty()) throw usage_error("sVector must be nonempty");
    for (std::size_t i = 0; i < cfg.sVector.size(); ++i) {
        int lo = cfg.r >= 3 ? cfg.r - 1 : 1;
        if (cfg.sVector[i] < lo) throw usage_error("sVector entries too small for this rank");
        if (i > 0 && cfg.sVector[i] <= cfg.sVector[i - 1])
            throw usage_error("sVector must be strictly increasing");
    }
    if (cfg.suites.empty()) throw usage_error("suite list must be nonempty");
    for (const auto& name : cfg.suites) {
        const SuiteInfo* s = find_suite(name);
        if (!s) throw usage_error("unknown suite: " + name);
        if (cfg.r < s->min_r) throw usage_error("suite " + name + " requires rank >= " +
                                                std::to_string(s->min_r));
        if (s->rank2_only && cfg.r != 2) throw usage_error("suite " + name + " requires r = 2");
        if (s->only_q2r3 && (cfg.q != 2 || cfg.r != 3))
            throw usage_error("suite " + name + " requires (q, r) = (2, 3)");
        if (static_cast<int>(cfg.sVector.size()) < s->need_s)
            throw usage_error("suite " + name + " needs " + std::to_string(s->need_s) +
                              " sVector entries");
    }
}

SuiteRecord run_suite(const RunConfig& cfg, const std::string& name) {
    const SuiteInfo* info = find_suite(name);
    if (!info) throw usage_error("unknown suite: " + name);
    SuiteRecord rec;
    rec.suiteName = name;
    rec.params = {{"q", cfg.q},
                  {"m", cfg.m},
                  {"r", cfg.r},
                  {"precisionDigits", cfg.precisionDigits},
                  {"tDegree", cfg.tDegree},
                  {"latticeDegree", cfg.latticeDegree},
                  {"expTerms", cfg.expTerms},
                  {"sVector", cfg.sVector},
                  {"seed", cfg.seed},
                  {"toleranceExponent", cfg.toleranceExponent}};
    rec.witnesses = ojson::object();
    Checks chk;
    chk.residuals = &rec.residualNorms;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Field F = make_field(cfg);
        info->fn(cfg, F, rec, chk);
        rec.verdict = chk.all_pass ? (chk.indeterminate ? "indeterminate" : "pass") : "fail";
    } catch (const precision_error& e) {
        rec.verdict = "indeterminate";
        rec.witnesses["error"] = e.what();
    } catch (const std::exception& e) {
        rec.verdict = "fail";
        rec.witnesses["error"] = e.what();
    }
    if (cfg.timings) {
        auto t1 = std::chrono::steady_clock::now();
        rec.wallTimeMs =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    return rec;
}

VerificationReport run_all(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.suites.empty()) c.suites = default_suites(c);
    validate_config(c);
    VerificationReport rep;
    rep.config = c;
    for (const auto& name : c.suites) rep.suites.push_back(run_suite(c, name));
    return rep;
}

ojson report_to_json(const VerificationReport& rep) {
    ojson j;
    j["schemaVersion"] = rep.schemaVersion;
    j["config"] = config_to_json(rep.config);
    j["suites"] = ojson::array();
    for (const auto& s : rep.suites) {
        ojson r;
        r["suiteName"] = s.suiteName;
        r["params"] = s.params;
        r["residualNorms"] = s.residualNorms;
        r["verdict"] = s.verdict;
        r["witnesses"] = s.witnesses;
        r["wallTimeMs"] = s.wallTimeMs;
        j["suites"].push_back(r);
    }
    return j;
}

std::string report_to_csv(const VerificationReport& rep) {
    std::ostringstream os;
    os << "suite,paramHash,residualExponent,verdict\n";
    for (const auto& s : rep.suites) {
        std::uint64_t h = fnv1a(s.params.dump());
        char hx[17];
        std::snprintf(hx, sizeof hx, "%016llx", static_cast<unsigned long long>(h));
        for (const auto& v : s.residualNorms)
            os << s.suiteName << "," << hx << "," << residual_str(v) << "," << s.verdict << "\n";
    }
    return os.str();
}

std::vector<std::string> compare_reports(const ojson& got, const ojson& golden) {
    std::vector<std::string> drift;
    const auto& a = got["suites"];
    const auto& b = golden["suites"];
    if (a.size() != b.size()) {
        drift.push_back("suite count differs");
        return drift;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string name = a[i]["suiteName"].get<std::string>();
        if (name != b[i]["suiteName"].get<std::string>()) {
            drift.push_back("suite order differs at index " + std::to_string(i));
            continue;
        }
        if (a[i]["verdict"] != b[i]["verdict"])
            drift.push_back(name + ": verdict " + a[i]["verdict"].get<std::string>() + " vs " +
                            b[i]["verdict"].get<std::string>());
        if (a[i]["residualNorms"] != b[i]["residualNorms"])
            drift.push_back(name + ": residual drift");
    }
    return drift;
}

int exit_code_for(const VerificationReport& rep) {
    bool indet = false;
    for (const auto& s : rep.suites) {
        if (s.verdict == "fail") return 1;
        if (s.verdict != "pass") indet = true;
    }
    return indet ? 3 : 0;
}

}  // namespace drmf
