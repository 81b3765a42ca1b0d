#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "counting.hpp"
#include "decoders.hpp"
#include "ring.hpp"

namespace leeisd {

struct CodeParams {
    RingSpec ring;
    std::size_t n = 0;
    unsigned t = 0;
    std::vector<std::size_t> k_profile;  // (k_1, ..., k_s); missing tail entries are 0

    std::size_t K() const {
        std::size_t K = 0;
        for (auto k : k_profile) K += k;
        return K;
    }
    std::size_t k1() const { return k_profile.empty() ? 0 : k_profile[0]; }
    double k() const {
        const double s = ring.s;
        double r = 0;
        for (std::size_t i = 0; i < k_profile.size(); ++i) r += k_profile[i] * (s - double(i)) / s;
        return r;
    }
    // k_i for i = 1..s+1, padded with zeros, k_{s+1} = n - K
    std::vector<std::size_t> full_profile() const {
        std::vector<std::size_t> ks(ring.s + 1, 0);
        for (std::size_t i = 0; i < k_profile.size() && i < ring.s; ++i) ks[i] = k_profile[i];
        ks[ring.s] = n - K();
        return ks;
    }
    void validate() const {
        if (k_profile.size() > ring.s) throw std::invalid_argument("code params: profile longer than s");
        if (K() > n) throw std::invalid_argument("code params: K exceeds n");
        if (std::uint64_t(t) > std::uint64_t(n) * ring.M) throw std::invalid_argument("code params: t exceeds nM");
    }
};

struct CostReport {
    double log2_cost = std::numeric_limits<double>::infinity();
    double iterations_log2 = std::numeric_limits<double>::infinity();
    double iteration_cost_log2 = std::numeric_limits<double>::infinity();
    std::map<std::string, double> params;

    double success_probability() const { return std::exp2(-iterations_log2); }
    bool finite() const { return std::isfinite(log2_cost); }
};

// How Wagner blocks are sized when 2^a does not divide K + ell or v.
enum class WagnerSplit {
    floor_sizes,  // every block gets floor sizes in the cost; the decoder gives the remainder to the last block
    exact_only,   // reject parameters that do not split evenly
};

// How the representation technique treats the level weights v_i when they are not integers.
enum class RepWeights {
    real_interpolated,  // F_L extended to real weight through the closed formula with real binomials
    integral_only,      // reject non-integral level weights
};

struct CostOptions {
    WagnerSplit wagner_split = WagnerSplit::floor_sizes;
    RepWeights rep_weights = RepWeights::real_interpolated;
};

namespace wf {

constexpr double ninf = -std::numeric_limits<double>::infinity();
constexpr double inf = std::numeric_limits<double>::infinity();

inline double l2add(double a, double b) {
    if (a == ninf) return b;
    if (b == ninf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log2(1.0 + std::exp2(b - a));
}

inline double lg(double x) { return x > 0 ? std::log2(x) : ninf; }

// log2 of (2^L + 1) log2(2^L), the sort-and-search term
inline double sort_term(double L) {
    if (!(L > 0)) return ninf;
    return l2add(L, 0.0) + std::log2(L);
}

// log2 log2 (2^L)!
inline double log2_log2_factorial(double L) {
    if (!(L > 0)) return ninf;
    if (L < 60) {
        long double x = std::exp2l(L);
        long double lf = std::lgammal(x + 1) / std::log(2.0L);
        return lf > 0 ? double(std::log2l(lf)) : ninf;
    }
    // Stirling: log2 x! ~ x (log2 x - log2 e)
    return L + std::log2(L - std::log2(std::exp(1.0)));
}

struct Ctx {
    const CodeParams& cp;
    std::shared_ptr<const LogCountTable> tab;
    double c, cc, lq, mu;

    explicit Ctx(const CodeParams& p)
        : cp(p), tab(LogCountTable::get(p.ring.m, std::max<long>(long(p.n), 1))) {
        c = std::ceil(std::log2(double(p.ring.m)));
        cc = c + c * c;
        lq = std::log2(double(p.ring.m));
        mu = p.ring.mu();
    }
    double F(long n, long w) const { return (n < 0 || w < 0) ? ninf : tab->log2_sphere(n, w); }
    double V(long n, long w) const { return (n < 0 || w < 0) ? ninf : tab->log2_ball(n, w); }
    double gauss(long rows) const {
        return rows > 0 ? lg(cc * double(rows) * double(rows) * double(cp.n + 1)) : ninf;
    }
};

// generalized binomial with integer k and real top
inline long double rbinom(long double x, long k) {
    if (k < 0) return 0;
    long double r = 1;
    for (long i = 0; i < k; ++i) r *= (x - i) / (i + 1);
    return r;
}

inline long double rcompositions(long double w, long sigma, long eta) {
    if (w == 0 && sigma == 0) return 1;
    if (sigma <= 0) return 0;
    long top = eta > 0 ? std::min<long>(sigma, long(std::floor((w - sigma) / eta))) : 0;
    long double s = 0;
    for (long j = 0; j <= top; ++j) s += ((j % 2) ? -1 : 1) * rbinom(sigma, j) * rbinom(w - j * eta - 1, sigma - 1);
    return s;
}

// log2 F_L(n, w, m) for real w through the support-size decomposition
inline double log2_sphere_real(long n, long double w, unsigned m) {
    if (w == std::floor(w)) {
        auto tab = LogCountTable::get(m, std::max<long>(n, 1));
        return tab->log2_sphere(n, long(w));
    }
    if (w < 0 || w > (long double)n * (m / 2)) return ninf;
    long double tot = 0;
    const long top = long(std::min<long double>(n, w));
    for (long sigma = 1; sigma <= top; ++sigma) {
        if (m % 2) {
            tot += rbinom(n, sigma) * std::exp2l(sigma) * rcompositions(w, sigma, m / 2);
        } else {
            const long kmax = std::min<long>(sigma, long(std::floor(2 * w / m)));
            for (long k = 0; k <= kmax; ++k)
                tot += rbinom(n - k, sigma - k) * std::exp2l(sigma - k) * rbinom(n, k) *
                       rcompositions(w - k * (long double)(m / 2), sigma - k, m / 2 - 1);
        }
    }
    return tot > 0 ? double(std::log2l(tot)) : ninf;
}

inline CostReport report(double it, double per, std::map<std::string, double> params) {
    CostReport r;
    if (it == inf || per == ninf || it != it) return r;
    r.iterations_log2 = std::max(0.0, it);  // success probability capped at 1
    r.iteration_cost_log2 = per;
    r.log2_cost = r.iterations_log2 + per;
    r.params = std::move(params);
    return r;
}

inline unsigned ceil_log2(double x) { return x > 1 ? static_cast<unsigned>(std::ceil(std::log2(x))) : 0; }

}  // namespace wf

// ---------------------------------------------------------------------------

inline CostReport cost_two_blocks(const CodeParams& cp, const TwoBlocksParams& prm) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const long m1 = prm.m1, m2 = prm.m2, z = prm.z, v1 = prm.v1, v2 = prm.v2;
    if (m1 + m2 != K) throw std::invalid_argument("two-blocks: m1 + m2 must equal K");
    if (z > n - K) throw std::invalid_argument("two-blocks: z exceeds n - K");
    std::map<std::string, double> P{{"m1", double(m1)}, {"m2", double(m2)}, {"z", double(z)}, {"v1", double(v1)}, {"v2", double(v2)}};
    if (v1 + v2 > t) return {};
    const double F1 = x.F(m1, v1), F2 = x.F(m2, v2), Fr = x.F(n - K - z, t - v1 - v2);
    if (F1 == ninf || F2 == ninf || Fr == ninf) return {};
    const double it = x.F(n, t) - F1 - F2 - Fr;
    const double ge = x.gauss(n - k1);
    const double lists = (K - k1 + z) > 0 ? lg(x.c * double(K - k1 + z)) + l2add(l2add(F2, x.V(m1, v1)), x.V(m2, v2)) : ninf;
    const double ea = std::min((t - v1 - v2 + 1) / x.mu, double(n - K - z)) * double(std::min(v1 + v2, K));
    const double col = ea > 0 ? lg(x.cc) + F1 + F2 - double(z + K - k1) * x.lq + std::log2(ea) : ninf;
    return report(it, l2add(l2add(ge, lists), col), std::move(P));
}

namespace wf {

// log2 C(v_1, ..., v_s): F_L(k_1, v_1) sum_{j=2}^{s+1} f_j prod_{i=2}^{j-1} g_i
inline double sblocks_inner(const Ctx& x, const std::vector<unsigned>& vs, const std::vector<std::size_t>& ks) {
    const unsigned s = x.cp.ring.s;
    const double lp = std::log2(double(x.cp.ring.p));
    const double F1 = x.F(ks[0], vs[0]);
    if (F1 == ninf) return ninf;
    double tot = ninf, prodg = 0.0;
    std::size_t before = ks[0];
    for (unsigned j = 2; j <= s + 1; ++j) {
        const double kj = double(ks[j - 1]);
        const unsigned cj = ceil_log2(std::pow(double(x.cp.ring.p), double(j - 1)));
        const double fj = kj * double(cj + cj * cj) * double(before);
        if (fj > 0 && prodg != ninf) tot = l2add(tot, std::log2(fj) + prodg);
        if (j <= s) {
            const double g = x.F(ks[j - 1], vs[j - 1]) - kj * double(j - 1) * lp;
            prodg = g == ninf ? ninf : prodg + g;
        }
        before += ks[j - 1];
    }
    return tot == ninf ? ninf : F1 + tot;
}

// compositions of v into s parts with v_j <= k_j M (the others have no error pattern)
inline void feasible_compositions(unsigned v, const std::vector<std::size_t>& ks, unsigned M, std::size_t j,
                                  std::vector<unsigned>& cur, const std::function<void(const std::vector<unsigned>&)>& f) {
    const std::size_t s = cur.size();
    if (j + 1 == s) {
        if (std::uint64_t(v) <= std::uint64_t(ks[j]) * M) {
            cur[j] = v;
            f(cur);
        }
        return;
    }
    const unsigned top = static_cast<unsigned>(std::min<std::uint64_t>(v, std::uint64_t(ks[j]) * M));
    for (unsigned a = 0; a <= top; ++a) {
        cur[j] = a;
        feasible_compositions(v - a, ks, M, j + 1, cur, f);
    }
}

}  // namespace wf

inline CostReport cost_s_blocks(const CodeParams& cp, unsigned v) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const unsigned s = cp.ring.s;
    if (long(v) > t) return {};
    const auto ks = cp.full_profile();
    const double N = x.F(n, t) - x.F(K, v) - x.F(n - K, t - long(v));
    if (N == inf || x.F(K, v) == ninf || x.F(n - K, t - long(v)) == ninf) return {};
    const double G = x.gauss(n - k1);
    double S = ninf;
    std::vector<unsigned> cur(s, 0);
    feasible_compositions(v, ks, cp.ring.M, 0, cur, [&](const std::vector<unsigned>& comp) {
        S = l2add(S, sblocks_inner(x, comp, ks));
    });
    // |W_s(v)| = binom(v+s-1, s-1)
    const long double lW = std::lgammal(v + s) - std::lgammal(s) - std::lgammal(v + 1);
    double fac;
    if (N < 60) {
        long double val = std::exp2l(N) - 1 + std::exp(-lW);
        fac = val > 0 ? double(std::log2l(val)) : ninf;
    } else {
        fac = N;
    }
    const double total = l2add(N + G, S == ninf ? ninf : fac + S);
    CostReport r;
    r.iterations_log2 = std::max(0.0, N);
    r.log2_cost = total;
    r.iteration_cost_log2 = total - r.iterations_log2;
    r.params = {{"v", double(v)}};
    return r;
}

inline CostReport cost_s_blocks_variant(const CodeParams& cp, const std::vector<unsigned>& vs) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const unsigned s = cp.ring.s;
    if (vs.size() != s) throw std::invalid_argument("s-blocks variant: need s weights");
    long v = 0;
    for (auto a : vs) v += a;
    if (v > t) return {};
    const auto ks = cp.full_profile();
    double pr = x.F(n - K, t - v);
    for (unsigned i = 0; i < s; ++i) pr += x.F(ks[i], vs[i]);
    if (pr == ninf) return {};
    std::map<std::string, double> P;
    for (unsigned i = 0; i < s; ++i) P["v" + std::to_string(i + 1)] = vs[i];
    return report(x.F(n, t) - pr, l2add(x.gauss(n - k1), sblocks_inner(x, vs, ks)), std::move(P));
}

inline CostReport cost_wagner(const CodeParams& cp, const WagnerParams& prm, CostOptions opt = {}) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const long a = prm.a, l = prm.ell, v = prm.v, KL = K + l;
    if (a < 1 || prm.u.size() != std::size_t(a)) throw std::invalid_argument("wagner: need u_1..u_a");
    if (!std::is_sorted(prm.u.begin(), prm.u.end())) throw std::invalid_argument("wagner: u must be nondecreasing");
    if (long(prm.u.back()) != KL - k1) throw std::invalid_argument("wagner: u_a must equal K + ell - k_1");
    if (l > n - K) throw std::invalid_argument("wagner: ell exceeds n - K");
    std::map<std::string, double> P{{"a", double(a)}, {"ell", double(l)}, {"v", double(v)}};
    for (long i = 0; i < a; ++i) P["u" + std::to_string(i + 1)] = double(prm.u[i]);
    const long A = 1L << a;
    if (opt.wagner_split == WagnerSplit::exact_only && (KL % A || v % A)) return {};
    if (v > t) return {};
    const double L0 = x.F(KL / A, v / A);
    const double Fr = x.F(n - K - l, t - v);
    if (L0 == ninf || Fr == ninf) return {};
    std::vector<double> u(a + 1, 0.0);
    for (long i = 1; i <= a; ++i) u[i] = double(prm.u[i - 1]);
    double it = x.F(n, t) - Fr - double(A) * L0;
    for (long i = 1; i < a; ++i) it += (u[i] - u[i - 1]) * x.lq * std::exp2(double(a - i - 1));
    std::vector<double> L{L0};
    for (long i = 1; i <= a; ++i) L.push_back(2 * L.back() - (u[i] - u[i - 1]) * x.lq);
    double tot = x.gauss(n - K - l);
    for (long i = 1; i <= a; ++i) {
        const double Lp = L[i - 1];
        double term = u[i] > 0 ? lg(2 * u[i] * double(KL) / std::exp2(double(a - i + 1)) * x.cc) + Lp : ninf;
        term = l2add(term, sort_term(Lp));
        tot = l2add(tot, double(a - i) + term);
    }
    const double ea = double(std::min(v, KL)) * std::min(double(n - K - l), (t - v + 1) / x.mu) * x.cc;
    if (ea > 0) tot = l2add(tot, L[a] + std::log2(ea));
    return report(it, tot, std::move(P));
}

namespace wf {

// level weights v_i as reals
inline std::vector<long double> rep_weights(const RepTechParams& prm) {
    std::vector<long double> w(prm.a + 1);
    for (unsigned i = 0; i <= prm.a; ++i) {
        long double x = (long double)prm.v / std::exp2l(prm.a - i);
        for (unsigned b = i; b < prm.a; ++b) x += (long double)prm.eps[b] / std::exp2l(b - i);
        w[i] = x;
    }
    return w;
}

}  // namespace wf

inline CostReport cost_representation(const CodeParams& cp, const RepTechParams& prm, CostOptions opt = {}) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const long a = prm.a, l = prm.ell, v = prm.v, KL = K + l;
    if (a < 1 || prm.eps.size() != std::size_t(a)) throw std::invalid_argument("representation: need eps_0..eps_{a-1}");
    if (l > n - K) throw std::invalid_argument("representation: ell exceeds n - K");
    if (v > t || v > KL * long(cp.ring.M)) return {};
    std::vector<std::size_t> u(a);
    if (prm.u) {
        if (prm.u->size() != std::size_t(a)) throw std::invalid_argument("representation: need u_1..u_a");
        u = *prm.u;
        if (long(u.back()) != KL - k1) throw std::invalid_argument("representation: u_a must equal K + ell - k_1");
    } else {
        for (long i = 1; i < a; ++i) u[i - 1] = std::min<std::size_t>(KL - k1, representation_u(prm.eps[i], KL, cp.ring));
        u[a - 1] = KL - k1;
    }
    for (long i = 1; i < a; ++i)
        if (u[i - 1] > u[i]) return {};
    const auto vw = rep_weights(prm);
    for (long i = 0; i < a; ++i)
        if (prm.eps[i] + vw[i + 1] > (long double)KL * cp.ring.M) return {};
    std::vector<double> L(a + 1);
    for (long i = 0; i < a; ++i) {
        if (vw[i] != std::floor(vw[i]) && opt.rep_weights == RepWeights::integral_only) return {};
        const double F = log2_sphere_real(KL, vw[i], cp.ring.m);
        if (F == ninf) return {};
        L[i] = F - (i == 0 ? 0.0 : double(u[i - 1]) * x.lq);
    }
    const double Fr = x.F(n - K - l, t - v), Fv = x.F(KL, v);
    if (Fr == ninf || Fv == ninf) return {};
    const double it = x.F(n, t) - Fr - Fv;
    std::map<std::string, double> P{{"a", double(a)}, {"ell", double(l)}, {"v", double(v)}};
    for (long i = 0; i < a; ++i) {
        P["eps" + std::to_string(i)] = prm.eps[i];
        P["u" + std::to_string(i + 1)] = double(u[i]);
    }
    double tot = x.gauss(n - K - l);
    auto merge_head = [&](double Lp, double ui) {
        double r = ui > 0 ? lg(2 * ui * double(KL) * x.cc) + Lp : ninf;
        r = l2add(r, log2_log2_factorial(Lp));
        return l2add(r, Lp > 0 ? Lp + std::log2(Lp) : ninf);
    };
    for (long i = 1; i < a; ++i) {
        const double Lp = L[i - 1];
        double term = merge_head(Lp, double(u[i - 1]));
        term = l2add(term, lg(double(KL) * x.c) + 2 * Lp - double(u[i - 1]) * x.lq);
        tot = l2add(tot, double(a - i) + term);
    }
    const double Lp = L[a - 1];
    const double ua = double(u[a - 1]);
    double last = merge_head(Lp, ua);
    const double ea = double(KL) * std::min((t - v + 1) / x.mu, double(n - K - l)) * x.cc;
    if (ea > 0) last = l2add(last, 2 * Lp - ua * x.lq + std::log2(ea));
    tot = l2add(tot, last);
    return report(it, tot, std::move(P));
}

inline CostReport cost_bjmm(const CodeParams& cp, const BjmmParams& prm, CostOptions opt = {}) {
    using namespace wf;
    Ctx x(cp);
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const long l = prm.ell, v = prm.v, KL = K + l;
    if (l > n - K) throw std::invalid_argument("bjmm: ell exceeds n - K");
    if (v > t || v > KL * long(cp.ring.M)) return {};
    if (prm.eps1 + v > KL * long(cp.ring.M)) return {};
    const long double v0 = v / 8.0L + prm.eps1 / 4.0L + prm.eps0 / 2.0L;
    const long double v1 = 2 * v0;
    const long double v2 = v / 2.0L + prm.eps1;
    if (prm.eps0 + v / 2.0L + prm.eps1 > (long double)KL * cp.ring.M) return {};
    if (opt.rep_weights == RepWeights::integral_only && (v0 != std::floor(v0) || v2 != std::floor(v2))) return {};
    const std::size_t ua = KL - k1;
    const std::size_t u1 = prm.u1 ? *prm.u1 : std::min(ua, representation_u(prm.eps1, KL, cp.ring));
    const std::size_t u0 = prm.u0 ? *prm.u0 : std::min(u1, representation_u(prm.eps0, KL, cp.ring));
    if (u0 > u1 || u1 > ua) return {};
    const double L0 = log2_sphere_real(KL / 2, v0, cp.ring.m);
    const double L1 = log2_sphere_real(KL, v1, cp.ring.m) - double(u0) * x.lq;
    const double L2 = log2_sphere_real(KL, v2, cp.ring.m) - double(u1) * x.lq;
    const double Fr = x.F(n - K - l, t - v), Fv = x.F(KL, v);
    if (L0 == ninf || L1 == ninf || L2 == ninf || Fr == ninf || Fv == ninf) return {};
    const double it = x.F(n, t) - Fr - Fv;
    double tot = x.gauss(n - K - l);
    tot = l2add(tot, 3 + L0);
    {
        double c0 = u0 > 0 ? lg(2 * double(u0) * double(KL) / 2 * x.cc) + L0 : ninf;
        c0 = l2add(c0, sort_term(L0));
        tot = l2add(tot, 2 + c0);
    }
    {
        double c1 = u1 > 0 ? lg(2 * double(u1) * double(KL) * x.cc) + L1 : ninf;
        c1 = l2add(c1, log2_log2_factorial(L1));
        c1 = l2add(c1, L1 > 0 ? L1 + std::log2(L1) : ninf);
        c1 = l2add(c1, lg(double(KL) * x.c) + 2 * L1 - double(u1) * x.lq);
        tot = l2add(tot, 1 + c1);
    }
    {
        double c2 = ua > 0 ? lg(2 * double(ua) * double(KL) * x.cc) + L2 : ninf;
        c2 = l2add(c2, log2_log2_factorial(L2));
        c2 = l2add(c2, L2 > 0 ? L2 + std::log2(L2) : ninf);
        const double ea = double(KL) * std::min((t - v + 1) / x.mu, double(n - K - l)) * x.cc;
        if (ea > 0) c2 = l2add(c2, 2 * L2 - double(ua) * x.lq + std::log2(ea));
        tot = l2add(tot, c2);
    }
    return report(it, tot, {{"ell", double(l)}, {"v", double(v)}, {"eps0", double(prm.eps0)}, {"eps1", double(prm.eps1)},
                            {"u0", double(u0)}, {"u1", double(u1)}});
}

// ---------------------------------------------------------------------------

enum class Algorithm { two_blocks, s_blocks, s_blocks_variant, wagner1, wagner2, rep1, bjmm };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::two_blocks: return "two-blocks";
        case Algorithm::s_blocks: return "s-blocks";
        case Algorithm::s_blocks_variant: return "s-blocks-variant";
        case Algorithm::wagner1: return "wagner1";
        case Algorithm::wagner2: return "wagner2";
        case Algorithm::rep1: return "rep1";
        case Algorithm::bjmm: return "bjmm";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
    for (auto a : {Algorithm::two_blocks, Algorithm::s_blocks, Algorithm::s_blocks_variant, Algorithm::wagner1,
                   Algorithm::wagner2, Algorithm::rep1, Algorithm::bjmm})
        if (s == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

// Grids searched by optimize. The defaults are the ones used for the n = 100 tables.
struct SearchBudget {
    bool symmetric_two_blocks = true;  // m1 = floor(K/2), v1 = v2
    unsigned rep_eps_max = 2;          // eps_0 in [0, rep_eps_max] for rep a=1
    unsigned bjmm_eps_max = 4;         // eps_0, eps_1 in [0, bjmm_eps_max]
    std::size_t wagner_ell_min = 0;    // smallest window tried for Wagner
    CostOptions options{};
};

inline CostReport optimize(const CodeParams& cp, Algorithm alg, const SearchBudget& budget = {}) {
    cp.validate();
    const long n = cp.n, t = cp.t, K = cp.K(), k1 = cp.k1();
    const long M = cp.ring.M;
    CostReport best;
    auto take = [&](CostReport r) {
        if (r.log2_cost < best.log2_cost) best = std::move(r);
    };
    switch (alg) {
        case Algorithm::two_blocks: {
            // the window needs at least one redundant position; K = n keeps z = 0
            const long zmax = std::max(0L, n - K - 1);
            const long m1lo = budget.symmetric_two_blocks ? K / 2 : 0;
            const long m1hi = budget.symmetric_two_blocks ? K / 2 : K;
            for (long m1 = m1lo; m1 <= m1hi; ++m1) {
                const long m2 = K - m1;
                for (long v1 = 0; v1 <= std::min(M * m1, t); ++v1) {
                    const long v2lo = budget.symmetric_two_blocks ? v1 : 0;
                    const long v2hi = budget.symmetric_two_blocks ? v1 : std::min(M * m2, t - v1);
                    for (long v2 = v2lo; v2 <= v2hi; ++v2) {
                        if (v1 + v2 > t || v2 > M * m2) continue;
                        for (long z = 0; z <= zmax; ++z)
                            take(cost_two_blocks(cp, TwoBlocksParams{std::size_t(m1), std::size_t(m2), std::size_t(z),
                                                                     unsigned(v1), unsigned(v2)}));
                    }
                }
            }
            break;
        }
        case Algorithm::s_blocks: {
            const long top = std::min<long>(K * ((long(cp.ring.m) - 1) / 2), t);
            for (long v = 0; v <= top; ++v) take(cost_s_blocks(cp, unsigned(v)));
            break;
        }
        case Algorithm::s_blocks_variant: {
            const auto ks = cp.full_profile();
            const unsigned s = cp.ring.s;
            std::vector<unsigned> vs(s, 0);
            std::function<void(unsigned, long)> rec = [&](unsigned j, long left) {
                if (j == s) {
                    take(cost_s_blocks_variant(cp, vs));
                    return;
                }
                for (long a = 0; a <= std::min<long>(long(ks[j]) * M, left); ++a) {
                    vs[j] = unsigned(a);
                    rec(j + 1, left - a);
                }
                vs[j] = 0;
            };
            rec(0, t);
            break;
        }
        case Algorithm::wagner1:
        case Algorithm::wagner2: {
            const unsigned a = alg == Algorithm::wagner1 ? 1 : 2;
            for (long l = std::min<long>(budget.wagner_ell_min, n - K); l <= n - K; ++l) {
                const std::size_t ua = K + l - k1;
                for (long v = 0; v <= std::min(t, (K + l) * M); ++v) {
                    if (a == 1) {
                        take(cost_wagner(cp, WagnerParams{1, std::size_t(l), unsigned(v), {ua}}, budget.options));
                    } else {
                        for (std::size_t u1 = 0; u1 <= ua; ++u1)
                            take(cost_wagner(cp, WagnerParams{2, std::size_t(l), unsigned(v), {u1, ua}}, budget.options));
                    }
                }
            }
            break;
        }
        case Algorithm::rep1: {
            for (long l = 0; l <= n - K; ++l)
                for (long v = 0; v <= std::min(t, (K + l) * M); ++v)
                    for (unsigned e = 0; e <= budget.rep_eps_max; ++e)
                        take(cost_representation(cp, RepTechParams{1, std::size_t(l), unsigned(v), {e}, std::nullopt},
                                                 budget.options));
            break;
        }
        case Algorithm::bjmm: {
            for (long l = 0; l <= n - K; ++l)
                for (long v = 0; v <= std::min(t, (K + l) * M); ++v)
                    for (unsigned e1 = 0; e1 <= budget.bjmm_eps_max; ++e1)
                        for (unsigned e0 = 0; e0 <= budget.bjmm_eps_max; ++e0)
                            take(cost_bjmm(cp, BjmmParams{std::size_t(l), unsigned(v), e0, e1, std::nullopt, std::nullopt},
                                           budget.options));
            break;
        }
    }
    return best;
}

}  // namespace leeisd
