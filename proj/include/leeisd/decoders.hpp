#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "counting.hpp"
#include "instance.hpp"
#include "merge.hpp"

namespace leeisd {

struct IterationBudgetExhausted : std::runtime_error {
    explicit IterationBudgetExhausted(std::uint64_t iters)
        : std::runtime_error("decoder: no solution after " + std::to_string(iters) + " iterations") {}
};

struct DecoderOptions {
    bool early_abort = true;        // stop weight checks once the budget is exceeded
    bool intermediate_sums = true;  // reuse partial products while enumerating
};

struct DecodeStats {
    std::uint64_t iterations = 0;
};

struct TwoBlocksParams {
    std::size_t m1 = 0, m2 = 0;  // m1 + m2 = K
    std::size_t z = 0;           // zero window right after the information set
    unsigned v1 = 0, v2 = 0;
};

// Lee-Brickell: the whole information set as one block carrying weight v, no zero window
inline TwoBlocksParams lee_brickell_params(std::size_t K, unsigned v) { return {K, 0, 0, v, 0}; }
// Prange: no weight on the information set
inline TwoBlocksParams prange_params(std::size_t K) { return lee_brickell_params(K, 0); }

struct SBlocksParams {
    unsigned v = 0;
    std::optional<std::vector<unsigned>> fixed_split;  // (v_1, ..., v_s) for the variant
};

struct WagnerParams {
    unsigned a = 1;
    std::size_t ell = 0;
    unsigned v = 0;
    std::vector<std::size_t> u;  // u_1 <= ... <= u_a = K + ell - k_1
};

struct RepTechParams {
    unsigned a = 1;
    std::size_t ell = 0;
    unsigned v = 0;
    std::vector<unsigned> eps;              // eps_0 .. eps_{a-1}
    std::optional<std::vector<std::size_t>> u;  // u_1 .. u_a; default from the representation bound
};

struct BjmmParams {
    std::size_t ell = 0;
    unsigned v = 0;
    unsigned eps0 = 0, eps1 = 0;
    std::optional<std::size_t> u0, u1;  // default from the representation bound
};

// 2 * sum_{sigma=1}^{min(eps, len)} binom(len, sigma) C(eps, sigma, floor(q/4))
inline mpz_class representation_lower_bound(unsigned /*v*/, unsigned eps, std::size_t len, const RingSpec& ring) {
    mpz_class sum = 0;
    const long top = std::min<long>(eps, static_cast<long>(len));
    for (long sigma = 1; sigma <= top; ++sigma)
        sum += binom(static_cast<long>(len), sigma) * count_compositions(eps, sigma, ring.m / 4);
    return 2 * sum;
}

// floor(log_q bound); 0 when the bound is 0
inline std::size_t representation_u(unsigned eps, std::size_t len, const RingSpec& ring) {
    mpz_class b = representation_lower_bound(0, eps, len, ring);
    std::size_t u = 0;
    mpz_class qp = ring.m;
    while (qp <= b) {
        ++u;
        qp *= ring.m;
    }
    return u;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// 50 / p rounded up, capped at 2^24
inline std::uint64_t default_max_iters(double success_probability) {
    const double cap = double(1ULL << 24);
    if (!(success_probability > 0)) return 1ULL << 24;
    return static_cast<std::uint64_t>(std::min(cap, 50.0 * std::ceil(1.0 / std::min(1.0, success_probability))));
}

namespace detail {

inline LeeVector unpermute(const std::vector<residue>& ep, const std::vector<std::size_t>& perm, const RingSpec& R) {
    std::vector<residue> e(ep.size());
    for (std::size_t j = 0; j < ep.size(); ++j) e[perm[j]] = ep[j];
    return LeeVector(R, std::move(e));
}

inline std::vector<residue> rows_times(const RingMatrix& M, const std::vector<std::size_t>& rows, std::size_t c0,
                                       const std::vector<residue>& x) {
    const unsigned m = M.ring().m;
    std::vector<residue> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::uint64_t acc = 0;
        const residue* r = M.row(rows[i]) + c0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += std::uint64_t(r[j]) * x[j];
        out[i] = static_cast<residue>(acc % m);
    }
    return out;
}

// Enumerates weight-w vectors of length len together with the products M[rows, c0:c0+len] x,
// updating the product incrementally when intermediate sums are on.
template <class F>
void enumerate_with_products(std::size_t len, unsigned w, const RingMatrix& M, const std::vector<std::size_t>& rows,
                             std::size_t c0, bool intermediate, F&& visit) {
    const RingSpec& R = M.ring();
    const unsigned Mx = R.M;
    if (std::uint64_t(w) > std::uint64_t(len) * Mx) return;
    std::vector<residue> x(len, 0);
    if (!intermediate) {
        for_each_weight_vector(len, w, R.m, [&](const std::vector<residue>& v) {
            visit(v, rows_times(M, rows, c0, v));
        });
        return;
    }
    std::vector<std::vector<residue>> partial(len + 1, std::vector<residue>(rows.size(), 0));
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == len) {
            if (left == 0) visit(static_cast<const std::vector<residue>&>(x), partial[len]);
            return;
        }
        const std::uint64_t cap = std::uint64_t(len - i - 1) * Mx;
        for (residue a = 0; a < R.m; ++a) {
            unsigned wa = lee_weight(a, R.m);
            if (wa > left || left - wa > cap) continue;
            x[i] = a;
            for (std::size_t r = 0; r < rows.size(); ++r)
                partial[i + 1][r] = R.add(partial[i][r], R.mul(M(rows[r], c0 + i), a));
            rec(i + 1, left - wa);
        }
        x[i] = 0;
    };
    rec(0, w);
}

inline bool weight_equals(const std::vector<residue>& x, unsigned target, unsigned m, bool early_abort) {
    unsigned w = 0;
    for (auto a : x) {
        w += lee_weight(a, m);
        if (early_abort && w > target) return false;
    }
    return w == target;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-blocks

inline LeeVector decode_two_blocks(const SdpInstance& inst, const TwoBlocksParams& prm, std::uint64_t max_iters,
                                   std::uint64_t seed, DecodeStats* stats = nullptr, DecoderOptions opt = {}) {
    const RingSpec& R = inst.ring;
    const std::size_t n = inst.n();
    const unsigned t = inst.t;
    if (prm.v1 + prm.v2 > t) throw std::invalid_argument("two-blocks: v1 + v2 exceeds t");
    if (std::uint64_t(prm.v1) > std::uint64_t(R.M) * prm.m1 || std::uint64_t(prm.v2) > std::uint64_t(R.M) * prm.m2)
        throw std::invalid_argument("two-blocks: block weight exceeds M * m_i");
    for (std::uint64_t it = 0; it < max_iters; ++it) {
        if (stats) stats->iterations = it + 1;
        SystematicForm sf = systematic_form(inst.H, mix_seed(seed, it));
        const std::size_t K = sf.profile.K();
        const std::size_t k1 = sf.profile.k1();
        if (prm.m1 + prm.m2 != K) throw std::invalid_argument("two-blocks: m1 + m2 must equal K");
        if (prm.z > n - K) throw std::invalid_argument("two-blocks: zero window exceeds n - K");
        const RingMatrix& Hs = sf.H_sys;
        const auto Us = mat_vec(sf.U, inst.s.data());
        // key rows: the z window rows and the K - k_1 rows of the p-multiples
        std::vector<std::size_t> key_rows, j_rows;
        for (std::size_t r = 0; r < prm.z; ++r) key_rows.push_back(r);
        for (std::size_t r = n - K; r < n - k1; ++r) key_rows.push_back(r);
        for (std::size_t r = prm.z; r < n - K; ++r) j_rows.push_back(r);
        std::vector<residue> key_target(key_rows.size());
        for (std::size_t i = 0; i < key_rows.size(); ++i) key_target[i] = Us[key_rows[i]];

        // S: e1 A_X^T, sorted by key
        std::vector<std::pair<std::vector<residue>, std::vector<residue>>> S;
        detail::enumerate_with_products(prm.m1, prm.v1, Hs, key_rows, 0, opt.intermediate_sums,
                                        [&](const std::vector<residue>& e1, const std::vector<residue>& key) {
                                            S.emplace_back(key, e1);
                                        });
        std::sort(S.begin(), S.end());
        std::optional<std::vector<residue>> sol;
        std::vector<residue> want(key_rows.size());
        detail::enumerate_with_products(
            prm.m2, prm.v2, Hs, key_rows, prm.m1, opt.intermediate_sums,
            [&](const std::vector<residue>& e2, const std::vector<residue>& prod) {
                if (sol) return;
                for (std::size_t i = 0; i < want.size(); ++i) want[i] = R.sub(key_target[i], prod[i]);
                auto lo = std::lower_bound(S.begin(), S.end(), want,
                                           [](const auto& a, const std::vector<residue>& w) { return a.first < w; });
                for (auto p = lo; p != S.end() && p->first == want; ++p) {
                    std::vector<residue> eI = p->second;
                    eI.insert(eI.end(), e2.begin(), e2.end());
                    auto bI = detail::rows_times(Hs, j_rows, 0, eI);
                    std::vector<residue> eJ(j_rows.size());
                    unsigned wJ = 0;
                    bool over = false;
                    for (std::size_t i = 0; i < j_rows.size(); ++i) {
                        eJ[i] = R.sub(Us[j_rows[i]], bI[i]);
                        wJ += lee_weight(eJ[i], R.m);
                        if (opt.early_abort && wJ > t - prm.v1 - prm.v2) { over = true; break; }
                    }
                    if (over || wJ != t - prm.v1 - prm.v2) continue;
                    std::vector<residue> ep(n, 0);
                    std::copy(eI.begin(), eI.end(), ep.begin());
                    std::copy(eJ.begin(), eJ.end(), ep.begin() + K + prm.z);
                    sol = ep;
                    return;
                }
            });
        if (sol) return detail::unpermute(*sol, sf.perm, R);
    }
    throw IterationBudgetExhausted(max_iters);
}

// ---------------------------------------------------------------------------
// s-blocks

namespace detail {

inline void weak_compositions(unsigned v, unsigned parts, std::vector<unsigned>& cur,
                              std::vector<std::vector<unsigned>>& out) {
    if (parts == 1) {
        cur.push_back(v);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (unsigned a = 0; a <= v; ++a) {
        cur.push_back(a);
        weak_compositions(v - a, parts - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline std::vector<std::vector<unsigned>> weak_compositions(unsigned v, unsigned parts) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    if (parts == 0) {
        if (v == 0) out.push_back({});
        return out;
    }
    detail::weak_compositions(v, parts, cur, out);
    return out;
}

inline LeeVector decode_s_blocks(const SdpInstance& inst, const SBlocksParams& prm, std::uint64_t max_iters,
                                 std::uint64_t seed, DecodeStats* stats = nullptr, DecoderOptions opt = {}) {
    const RingSpec& R = inst.ring;
    const std::size_t n = inst.n();
    const unsigned t = inst.t;
    const unsigned s = R.s;
    if (prm.v > t) throw std::invalid_argument("s-blocks: v exceeds t");
    if (s == 1) {
        // no lifting levels: Lee-Brickell on the information set
        const std::size_t K = n - inst.H.rows();
        if (prm.fixed_split && (prm.fixed_split->size() != 1 || (*prm.fixed_split)[0] != prm.v))
            throw std::invalid_argument("s-blocks: fixed split must have s entries summing to v");
        return decode_two_blocks(inst, TwoBlocksParams{K, 0, 0, prm.v, 0}, max_iters, seed, stats, opt);
    }
    std::vector<std::vector<unsigned>> comps;
    if (prm.fixed_split) {
        if (prm.fixed_split->size() != s) throw std::invalid_argument("s-blocks: fixed split must have s entries");
        unsigned sum = 0;
        for (auto x : *prm.fixed_split) sum += x;
        if (sum != prm.v) throw std::invalid_argument("s-blocks: fixed split must sum to v");
        comps.push_back(*prm.fixed_split);
    } else {
        comps = weak_compositions(prm.v, s);
    }

    for (std::uint64_t it = 0; it < max_iters; ++it) {
        if (stats) stats->iterations = it + 1;
        SystematicForm sf = systematic_form(inst.H, mix_seed(seed, it));
        const RingMatrix& Hs = sf.H_sys;
        const auto& kp = sf.profile.k_profile;
        const std::size_t K = sf.profile.K();
        const auto Us = mat_vec(sf.U, inst.s.data());
        // block b (0-based, b < s) spans columns [off[b], off[b+1]); block s is the redundancy part
        std::vector<std::size_t> off(s + 2, 0);
        for (unsigned b = 0; b < s; ++b) off[b + 1] = off[b] + kp[b];
        off[s + 1] = n;
        // rows whose p^lvl Id sits on block b: level lvl = s - b, in the order of the block's columns
        std::vector<std::size_t> row_off(s + 1, 0);  // first row of each level
        {
            std::size_t r = 0;
            for (unsigned lvl = 0; lvl < s; ++lvl) {
                row_off[lvl] = r;
                while (r < sf.row_level.size() && sf.row_level[r] == lvl) ++r;
            }
            row_off[s] = r;
        }
        std::vector<residue> ep(n, 0);
        std::optional<std::vector<residue>> sol;

        for (const auto& comp : comps) {
            if (sol) break;
            bool feasible = true;
            for (unsigned b = 0; b < s; ++b)
                if (std::uint64_t(comp[b]) > std::uint64_t(kp[b]) * R.M) feasible = false;
            if (!feasible) continue;
            const unsigned rest = t - prm.v;
            std::function<void(unsigned)> lift;
            // fills block b given blocks < b, then recurses
            lift = [&](unsigned b) {
                if (sol) return;
                if (b == s) {
                    // redundancy part from the unit rows
                    unsigned w = 0;
                    for (std::size_t r = 0; r < n - K; ++r) {
                        std::uint64_t acc = 0;
                        const residue* row = Hs.row(r);
                        for (std::size_t c = 0; c < K; ++c) acc += std::uint64_t(row[c]) * ep[c];
                        residue x = R.sub(Us[r], static_cast<residue>(acc % R.m));
                        ep[K + r] = x;
                        w += lee_weight(x, R.m);
                        if (opt.early_abort && w > rest) return;
                    }
                    if (w == rest) sol = ep;
                    return;
                }
                const unsigned lvl = s - b;
                const unsigned pl = R.pow_p(lvl);
                const unsigned mod_low = R.m / pl;  // p^{s-lvl}
                const std::size_t len = kp[b];
                // candidate residues per position: base + p^{s-lvl} y
                std::vector<residue> base(len);
                for (std::size_t i = 0; i < len; ++i) {
                    const std::size_t r = row_off[lvl] + i;
                    std::uint64_t acc = 0;
                    const residue* row = Hs.row(r);
                    for (std::size_t c = 0; c < off[b]; ++c) acc += std::uint64_t(row[c]) * ep[c];
                    residue rhs = R.sub(Us[r], static_cast<residue>(acc % R.m));
                    if (rhs % pl) return;  // no lift satisfies this row
                    base[i] = (rhs / pl) % mod_low;
                }
                const unsigned target = comp[b];
                std::vector<unsigned> min_w(len + 1, 0);
                for (std::size_t i = len; i-- > 0;) {
                    unsigned mw = R.M;
                    for (unsigned y = 0; y < pl; ++y) mw = std::min(mw, lee_weight(base[i] + mod_low * y, R.m));
                    min_w[i] = min_w[i + 1] + mw;
                }
                std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
                    if (sol) return;
                    if (i == len) {
                        if (left == 0) lift(b + 1);
                        return;
                    }
                    for (unsigned y = 0; y < pl; ++y) {
                        residue x = base[i] + mod_low * y;
                        unsigned wx = lee_weight(x, R.m);
                        if (wx > left || min_w[i + 1] > left - wx) continue;
                        if (std::uint64_t(left - wx) > std::uint64_t(len - i - 1) * R.M) continue;
                        ep[off[b] + i] = x;
                        rec(i + 1, left - wx);
                    }
                };
                rec(0, target);
            };
            for_each_weight_vector(kp[0], comp[0], R.m, [&](const std::vector<residue>& e1) {
                if (sol) return;
                std::copy(e1.begin(), e1.end(), ep.begin());
                lift(1);
            });
        }
        if (sol) return detail::unpermute(*sol, sf.perm, R);
    }
    throw IterationBudgetExhausted(max_iters);
}

// ---------------------------------------------------------------------------
// Wagner on a levels

namespace detail {

inline std::vector<residue> zeros(std::size_t n) { return std::vector<residue>(n, 0); }

// Block sizes and base weights with the floor tweak: the remainder goes to the last block.
inline std::vector<std::size_t> split_sizes(std::size_t total, std::size_t parts) {
    std::vector<std::size_t> sz(parts, total / parts);
    sz.back() += total - (total / parts) * parts;
    return sz;
}
inline std::vector<unsigned> split_weights(unsigned total, std::size_t parts) {
    std::vector<unsigned> w(parts, total / static_cast<unsigned>(parts));
    w.back() += total - (total / static_cast<unsigned>(parts)) * static_cast<unsigned>(parts);
    return w;
}

inline std::optional<std::vector<residue>> extend(const PgeForm& pg, const std::vector<residue>& s1,
                                                  const std::vector<residue>& e1, unsigned w, bool early_abort) {
    const RingSpec& R = pg.A.ring();
    auto ax = mat_vec(pg.A, e1);
    std::vector<residue> e2(s1.size());
    unsigned wt = 0;
    for (std::size_t r = 0; r < s1.size(); ++r) {
        e2[r] = R.sub(s1[r], ax[r]);
        wt += lee_weight(e2[r], R.m);
        if (early_abort && wt > w) return std::nullopt;
    }
    if (wt != w) return std::nullopt;
    return e2;
}

inline LeeVector assemble(const PgeForm& pg, const std::vector<residue>& e1, const std::vector<residue>& e2,
                          const RingSpec& R) {
    std::vector<residue> ep = e1;
    ep.insert(ep.end(), e2.begin(), e2.end());
    return unpermute(ep, pg.perm, R);
}

}  // namespace detail

inline LeeVector decode_wagner(const SdpInstance& inst, const WagnerParams& prm, std::uint64_t max_iters,
                               std::uint64_t seed, DecodeStats* stats = nullptr, DecoderOptions opt = {}) {
    const RingSpec& R = inst.ring;
    const unsigned t = inst.t;
    if (prm.a < 1) throw std::invalid_argument("wagner: need a >= 1");
    if (prm.u.size() != prm.a) throw std::invalid_argument("wagner: need u_1..u_a");
    if (!std::is_sorted(prm.u.begin(), prm.u.end())) throw std::invalid_argument("wagner: u must be nondecreasing");
    if (prm.v > t) throw std::invalid_argument("wagner: v exceeds t");
    const std::size_t nlists = std::size_t(1) << prm.a;
    std::vector<std::vector<std::vector<residue>>> base;
    std::vector<std::size_t> sizes, starts;

    for (std::uint64_t it = 0; it < max_iters; ++it) {
        if (stats) stats->iterations = it + 1;
        PgeForm pg = partial_gaussian(inst.H, prm.ell, mix_seed(seed, it));
        const std::size_t KL = pg.A.cols();
        const std::size_t rB = pg.B.rows();
        if (prm.u.back() != rB) throw std::invalid_argument("wagner: u_a must equal K + ell - k_1");
        if (std::uint64_t(prm.v) > std::uint64_t(KL) * R.M) throw std::invalid_argument("wagner: v exceeds M(K+ell)");
        if (base.empty()) {
            sizes = detail::split_sizes(KL, nlists);
            auto wts = detail::split_weights(prm.v, nlists);
            starts.assign(nlists, 0);
            for (std::size_t j = 1; j < nlists; ++j) starts[j] = starts[j - 1] + sizes[j - 1];
            for (std::size_t j = 0; j < nlists; ++j) base.push_back(enumerate_weight_vectors(sizes[j], wts[j], R.m));
        }
        const auto Us = mat_vec(pg.U, inst.s.data());
        std::vector<residue> s1(Us.begin(), Us.begin() + pg.A.rows()), s2(Us.begin() + pg.A.rows(), Us.end());
        std::vector<MergeList> lists;
        for (std::size_t j = 0; j < nlists; ++j) lists.push_back(make_list(base[j], pg.B.block(0, starts[j], rB, sizes[j])));
        for (unsigned i = 1; i <= prm.a; ++i) {
            std::vector<MergeList> next;
            for (std::size_t j = 0; j + 1 < lists.size(); j += 2) {
                const bool last = j + 2 == lists.size();
                next.push_back(merge_concat(lists[j], lists[j + 1], prm.u[i - 1], last ? s2 : detail::zeros(rB), R));
            }
            lists.swap(next);
        }
        for (const auto& e : lists[0].entries) {
            if (auto e2 = detail::extend(pg, s1, e.frag, t - prm.v, opt.early_abort))
                return detail::assemble(pg, e.frag, *e2, R);
        }
    }
    throw IterationBudgetExhausted(max_iters);
}

// ---------------------------------------------------------------------------
// Representation technique on a levels

// v_i = v/2^{a-i} + sum_{b=i}^{a-1} eps_b / 2^{b-i}; nullopt when not integral
inline std::optional<unsigned> rep_level_weight(unsigned v, const std::vector<unsigned>& eps, unsigned a, unsigned i) {
    // scaled by 2^a to stay in integers
    std::uint64_t num = std::uint64_t(v) << i;
    for (unsigned b = i; b < a; ++b) num += std::uint64_t(eps[b]) << (a - b + i);
    const std::uint64_t den = std::uint64_t(1) << a;
    if (num % den) return std::nullopt;
    return static_cast<unsigned>(num / den);
}

inline LeeVector decode_representation(const SdpInstance& inst, const RepTechParams& prm, std::uint64_t max_iters,
                                       std::uint64_t seed, DecodeStats* stats = nullptr, DecoderOptions opt = {}) {
    const RingSpec& R = inst.ring;
    const unsigned t = inst.t;
    const unsigned a = prm.a;
    if (a < 1) throw std::invalid_argument("representation: need a >= 1");
    if (prm.eps.size() != a) throw std::invalid_argument("representation: need eps_0..eps_{a-1}");
    if (prm.v > t) throw std::invalid_argument("representation: v exceeds t");
    std::vector<unsigned> vw(a + 1);
    for (unsigned i = 0; i <= a; ++i) {
        auto w = rep_level_weight(prm.v, prm.eps, a, i);
        if (!w) throw std::invalid_argument("representation: level weight v_" + std::to_string(i) + " not integral");
        vw[i] = *w;
    }
    std::vector<std::vector<residue>> base;
    for (std::uint64_t it = 0; it < max_iters; ++it) {
        if (stats) stats->iterations = it + 1;
        PgeForm pg = partial_gaussian(inst.H, prm.ell, mix_seed(seed, it));
        const std::size_t KL = pg.A.cols();
        const std::size_t rB = pg.B.rows();
        for (unsigned i = 0; i < a; ++i)
            if (std::uint64_t(prm.eps[i]) + vw[i + 1] > std::uint64_t(R.M) * KL)
                throw std::invalid_argument("representation: eps_i exceeds M(K+ell) - v_{i+1}");
        std::vector<std::size_t> u(a);
        if (prm.u) {
            if (prm.u->size() != a) throw std::invalid_argument("representation: need u_1..u_a");
            u = *prm.u;
            if (u.back() != rB) throw std::invalid_argument("representation: u_a must equal K + ell - k_1");
        } else {
            for (unsigned i = 1; i < a; ++i) u[i - 1] = std::min(rB, representation_u(prm.eps[i], KL, R));
            u[a - 1] = rB;
        }
        for (unsigned i = 1; i < a; ++i)
            if (u[i - 1] > u[i]) throw std::invalid_argument("representation: u must be nondecreasing");
        if (base.empty()) base = enumerate_weight_vectors(KL, vw[0], R.m);
        const auto Us = mat_vec(pg.U, inst.s.data());
        std::vector<residue> s1(Us.begin(), Us.begin() + pg.A.rows()), s2(Us.begin() + pg.A.rows(), Us.end());
        MergeList L0 = make_list(base, pg.B);
        std::vector<MergeList> lists(std::size_t(1) << a, L0);
        for (unsigned i = 1; i < a; ++i) {
            std::vector<MergeList> next;
            for (std::size_t j = 0; j + 1 < lists.size(); j += 2) {
                const bool last = j + 2 == lists.size();
                next.push_back(merge(lists[j], lists[j + 1], u[i - 1], vw[i], last ? s2 : detail::zeros(rB), R));
            }
            lists.swap(next);
        }
        auto hit = last_merge(lists[0], lists[1], rB, prm.v, s2, s1, pg.A, t - prm.v);
        if (hit) {
            auto e1 = detail::add_vec(hit->e1, hit->e2, R);
            return detail::assemble(pg, e1, hit->extension, R);
        }
    }
    throw IterationBudgetExhausted(max_iters);
}

// ---------------------------------------------------------------------------
// Lee-BJMM: eight half-length base lists, one concatenation level, one representation
// level and the last merge.

inline LeeVector decode_bjmm(const SdpInstance& inst, const BjmmParams& prm, std::uint64_t max_iters,
                             std::uint64_t seed, DecodeStats* stats = nullptr, DecoderOptions opt = {}) {
    const RingSpec& R = inst.ring;
    const unsigned t = inst.t;
    if (prm.v > t) throw std::invalid_argument("bjmm: v exceeds t");
    // v0 = v/8 + eps1/4 + eps0/2, v1 = 2 v0, v2 = v/2 + eps1
    const std::uint64_t v0n = std::uint64_t(prm.v) + 2ULL * prm.eps1 + 4ULL * prm.eps0;
    if (v0n % 8 || (prm.v + 2ULL * prm.eps1) % 2)
        throw std::invalid_argument("bjmm: level weights v/8 + eps1/4 + eps0/2 and v/2 + eps1 must be integral");
    const unsigned v0 = static_cast<unsigned>(v0n / 8);
    const unsigned v1 = 2 * v0;
    const unsigned v2 = (prm.v + 2 * prm.eps1) / 2;
    std::vector<std::vector<residue>> left, right;
    for (std::uint64_t it = 0; it < max_iters; ++it) {
        if (stats) stats->iterations = it + 1;
        PgeForm pg = partial_gaussian(inst.H, prm.ell, mix_seed(seed, it));
        const std::size_t KL = pg.A.cols();
        const std::size_t rB = pg.B.rows();
        if (std::uint64_t(prm.eps1) + prm.v > std::uint64_t(R.M) * KL ||
            std::uint64_t(prm.eps0) + prm.v / 2 + prm.eps1 > std::uint64_t(R.M) * KL)
            throw std::invalid_argument("bjmm: eps bounds violated");
        const std::size_t u1 = prm.u1 ? *prm.u1 : std::min(rB, representation_u(prm.eps1, KL, R));
        const std::size_t u0 = prm.u0 ? *prm.u0 : std::min(u1, representation_u(prm.eps0, KL, R));
        if (u0 > u1 || u1 > rB) throw std::invalid_argument("bjmm: need u0 <= u1 <= K + ell - k_1");
        const std::size_t h1 = KL / 2, h2 = KL - KL / 2;
        if (left.empty() && right.empty()) {
            left = enumerate_weight_vectors(h1, v0, R.m);
            right = enumerate_weight_vectors(h2, v0, R.m);
        }
        const auto Us = mat_vec(pg.U, inst.s.data());
        std::vector<residue> s1(Us.begin(), Us.begin() + pg.A.rows()), s2(Us.begin() + pg.A.rows(), Us.end());
        const auto zero = detail::zeros(rB);
        MergeList Lh = make_list(left, pg.B.block(0, 0, rB, h1));
        MergeList Rh = make_list(right, pg.B.block(0, h1, rB, h2));
        std::vector<MergeList> l1;
        for (int j = 0; j < 4; ++j) l1.push_back(merge_concat(Lh, Rh, u0, j == 3 ? s2 : zero, R));
        MergeList a = merge(l1[0], l1[1], u1, v2, zero, R);
        MergeList b = merge(l1[2], l1[3], u1, v2, s2, R);
        (void)v1;
        auto hit = last_merge(a, b, rB, prm.v, s2, s1, pg.A, t - prm.v);
        if (hit) {
            auto e1 = detail::add_vec(hit->e1, hit->e2, R);
            return detail::assemble(pg, e1, hit->extension, R);
        }
        (void)opt;
    }
    throw IterationBudgetExhausted(max_iters);
}

// Runs independent batches of a decoder on `jobs` threads with derived seeds; the first
// verified solution wins, so the result may differ between runs.
template <class Decode>
LeeVector decode_parallel(const SdpInstance& inst, Decode&& decode, std::uint64_t max_iters, std::uint64_t seed,
                          unsigned jobs) {
    if (jobs <= 1) return decode(max_iters, seed);
    std::atomic<bool> done{false};
    std::optional<LeeVector> result;
    std::mutex mu;
    std::vector<std::thread> pool;
    const std::uint64_t batch = 64;
    std::atomic<std::uint64_t> next{0};
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
            while (!done) {
                std::uint64_t b = next.fetch_add(1);
                if (b * batch >= max_iters) return;
                try {
                    LeeVector e = decode(std::min(batch, max_iters - b * batch), mix_seed(seed, b));
                    if (verify_solution(inst, e, true)) {
                        std::lock_guard<std::mutex> lock(mu);
                        if (!result) result = e;
                        done = true;
                    }
                } catch (const IterationBudgetExhausted&) {
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (!result) throw IterationBudgetExhausted(max_iters);
    return *result;
}

}  // namespace leeisd
