#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace leeisd {

inline mpz_class binom(long n, long k) {
    mpz_class r = 0;
    if (n < 0 || k < 0 || k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline double log2_mpz(const mpz_class& x) {
    if (sgn(x) <= 0) return -std::numeric_limits<double>::infinity();
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log2(d) + static_cast<double>(e);
}

inline mpz_class pow_mpz(unsigned base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Number of compositions of w into sigma parts, each part in [1, eta].
inline mpz_class count_compositions(long w, long sigma, long eta) {
    if (w == 0 && sigma == 0) return 1;
    if (sigma <= 0 || w < sigma || eta <= 0) return 0;
    mpz_class sum = 0;
    long top = std::min(sigma, (w - sigma) / eta);
    for (long j = 0; j <= top; ++j) {
        mpz_class term = binom(sigma, j) * binom(w - j * eta - 1, sigma - 1);
        if (j % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

// f(n, sigma, w, m): vectors of (Z/m)^n with support exactly sigma and Lee weight w.
inline mpz_class surface_fixed_support(long n, long sigma, long w, unsigned m) {
    if (n < 0 || sigma < 0 || w < 0 || sigma > n || sigma > w) {
        return (n >= 0 && sigma == 0 && w == 0) ? mpz_class(1) : mpz_class(0);
    }
    const long M = m / 2;
    if (m % 2) return binom(n, sigma) * (mpz_class(1) << sigma) * count_compositions(w, sigma, M);
    // even m: k of the support entries sit at the unique element of weight M
    mpz_class sum = 0;
    long top = std::min(sigma, (2 * w) / long(m));
    for (long k = 0; k <= top; ++k) {
        sum += binom(n - k, sigma - k) * (mpz_class(1) << (sigma - k)) * binom(n, k) *
               count_compositions(w - k * M, sigma - k, M - 1);
    }
    return sum;
}

inline std::vector<mpz_class> sphere_row(long n, long wmax, unsigned m);

inline mpz_class sphere_size(long n, long w, unsigned m) {
    if (n < 0 || w < 0 || w > n * long(m / 2)) return 0;
    // the double sum for even m gets slow past a few hundred coordinates
    if (m % 2 == 0 && n > 256) return sphere_row(n, w, m)[w];
    mpz_class sum = 0;
    for (long sigma = 0; sigma <= std::min(n, w); ++sigma) sum += surface_fixed_support(n, sigma, w, m);
    return sum;
}

inline mpz_class ball_volume(long n, long w, unsigned m) {
    if (w < 0) return 0;
    if (w >= n * long(m / 2)) return pow_mpz(m, n);
    mpz_class sum = 0;
    for (long i = 0; i <= w; ++i) sum += sphere_size(n, i, m);
    return sum;
}

// F_L(len, 0..wmax) for len = 0..n by the generating-function recursion.
// rows[len][w]; only the columns up to wmax are kept.
inline std::vector<std::vector<mpz_class>> sphere_rows(long n, long wmax, unsigned m) {
    const long M = m / 2;
    std::vector<std::vector<mpz_class>> rows(n + 1, std::vector<mpz_class>(wmax + 1, 0));
    rows[0][0] = 1;
    std::vector<mpz_class> prefix(wmax + 2);
    for (long len = 1; len <= n; ++len) {
        const auto& prev = rows[len - 1];
        prefix[0] = 0;
        for (long w = 0; w <= wmax; ++w) prefix[w + 1] = prefix[w] + prev[w];
        auto& cur = rows[len];
        for (long w = 0; w <= std::min(wmax, len * M); ++w) {
            // prev[w] + 2*sum_{x=1..M} prev[w-x], minus one copy of prev[w-M] when m is even
            cur[w] = 2 * (prefix[w + 1] - prefix[std::max(0L, w - M)]) - prev[w];
            if (m % 2 == 0 && w >= M) cur[w] -= prev[w - M];
        }
    }
    return rows;
}

// F_L(n, 0..wmax) for a single large n, keeping two rows only.
inline std::vector<mpz_class> sphere_row(long n, long wmax, unsigned m) {
    const long M = m / 2;
    std::vector<mpz_class> prev(wmax + 1, 0), cur(wmax + 1, 0), prefix(wmax + 2);
    prev[0] = 1;
    for (long len = 1; len <= n; ++len) {
        prefix[0] = 0;
        for (long w = 0; w <= wmax; ++w) prefix[w + 1] = prefix[w] + prev[w];
        for (long w = 0; w <= wmax; ++w) {
            if (w > len * M) { cur[w] = 0; continue; }
            cur[w] = 2 * (prefix[w + 1] - prefix[std::max(0L, w - M)]) - prev[w];
            if (m % 2 == 0 && w >= M) cur[w] -= prev[w - M];
        }
        std::swap(prev, cur);
    }
    return prev;
}

// log2 F_L and log2 V_L for all lengths up to nmax and all weights; shared per (m, nmax).
class LogCountTable {
public:
    LogCountTable(unsigned m, long nmax) : m_(m), M_(m / 2), nmax_(nmax) {
        const double ninf = -std::numeric_limits<double>::infinity();
        F_.resize(nmax + 1);
        V_.resize(nmax + 1);
        std::vector<mpz_class> prev(1, 1), cur;
        F_[0] = {0.0};
        V_[0] = {0.0};
        for (long len = 1; len <= nmax; ++len) {
            const long W = len * M_;
            cur.assign(W + 1, 0);
            std::vector<mpz_class> prefix(prev.size() + 1);
            prefix[0] = 0;
            for (std::size_t w = 0; w < prev.size(); ++w) prefix[w + 1] = prefix[w] + prev[w];
            auto P = [&](long i) -> const mpz_class& {
                return prefix[std::clamp<long>(i, 0, long(prev.size()))];
            };
            auto at = [&](long i) -> mpz_class {
                return (i >= 0 && i < long(prev.size())) ? prev[i] : mpz_class(0);
            };
            for (long w = 0; w <= W; ++w) {
                cur[w] = 2 * (P(w + 1) - P(w - M_)) - at(w);
                if (m % 2 == 0 && w >= M_) cur[w] -= at(w - M_);
            }
            F_[len].assign(W + 1, ninf);
            V_[len].assign(W + 1, ninf);
            mpz_class acc = 0;
            for (long w = 0; w <= W; ++w) {
                acc += cur[w];
                F_[len][w] = log2_mpz(cur[w]);
                V_[len][w] = log2_mpz(acc);
            }
            prev.swap(cur);
        }
    }

    unsigned modulus() const { return m_; }
    long max_length() const { return nmax_; }

    // log2 F_L(n, w); -inf outside the support
    double log2_sphere(long n, long w) const {
        if (n < 0 || n > nmax_) throw std::out_of_range("log table: length out of range");
        if (w < 0 || w > n * M_) return -std::numeric_limits<double>::infinity();
        return F_[n][w];
    }
    // log2 V_L(n, w); clamps to the whole space for w > nM
    double log2_ball(long n, long w) const {
        if (n < 0 || n > nmax_) throw std::out_of_range("log table: length out of range");
        if (w < 0) return -std::numeric_limits<double>::infinity();
        return V_[n][std::min(w, n * M_)];
    }

    static std::shared_ptr<const LogCountTable> get(unsigned m, long nmax) {
        static std::mutex mu;
        static std::map<std::pair<unsigned, long>, std::shared_ptr<const LogCountTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [key, tab] : cache)
            if (key.first == m && key.second >= nmax) return tab;
        auto tab = std::make_shared<const LogCountTable>(m, nmax);
        cache[{m, nmax}] = tab;
        return tab;
    }

private:
    unsigned m_;
    long M_;
    long nmax_;
    std::vector<std::vector<double>> F_, V_;
};

enum class GvConvention {
    theorem,           // ball V_L(n,d-1), factor 2 on odd q, as the bound is stated
    published_tables,  // sphere F_L(n,d-1), factor 2 on even q; reproduces the n=100 table radii
};

// Largest d for which the GV inequality holds (scan upward from d=1).
inline long gv_distance(long n, long k, const RingSpec& ring, GvConvention conv = GvConvention::theorem) {
    if (k <= 0 || k >= n) throw std::invalid_argument("gv_distance: need 0 < k < n");
    const unsigned q = ring.m;
    const mpz_class qr = pow_mpz(q, n - k);
    // V - 1 < (c*q^{n-k} - 1)/(q-1)  <=>  (V - 1)(q - 1) < c*q^{n-k} - 1
    const bool twice = conv == GvConvention::theorem ? (q % 2 == 1) : (q % 2 == 0);
    const mpz_class rhs = (twice ? 2 * qr : qr) - 1;
    const long wmax = n * long(ring.M);
    auto row = sphere_row(n, wmax, q);
    mpz_class ball = 0;
    long best = 0;
    for (long d = 1; d <= wmax + 1; ++d) {
        const mpz_class& sph = row[d - 1];
        ball += sph;
        const mpz_class& lhs = conv == GvConvention::theorem ? ball : sph;
        if ((lhs - 1) * (q - 1) < rhs) best = d;
        else break;
    }
    return best;
}

inline long gv_radius(long n, long k, const RingSpec& ring, GvConvention conv = GvConvention::theorem) {
    return gv_distance(n, k, ring, conv) / 2;
}

// Visits every vector of length len over Z/m with Lee weight exactly w.
// Order: lexicographic in the residues.
template <class F>
void for_each_weight_vector(std::size_t len, unsigned w, unsigned m, F&& visit) {
    const unsigned M = m / 2;
    if (std::uint64_t(w) > std::uint64_t(len) * M) return;
    std::vector<residue> x(len, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == len) {
            if (left == 0) visit(static_cast<const std::vector<residue>&>(x));
            return;
        }
        const std::uint64_t cap = std::uint64_t(len - i - 1) * M;
        for (residue a = 0; a < m; ++a) {
            unsigned wa = lee_weight(a, m);
            if (wa > left || left - wa > cap) continue;
            x[i] = a;
            rec(i + 1, left - wa);
        }
        x[i] = 0;
    };
    rec(0, w);
}

inline std::vector<std::vector<residue>> enumerate_weight_vectors(std::size_t len, unsigned w, unsigned m) {
    std::vector<std::vector<residue>> out;
    for_each_weight_vector(len, w, m, [&](const std::vector<residue>& x) { out.push_back(x); });
    return out;
}

// Uniform vector of Lee weight exactly w: coordinates drawn sequentially with
// probabilities proportional to the number of completions.
inline LeeVector sample_weight_w(std::size_t n, unsigned w, const RingSpec& ring, std::uint64_t seed) {
    if (std::uint64_t(w) > std::uint64_t(n) * ring.M)
        throw std::invalid_argument("sample_weight_w: weight exceeds n*M");
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(mpz_class(std::to_string(seed)));
    auto rows = sphere_rows(static_cast<long>(n), w, ring.m);
    std::vector<residue> x(n, 0);
    unsigned left = w;
    for (std::size_t i = 0; i < n; ++i) {
        const long rest = static_cast<long>(n - i - 1);
        mpz_class r = rng.get_z_range(rows[rest + 1][left]);
        for (residue a = 0; a < ring.m; ++a) {
            unsigned wa = lee_weight(a, ring.m);
            if (wa > left) continue;
            const mpz_class& c = rows[rest][left - wa];
            if (r < c) {
                x[i] = a;
                left -= wa;
                break;
            }
            r -= c;
        }
    }
    return LeeVector(ring, std::move(x));
}

}  // namespace leeisd
