#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ring.hpp"

namespace leeisd {

class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
        : ring_(ring), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    RingMatrix(RingSpec ring, const std::vector<std::vector<long long>>& rows) : ring_(ring) {
        rows_ = rows.size();
        cols_ = rows.empty() ? 0 : rows[0].size();
        a_.reserve(rows_ * cols_);
        for (auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("matrix: ragged rows");
            for (auto x : r) a_.push_back(ring_.reduce(x));
        }
    }
    static RingMatrix identity(RingSpec ring, std::size_t n) {
        RingMatrix I(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }

    const RingSpec& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    residue& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    residue operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    const residue* row(std::size_t r) const { return a_.data() + r * cols_; }
    residue* row(std::size_t r) { return a_.data() + r * cols_; }

    bool operator==(const RingMatrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RingMatrix& o) const { return !(*this == o); }
    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](residue x) { return x == 0; });
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap_ranges(row(i), row(i) + cols_, row(j));
    }
    void scale_row(std::size_t i, residue c) {
        for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = ring_.mul((*this)(i, k), c);
    }
    // row i -= c * row j
    void sub_row(std::size_t i, std::size_t j, residue c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) = ring_.sub((*this)(i, k), ring_.mul(c, (*this)(j, k)));
    }

    RingMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix: block out of range");
        RingMatrix b(ring_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    RingMatrix transpose() const {
        RingMatrix t(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    // column j of the result is column perm[j] of this
    RingMatrix permute_columns(const std::vector<std::size_t>& perm) const {
        if (perm.size() != cols_) throw std::invalid_argument("matrix: permutation size mismatch");
        RingMatrix b(ring_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(i, perm[j]);
        return b;
    }

private:
    RingSpec ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<residue> a_;
};

inline RingMatrix mat_mul(const RingMatrix& A, const RingMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    if (A.ring() != B.ring()) throw std::invalid_argument("mat_mul: ring mismatch");
    const unsigned m = A.ring().m;
    RingMatrix C(A.ring(), A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < A.cols(); ++k) acc = (acc + std::uint64_t(A(i, k)) * B(k, j)) % m;
            C(i, j) = static_cast<residue>(acc);
        }
    return C;
}

inline RingMatrix transpose(const RingMatrix& A) {
    RingMatrix T(A.ring(), A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

// H x^T for a raw residue vector
inline std::vector<residue> mat_vec(const RingMatrix& H, const std::vector<residue>& x) {
    if (H.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    const unsigned m = H.ring().m;
    std::vector<residue> out(H.rows(), 0);
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::uint64_t acc = 0;
        const residue* r = H.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) acc += std::uint64_t(r[j]) * x[j];
        out[i] = static_cast<residue>(acc % m);
    }
    return out;
}

// e H^T
inline LeeVector syndrome(const RingMatrix& H, const LeeVector& e) {
    if (H.ring() != e.ring()) throw std::invalid_argument("syndrome: ring mismatch");
    return LeeVector(H.ring(), mat_vec(H, e.data()));
}

// Code type (k_1, ..., k_s) of a code of length n.
struct CodeType {
    std::size_t n = 0;
    std::vector<std::size_t> k_profile;

    std::size_t K() const { return std::accumulate(k_profile.begin(), k_profile.end(), std::size_t(0)); }
    std::size_t k1() const { return k_profile.empty() ? 0 : k_profile[0]; }
    // log_q |C| = k_1 + sum_i k_i (s-i+1)/s
    double k() const {
        const double s = static_cast<double>(k_profile.size());
        double r = 0;
        for (std::size_t i = 0; i < k_profile.size(); ++i) r += k_profile[i] * (s - double(i)) / s;
        return r;
    }
    bool operator==(const CodeType& o) const { return n == o.n && k_profile == o.k_profile; }
};

// U H P = H_sys in the block shape with identity blocks p^i Id on the right.
struct SystematicForm {
    RingMatrix U;
    std::vector<std::size_t> perm;  // column j of H_sys is column perm[j] of H
    RingMatrix H_sys;
    CodeType profile;
    // level of each row: 0 for the unit-pivot rows, i for the p^i Id rows
    std::vector<unsigned> row_level;
};

struct ZeroMatrixError : std::domain_error {
    ZeroMatrixError() : std::domain_error("systematic form: matrix has no pivots") {}
};
struct RankDeficientError : std::domain_error {
    RankDeficientError() : std::domain_error("systematic form: rows are not independent over the ring") {}
};
struct ShapeUnreachableError : std::runtime_error {
    ShapeUnreachableError() : std::runtime_error("partial gaussian: requested shape unreachable") {}
};

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

namespace detail {

// Elimination state shared by the full and the partial reduction.
struct Eliminator {
    RingMatrix W;  // working copy of H with permuted columns
    RingMatrix U;
    std::size_t next_row = 0;
    std::vector<char> col_used;
    std::vector<std::size_t> pivot_col;  // per processed row
    std::vector<unsigned> level;

    explicit Eliminator(RingMatrix H)
        : W(std::move(H)), U(RingMatrix::identity(W.ring(), W.rows())), col_used(W.cols(), 0) {}

    // Takes one pivot of valuation lvl (greedy left to right); false if none is left.
    bool pivot(unsigned lvl) {
        const RingSpec& R = W.ring();
        const unsigned pl = R.pow_p(lvl);
        for (std::size_t c = 0; c < W.cols(); ++c) {
            if (col_used[c]) continue;
            for (std::size_t r = next_row; r < W.rows(); ++r) {
                residue a = W(r, c);
                if (a == 0 || R.valuation(a) != lvl) continue;
                W.swap_rows(r, next_row);
                U.swap_rows(r, next_row);
                const residue inv = R.inverse((a / pl) % R.m);
                W.scale_row(next_row, inv);
                U.scale_row(next_row, inv);
                // rows of the same or a later level are divisible by p^lvl in this column
                for (std::size_t o = 0; o < W.rows(); ++o) {
                    if (o == next_row) continue;
                    if (o < next_row && level[o] < lvl) continue;
                    residue b = W(o, c);
                    if (b == 0) continue;
                    residue f = b / pl;
                    W.sub_row(o, next_row, f);
                    U.sub_row(o, next_row, f);
                }
                col_used[c] = 1;
                pivot_col.push_back(c);
                level.push_back(lvl);
                ++next_row;
                return true;
            }
        }
        return false;
    }
};

}  // namespace detail

// Systematic form with a caller-chosen column order (perm) before the greedy pivot search.
inline SystematicForm systematic_form_with(const RingMatrix& H, const std::vector<std::size_t>& perm0) {
    const RingSpec& R = H.ring();
    if (H.is_zero() && H.rows() > 0) throw ZeroMatrixError();
    detail::Eliminator el(H.permute_columns(perm0));
    for (unsigned lvl = 0; lvl < R.s; ++lvl)
        while (el.next_row < H.rows() && el.pivot(lvl)) {
        }
    if (el.next_row < H.rows()) {
        if (el.next_row == 0) throw ZeroMatrixError();
        throw RankDeficientError();
    }
    // columns: free | level s-1 pivots | ... | level 1 pivots | level 0 pivots
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < H.cols(); ++c)
        if (!el.col_used[c]) order.push_back(c);
    const std::size_t k1 = order.size();
    CodeType prof;
    prof.n = H.cols();
    prof.k_profile.assign(R.s, 0);
    prof.k_profile[0] = k1;
    for (unsigned lvl = R.s; lvl-- > 0;) {
        for (std::size_t r = 0; r < el.pivot_col.size(); ++r)
            if (el.level[r] == lvl) order.push_back(el.pivot_col[r]);
        if (lvl > 0) {
            std::size_t cnt = std::count(el.level.begin(), el.level.end(), lvl);
            prof.k_profile[R.s - lvl] = cnt;
        }
    }
    SystematicForm out;
    out.U = std::move(el.U);
    out.H_sys = el.W.permute_columns(order);
    out.perm.resize(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) out.perm[j] = perm0[order[j]];
    out.profile = prof;
    out.row_level = el.level;
    return out;
}

inline SystematicForm systematic_form(const RingMatrix& H, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return systematic_form_with(H, random_permutation(H.cols(), rng));
}

// U H P = [[A, Id_{n-K-l}], [B, 0]]
struct PgeForm {
    RingMatrix A, B, U;
    std::vector<std::size_t> perm;
    std::size_t K = 0;  // n minus the rank of H mod p
};

inline PgeForm partial_gaussian_with(const RingMatrix& H, std::size_t ell, const std::vector<std::size_t>& perm0) {
    const std::size_t n = H.cols();
    detail::Eliminator el(H.permute_columns(perm0));
    while (el.next_row < H.rows() && el.pivot(0)) {
    }
    const std::size_t rank0 = el.next_row;
    const std::size_t K = n - rank0;
    if (ell > n - K) throw std::invalid_argument("partial gaussian: ell exceeds n-K");
    const std::size_t keep = rank0 - ell;
    // keep the first n-K-ell unit pivots; the remaining unit pivot rows join B
    detail::Eliminator el2(H.permute_columns(perm0));
    while (el2.next_row < keep && el2.pivot(0)) {
    }
    if (el2.next_row < keep) throw ShapeUnreachableError();
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < n; ++c)
        if (!el2.col_used[c]) order.push_back(c);
    for (std::size_t r = 0; r < keep; ++r) order.push_back(el2.pivot_col[r]);
    RingMatrix W = el2.W.permute_columns(order);
    PgeForm out;
    out.K = K;
    out.A = W.block(0, 0, keep, K + ell);
    out.B = W.block(keep, 0, H.rows() - keep, K + ell);
    out.U = std::move(el2.U);
    out.perm.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.perm[j] = perm0[order[j]];
    return out;
}

// Retries with fresh permutations; the greedy search cannot fail on a valid H, the cap
// only guards inputs whose shape is unreachable.
inline PgeForm partial_gaussian(const RingMatrix& H, std::size_t ell, std::uint64_t seed, int retries = 100) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < retries; ++attempt) {
        try {
            return partial_gaussian_with(H, ell, random_permutation(H.cols(), rng));
        } catch (const ShapeUnreachableError&) {
        }
    }
    throw ShapeUnreachableError();
}

// Builds H_sys of the requested type with random blocks, hides it behind a random
// invertible U and column permutation.
inline RingMatrix random_code(std::size_t n, const CodeType& profile, const RingSpec& ring, std::uint64_t seed) {
    if (profile.k_profile.size() != ring.s) throw std::invalid_argument("random_code: profile needs s entries");
    const std::size_t K = profile.K();
    if (K > n) throw std::invalid_argument("random_code: K exceeds n");
    const std::size_t k1 = profile.k1();
    const std::size_t rows = n - k1;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<residue> any(0, ring.m - 1);

    RingMatrix S(ring, rows, n);
    // column offsets of the blocks k_1 | k_2 | ... | k_s | n-K
    std::vector<std::size_t> off(ring.s + 2, 0);
    for (unsigned i = 0; i < ring.s; ++i) off[i + 1] = off[i] + profile.k_profile[i];
    off[ring.s + 1] = n;
    std::size_t r = 0;
    for (unsigned lvl = 0; lvl < ring.s; ++lvl) {
        // level lvl rows carry p^lvl Id on block index b (0-based), b = s - lvl for lvl > 0, else the last block
        const std::size_t b = lvl == 0 ? ring.s : ring.s - lvl;
        const std::size_t cnt = off[b + 1] - off[b];
        const residue pl = ring.pow_p(lvl);
        for (std::size_t i = 0; i < cnt; ++i, ++r) {
            for (std::size_t c = 0; c < off[b]; ++c) S(r, c) = ring.mul(pl, any(rng));
            S(r, off[b] + i) = pl;
        }
    }
    // random unit-triangular factors
    RingMatrix L = RingMatrix::identity(ring, rows), Up = RingMatrix::identity(ring, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) {
            if (j < i) L(i, j) = any(rng);
            if (j > i) Up(i, j) = any(rng);
        }
    RingMatrix H = mat_mul(mat_mul(L, Up), S);
    return H.permute_columns(random_permutation(n, rng));
}

}  // namespace leeisd
