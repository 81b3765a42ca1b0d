#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "matrix.hpp"

namespace leeisd {

// A fragment of an error vector and its partial syndrome B e^T (all rows of B).
struct MergeEntry {
    std::vector<residue> frag;
    std::vector<residue> key;

    bool operator<(const MergeEntry& o) const { return std::tie(key, frag) < std::tie(o.key, o.frag); }
    bool operator==(const MergeEntry& o) const { return key == o.key && frag == o.frag; }
};

struct MergeList {
    std::vector<MergeEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    void sort() { std::sort(entries.begin(), entries.end()); }
};

inline MergeList make_list(const std::vector<std::vector<residue>>& frags, const RingMatrix& B) {
    MergeList L;
    L.entries.reserve(frags.size());
    for (auto& f : frags) L.entries.push_back({f, mat_vec(B, f)});
    L.sort();
    return L;
}

namespace detail {

// indices of L sorted by the last u key positions
inline std::vector<std::size_t> sort_by_tail(const MergeList& L, std::size_t u) {
    std::vector<std::size_t> idx(L.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto tail_less = [&](std::size_t a, std::size_t b) {
        const auto& ka = L.entries[a].key;
        const auto& kb = L.entries[b].key;
        return std::lexicographical_compare(ka.end() - u, ka.end(), kb.end() - u, kb.end());
    };
    std::stable_sort(idx.begin(), idx.end(), tail_less);
    return idx;
}

// Calls hit(i1, i2) for every pair with key1 == target - key2 on the last u positions.
template <class F>
void for_each_collision(const MergeList& L1, const MergeList& L2, std::size_t u, const std::vector<residue>& target,
                        const RingSpec& R, F&& hit) {
    if (L1.empty() || L2.empty()) return;
    const std::size_t rows = L1.entries[0].key.size();
    if (u > rows) throw std::invalid_argument("merge: u exceeds the syndrome length");
    if (target.size() != rows) throw std::invalid_argument("merge: target length mismatch");
    auto idx = sort_by_tail(L1, u);
    std::vector<residue> want(u);
    for (std::size_t j = 0; j < L2.size(); ++j) {
        const auto& k2 = L2.entries[j].key;
        for (std::size_t i = 0; i < u; ++i) want[i] = R.sub(target[rows - u + i], k2[rows - u + i]);
        auto lo = std::lower_bound(idx.begin(), idx.end(), want, [&](std::size_t a, const std::vector<residue>& w) {
            const auto& ka = L1.entries[a].key;
            return std::lexicographical_compare(ka.end() - u, ka.end(), w.begin(), w.end());
        });
        for (auto it = lo; it != idx.end(); ++it) {
            const auto& ka = L1.entries[*it].key;
            if (!std::equal(ka.end() - u, ka.end(), want.begin())) break;
            if (!hit(*it, j)) return;
        }
    }
}

inline std::vector<residue> add_vec(const std::vector<residue>& a, const std::vector<residue>& b, const RingSpec& R) {
    std::vector<residue> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = R.add(a[i], b[i]);
    return r;
}

}  // namespace detail

// Concatenations (e1, e2) with B1 e1 = s - B2 e2 on the last u positions. Keys of the
// inputs must already be B1 e1 and B2 e2; the output key is their sum.
inline MergeList merge_concat(const MergeList& L1, const MergeList& L2, std::size_t u,
                              const std::vector<residue>& s_target, const RingSpec& R) {
    MergeList out;
    detail::for_each_collision(L1, L2, u, s_target, R, [&](std::size_t i, std::size_t j) {
        MergeEntry e;
        e.frag = L1.entries[i].frag;
        e.frag.insert(e.frag.end(), L2.entries[j].frag.begin(), L2.entries[j].frag.end());
        e.key = detail::add_vec(L1.entries[i].key, L2.entries[j].key, R);
        out.entries.push_back(std::move(e));
        return true;
    });
    out.sort();
    return out;
}

inline MergeList merge_concat(const std::vector<std::vector<residue>>& L1, const std::vector<std::vector<residue>>& L2,
                              std::size_t u, const RingMatrix& B1, const RingMatrix& B2,
                              const std::vector<residue>& s_target) {
    return merge_concat(make_list(L1, B1), make_list(L2, B2), u, s_target, B1.ring());
}

// Sums e1 + e2 of Lee weight v_target with B(e1 + e2) = s on the last u positions.
// Sums reached by several pairs are kept once.
inline MergeList merge(const MergeList& L1, const MergeList& L2, std::size_t u, unsigned v_target,
                       const std::vector<residue>& s_target, const RingSpec& R) {
    MergeList out;
    detail::for_each_collision(L1, L2, u, s_target, R, [&](std::size_t i, std::size_t j) {
        auto sum = detail::add_vec(L1.entries[i].frag, L2.entries[j].frag, R);
        if (lee_weight(sum, R.m) == v_target)
            out.entries.push_back({std::move(sum), detail::add_vec(L1.entries[i].key, L2.entries[j].key, R)});
        return true;
    });
    out.sort();
    out.entries.erase(std::unique(out.entries.begin(), out.entries.end()), out.entries.end());
    return out;
}

inline MergeList merge(const std::vector<std::vector<residue>>& L1, const std::vector<std::vector<residue>>& L2,
                       std::size_t u, unsigned v_target, const RingMatrix& B, const std::vector<residue>& s_target) {
    return merge(make_list(L1, B), make_list(L2, B), u, v_target, s_target, B.ring());
}

struct LastMergeHit {
    std::vector<residue> e1, e2, extension;  // extension = s1 - A (e1 + e2)
};

// First pair (in L2 order, then by L1 tail order) whose sum has weight v and whose
// extension s1 - A(e1+e2) has weight w.
inline std::optional<LastMergeHit> last_merge(const MergeList& L1, const MergeList& L2, std::size_t u, unsigned v,
                                              const std::vector<residue>& s2, const std::vector<residue>& s1,
                                              const RingMatrix& A, unsigned w) {
    const RingSpec& R = A.ring();
    std::optional<LastMergeHit> found;
    detail::for_each_collision(L1, L2, u, s2, R, [&](std::size_t i, std::size_t j) {
        auto sum = detail::add_vec(L1.entries[i].frag, L2.entries[j].frag, R);
        if (lee_weight(sum, R.m) != v) return true;
        auto ax = mat_vec(A, sum);
        std::vector<residue> ext(s1.size());
        unsigned wt = 0;
        for (std::size_t r = 0; r < s1.size(); ++r) {
            ext[r] = R.sub(s1[r], ax[r]);
            wt += lee_weight(ext[r], R.m);
            if (wt > w) return true;  // early abort
        }
        if (wt != w) return true;
        found = LastMergeHit{L1.entries[i].frag, L2.entries[j].frag, std::move(ext)};
        return false;
    });
    return found;
}

inline std::optional<LastMergeHit> last_merge(const std::vector<std::vector<residue>>& L1,
                                              const std::vector<std::vector<residue>>& L2, std::size_t u, unsigned v,
                                              const RingMatrix& B, const std::vector<residue>& s2,
                                              const std::vector<residue>& s1, const RingMatrix& A, unsigned w) {
    return last_merge(make_list(L1, B), make_list(L2, B), u, v, s2, s1, A, w);
}

}  // namespace leeisd
