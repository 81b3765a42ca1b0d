#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "instance.hpp"

namespace leeisd {

struct ThreeDMInstance {
    std::vector<std::string> T;                       // symbols b_1..b_t
    std::vector<std::array<std::size_t, 3>> U;        // triples of symbol indices

    std::size_t t() const { return T.size(); }
    std::size_t u() const { return U.size(); }

    void validate() const {
        for (auto& a : U)
            for (auto x : a)
                if (x >= T.size()) throw std::invalid_argument("3dm: triple refers to a symbol outside T");
    }
};

struct NonSolution : std::invalid_argument {
    NonSolution() : std::invalid_argument("vector does not solve the reduced instance") {}
};

// rows of H^T are the triples, column blocks are the three coordinates
inline RingMatrix awsdp_transpose(const ThreeDMInstance& inst, const RingSpec& ring) {
    inst.validate();
    const std::size_t t = inst.t(), u = inst.u();
    RingMatrix Ht(ring, u, 3 * t);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t c = 0; c < 3; ++c) Ht(i, c * t + inst.U[i][c]) = 1;
    return Ht;
}

inline SdpInstance build_awsdp(const ThreeDMInstance& inst, const RingSpec& ring) {
    if (inst.t() == 0 || inst.u() == 0) throw std::invalid_argument("build_awsdp: need t >= 1 and u >= 1");
    const RingMatrix Ht = awsdp_transpose(inst, ring);
    SdpInstance out;
    out.ring = ring;
    out.H = transpose(Ht);
    out.s = LeeVector(ring, std::vector<residue>(3 * inst.t(), 1));
    out.t = static_cast<unsigned>(inst.t());
    out.profile.n = inst.u();
    out.profile.k_profile.assign(ring.s, 0);  // not a code with a meaningful rank profile
    return out;
}

struct GawcpInstance {
    RingMatrix H;  // (3tMu + 3t) x (3tMu + 3t + u)
    unsigned long long w = 0;
};

inline GawcpInstance build_gawcp(const ThreeDMInstance& inst, const RingSpec& ring) {
    if (inst.t() == 0 || inst.u() == 0) throw std::invalid_argument("build_gawcp: need t >= 1 and u >= 1");
    const std::size_t t = inst.t(), u = inst.u(), M = ring.M;
    const std::size_t reps = 3 * t * M;
    const RingMatrix Hbar = awsdp_transpose(inst, ring);
    const std::size_t rows = u + 3 * t + reps * u, cols = 3 * t + reps * u;
    RingMatrix Ht(ring, rows, cols);
    const residue minus1 = ring.m - 1;
    for (std::size_t i = 0; i < u; ++i) {
        for (std::size_t j = 0; j < 3 * t; ++j) Ht(i, j) = Hbar(i, j);
        for (std::size_t r = 0; r < reps; ++r) Ht(i, 3 * t + r * u + i) = 1;
    }
    for (std::size_t j = 0; j < 3 * t; ++j) Ht(u + j, j) = minus1;
    for (std::size_t r = 0; r < reps; ++r)
        for (std::size_t i = 0; i < u; ++i) Ht(u + 3 * t + r * u + i, 3 * t + r * u + i) = minus1;
    GawcpInstance g;
    g.H = transpose(Ht);
    g.w = 3ull * t * t * M * M + 4ull * t * M;
    return g;
}

// c = (x e, x e Hbar^T, x e, ..., x e) for a matching with indicator e and a unit x of weight M
inline LeeVector gawcp_codeword(const ThreeDMInstance& inst, const std::vector<std::size_t>& matching,
                                const RingSpec& ring, std::optional<residue> x = std::nullopt) {
    const residue xv = x ? ring.reduce(*x) : residue(ring.M);
    const std::size_t t = inst.t(), u = inst.u(), reps = 3 * t * ring.M;
    std::vector<residue> cbar(u, 0);
    for (auto i : matching) cbar.at(i) = xv;
    const LeeVector cb(ring, cbar);
    const LeeVector c0 = syndrome(transpose(awsdp_transpose(inst, ring)), cb);
    std::vector<residue> c = cbar;
    c.insert(c.end(), c0.data().begin(), c0.data().end());
    for (std::size_t r = 0; r < reps; ++r) c.insert(c.end(), cbar.begin(), cbar.end());
    return LeeVector(ring, c);
}

// indices into U of the support of e; e must solve build_awsdp(inst, e.ring())
inline std::vector<std::size_t> extract_matching(const LeeVector& e, const ThreeDMInstance& inst) {
    const SdpInstance sdp = build_awsdp(inst, e.ring());
    if (e.size() != inst.u() || !verify_solution(sdp, e)) throw NonSolution();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) idx.push_back(i);
    return idx;
}

inline LeeVector matching_indicator(const ThreeDMInstance& inst, const std::vector<std::size_t>& matching,
                                    const RingSpec& ring) {
    std::vector<residue> e(inst.u(), 0);
    for (auto i : matching) e.at(i) = 1;
    return LeeVector(ring, e);
}

inline bool is_matching(const ThreeDMInstance& inst, const std::vector<std::size_t>& idx) {
    if (idx.size() != inst.t()) return false;
    std::vector<std::array<bool, 3>> used(inst.t(), {false, false, false});
    for (auto i : idx) {
        if (i >= inst.u()) return false;
        for (std::size_t c = 0; c < 3; ++c) {
            if (used[inst.U[i][c]][c]) return false;
            used[inst.U[i][c]][c] = true;
        }
    }
    return true;
}

// first matching in lexicographic order of triple indices
inline std::optional<std::vector<std::size_t>> brute_force_3dm(const ThreeDMInstance& inst) {
    inst.validate();
    const std::size_t t = inst.t(), u = inst.u();
    if (t > 8) throw std::invalid_argument("brute_force_3dm: t > 8");
    std::vector<std::array<bool, 3>> used(t, {false, false, false});
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (pick.size() == t) return true;
        for (std::size_t i = from; i + (t - pick.size()) <= u; ++i) {
            auto& a = inst.U[i];
            if (used[a[0]][0] || used[a[1]][1] || used[a[2]][2]) continue;
            for (std::size_t c = 0; c < 3; ++c) used[a[c]][c] = true;
            pick.push_back(i);
            if (self(self, i + 1)) return true;
            pick.pop_back();
            for (std::size_t c = 0; c < 3; ++c) used[a[c]][c] = false;
        }
        return false;
    };
    if (rec(rec, 0)) return pick;
    return std::nullopt;
}

inline nlohmann::json threedm_to_json(const ThreeDMInstance& inst) {
    nlohmann::json j;
    j["T"] = inst.T;
    j["U"] = nlohmann::json::array();
    for (auto& a : inst.U) j["U"].push_back({a[0], a[1], a[2]});
    return j;
}

inline ThreeDMInstance threedm_from_json(const nlohmann::json& j) {
    if (!j.contains("T") || !j.contains("U")) throw std::invalid_argument("3dm file: need fields T and U");
    ThreeDMInstance inst;
    for (auto& s : j["T"]) inst.T.push_back(s.is_string() ? s.get<std::string>() : s.dump());
    for (auto& a : j["U"]) {
        if (!a.is_array() || a.size() != 3) throw std::invalid_argument("3dm file: triples need 3 entries");
        inst.U.push_back({a[0].get<std::size_t>(), a[1].get<std::size_t>(), a[2].get<std::size_t>()});
    }
    inst.validate();
    return inst;
}

}  // namespace leeisd
