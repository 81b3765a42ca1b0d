#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "counting.hpp"
#include "matrix.hpp"

namespace leeisd {

struct SdpInstance {
    RingMatrix H;  // (n - k_1) x n
    LeeVector s;   // e H^T
    unsigned t = 0;
    RingSpec ring;
    CodeType profile;

    std::size_t n() const { return H.cols(); }
};

struct PlantedInstance {
    SdpInstance instance;
    LeeVector e_planted;
};

// exact = true asks for weight exactly t (what every decoder returns)
inline bool verify_solution(const SdpInstance& inst, const LeeVector& e, bool exact = false) {
    if (e.size() != inst.n()) throw std::invalid_argument("verify_solution: length mismatch");
    if (e.ring() != inst.ring) throw std::invalid_argument("verify_solution: ring mismatch");
    const unsigned w = e.weight();
    if (exact ? w != inst.t : w > inst.t) return false;
    return syndrome(inst.H, e) == inst.s;
}

inline PlantedInstance plant(std::size_t n, const CodeType& profile, unsigned t, const RingSpec& ring,
                             std::uint64_t seed) {
    if (std::uint64_t(t) > std::uint64_t(n) * ring.M) throw std::invalid_argument("plant: t exceeds n*M");
    CodeType prof = profile;
    prof.n = n;
    PlantedInstance out;
    out.instance.H = random_code(n, prof, ring, seed);
    out.instance.ring = ring;
    out.instance.profile = prof;
    out.instance.t = t;
    out.e_planted = sample_weight_w(n, t, ring, seed ^ 0x9e3779b97f4a7c15ULL);
    out.instance.s = syndrome(out.instance.H, out.e_planted);
    return out;
}

// Free code of dimension k (profile (k, 0, ..., 0)).
inline CodeType free_profile(std::size_t n, std::size_t k, const RingSpec& ring) {
    CodeType c;
    c.n = n;
    c.k_profile.assign(ring.s, 0);
    c.k_profile[0] = k;
    return c;
}

inline nlohmann::json instance_to_json(const SdpInstance& inst, const std::optional<LeeVector>& e = std::nullopt) {
    nlohmann::json j;
    j["p"] = inst.ring.p;
    j["s"] = inst.ring.s;
    j["n"] = inst.n();
    j["t"] = inst.t;
    std::vector<std::vector<residue>> H(inst.H.rows(), std::vector<residue>(inst.H.cols()));
    for (std::size_t r = 0; r < inst.H.rows(); ++r)
        for (std::size_t c = 0; c < inst.H.cols(); ++c) H[r][c] = inst.H(r, c);
    j["H"] = H;
    j["syndrome"] = inst.s.data();
    j["profile"] = inst.profile.k_profile;
    if (e) j["e_planted"] = e->data();
    return j;
}

inline PlantedInstance instance_from_json(const nlohmann::json& j) {
    for (const char* key : {"p", "s", "n", "t", "H", "syndrome"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("instance file: missing field ") + key);
    RingSpec ring = RingSpec::make(j["p"].get<unsigned>(), j["s"].get<unsigned>());
    const std::size_t n = j["n"].get<std::size_t>();
    auto rows = j["H"].get<std::vector<std::vector<long long>>>();
    PlantedInstance out;
    auto& inst = out.instance;
    inst.ring = ring;
    inst.t = j["t"].get<unsigned>();
    inst.H = rows.empty() ? RingMatrix(ring, 0, n) : RingMatrix(ring, rows);
    if (inst.H.cols() != n) throw std::invalid_argument("instance file: H has wrong column count");
    auto syn = j["syndrome"].get<std::vector<long long>>();
    if (syn.size() != inst.H.rows()) throw std::invalid_argument("instance file: syndrome length mismatch");
    std::vector<residue> sv;
    for (auto x : syn) {
        if (x < 0 || x >= (long long)ring.m) throw std::invalid_argument("instance file: residue not canonical");
        sv.push_back(static_cast<residue>(x));
    }
    for (auto& r : rows)
        for (auto x : r)
            if (x < 0 || x >= (long long)ring.m) throw std::invalid_argument("instance file: residue not canonical");
    inst.s = LeeVector(ring, sv);
    inst.profile.n = n;
    if (j.contains("profile")) inst.profile.k_profile = j["profile"].get<std::vector<std::size_t>>();
    else inst.profile = systematic_form(inst.H, 0).profile;
    if (j.contains("e_planted")) {
        auto e = j["e_planted"].get<std::vector<residue>>();
        if (e.size() != n) throw std::invalid_argument("instance file: e_planted length mismatch");
        out.e_planted = LeeVector(ring, e);
    }
    return out;
}

}  // namespace leeisd
