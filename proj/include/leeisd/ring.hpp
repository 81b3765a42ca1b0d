#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace leeisd {

using residue = std::uint32_t;

// Z/p^s with the constants the cost model needs.
struct RingSpec {
    unsigned p = 2;
    unsigned s = 1;
    unsigned m = 2;  // p^s
    unsigned M = 1;  // floor(m/2), the largest Lee weight of a residue

    static RingSpec make(unsigned p, unsigned s) {
        if (p < 2) throw std::invalid_argument("ring: p must be a prime >= 2");
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("ring: p must be prime");
        if (s < 1) throw std::invalid_argument("ring: s must be >= 1");
        RingSpec r;
        r.p = p;
        r.s = s;
        std::uint64_t m = 1;
        for (unsigned i = 0; i < s; ++i) {
            m *= p;
            if (m > 65536) throw std::invalid_argument("ring: modulus larger than 2^16 not supported");
        }
        r.m = static_cast<unsigned>(m);
        r.M = r.m / 2;
        return r;
    }

    // Splits a prime power; throws for anything else.
    static RingSpec from_modulus(unsigned m) {
        if (m < 2) throw std::invalid_argument("ring: modulus must be >= 2");
        unsigned p = 2;
        while (m % p) ++p;
        unsigned s = 0, x = m;
        while (x % p == 0) { x /= p; ++s; }
        if (x != 1) throw std::invalid_argument("ring: modulus " + std::to_string(m) + " is not a prime power");
        return make(p, s);
    }

    // expected Lee weight of a uniform residue
    double mu() const {
        double q = m;
        return p == 2 ? q / 4.0 : (q * q - 1.0) / (4.0 * q);
    }
    unsigned add_cost() const { return static_cast<unsigned>(std::ceil(std::log2(double(m)))); }
    unsigned mul_cost() const { return add_cost() * add_cost(); }
    // p^i
    unsigned pow_p(unsigned i) const {
        unsigned r = 1;
        for (unsigned j = 0; j < i; ++j) r *= p;
        return r;
    }
    // largest i <= s with p^i | x (s for x = 0)
    unsigned valuation(residue x) const {
        if (x == 0) return s;
        unsigned v = 0;
        while (x % p == 0) { x /= p; ++v; }
        return v;
    }

    residue reduce(long long x) const {
        long long r = x % static_cast<long long>(m);
        return static_cast<residue>(r < 0 ? r + m : r);
    }
    residue add(residue a, residue b) const { return static_cast<residue>((a + b) % m); }
    residue sub(residue a, residue b) const { return static_cast<residue>((a + m - b) % m); }
    residue neg(residue a) const { return a == 0 ? 0 : m - a; }
    residue mul(residue a, residue b) const {
        return static_cast<residue>((std::uint64_t(a) * b) % m);
    }
    bool is_unit(residue a) const { return a % p != 0; }
    residue inverse(residue a) const {
        long long t0 = 0, t1 = 1, r0 = m, r1 = a % m;
        while (r1) {
            long long q = r0 / r1;
            t0 -= q * t1; std::swap(t0, t1);
            r0 -= q * r1; std::swap(r0, r1);
        }
        if (r0 != 1) throw std::domain_error("ring: element is not a unit");
        return reduce(t0);
    }

    bool operator==(const RingSpec& o) const { return p == o.p && s == o.s; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

inline unsigned lee_weight(residue x, unsigned m) {
    x %= m;
    return x <= m - x ? x : m - x;
}
inline unsigned lee_weight(residue x, const RingSpec& r) { return lee_weight(x, r.m); }

inline unsigned lee_weight(const std::vector<residue>& v, unsigned m) {
    unsigned w = 0;
    for (auto x : v) w += lee_weight(x, m);
    return w;
}

// Vector over Z/p^s; entries are canonicalised on construction.
class LeeVector {
public:
    LeeVector() = default;
    LeeVector(RingSpec ring, std::size_t n) : ring_(ring), x_(n, 0) {}
    LeeVector(RingSpec ring, std::vector<residue> x) : ring_(ring), x_(std::move(x)) {
        for (auto& e : x_) e %= ring_.m;
    }
    LeeVector(RingSpec ring, std::initializer_list<long long> xs) : ring_(ring) {
        for (auto e : xs) x_.push_back(ring_.reduce(e));
    }

    const RingSpec& ring() const { return ring_; }
    std::size_t size() const { return x_.size(); }
    residue operator[](std::size_t i) const { return x_[i]; }
    void set(std::size_t i, long long v) { x_[i] = ring_.reduce(v); }
    const std::vector<residue>& data() const { return x_; }

    unsigned weight() const { return lee_weight(x_, ring_.m); }

    LeeVector operator-(const LeeVector& o) const {
        check(o);
        LeeVector r(ring_, x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) r.x_[i] = ring_.sub(x_[i], o.x_[i]);
        return r;
    }
    LeeVector operator+(const LeeVector& o) const {
        check(o);
        LeeVector r(ring_, x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) r.x_[i] = ring_.add(x_[i], o.x_[i]);
        return r;
    }
    bool operator==(const LeeVector& o) const { return ring_ == o.ring_ && x_ == o.x_; }
    bool operator!=(const LeeVector& o) const { return !(*this == o); }

private:
    void check(const LeeVector& o) const {
        if (o.ring_ != ring_) throw std::invalid_argument("lee vector: ring mismatch");
        if (o.x_.size() != x_.size()) throw std::invalid_argument("lee vector: length mismatch");
    }
    RingSpec ring_;
    std::vector<residue> x_;
};

inline unsigned lee_distance(const LeeVector& x, const LeeVector& y) { return (x - y).weight(); }

inline std::ostream& operator<<(std::ostream& os, const LeeVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os << ')';
}

}  // namespace leeisd
