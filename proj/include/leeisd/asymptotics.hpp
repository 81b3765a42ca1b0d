#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ring.hpp"

namespace leeisd {

struct SaddlePoint {
    double rho = 0;
    double f_rho = 1;
    double exponent = 0;  // log_q f(rho) - T log_q rho
};

namespace asym {

// coefficients of the Lee generating polynomial: weight i occurs c_i times in Z/q
inline std::vector<double> lee_poly(const RingSpec& ring) {
    std::vector<double> c(ring.M + 1, 2.0);
    c[0] = 1.0;
    if (ring.m % 2 == 0) c[ring.M] = 1.0;
    return c;
}

inline double poly(const std::vector<double>& c, double x) {
    double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

// x f'(x) / f(x)
inline double delta(const std::vector<double>& c, double x) {
    double num = 0, den = 0, p = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        num += double(i) * c[i] * p;
        den += c[i] * p;
        p *= x;
    }
    return num / den;
}

// Solves delta(rho) = T by bisection; the bracket grows past 1 + M when needed.
inline double solve_delta(const std::vector<double>& c, double T) {
    double lo = 0, hi = 1.0 + double(c.size() - 1);
    while (delta(c, hi) < T) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (delta(c, mid) < T ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// mean Lee weight of a uniform residue; beyond it the ball covers the space
inline double ball_limit(const RingSpec& ring) {
    const double M = ring.M;
    return ring.m % 2 ? M * (M + 1) / (2 * M + 1) : M / 2;
}

}  // namespace asym

inline SaddlePoint sphere_exponent(double T, const RingSpec& ring) {
    if (!(T >= 0) || T >= double(ring.M)) throw std::domain_error("sphere_exponent: need 0 <= T < M");
    if (T == 0) return {0.0, 1.0, 0.0};
    const auto c = asym::lee_poly(ring);
    const double rho = asym::solve_delta(c, T);
    const double f = asym::poly(c, rho);
    const double lq = std::log(double(ring.m));
    return {rho, f, std::log(f) / lq - T * std::log(rho) / lq};
}

// (1/n) log_q of the ball of radius T n; 1 once T reaches the mean weight
inline double ball_exponent(double T, const RingSpec& ring) {
    if (T >= asym::ball_limit(ring)) return 1.0;
    return sphere_exponent(T, ring).exponent;
}

// relative GV rate for relative distance delta = d / (n M)
inline double gv_rate(double delta, const RingSpec& ring) {
    if (!(delta >= 0) || delta * ring.M >= asym::ball_limit(ring))
        throw std::domain_error("gv_rate: delta outside the ball-exponent range");
    return 1.0 - ball_exponent(delta * ring.M, ring);
}

inline double gv_delta(double R, const RingSpec& ring) {
    if (!(R > 0) || !(R < 1)) throw std::domain_error("gv_delta: need 0 < R < 1");
    double lo = 0, hi = asym::ball_limit(ring) / ring.M;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (1.0 - ball_exponent(mid * ring.M, ring) > R ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// How the window L enters the asymptotic formulas.
enum class WindowConvention {
    collision_only,  // L only lowers the collision floor -(R_I + L - R_1); reproduces the tabulated exponents
    printed,         // L also enlarges the list length R_I + L and shortens the redundancy 1 - R_I - L
};

enum class AsymAlgorithm { two_blocks, s_blocks, wagner1, wagner2, rep1, rep2, bjmm };

inline const char* asym_algorithm_name(AsymAlgorithm a) {
    switch (a) {
        case AsymAlgorithm::two_blocks: return "two-blocks";
        case AsymAlgorithm::s_blocks: return "s-blocks";
        case AsymAlgorithm::wagner1: return "wagner1";
        case AsymAlgorithm::wagner2: return "wagner2";
        case AsymAlgorithm::rep1: return "rep1";
        case AsymAlgorithm::rep2: return "rep2";
        case AsymAlgorithm::bjmm: return "bjmm";
    }
    return "?";
}

inline AsymAlgorithm parse_asym_algorithm(const std::string& s) {
    for (auto a : {AsymAlgorithm::two_blocks, AsymAlgorithm::s_blocks, AsymAlgorithm::wagner1, AsymAlgorithm::wagner2,
                   AsymAlgorithm::rep1, AsymAlgorithm::rep2, AsymAlgorithm::bjmm})
        if (s == asym_algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

struct AsymptoticRegime {
    RingSpec ring;
    double R = 0.5;
    double lambda = 1.0;
    WindowConvention window = WindowConvention::collision_only;

    double R1() const { return lambda * R; }
    double RI() const {
        if (ring.s == 1) return R;
        const double s = ring.s;
        return std::min(1.0, lambda * R + (1 - lambda) * R * s / (s - 1));
    }
    // the profile behind R_I exists without clamping
    bool achievable() const {
        if (!(R > 0 && R < 1)) return false;
        if (ring.s == 1) return lambda == 1.0;
        const double s = ring.s;
        return lambda * R + (1 - lambda) * R * s / (s - 1) <= 1.0;
    }
    // decoding radius: half the asymptotic GV distance, as relative Lee weight
    double T() const { return 0.5 * gv_delta(R, ring) * ring.M; }
};

struct ExponentReport {
    double e = std::numeric_limits<double>::infinity();  // q-ary units
    std::map<std::string, double> params;
};

struct AsymBudget {
    int starts = 20;
    double tol = 1e-6;
    int max_iter = 4000;
    std::uint64_t seed = 1;
    double eps_box = 0.3;  // search box for E, E_0, E_1
};

namespace asym {

constexpr double penalty = 1e9;

struct Model {
    RingSpec ring;
    std::vector<double> c;
    double M, blim;

    explicit Model(const RingSpec& r) : ring(r), c(lee_poly(r)), M(r.M), blim(ball_limit(r)) {}

    double sexp(double T) const {
        if (T <= 1e-14) return 0.0;
        if (T >= M) return -penalty;
        const double rho = solve_delta(c, T);
        const double lq = std::log(double(ring.m));
        return std::log(poly(c, rho)) / lq - T * std::log(rho) / lq;
    }
    double S(double R, double V) const {
        if (R <= 1e-15) return V <= 1e-12 ? 0.0 : -penalty;
        if (V < 0) return -penalty;
        return R * sexp(V / R);
    }
    double L(double R, double V) const {
        if (R <= 1e-15) return 0.0;
        if (V / R >= blim) return R;
        return S(R, V);
    }
};

// exponent of #{x in {0..eta}^n : sum x = T n}, log_q per coordinate
inline double composition_exponent(double T, unsigned eta, const RingSpec& ring) {
    if (eta == 0 || T <= 1e-14 || T >= eta) return 0.0;
    std::vector<double> ones(eta + 1, 1.0);
    const double r = solve_delta(ones, T);
    const double lq = std::log(double(ring.m));
    return std::log(poly(ones, r)) / lq - T * std::log(r) / lq;
}

// (1/n) log_q of the representation lower bound on length W with overlap weight E
inline double representation_exponent(double W, double E, const RingSpec& ring) {
    if (W <= 0) return 0.0;
    return W * composition_exponent(E / W, ring.M / 2, ring);
}

struct Problem {
    std::vector<std::pair<double, double>> box;
    std::vector<std::string> names;
    std::function<double(const std::vector<double>&)> f;
};

inline double gsl_thunk(const gsl_vector* v, void* p) {
    auto* prob = static_cast<const Problem*>(p);
    std::vector<double> x(v->size);
    for (std::size_t i = 0; i < v->size; ++i) {
        x[i] = gsl_vector_get(v, i);
        if (x[i] < prob->box[i].first - 1e-12 || x[i] > prob->box[i].second + 1e-12) return penalty;
    }
    return prob->f(x);
}

// multi-start Nelder-Mead over a box; the lower corner is always one of the starts
inline std::pair<double, std::vector<double>> minimize(const Problem& prob, const AsymBudget& b) {
    const std::size_t d = prob.box.size();
    std::mt19937_64 rng(b.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::vector<double>> starts;
    for (int s = 0; s < b.starts; ++s) {
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = prob.box[i].first + (prob.box[i].second - prob.box[i].first) * U(rng);
        starts.push_back(x);
    }
    std::vector<double> lo(d);
    for (std::size_t i = 0; i < d; ++i) lo[i] = prob.box[i].first;
    starts.push_back(lo);

    gsl_set_error_handler_off();
    gsl_multimin_function fn{&gsl_thunk, d, const_cast<Problem*>(&prob)};
    gsl_multimin_fminimizer* mm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
    gsl_vector* x0 = gsl_vector_alloc(d);
    gsl_vector* step = gsl_vector_alloc(d);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> arg(d, 0.0);
    for (const auto& s : starts) {
        for (std::size_t i = 0; i < d; ++i) {
            gsl_vector_set(x0, i, s[i]);
            gsl_vector_set(step, i, std::max(1e-4, 0.1 * (prob.box[i].second - prob.box[i].first)));
        }
        gsl_multimin_fminimizer_set(mm, &fn, x0, step);
        for (int it = 0; it < b.max_iter; ++it) {
            if (gsl_multimin_fminimizer_iterate(mm)) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mm), b.tol * 1e-2) == GSL_SUCCESS) break;
        }
        const double v = mm->fval;
        if (v < best) {
            best = v;
            for (std::size_t i = 0; i < d; ++i) arg[i] = gsl_vector_get(mm->x, i);
        }
    }
    gsl_vector_free(x0);
    gsl_vector_free(step);
    gsl_multimin_fminimizer_free(mm);
    return {best, arg};
}

inline Problem build(AsymAlgorithm alg, const AsymptoticRegime& rg, const Model& m, const AsymBudget& b) {
    const double T = rg.T(), RI = rg.RI(), R1 = rg.R1(), M = m.M;
    const bool printed = rg.window == WindowConvention::printed;
    auto W = [=](double L) { return printed ? RI + L : RI; };  // list length
    auto Red = [=](double L) { return printed ? 1 - RI - L : 1 - RI; };  // redundancy left for the extension
    const double box_e = b.eps_box;
    Problem p;
    switch (alg) {
        case AsymAlgorithm::two_blocks:
            p.box = {{0, T / 2}, {0, 1 - RI}};
            p.names = {"V", "L"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1];
                if (T - 2 * V < 0 || T - 2 * V > M * Red(L)) return penalty;
                const double half = m.S(RI / 2, V);
                const double it = m.S(1, T) - 2 * half - m.S(Red(L), T - 2 * V);
                return it + std::max({half, m.L(RI / 2, V), 2 * half - L - RI + R1});
            };
            break;
        case AsymAlgorithm::s_blocks:
            p.box = {{0, T}, {0, T}};
            p.names = {"V1", "V2"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V1 = x[0], V2 = x[1], R2 = RI - R1;
                if (V1 > M * R1 || V2 > M * R2 || V1 + V2 > T || T - V1 - V2 > (1 - RI) * M) return penalty;
                const double s = m.ring.s;
                // terms j = 2 .. s-1 of the inner max; j = 2 is the empty sum, s = 2 has no terms at all
                double inner = 0.0;
                if (s >= 4) inner = std::max(inner, -R2 / s + m.S(R2, V2));
                return m.S(1, T) - m.S(R2, V2) - m.S(1 - RI, T - V1 - V2) + inner;
            };
            break;
        case AsymAlgorithm::wagner1:
            p.box = {{0, T}, {0, 1 - RI}};
            p.names = {"V", "L"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1];
                if (T - V > M * Red(L) || V > M * W(L)) return penalty;
                const double A = m.S(W(L) / 2, V / 2);
                const double it = m.S(1, T) - m.S(Red(L), T - V) - 2 * A;
                return it + std::max(A, 2 * A - (RI + L - R1));
            };
            break;
        case AsymAlgorithm::wagner2:
            p.box = {{0, T}, {0, 1 - RI}, {0, 1}};
            p.names = {"V", "L", "U"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1], U = x[2];
                if (T - V > M * Red(L) || V > M * W(L) || U > RI + L - R1) return penalty;
                const double A = m.S(W(L) / 4, V / 4);
                const double it = m.S(1, T) - m.S(Red(L), T - V) - 4 * A + U;
                return it + std::max({A, 2 * A - U, 4 * A - (RI + L - R1) - U});
            };
            break;
        case AsymAlgorithm::rep1:
            p.box = {{0, T}, {0, 1 - RI}, {0, box_e}};
            p.names = {"V", "L", "E"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1], E = x[2];
                if (T - V > M * Red(L) || E > W(L) * M - V) return penalty;
                const double it = m.S(1, T) - m.S(W(L), V) - m.S(Red(L), T - V);
                if (V <= 0) return it;
                const double A = m.S(W(L), V / 2 + E);
                return it + std::max(A, 2 * A - (RI + L - R1));
            };
            break;
        case AsymAlgorithm::rep2:
            p.box = {{0, T}, {0, 1 - RI}, {0, box_e}, {0, box_e}};
            p.names = {"V", "L", "E0", "E1"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1], E0 = x[2], E1 = x[3];
                if (V > T || T - V > M * Red(L) || E1 > W(L) * M - V || E0 > W(L) * M - V / 2 - E1) return penalty;
                const double it = m.S(1, T) - m.S(W(L), V) - m.S(Red(L), T - V);
                const double U = std::min(representation_exponent(W(L), E1, m.ring), RI + L - R1);
                const double A0 = m.S(W(L), V / 4 + E0 + E1 / 2), A1 = m.S(W(L), V / 2 + E1);
                return it + std::max({A0, A1 - U, 2 * A0 - U, 2 * A1 - (RI + L - R1) - 2 * U});
            };
            break;
        case AsymAlgorithm::bjmm:
            p.box = {{0, T}, {0, 1 - RI}, {0, box_e}, {0, box_e}};
            p.names = {"V", "L", "E0", "E1"};
            p.f = [=, &m](const std::vector<double>& x) {
                const double V = x[0], L = x[1], E0 = x[2], E1 = x[3];
                if (V > T || T - V > M * Red(L) || E1 > W(L) * M - V || E0 > W(L) * M - V / 2 - E1) return penalty;
                const double it = m.S(1, T) - m.S(W(L), V) - m.S(Red(L), T - V);
                const double U1 = std::min(representation_exponent(W(L), E1, m.ring), RI + L - R1);
                const double U0 = std::min(representation_exponent(W(L), E0, m.ring), U1);
                const double B = m.S(W(L) / 2, V / 8 + E1 / 4 + E0 / 2);
                const double A0 = m.S(W(L), V / 4 + E1 / 2 + E0), A1 = m.S(W(L), V / 2 + E1);
                return it + std::max({B, A0 - U0, 2 * A0 - U1 - U0, A1 - U1, 2 * A1 - (RI + L - R1) - U1});
            };
            break;
    }
    return p;
}

}  // namespace asym

inline ExponentReport exponent(AsymAlgorithm alg, const AsymptoticRegime& rg, const AsymBudget& budget = {}) {
    if (!(rg.R > 0 && rg.R < 1)) throw std::domain_error("exponent: need 0 < R < 1");
    if (!(rg.lambda > 0 && rg.lambda <= 1)) throw std::domain_error("exponent: need 0 < lambda <= 1");
    asym::Model m(rg.ring);
    auto prob = asym::build(alg, rg, m, budget);
    auto [val, arg] = asym::minimize(prob, budget);
    if (val >= asym::penalty / 2) throw std::domain_error("exponent: infeasible constraint set");
    ExponentReport r;
    r.e = std::max(0.0, val);
    for (std::size_t i = 0; i < arg.size(); ++i) r.params[prob.names[i]] = arg[i];
    r.params["T"] = rg.T();
    r.params["R_I"] = rg.RI();
    return r;
}

struct WorstCase {
    double R = 0;
    double e = 0;
};

// argmax_R e(R): grid scan, then golden-section refinement around the best grid point
inline WorstCase worst_case_rate(AsymAlgorithm alg, AsymptoticRegime rg, const AsymBudget& budget = {},
                                 double step = 0.05, double tol = 1e-3) {
    auto eval = [&](double R) {
        rg.R = R;
        if (!rg.achievable()) return -1.0;
        try {
            return exponent(alg, rg, budget).e;
        } catch (const std::domain_error&) {
            return -1.0;
        }
    };
    double bestR = step, beste = -1;
    for (double R = step; R < 1 - 1e-9; R += step) {
        const double e = eval(R);
        if (e > beste) {
            beste = e;
            bestR = R;
        }
    }
    double a = std::max(1e-3, bestR - step), b = std::min(1 - 1e-3, bestR + step);
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval(d);
        }
    }
    WorstCase w;
    for (auto [R, e] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{bestR, beste}})
        if (e > w.e) w = {R, e};
    return w;
}

inline std::vector<std::pair<double, double>> exponent_curve(AsymAlgorithm alg, AsymptoticRegime rg,
                                                             const std::vector<double>& grid,
                                                             const AsymBudget& budget = {}) {
    std::vector<std::pair<double, double>> out;
    for (double R : grid) {
        rg.R = R;
        if (!rg.achievable()) continue;
        try {
            out.emplace_back(R, exponent(alg, rg, budget).e);
        } catch (const std::domain_error&) {
        }
    }
    return out;
}

}  // namespace leeisd
