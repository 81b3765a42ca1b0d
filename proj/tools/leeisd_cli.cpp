#include <CLI11.hpp>
#include <json.hpp>

#include <leeisd/leeisd.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace leeisd;
using json = nlohmann::json;

namespace {

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

RingSpec ring_from(unsigned q, unsigned p, unsigned s) {
    if (q) return RingSpec::from_modulus(q);
    if (!p) throw InputError("give either --q or --p/--s");
    return RingSpec::make(p, s ? s : 1);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text << '\n';
}

// plain aligned table, or CSV
void print_table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows, bool csv) {
    if (csv) {
        auto line = [](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
            std::cout << '\n';
        };
        line(head);
        for (auto& r : rows) line(r);
        return;
    }
    std::vector<std::size_t> w(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
    for (auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "  " : "") << std::setw(int(w[i])) << r[i];
        std::cout << '\n';
    };
    line(head);
    for (auto& r : rows) line(r);
}

std::string fmt(double x, int prec = 2) {
    if (!std::isfinite(x)) return "-";
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << x;
    return os.str();
}

// "k_1,...,k_s", or "K:k1" for the two-level profile (k1, K - k1)
std::vector<std::size_t> parse_profile(const std::string& s) {
    std::vector<std::size_t> out;
    if (auto colon = s.find(':'); colon != std::string::npos) {
        std::size_t K = 0, k1 = 0;
        try {
            K = std::stoul(s.substr(0, colon));
            k1 = std::stoul(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("bad profile '" + s + "'");
        }
        if (k1 > K) throw InputError("profile: k1 exceeds K");
        return {k1, K - k1};
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoul(tok));
        } catch (const std::exception&) {
            throw InputError("bad profile entry '" + tok + "'");
        }
    }
    return out;
}

std::vector<std::size_t> padded(std::vector<std::size_t> prof, const RingSpec& ring) {
    if (prof.size() > ring.s) throw InputError("profile has more than s entries");
    prof.resize(ring.s, 0);
    return prof;
}

using Params = std::map<std::string, double>;

unsigned pu(const Params& P, const std::string& key, std::optional<unsigned> dflt = std::nullopt) {
    auto it = P.find(key);
    if (it == P.end()) {
        if (dflt) return *dflt;
        throw InputError("missing decoder parameter '" + key + "'");
    }
    if (it->second < 0) throw InputError("negative decoder parameter '" + key + "'");
    return static_cast<unsigned>(std::llround(it->second));
}

using DecodeFn = std::function<LeeVector(std::uint64_t, std::uint64_t)>;

DecodeFn make_decoder(const SdpInstance& inst, const std::string& alg, const Params& P, DecodeStats* stats) {
    const std::size_t K = inst.profile.K() ? inst.profile.K() : systematic_form(inst.H, 0).profile.K();
    if (alg == "two-blocks" || alg == "prange" || alg == "lee-brickell") {
        TwoBlocksParams p;
        if (alg == "prange") p = prange_params(K);
        else if (alg == "lee-brickell") p = lee_brickell_params(K, pu(P, "v"));
        else p = {pu(P, "m1"), pu(P, "m2"), pu(P, "z", 0u), pu(P, "v1"), pu(P, "v2")};
        return [=, &inst](std::uint64_t it, std::uint64_t seed) { return decode_two_blocks(inst, p, it, seed, stats); };
    }
    if (alg == "s-blocks") {
        SBlocksParams p{pu(P, "v"), std::nullopt};
        return [=, &inst](std::uint64_t it, std::uint64_t seed) { return decode_s_blocks(inst, p, it, seed, stats); };
    }
    if (alg == "s-blocks-variant") {
        std::vector<unsigned> vs;
        unsigned tot = 0;
        for (unsigned i = 1; i <= inst.ring.s; ++i) tot += vs.emplace_back(pu(P, "v" + std::to_string(i)));
        SBlocksParams p{tot, vs};
        return [=, &inst](std::uint64_t it, std::uint64_t seed) { return decode_s_blocks(inst, p, it, seed, stats); };
    }
    if (alg == "wagner1" || alg == "wagner2" || alg == "wagner") {
        WagnerParams p;
        p.a = alg == "wagner1" ? 1 : alg == "wagner2" ? 2 : pu(P, "a");
        p.ell = pu(P, "ell");
        p.v = pu(P, "v");
        for (unsigned i = 1; i <= p.a; ++i) p.u.push_back(pu(P, "u" + std::to_string(i)));
        return [=, &inst](std::uint64_t it, std::uint64_t seed) { return decode_wagner(inst, p, it, seed, stats); };
    }
    if (alg == "rep1" || alg == "rep") {
        RepTechParams p;
        p.a = alg == "rep1" ? 1 : pu(P, "a");
        p.ell = pu(P, "ell");
        p.v = pu(P, "v");
        for (unsigned i = 0; i < p.a; ++i) p.eps.push_back(pu(P, "eps" + std::to_string(i), 0u));
        if (P.count("u1")) {
            std::vector<std::size_t> u;
            for (unsigned i = 1; i <= p.a; ++i) u.push_back(pu(P, "u" + std::to_string(i)));
            p.u = u;
        }
        return [=, &inst](std::uint64_t it, std::uint64_t seed) {
            return decode_representation(inst, p, it, seed, stats);
        };
    }
    if (alg == "bjmm") {
        BjmmParams p{pu(P, "ell"), pu(P, "v"), pu(P, "eps0", 0u), pu(P, "eps1", 0u), std::nullopt, std::nullopt};
        if (P.count("u0")) p.u0 = pu(P, "u0");
        if (P.count("u1")) p.u1 = pu(P, "u1");
        return [=, &inst](std::uint64_t it, std::uint64_t seed) { return decode_bjmm(inst, p, it, seed, stats); };
    }
    throw InputError("unknown decoder '" + alg + "'");
}

const std::vector<std::string> table_columns = {"two-blocks", "s-blocks", "s-blocks-variant",
                                                "wagner1",    "wagner2",  "rep1"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lee-metric syndrome decoding toolkit"};
    app.set_config("--config", "", "TOML/INI file with option values; flags on the command line win");
    app.require_subcommand(1);
    app.fallthrough();
    bool csv = false;
    app.add_flag("--csv", csv, "CSV instead of aligned tables");

    // volume
    auto* vol = app.add_subcommand("volume", "exact Lee sphere and ball sizes");
    long vn = 0, vw = 0;
    unsigned vm = 0;
    vol->add_option("n", vn)->required()->check(CLI::NonNegativeNumber);
    vol->add_option("w", vw)->required()->check(CLI::NonNegativeNumber);
    vol->add_option("m", vm)->required()->check(CLI::Range(2u, 1u << 20));

    // gv
    auto* gv = app.add_subcommand("gv", "GV distance and decoding radius");
    long gn = 0, gk = 0;
    unsigned gp = 0, gs = 1;
    std::string gconv = "theorem";
    gv->add_option("n", gn)->required();
    gv->add_option("k", gk)->required();
    gv->add_option("p", gp)->required();
    gv->add_option("s", gs)->required();
    gv->add_option("--convention", gconv)->check(CLI::IsMember({"theorem", "published-tables"}));

    // plant
    auto* pl = app.add_subcommand("plant", "random code with a planted error of weight t");
    unsigned plq = 0, plp = 0, pls = 0;
    std::size_t pln = 0;
    long plt = -1;
    std::string plprof, plout;
    std::size_t plk = 0;
    std::uint64_t plseed = 1;
    pl->add_option("--q", plq);
    pl->add_option("--p", plp);
    pl->add_option("--s", pls);
    pl->add_option("--n", pln)->required();
    pl->add_option("--k", plk, "free rank (profile (k, 0, ..., 0))");
    pl->add_option("--profile", plprof, "k_1,...,k_s");
    pl->add_option("--t", plt, "default: GV radius");
    pl->add_option("--seed", plseed);
    pl->add_option("-o,--out", plout);

    // decode
    auto* de = app.add_subcommand("decode", "solve an instance file");
    std::string defile, dealg = "two-blocks", deparams = "auto", deout;
    std::uint64_t deseed = 1, demax = 0;
    unsigned jobs = 1;
    de->add_option("instance", defile)->required();
    de->add_option("--alg", dealg);
    de->add_option("--params", deparams, "JSON object of parameters, or auto");
    de->add_option("--seed", deseed);
    de->add_option("--max-iters", demax, "default 50/p from the cost model, capped at 2^24");
    de->add_option("--jobs", jobs);
    de->add_option("-o,--out", deout);
    bool desweep = false;
    de->add_flag("--sweep", desweep, "on failure retry with t-1, t-2, ... (weight at most t)");

    // estimate
    auto* es = app.add_subcommand("estimate", "bit workfactors for finite parameters");
    unsigned esq = 0, esp = 0, ess = 0;
    long esn = 0, est = -1;
    std::vector<std::string> esprof, esalgs = table_columns;
    std::string esconv = "theorem";
    es->add_option("--q", esq);
    es->add_option("--p", esp);
    es->add_option("--s", ess);
    es->add_option("--n", esn)->required();
    es->add_option("--t", est, "default: GV radius of the first profile");
    es->add_option("--profile", esprof, "k_1,...,k_s or K:k1; repeat for more rows")->required();
    es->add_option("--alg", esalgs);
    es->add_option("--convention", esconv)->check(CLI::IsMember({"theorem", "published-tables"}));
    es->add_option("--jobs", jobs);

    // asymptotic
    auto* as = app.add_subcommand("asymptotic", "asymptotic exponents e(R) in q-ary units");
    unsigned asq = 0;
    std::vector<double> aslam{1.0}, asR;
    std::vector<std::string> asalgs = {"two-blocks", "s-blocks", "wagner1", "wagner2", "rep1", "rep2", "bjmm"};
    std::string aswin = "collision-only";
    std::uint64_t asseed = 1;
    as->add_option("--q", asq)->required();
    as->add_option("--lambda", aslam);
    as->add_option("--alg", asalgs);
    as->add_option("--R", asR, "rate grid; empty gives the worst case R*");
    as->add_option("--window", aswin)->check(CLI::IsMember({"collision-only", "printed"}));
    as->add_option("--seed", asseed);
    bool asbits = false;
    as->add_flag("--bits", asbits, "report e * log2 q instead of q-ary units");
    as->add_option("--jobs", jobs);

    // reduce3dm
    auto* rd = app.add_subcommand("reduce3dm", "3DM instance to an SDP or codeword instance");
    std::string rdfile, rdout;
    unsigned rdm = 3;
    bool rdgawcp = false;
    rd->add_option("file", rdfile)->required();
    rd->add_option("--m", rdm)->check(CLI::Range(2u, 1u << 20));
    rd->add_flag("--gawcp", rdgawcp, "emit the given-weight codeword instance instead");
    rd->add_option("-o,--out", rdout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*vol) {
            const RingSpec ring = RingSpec::from_modulus(vm);
            if (std::uint64_t(vw) > std::uint64_t(vn) * ring.M)
                throw InputError("w = " + std::to_string(vw) + " exceeds n*M = " + std::to_string(vn * ring.M));
            const mpz_class F = sphere_size(vn, vw, vm), V = ball_volume(vn, vw, vm);
            std::cout << "F_L " << F.get_str() << "  log2 " << fmt(log2_mpz(F), 4) << '\n';
            std::cout << "V_L " << V.get_str() << "  log2 " << fmt(log2_mpz(V), 4) << '\n';
            return 0;
        }
        if (*gv) {
            const RingSpec ring = RingSpec::make(gp, gs);
            const auto conv = gconv == "theorem" ? GvConvention::theorem : GvConvention::published_tables;
            std::cout << "d " << gv_distance(gn, gk, ring, conv) << "\nt " << gv_radius(gn, gk, ring, conv) << '\n';
            return 0;
        }
        if (*pl) {
            const RingSpec ring = ring_from(plq, plp, pls);
            CodeType prof;
            prof.n = pln;
            prof.k_profile = plprof.empty() ? std::vector<std::size_t>{plk} : parse_profile(plprof);
            prof.k_profile = padded(prof.k_profile, ring);
            if (prof.K() > pln) throw InputError("profile rank exceeds n");
            const long t = plt >= 0 ? plt : gv_radius(long(pln), long(std::lround(prof.k())), ring);
            auto P = plant(pln, prof, unsigned(t), ring, plseed);
            write_out(plout, instance_to_json(P.instance, P.e_planted).dump());
            return 0;
        }
        if (*de) {
            auto P = instance_from_json(read_json(defile));
            SdpInstance& inst = P.instance;
            Params params;
            std::uint64_t max_iters = demax;
            if (deparams == "auto") {
                static const std::map<std::string, Algorithm> autos = {
                    {"two-blocks", Algorithm::two_blocks}, {"s-blocks", Algorithm::s_blocks},
                    {"s-blocks-variant", Algorithm::s_blocks_variant}, {"wagner1", Algorithm::wagner1},
                    {"wagner2", Algorithm::wagner2}, {"rep1", Algorithm::rep1}, {"bjmm", Algorithm::bjmm}};
                if (dealg == "prange" || dealg == "lee-brickell") {
                    if (dealg == "lee-brickell") params["v"] = 1;
                } else {
                    auto it = autos.find(dealg);
                    if (it == autos.end()) throw InputError("no auto parameters for '" + dealg + "'");
                    CodeParams cp{inst.ring, inst.n(), inst.t, inst.profile.k_profile};
                    SearchBudget b;
                    b.options.wagner_split = WagnerSplit::exact_only;
                    b.options.rep_weights = RepWeights::integral_only;
                    b.wagner_ell_min = 0;
                    CostReport r = optimize(cp, it->second, b);
                    if (!r.finite()) throw InputError("no feasible parameters for '" + dealg + "'");
                    params = r.params;
                    if (!max_iters) max_iters = default_max_iters(r.success_probability());
                }
            } else {
                json j;
                try {
                    j = json::parse(deparams);
                } catch (const json::exception& e) {
                    throw InputError(std::string("--params: ") + e.what());
                }
                for (auto& [k, v] : j.items()) params[k] = v.get<double>();
            }
            if (!max_iters) max_iters = 1u << 20;
            DecodeStats stats;
            std::optional<LeeVector> found;
            const unsigned t0 = inst.t;
            for (;;) {
                auto fn = make_decoder(inst, dealg, params, jobs > 1 ? nullptr : &stats);
                try {
                    found = decode_parallel(inst, fn, max_iters, deseed, jobs);
                    break;
                } catch (const IterationBudgetExhausted&) {
                    if (!desweep || inst.t == 0) throw;
                } catch (const std::invalid_argument&) {
                    // parameters no longer fit the smaller weight
                    if (!desweep || inst.t == 0 || inst.t == t0) throw;
                }
                --inst.t;
            }
            const LeeVector e = *found;
            inst.t = t0;
            if (!verify_solution(inst, e)) throw std::logic_error("decoder returned a non-solution");
            json out;
            out["e"] = e.data();
            out["weight"] = e.weight();
            out["algorithm"] = dealg;
            out["params"] = params;
            if (jobs <= 1) out["iterations"] = stats.iterations;
            write_out(deout, out.dump());
            return 0;
        }
        if (*es) {
            const RingSpec ring = ring_from(esq, esp, ess);
            const auto conv = esconv == "theorem" ? GvConvention::theorem : GvConvention::published_tables;
            std::vector<std::string> head = {"q", "t", "K", "k1"};
            for (auto& a : esalgs) head.push_back(algorithm_name(parse_algorithm(a)));
            std::vector<std::vector<std::string>> rows;
            for (auto& ps : esprof) {
                CodeParams cp{ring, std::size_t(esn), 0, padded(parse_profile(ps), ring)};
                cp.t = est >= 0 ? est : gv_radius(esn, long(std::lround(cp.k())), ring, conv);
                cp.validate();
                std::vector<std::future<double>> cols;
                for (auto& a : esalgs)
                    cols.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                              [cp, alg = parse_algorithm(a)] { return optimize(cp, alg).log2_cost; }));
                std::vector<std::string> row = {std::to_string(ring.m), std::to_string(cp.t), std::to_string(cp.K()),
                                                std::to_string(cp.k1())};
                for (auto& f : cols) row.push_back(fmt(f.get()));
                rows.push_back(row);
            }
            print_table(head, rows, csv);
            return 0;
        }
        if (*as) {
            const RingSpec ring = RingSpec::from_modulus(asq);
            AsymBudget b;
            b.seed = asseed;
            const double unit = asbits ? std::log2(double(asq)) : 1.0;
            const auto win = aswin == "printed" ? WindowConvention::printed : WindowConvention::collision_only;
            std::vector<std::vector<std::string>> rows;
            for (double lam : aslam) {
                AsymptoticRegime rg{ring, 0.5, lam, win};
                std::vector<std::future<std::vector<std::vector<std::string>>>> jobsv;
                for (auto& a : asalgs) {
                    const AsymAlgorithm alg = parse_asym_algorithm(a);
                    jobsv.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, [=] {
                        std::vector<std::vector<std::string>> out;
                        const std::string name = asym_algorithm_name(alg);
                        if (asR.empty()) {
                            auto w = worst_case_rate(alg, rg, b);
                            out.push_back({fmt(lam, 2), name, fmt(w.R, 4), fmt(w.e * unit, 5)});
                        } else {
                            for (auto [R, e] : exponent_curve(alg, rg, asR, b))
                                out.push_back({fmt(lam, 2), name, fmt(R, 4), fmt(e * unit, 5)});
                        }
                        return out;
                    }));
                }
                for (auto& f : jobsv)
                    for (auto& r : f.get()) rows.push_back(r);
            }
            print_table({"lambda", "algorithm", asR.empty() ? "R*" : "R", "e"}, rows, csv);
            return 0;
        }
        if (*rd) {
            const auto inst = threedm_from_json(read_json(rdfile));
            const RingSpec ring = RingSpec::from_modulus(rdm);
            if (rdgawcp) {
                auto g = build_gawcp(inst, ring);
                std::vector<std::vector<residue>> H(g.H.rows(), std::vector<residue>(g.H.cols()));
                for (std::size_t r = 0; r < g.H.rows(); ++r)
                    for (std::size_t c = 0; c < g.H.cols(); ++c) H[r][c] = g.H(r, c);
                json out{{"p", ring.p}, {"s", ring.s}, {"n", g.H.cols()}, {"w", g.w}, {"H", H}};
                write_out(rdout, out.dump());
            } else {
                write_out(rdout, instance_to_json(build_awsdp(inst, ring)).dump());
            }
            return 0;
        }
    } catch (const IterationBudgetExhausted& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
