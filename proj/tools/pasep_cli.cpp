/**
 * @file pasep_cli.cpp
 * @brief Command-line driver: exact verification suites and KMC simulations
 * for the n-component priority ASEP, with CSV reports.
 *
 * Exit codes: 0 pass, 1 check failure, 2 resource cap exceeded,
 * 3 statistical-quality failure, 64 configuration error.
 */
#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pasep/algebra.hpp"
#include "pasep/generator.hpp"
#include "pasep/measures.hpp"
#include "pasep/model.hpp"
#include "pasep/qcalc.hpp"
#include "pasep/shocks.hpp"
#include "pasep/sim.hpp"

namespace {

using namespace pasep;

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitCap = 2;
constexpr int kExitStatFail = 3;
constexpr int kExitConfig = 64;

struct Options {
    std::string command;
    int n = 1;
    long L = 4;
    std::string window;  // "lo:hi", overrides L when given
    std::string q = "3/2";
    double w = 1.0;
    double lambda = 0.0;
    std::string c;  // comma-separated duality parameters
    double t_max = 100.0;
    long replicas = 100;
    std::uint64_t seed = 12345;
    long thinning = 100;
    std::string checks = "all";
    int threads = 1;
    std::string out = ".";
    long K = 1;
    std::string eta;        // initial ASEP state, comma-separated digits
    std::string positions;  // initial marker positions, comma-separated
    std::string types;      // marker types, comma-separated
};

/** q is exact iff written as an integer or a `p/q` ratio of integers. */
struct QSpec {
    bool exact = false;
    mpq_class exact_q;
    double float_q = 0.0;
};

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

QSpec parse_q(const std::string& text) {
    QSpec r;
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            throw std::invalid_argument("ambiguous q literal: " + text);
        r.exact = true;
        r.exact_q = mpq_class(num + "/" + den);
        r.exact_q.canonicalize();
        if (r.exact_q <= 0) throw std::invalid_argument("q must be positive");
        r.float_q = r.exact_q.get_d();
        return r;
    }
    if (is_integer_token(text)) {
        r.exact = true;
        r.exact_q = mpq_class(text);
        if (r.exact_q <= 0) throw std::invalid_argument("q must be positive");
        r.float_q = r.exact_q.get_d();
        return r;
    }
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("unparseable q literal: " + text);
    }
    if (pos != text.size())
        throw std::invalid_argument("unparseable q literal: " + text);
    if (!(v > 0.0)) throw std::invalid_argument("q must be positive");
    r.exact = false;
    r.float_q = v;
    return r;
}

Lattice resolve_lattice(const Options& o) {
    if (!o.window.empty()) {
        long lo = 0, hi = 0;
        char sep = 0;
        std::istringstream is(o.window);
        if (!(is >> lo >> sep >> hi) || sep != ':')
            throw std::invalid_argument("window must be lo:hi");
        return Lattice(lo, hi);
    }
    return Lattice(1, o.L);
}

std::vector<long> parse_longs(const std::string& text) {
    std::vector<long> r;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) r.push_back(std::stol(tok));
    return r;
}

/** Open an output CSV and echo every run parameter as comment lines. */
std::ofstream open_csv(const Options& o, const std::string& name) {
    std::filesystem::create_directories(o.out);
    std::ofstream f(std::filesystem::path(o.out) / name);
    if (!f) throw std::invalid_argument("cannot write to " + o.out);
    f << "# command=" << o.command << "\n";
    f << "# n=" << o.n << "\n";
    f << "# L=" << resolve_lattice(o).l_minus << ":"
      << resolve_lattice(o).l_plus << "\n";
    f << "# q=" << o.q << "\n";
    f << "# w=" << o.w << "\n";
    f << "# lambda=" << o.lambda << "\n";
    f << "# K=" << o.K << "\n";
    f << "# t_max=" << o.t_max << "\n";
    f << "# replicas=" << o.replicas << "\n";
    f << "# seed=" << o.seed << "\n";
    f << "# thinning=" << o.thinning << "\n";
    f << "# threads=" << o.threads << "\n";
    f.precision(17);
    return f;
}

void run_replicas(long replicas, int threads,
                  const std::function<void(long)>& body) {
    if (threads <= 1) {
        for (long r = 0; r < replicas; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (long r = next++; r < replicas; r = next++) body(r);
        });
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

using Q = mpq_class;

struct CheckResult {
    std::string name;
    bool pass;
    std::string violation;
};

Q exact_lambda(double lambda) {
    if (lambda != std::floor(lambda))
        throw std::invalid_argument(
            "exact mode requires an integer lambda");
    return Q(static_cast<long>(lambda));
}

ShockConfig<Q> make_exact_shock(const Options& o, const Lattice& lat,
                                const QContext<Q>& ctx) {
    long K = o.K;
    if (lat.size() < K + 3)
        throw std::invalid_argument("lattice too small for K markers");
    std::vector<long> pos;
    std::vector<int> types;
    long mid = (lat.l_minus + lat.l_plus) / 2;
    for (long i = 0; i < K; ++i) {
        pos.push_back(mid - K / 2 + i);
        types.push_back(o.n);
    }
    exact_lambda(o.lambda);
    return ShockConfig<Q>::with_integer_lambda(pos, types, o.n, Q(o.w), ctx,
                                               static_cast<long>(o.lambda));
}

CheckResult check_detailed_balance_cmd(const Lattice& lat,
                                       const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    Measure<Q> mu;
    for_each_config(lat, rp.n, [&](const Config& c) {
        mu.weights.push_back(reversible_weight(c, rp.ctx));
    });
    Q v = check_detailed_balance(H, mu);
    return {"detailed-balance", v == 0, v.get_str()};
}

CheckResult check_partition_cmd(const Lattice& lat, const RateParams<Q>& rp) {
    Q worst = 0;
    // Per-sector brute-force sums against the q-multinomial closed form.
    std::map<std::vector<long>, Q> sums;
    for_each_config(lat, rp.n, [&](const Config& c) {
        sums[counts(c).N] += reversible_weight(c, rp.ctx);
    });
    Q grand_sum = 0;
    for (const auto& [N, sum] : sums) {
        Counts ct;
        ct.N = N;
        Q closed = canonical_partition(lat, ct, rp.ctx);
        Q d = abs(closed - sum);
        if (d > worst) worst = d;
        grand_sum += sum;
    }
    std::vector<Q> z(rp.n, Q(1));
    Q zg = grand_partition(lat, rp.n, z, rp.ctx);
    Q d2 = abs(zg - grand_sum);
    if (d2 > worst) worst = d2;
    if (rp.n == 1) {
        Q d3 = abs(zg - grand_partition_product(lat, Q(1), rp.ctx));
        if (d3 > worst) worst = d3;
    }
    return {"partition", worst == 0, worst.get_str()};
}

CheckResult check_symmetry_cmd(const Lattice& lat, const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    Q v = verify_symmetry(H, lat, rp.n, rp.ctx);
    return {"symmetry", v == 0, v.get_str()};
}

CheckResult check_duality_cmd(const Lattice& lat, const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    auto D = duality_matrix(lat, rp.n, rp.ctx);
    Q worst = max_abs_diff(D * H, H.transpose() * D);
    // Entrywise agreement with the closed product form at c = 0.
    std::vector<Q> c0;
    long dim = H.dim();
    for (long i = 1; i <= dim; ++i) {
        CoordConfig x = to_coords(basis_config(i, lat, rp.n));
        for (long j = 1; j <= dim; ++j) {
            Config e = basis_config(j, lat, rp.n);
            Q d = abs(D.get(i - 1, j - 1) - duality_value(x, e, c0, rp.ctx));
            if (d > worst) worst = d;
        }
    }
    return {"duality", worst == 0, worst.get_str()};
}

CheckResult check_intertwining_cmd(const Lattice& lat,
                                   const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    Q v = verify_intertwining(H, lat, rp.n, rp.w, rp.ctx);
    return {"intertwining", v == 0, v.get_str()};
}

CheckResult check_shock_evolution_cmd(const Options& o, const Lattice& lat,
                                      const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    ShockConfig<Q> s = make_exact_shock(o, lat, rp.ctx);
    Q v = verify_shock_evolution(s, lat, H);
    return {"shock-evolution", v == 0, v.get_str()};
}

CheckResult check_currents_cmd(const Lattice& lat, const RateParams<Q>& rp) {
    auto H = build_H(lat, rp);
    long dim = H.dim();
    Q worst = 0;
    auto note = [&](const Q& d) {
        Q a = abs(d);
        if (a > worst) worst = a;
    };
    for (int a = 1; a <= rp.n; ++a) {
        for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
            std::vector<Q> fn, fm, fq;
            for (long i = 1; i <= dim; ++i) {
                Config e = basis_config(i, lat, rp.n);
                fn.push_back(Q(indicator_n(e, k, a)));
                fm.push_back(Q(indicator_m(e, k, a)));
                fq.push_back(q_observable(e, k, a, rp.ctx));
            }
            for (long i = 1; i <= dim; ++i) {
                Config e = basis_config(i, lat, rp.n);
                note(apply_generator(fn, e, H) - current_n(e, k - 1, a, rp) +
                     current_n(e, k, a, rp));
                note(apply_generator(fm, e, H) - current_m(e, k - 1, a, rp) +
                     current_m(e, k, a, rp));
                note(apply_generator(fq, e, H) - q_current(e, k - 1, a, rp) +
                     q_current(e, k, a, rp));
            }
        }
    }
    return {"currents", worst == 0, worst.get_str()};
}

int cmd_verify(const Options& o, const QSpec& qs) {
    if (!qs.exact) {
        std::cerr << "verify requires exact (integer or p/q) q\n";
        return kExitConfig;
    }
    if (o.w != std::floor(o.w)) {
        std::cerr << "verify requires an integer w\n";
        return kExitConfig;
    }
    QContext<Q> ctx(qs.exact_q);
    Lattice lat = resolve_lattice(o);
    RateParams<Q> rp(Q(o.w), ctx, o.n);
    std::vector<std::string> names;
    {
        std::istringstream is(o.checks);
        std::string tok;
        while (std::getline(is, tok, ',')) names.push_back(tok);
    }
    bool all = std::find(names.begin(), names.end(), "all") != names.end();
    auto wants = [&](const std::string& c) {
        return all || std::find(names.begin(), names.end(), c) != names.end();
    };
    static const std::vector<std::string> known = {
        "detailed-balance", "partition",    "symmetry", "duality",
        "intertwining",     "shock-evolution", "currents", "all"};
    for (const auto& nm : names)
        if (std::find(known.begin(), known.end(), nm) == known.end()) {
            std::cerr << "unknown check: " << nm << "\n";
            return kExitConfig;
        }
    std::vector<CheckResult> results;
    if (wants("detailed-balance"))
        results.push_back(check_detailed_balance_cmd(lat, rp));
    if (wants("partition")) results.push_back(check_partition_cmd(lat, rp));
    if (wants("symmetry")) results.push_back(check_symmetry_cmd(lat, rp));
    if (wants("duality")) results.push_back(check_duality_cmd(lat, rp));
    if (wants("intertwining"))
        results.push_back(check_intertwining_cmd(lat, rp));
    if (wants("shock-evolution"))
        results.push_back(check_shock_evolution_cmd(o, lat, rp));
    if (wants("currents")) results.push_back(check_currents_cmd(lat, rp));

    std::ofstream f = open_csv(o, "verify.csv");
    f << "check,n,L,q,status,max_violation\n";
    bool ok = true;
    for (const auto& r : results) {
        f << r.name << "," << o.n << "," << lat.size() << "," << o.q << ","
          << (r.pass ? "pass" : "fail") << "," << r.violation << "\n";
        if (!r.pass) ok = false;
        std::cout << r.name << ": " << (r.pass ? "pass" : "fail")
                  << " (max violation " << r.violation << ")\n";
    }
    return ok ? kExitPass : kExitCheckFail;
}

// ---------------------------------------------------------------------------
// simulate-asep
// ---------------------------------------------------------------------------

Config initial_asep_config(const Options& o, const Lattice& lat) {
    if (!o.eta.empty()) {
        std::vector<long> vals = parse_longs(o.eta);
        std::vector<int> eta(vals.begin(), vals.end());
        return Config(lat, o.n, eta);
    }
    // Default: left half filled species-by-species step profile.
    std::vector<int> eta(lat.size(), 0);
    for (long i = 0; i < lat.size() / 2; ++i)
        eta[i] = 1 + static_cast<int>(i % o.n);
    std::sort(eta.begin(), eta.begin() + lat.size() / 2, std::greater<int>());
    return Config(lat, o.n, eta);
}

int cmd_simulate_asep(const Options& o, const QSpec& qs) {
    double q = qs.float_q;
    Lattice lat = resolve_lattice(o);
    Config c0 = initial_asep_config(o, lat);
    CounterRng rng(o.seed, 0);
    AsepSim sim(c0, o.w, q, rng);

    std::ofstream traj = open_csv(o, "trajectory.csv");
    traj << "time,eta\n";
    long dim = state_dim(o.n, lat.size());
    bool track_hist = dim > 0 && dim <= 65536;
    std::vector<double> occupancy(track_hist ? dim : 0, 0.0);
    std::vector<double> site_density(lat.size(), 0.0);
    long events = 0;
    double last_t = 0.0;
    auto absorb = [&](double until, const Config& state) {
        double dt = until - last_t;
        if (dt <= 0) return;
        if (track_hist) occupancy[basis_index(state) - 1] += dt;
        for (long i = 0; i < lat.size(); ++i)
            site_density[i] += dt * (state.eta[i] == o.n ? 1.0 : 0.0);
        last_t = until;
    };
    Config held = sim.config();
    while (sim.advance(o.t_max)) {
        absorb(sim.time(), held);
        held = sim.config();
        ++events;
        if (events % std::max<long>(o.thinning, 1) == 0)
            traj << sim.time() << "," << format_config(sim.config()) << "\n";
    }
    absorb(o.t_max, held);

    std::ofstream prof = open_csv(o, "profile.csv");
    prof << "site,density,se\n";
    for (long i = 0; i < lat.size(); ++i)
        prof << lat.l_minus + i << "," << site_density[i] / o.t_max << ",0\n";

    std::ofstream summary = open_csv(o, "summary.csv");
    summary << "quantity,estimate,se,predicted,z\n";
    if (track_hist && qs.exact) {
        // Time-weighted empirical distribution against the exact canonical
        // measure of the initial sector.
        QContext<Q> ctx(qs.exact_q);
        Measure<Q> mu =
            canonical_measure(lat, o.n, counts(c0), ctx);
        double tv = 0.0;
        for (long i = 0; i < dim; ++i)
            tv += 0.5 * std::fabs(occupancy[i] / last_t -
                                  mu.weights[i].get_d());
        summary << "stationary_tv," << tv << ",0,0,0\n";
    }
    summary << "events," << events << ",0,0,0\n";
    return kExitPass;
}

// ---------------------------------------------------------------------------
// simulate-shock
// ---------------------------------------------------------------------------

ShockConfig<double> make_float_shock(const Options& o, const Lattice& lat,
                                     double q) {
    QContext<double> ctx(q);
    std::vector<long> pos;
    std::vector<int> types;
    if (!o.positions.empty()) {
        pos = parse_longs(o.positions);
    } else {
        long mid = (lat.l_minus + lat.l_plus) / 2;
        for (long i = 0; i < o.K; ++i) pos.push_back(mid + 2 * i - o.K + 1);
    }
    if (!o.types.empty()) {
        for (long v : parse_longs(o.types)) types.push_back(static_cast<int>(v));
    } else {
        types.assign(pos.size(), o.n);
    }
    return ShockConfig<double>(pos, types, o.n, o.w, ctx,
                               std::pow(q, o.lambda), o.lambda);
}

int cmd_simulate_shock(const Options& o, const QSpec& qs) {
    double q = qs.float_q;
    Lattice lat = resolve_lattice(o);
    ShockConfig<double> s = make_float_shock(o, lat, q);
    long K = s.K();
    const long margin = 50;
    if (o.replicas < 1) return kExitConfig;

    std::vector<std::vector<double>> displacement(
        K, std::vector<double>(o.replicas, 0.0));
    std::vector<char> aborted(o.replicas, 0);
    GapHistogram gaps;
    std::mutex gap_mutex;
    std::ofstream traj = open_csv(o, "trajectory.csv");
    traj << "time";
    for (long i = 1; i <= K; ++i) traj << ",x_" << i;
    traj << "\n";

    run_replicas(o.replicas, o.threads, [&](long r) {
        CounterRng rng(o.seed, static_cast<std::uint64_t>(r));
        ShockSim sim = make_shock_sim(s, rng);
        long events = 0;
        GapHistogram local_gaps;
        std::ostringstream local_traj;
        local_traj.precision(17);
        while (sim.advance(o.t_max)) {
            ++events;
            for (long p : sim.positions())
                if (p < lat.l_minus + margin || p > lat.l_plus - margin)
                    aborted[r] = 1;
            if (aborted[r]) break;
            if (r == 0 && events % std::max<long>(o.thinning, 1) == 0) {
                local_traj << sim.time();
                for (long p : sim.positions()) local_traj << "," << p;
                local_traj << "\n";
            }
            // Gap samples past burn-in (first half of the horizon).
            if (K >= 2 && sim.time() > 0.5 * o.t_max &&
                events % std::max<long>(o.thinning, 1) == 0)
                for (long i = 0; i + 1 < K; ++i)
                    local_gaps.add(sim.positions()[i + 1] -
                                   sim.positions()[i] - 1);
        }
        if (!aborted[r])
            for (long i = 0; i < K; ++i)
                displacement[i][r] =
                    static_cast<double>(sim.positions()[i] - s.positions[i]);
        if (r == 0) traj << local_traj.str();
        std::lock_guard<std::mutex> lock(gap_mutex);
        for (std::size_t g = 0; g < local_gaps.counts.size(); ++g)
            for (long c = 0; c < local_gaps.counts[g]; ++c)
                gaps.add(static_cast<long>(g));
    });

    long discards = std::count(aborted.begin(), aborted.end(), 1);
    std::vector<long> kept;
    for (long r = 0; r < o.replicas; ++r)
        if (!aborted[r]) kept.push_back(r);

    ShockPrediction<double> pred = shock_predictions(s);
    std::ofstream summary = open_csv(o, "summary.csv");
    summary << "quantity,estimate,se,predicted,z\n";
    bool stat_ok = true;
    if (static_cast<long>(kept.size()) < 30) {
        summary << "replicas," << kept.size() << ",0,30,-1\n";
        stat_ok = false;
    } else {
        for (long i = 0; i < K; ++i) {
            std::vector<double> d;
            for (long r : kept) d.push_back(displacement[i][r]);
            auto [v, D] = estimate_velocity_diffusion(d, o.t_max);
            double zv = (v.value - pred.v[i]) / std::max(v.se, 1e-300);
            double zD = (D.value - pred.D[i]) / std::max(D.se, 1e-300);
            summary << "v_" << i + 1 << "," << v.value << "," << v.se << ","
                    << pred.v[i] << "," << zv << "\n";
            summary << "D_" << i + 1 << "," << D.value << "," << D.se << ","
                    << pred.D[i] << "," << zD << "\n";
        }
    }
    double discard_frac = static_cast<double>(discards) / o.replicas;
    summary << "discard_fraction," << discard_frac << ",0,0,0\n";

    if (K >= 2 && gaps.total > 0) {
        std::ofstream gf = open_csv(o, "gaps.csv");
        gf << "gap,count,expected\n";
        double p = stationary_gap_law(s, 1);
        for (std::size_t g = 0; g < gaps.counts.size(); ++g)
            gf << g << "," << gaps.counts[g] << ","
               << gaps.total * p * std::pow(1.0 - p, static_cast<double>(g))
               << "\n";
        summary << "gap_p_1," << gaps.fitted_p() << ",0," << p << ",0\n";
        summary << "gap_ks_1," << ks_statistic_geometric(gaps, p) << ",0,0,0\n";
    }
    if (discard_frac >= 0.01) stat_ok = false;
    return stat_ok ? kExitPass : kExitStatFail;
}

// ---------------------------------------------------------------------------
// shock-theorem
// ---------------------------------------------------------------------------

int cmd_shock_theorem(const Options& o, const QSpec& qs) {
    Lattice lat = resolve_lattice(o);
    ShockConfig<double> s = make_float_shock(o, lat, qs.float_q);
    long max_offset = 50;
    ProfileCheck pc = shock_theorem_check(s, lat, o.t_max, o.replicas, o.seed,
                                          max_offset);
    std::ofstream prof = open_csv(o, "profile.csv");
    prof << "offset,density,se,density_mix,se_mix\n";
    for (std::size_t i = 0; i < pc.offsets.size(); ++i)
        prof << pc.offsets[i] << "," << pc.density_asep[i] << ","
             << pc.se_asep[i] << "," << pc.density_mix[i] << ","
             << pc.se_mix[i] << "\n";
    std::ofstream summary = open_csv(o, "summary.csv");
    summary << "quantity,estimate,se,predicted,z\n";
    summary << "max_profile_z," << pc.max_z << ",0,3,0\n";
    summary << "max_profile_diff," << pc.max_diff << ",0,0,0\n";
    double discard_frac = static_cast<double>(pc.discarded) / pc.replicas;
    summary << "discard_fraction," << discard_frac << ",0,0,0\n";
    std::cout << "max profile z = " << pc.max_z << ", discards = "
              << pc.discarded << "\n";
    if (discard_frac >= 0.01) return kExitStatFail;
    return kExitPass;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const Options& o, const QSpec& qs) {
    std::ofstream f = open_csv(o, "shock.csv");
    if (qs.exact && o.lambda == std::floor(o.lambda)) {
        QContext<Q> ctx(qs.exact_q);
        std::vector<long> pos;
        std::vector<int> types;
        for (long i = 0; i < o.K; ++i) {
            pos.push_back(2 * i + 1);
            types.push_back(o.n);
        }
        auto s = ShockConfig<Q>::with_integer_lambda(
            pos, types, o.n, Q(o.w), ctx, static_cast<long>(o.lambda));
        export_shock_csv(f, s);
    } else {
        Lattice lat = resolve_lattice(o);
        export_shock_csv(f, make_float_shock(o, lat, qs.float_q));
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"n-component priority ASEP: exact verification and KMC"};
    app.add_option("command", o.command, "verify | simulate-asep | "
                                         "simulate-shock | shock-theorem | "
                                         "report")
        ->required();
    app.add_option("--n", o.n, "number of particle species");
    app.add_option("--L", o.L, "lattice length (window [1,L])");
    app.add_option("--window", o.window, "explicit window lo:hi");
    app.add_option("--q", o.q, "asymmetry: integer or p/q = exact, decimal = "
                               "float");
    app.add_option("--w", o.w, "overall rate scale");
    app.add_option("--lambda", o.lambda, "fugacity exponent of the shock "
                                         "measure");
    app.add_option("--c", o.c, "duality parameters, comma-separated");
    app.add_option("--t-max", o.t_max, "simulation horizon");
    app.add_option("--replicas", o.replicas, "independent replicas");
    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--thinning", o.thinning, "sample every this many events");
    app.add_option("--checks", o.checks, "comma list for verify");
    app.add_option("--threads", o.threads, "worker thread cap");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--K", o.K, "number of shock markers");
    app.add_option("--eta", o.eta, "initial ASEP state digits");
    app.add_option("--positions", o.positions, "initial marker positions");
    app.add_option("--types", o.types, "marker types");
    app.set_config("--config")->configurable(false);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    try {
        QSpec qs = parse_q(o.q);
        if (o.command == "verify") return cmd_verify(o, qs);
        if (o.command == "simulate-asep") return cmd_simulate_asep(o, qs);
        if (o.command == "simulate-shock") return cmd_simulate_shock(o, qs);
        if (o.command == "shock-theorem") return cmd_shock_theorem(o, qs);
        if (o.command == "report") return cmd_report(o, qs);
        std::cerr << "unknown command: " << o.command << "\n";
        return kExitConfig;
    } catch (const std::length_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
}
