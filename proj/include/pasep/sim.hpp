/**
 * @file sim.hpp
 * @brief Kinetic Monte Carlo for the priority ASEP and the shock exclusion
 * process, with estimators for velocity, diffusion, gap laws, currents and
 * profile cross-validation.
 *
 * Both simulators are statistically exact continuous-time chains: exponential
 * waiting times at the configuration's total rate and proportional event
 * selection, with per-bond rate tables updated locally after each event and
 * an exact total-rate refresh every 10^6 events to bound float drift.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "rng.hpp"
#include "shocks.hpp"

namespace pasep {

struct Estimate {
    double value = 0.0;
    double se = 0.0;
    long count = 0;
};

struct AsepEvent {
    long bond = -1;   // absolute site k of the swapped bond (k, k+1)
    int left = -1;    // species at k before the swap
    int right = -1;   // species at k+1 before the swap
};

/** Continuous-time KMC for the n-priority ASEP with reflecting boundaries. */
class AsepSim {
  public:
    AsepSim(Config c, double w, double q, CounterRng rng)
        : c_(std::move(c)), w_(w), q_(q), rng_(rng) {
        rates_.assign(c_.lattice.size() - 1, 0.0);
        refresh();
    }

    double time() const { return t_; }
    const Config& config() const { return c_; }
    double total_rate() const { return total_; }
    const AsepEvent& last_event() const { return last_; }

    /** Advance by one event; false when no bond is discordant. */
    bool step() {
        if (total_ <= 0.0) return false;
        t_ += rng_.exponential(total_);
        fire();
        return true;
    }

    /**
     * Advance by one event if it occurs before the horizon; otherwise move
     * the clock to the horizon without applying anything and return false.
     */
    bool advance(double horizon) {
        if (total_ <= 0.0) {
            t_ = horizon;
            return false;
        }
        double dt = rng_.exponential(total_);
        if (t_ + dt >= horizon) {
            t_ = horizon;
            return false;
        }
        t_ += dt;
        fire();
        return true;
    }

    /** Run until time t (events after t are not applied). */
    void run_until(double t) {
        while (advance(t)) {
        }
    }

  private:
    void fire() {
        double u = rng_.uniform() * total_;
        std::size_t b = 0;
        double acc = 0.0;
        for (; b + 1 < rates_.size(); ++b) {
            acc += rates_[b];
            if (u < acc) break;
        }
        long k = c_.lattice.l_minus + static_cast<long>(b);
        last_ = {k, c_.at(k), c_.at(k + 1)};
        std::swap(c_.at(k), c_.at(k + 1));
        for (long kk = k - 1; kk <= k + 1; ++kk) update_bond(kk);
        if (++events_ % 1000000 == 0) refresh();
    }

    double bond_rate(long k) const {
        int s = sgn(c_.at(k) - c_.at(k + 1));
        if (s == 0) return 0.0;
        return w_ * (s > 0 ? q_ : 1.0 / q_);
    }
    void update_bond(long k) {
        if (k < c_.lattice.l_minus || k >= c_.lattice.l_plus) return;
        std::size_t b = static_cast<std::size_t>(k - c_.lattice.l_minus);
        total_ += bond_rate(k) - rates_[b];
        rates_[b] = bond_rate(k);
    }
    void refresh() {
        total_ = 0.0;
        for (long k = c_.lattice.l_minus; k < c_.lattice.l_plus; ++k) {
            rates_[k - c_.lattice.l_minus] = bond_rate(k);
            total_ += rates_[k - c_.lattice.l_minus];
        }
    }

    Config c_;
    double t_ = 0.0;
    double w_, q_;
    std::vector<double> rates_;
    double total_ = 0.0;
    long events_ = 0;
    AsepEvent last_;
    CounterRng rng_;
};

/** KMC for the K-particle shock exclusion process on a window of Z. */
class ShockSim {
  public:
    /**
     * @param colours shock-process colours (marker type - 1), in {0..n-1}
     * @param v per-particle bias factors v_i
     */
    ShockSim(std::vector<long> positions, std::vector<int> colours,
             std::vector<double> v, double w, double q, CounterRng rng)
        : x_(std::move(positions)),
          col_(std::move(colours)),
          v_(std::move(v)),
          w_(w),
          q_(q),
          rng_(rng) {}

    double time() const { return t_; }
    const std::vector<long>& positions() const { return x_; }
    const std::vector<int>& colours() const { return col_; }

    bool step() {
        return advance(std::numeric_limits<double>::infinity());
    }

    /**
     * Advance by one event if it occurs before the horizon; otherwise move
     * the clock to the horizon without applying anything and return false.
     */
    bool advance(double horizon) {
        const std::size_t K = x_.size();
        // 2K hop clocks + K-1 exchange clocks; K is small, rebuild each time.
        rates_.clear();
        for (std::size_t i = 0; i < K; ++i) {
            bool right_free = (i + 1 == K) || (x_[i + 1] > x_[i] + 1);
            bool left_free = (i == 0) || (x_[i - 1] < x_[i] - 1);
            rates_.push_back(right_free ? w_ * v_[i] : 0.0);
            rates_.push_back(left_free ? w_ / v_[i] : 0.0);
        }
        for (std::size_t i = 0; i + 1 < K; ++i) {
            double r = 0.0;
            if (x_[i + 1] == x_[i] + 1)
                r = exchange_rate(col_[i], col_[i + 1]);
            rates_.push_back(r);
        }
        double total = std::accumulate(rates_.begin(), rates_.end(), 0.0);
        if (total <= 0.0) {
            if (std::isfinite(horizon)) t_ = horizon;
            return false;
        }
        double dt = rng_.exponential(total);
        if (t_ + dt >= horizon) {
            t_ = horizon;
            return false;
        }
        t_ += dt;
        double u = rng_.uniform() * total;
        std::size_t e = 0;
        double acc = 0.0;
        for (; e + 1 < rates_.size(); ++e) {
            acc += rates_[e];
            if (u < acc) break;
        }
        if (e < 2 * K) {
            std::size_t i = e / 2;
            x_[i] += (e % 2 == 0) ? 1 : -1;
        } else {
            std::size_t i = e - 2 * K;
            std::swap(col_[i], col_[i + 1]);
        }
        return true;
    }

    void run_until(double t) {
        while (advance(t)) {
        }
    }

  private:
    double exchange_rate(int b1, int b2) const {
        if (b1 > 0 && b2 > 0) {
            if (b1 == b2) return 0.0;
            return w_ * (b2 > b1 ? q_ : 1.0 / q_);
        }
        if (b1 > 0 && b2 == 0) return w_ * q_;
        if (b1 == 0 && b2 > 0) return w_ / q_;
        return 0.0;
    }

    std::vector<long> x_;
    std::vector<int> col_;
    std::vector<double> v_;
    double w_, q_;
    double t_ = 0.0;
    std::vector<double> rates_;
    CounterRng rng_;
};

/** Build a float-mode simulator state from a shock configuration. */
inline ShockSim make_shock_sim(const ShockConfig<double>& s, CounterRng rng) {
    ShockRates<double> r = shock_rates(s);
    std::vector<int> colours;
    for (int t : s.types) colours.push_back(t - 1);
    return ShockSim(s.positions, colours, r.v, s.w, s.ctx.q, rng);
}

/** Sample an occupation configuration from the shock product measure. */
inline Config sample_shock_config(const ShockConfig<double>& s,
                                  const Lattice& lat, CounterRng& rng) {
    std::vector<double> rho;
    for (long j = 0; j <= s.K(); ++j) rho.push_back(shock_marginal(j, s));
    std::vector<int> eta(lat.size(), 0);
    long seg = 0;
    std::size_t mi = 0;
    for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
        if (mi < s.positions.size() && k == s.positions[mi]) {
            eta[k - lat.l_minus] = s.types[mi] - 1;
            ++mi;
            ++seg;
            continue;
        }
        eta[k - lat.l_minus] = rng.bernoulli(rho[seg]) ? s.n : 0;
    }
    return Config(lat, s.n, std::move(eta));
}

/**
 * Velocity and diffusion from per-replica displacements at a common time t:
 * v = mean/t, D = Var/(2t) (normalization calibrated against the K = 1
 * random-walk value D = (w+ + w-)/2).
 */
inline std::pair<Estimate, Estimate> estimate_velocity_diffusion(
    const std::vector<double>& displacement, double t) {
    long R = static_cast<long>(displacement.size());
    if (R < 30)
        throw std::invalid_argument("need at least 30 replicas");
    double mean =
        std::accumulate(displacement.begin(), displacement.end(), 0.0) / R;
    double var = 0.0;
    for (double d : displacement) var += (d - mean) * (d - mean);
    var /= (R - 1);
    Estimate v{mean / t, std::sqrt(var / R) / t, R};
    Estimate D{var / (2.0 * t), (var / (2.0 * t)) * std::sqrt(2.0 / (R - 1)),
               R};
    return {v, D};
}

/** Empirical pmf (as counts) over nonnegative gap values. */
struct GapHistogram {
    std::vector<long> counts;  // counts[g] = samples with gap g
    long total = 0;
    void add(long g) {
        if (g < 0) throw std::invalid_argument("negative gap");
        if (g >= static_cast<long>(counts.size())) counts.resize(g + 1, 0);
        ++counts[g];
        ++total;
    }
    double mean() const {
        double s = 0.0;
        for (std::size_t g = 0; g < counts.size(); ++g) s += g * counts[g];
        return s / total;
    }
    /** Moment fit of the geometric parameter, p = 1/(1+mean). */
    double fitted_p() const { return 1.0 / (1.0 + mean()); }
};

/** Kolmogorov-Smirnov statistic against Geometric(p) on {0,1,...}. */
inline double ks_statistic_geometric(const GapHistogram& h, double p) {
    double d = 0.0;
    double ecdf = 0.0;
    for (std::size_t g = 0; g < h.counts.size(); ++g) {
        ecdf += static_cast<double>(h.counts[g]) / h.total;
        double cdf = 1.0 - std::pow(1.0 - p, static_cast<double>(g + 1));
        d = std::max(d, std::fabs(ecdf - cdf));
    }
    return d;
}

/**
 * Empirical time-averaged currents: net rightward transfer of species >= a
 * (a = 1..n) across each bond, divided by the elapsed time. Result is
 * indexed [bond][a-1] with bond 0 the leftmost.
 */
inline std::vector<std::vector<double>> measure_currents(AsepSim& sim,
                                                         double t) {
    const Lattice& lat = sim.config().lattice;
    int n = sim.config().n;
    double t0 = sim.time();
    std::vector<std::vector<double>> net(
        lat.size() - 1, std::vector<double>(n, 0.0));
    while (sim.advance(t0 + t)) {
        const AsepEvent& e = sim.last_event();
        std::size_t b = static_cast<std::size_t>(e.bond - lat.l_minus);
        for (int a = 1; a <= n; ++a)
            net[b][a - 1] +=
                (e.left >= a ? 1.0 : 0.0) - (e.right >= a ? 1.0 : 0.0);
    }
    for (auto& row : net)
        for (double& v : row) v /= t;
    return net;
}

/**
 * Species-n density at site k under the shock measure indexed by marker
 * positions/types y (analytic marginal; 0 at marker sites).
 */
inline double shock_profile_density(const std::vector<long>& y,
                                    const ShockConfig<double>& s, long k) {
    long seg = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (k == y[i]) return 0.0;
        if (k > y[i]) seg = static_cast<long>(i) + 1;
    }
    return shock_marginal(seg, s);
}

struct ProfileCheck {
    std::vector<long> offsets;
    std::vector<double> density_asep, se_asep;
    std::vector<double> density_mix, se_mix;
    double max_z = 0.0;      // worst |difference| / combined SE
    double max_diff = 0.0;   // worst |difference|
    long discarded = 0;      // replicas dropped by the window margin
    long replicas = 0;
};

/**
 * Two-simulation cross-validation of the shock evolution theorem: (A) evolve
 * the ASEP from sampled shock measures and record the species-n density;
 * (B) evolve the shock exclusion process and average the analytic shock
 * profiles of the visited marker states. Offsets are relative to the initial
 * first-marker position.
 */
inline ProfileCheck shock_theorem_check(const ShockConfig<double>& s,
                                        const Lattice& window, double t,
                                        long replicas, std::uint64_t seed,
                                        long max_offset, long margin = 50) {
    ProfileCheck out;
    out.replicas = replicas;
    long x0 = s.positions.front();
    for (long j = -max_offset; j <= max_offset; ++j) out.offsets.push_back(j);
    std::size_t m = out.offsets.size();
    std::vector<double> suma(m, 0.0), sumb(m, 0.0), sumb2(m, 0.0);
    long kepta = 0;
    // Side A: ASEP from sampled shock measures.
    for (long r = 0; r < replicas; ++r) {
        CounterRng rng(seed, static_cast<std::uint64_t>(r));
        Config c0 = sample_shock_config(s, window, rng);
        AsepSim sim(std::move(c0), s.w, s.ctx.q, rng);
        sim.run_until(t);
        // Locate the markers (species < n particles) for the margin policy.
        bool ok = true;
        for (long k = window.l_minus; k <= window.l_plus; ++k) {
            int v = sim.config().at(k);
            if (v != 0 && v != s.n &&
                (k < window.l_minus + margin || k > window.l_plus - margin))
                ok = false;
        }
        if (!ok) {
            ++out.discarded;
            continue;
        }
        ++kepta;
        for (std::size_t i = 0; i < m; ++i) {
            long site = x0 + out.offsets[i];
            suma[i] += (sim.config().at(site) == s.n) ? 1.0 : 0.0;
        }
    }
    // Side B: shock process plus analytic profiles.
    for (long r = 0; r < replicas; ++r) {
        CounterRng rng(seed, 0x80000000ULL + static_cast<std::uint64_t>(r));
        ShockSim sim = make_shock_sim(s, rng);
        sim.run_until(t);
        for (std::size_t i = 0; i < m; ++i) {
            double d =
                shock_profile_density(sim.positions(), s, x0 + out.offsets[i]);
            sumb[i] += d;
            sumb2[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        double pa = suma[i] / kepta;
        double sea = std::sqrt(std::max(pa * (1.0 - pa), 1e-12) / kepta);
        double pb = sumb[i] / replicas;
        double varb = (sumb2[i] - replicas * pb * pb) /
                      std::max<long>(replicas - 1, 1);
        double seb = std::sqrt(std::max(varb, 0.0) / replicas);
        out.density_asep.push_back(pa);
        out.se_asep.push_back(sea);
        out.density_mix.push_back(pb);
        out.se_mix.push_back(seb);
        double se = std::sqrt(sea * sea + seb * seb);
        double diff = std::fabs(pa - pb);
        out.max_diff = std::max(out.max_diff, diff);
        out.max_z = std::max(out.max_z, diff / std::max(se, 1e-12));
    }
    return out;
}

}  // namespace pasep
