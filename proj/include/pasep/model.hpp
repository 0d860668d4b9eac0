/**
 * @file model.hpp
 * @brief Configurations of the n-component priority ASEP.
 *
 * States are kept in occupation representation (one species digit per site on
 * a finite lattice window [l_minus, l_plus]) with on-demand conversion to the
 * coordinate representation (ordered particle positions plus colours).
 * Site indices in every public signature are absolute lattice coordinates.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pasep {

/** sgn(x) in {-1, 0, 1}. */
inline int sgn(long x) { return (x > 0) - (x < 0); }

struct Lattice {
    long l_minus = 0;
    long l_plus = 0;

    Lattice() = default;
    Lattice(long lm, long lp) : l_minus(lm), l_plus(lp) {
        if (size() < 2) throw std::invalid_argument("lattice needs L >= 2");
    }
    long size() const { return l_plus - l_minus + 1; }
    bool contains(long k) const { return k >= l_minus && k <= l_plus; }
};

/** Occupation configuration: eta_k in {0,...,n} for each site k. */
struct Config {
    Lattice lattice;
    int n = 1;
    std::vector<int> eta;  // indexed 0..L-1, site k at offset k - l_minus

    Config() = default;
    Config(const Lattice& lat, int n_, std::vector<int> eta_)
        : lattice(lat), n(n_), eta(std::move(eta_)) {
        if (static_cast<long>(eta.size()) != lattice.size())
            throw std::invalid_argument("eta length != lattice size");
        for (int v : eta)
            if (v < 0 || v > n)
                throw std::invalid_argument("species value out of range");
    }

    int at(long k) const { return eta.at(k - lattice.l_minus); }
    int& at(long k) { return eta.at(k - lattice.l_minus); }

    bool operator==(const Config& o) const {
        return lattice.l_minus == o.lattice.l_minus &&
               lattice.l_plus == o.lattice.l_plus && n == o.n && eta == o.eta;
    }
};

/** Coordinate representation: increasing positions and per-particle colours. */
struct CoordConfig {
    std::vector<long> positions;  // strictly increasing
    std::vector<int> colours;     // colour of particle i (>= 1 for ASEP states)

    long N() const { return static_cast<long>(positions.size()); }
};

/** Per-species counts N^alpha and cumulative tails M^alpha. */
struct Counts {
    std::vector<long> N;  // N[alpha], alpha = 0..n
    std::vector<long> M;  // M[alpha] = sum_{beta >= alpha} N[beta]
};

inline CoordConfig to_coords(const Config& c) {
    CoordConfig x;
    for (long k = c.lattice.l_minus; k <= c.lattice.l_plus; ++k) {
        if (c.at(k) != 0) {
            x.positions.push_back(k);
            x.colours.push_back(c.at(k));
        }
    }
    return x;
}

inline Config to_occupation(const CoordConfig& x, const Lattice& lat, int n) {
    std::vector<int> eta(lat.size(), 0);
    long prev = lat.l_minus - 1;
    for (std::size_t i = 0; i < x.positions.size(); ++i) {
        long p = x.positions[i];
        int a = x.colours[i];
        if (!lat.contains(p))
            throw std::invalid_argument("position outside lattice");
        if (p <= prev)
            throw std::invalid_argument("positions not strictly increasing");
        if (a < 1 || a > n) throw std::invalid_argument("colour out of range");
        eta[p - lat.l_minus] = a;
        prev = p;
    }
    return Config(lat, n, std::move(eta));
}

/** n^alpha_k = [eta_k == alpha]. */
inline int indicator_n(const Config& c, long k, int alpha) {
    return c.at(k) == alpha ? 1 : 0;
}

/** m^alpha_k = [eta_k >= alpha]; m^0_k = 1 always. */
inline int indicator_m(const Config& c, long k, int alpha) {
    return c.at(k) >= alpha ? 1 : 0;
}

/** Particle balance N^alpha_k = sum_{l<k} n^alpha_l - sum_{l>k} n^alpha_l. */
inline long balance(const Config& c, long k, int alpha) {
    long b = 0;
    for (long l = c.lattice.l_minus; l < k; ++l) b += indicator_n(c, l, alpha);
    for (long l = k + 1; l <= c.lattice.l_plus; ++l)
        b -= indicator_n(c, l, alpha);
    return b;
}

/** Cumulative balance M^alpha_k = sum_{l<k} m^alpha_l - sum_{l>k} m^alpha_l. */
inline long balance_m(const Config& c, long k, int alpha) {
    long b = 0;
    for (long l = c.lattice.l_minus; l < k; ++l) b += indicator_m(c, l, alpha);
    for (long l = k + 1; l <= c.lattice.l_plus; ++l)
        b -= indicator_m(c, l, alpha);
    return b;
}

inline Counts counts(const Config& c) {
    Counts ct;
    ct.N.assign(c.n + 1, 0);
    for (int v : c.eta) ++ct.N[v];
    ct.M.assign(c.n + 1, 0);
    long tail = 0;
    for (int a = c.n; a >= 0; --a) {
        tail += ct.N[a];
        ct.M[a] = tail;
    }
    return ct;
}

/** Energy E(eta) = -sum_k sum_{l<k} sgn(eta_k - eta_l). */
inline long energy(const Config& c) {
    long e = 0;
    const long L = c.lattice.size();
    for (long k = 1; k < L; ++k)
        for (long l = 0; l < k; ++l) e -= sgn(c.eta[k] - c.eta[l]);
    return e;
}

/**
 * Partial energy E^{ab}(eta) = -sum_k sum_{l<k} (n^a_k n^b_l - n^a_l n^b_k),
 * the contribution of ordered pairs with species {a, b}.
 */
inline long partial_energy(const Config& c, int a, int b) {
    long e = 0;
    const long L = c.lattice.size();
    for (long k = 1; k < L; ++k)
        for (long l = 0; l < k; ++l) {
            e -= (c.eta[k] == a && c.eta[l] == b) ? 1 : 0;
            e += (c.eta[l] == a && c.eta[k] == b) ? 1 : 0;
        }
    return e;
}

/** Vacancy part E^0 = sum_{a>=1} E^{a0} = -sum_k N^0_k(eta). */
inline long energy0(const Config& c) {
    long e = 0;
    for (long k = c.lattice.l_minus; k <= c.lattice.l_plus; ++k)
        e -= balance(c, k, 0);
    return e;
}

/** Reduced energy Ebar = sum over particle species pairs a > b >= 1. */
inline long energy_bar(const Config& c) {
    long e = 0;
    for (int a = 2; a <= c.n; ++a)
        for (int b = 1; b < a; ++b) e += partial_energy(c, a, b);
    return e;
}

/** Doubly reduced energy Ebarbar = sum over species pairs a > b >= 2. */
inline long energy_barbar(const Config& c) {
    long e = 0;
    for (int a = 3; a <= c.n; ++a)
        for (int b = 2; b < a; ++b) e += partial_energy(c, a, b);
    return e;
}

/** Swap the species at sites k, k+1. */
inline Config local_permute(const Config& c, long k) {
    if (k >= c.lattice.l_plus)
        throw std::invalid_argument("local_permute: k must be < l_plus");
    Config r = c;
    std::swap(r.at(k), r.at(k + 1));
    return r;
}

/** Cyclic flip eta_k -> eta_k + 1 mod (n+1) at one site. */
inline Config cyclic_flip(const Config& c, long k) {
    Config r = c;
    r.at(k) = (r.at(k) + 1) % (c.n + 1);
    return r;
}

/** Global cyclic flip at every site. */
inline Config global_flip(const Config& c) {
    Config r = c;
    for (int& v : r.eta) v = (v + 1) % (c.n + 1);
    return r;
}

/** Render as the CLI literal, e.g. "L=[1,3] eta=2,0,1". */
inline std::string format_config(const Config& c) {
    std::ostringstream os;
    os << "L=[" << c.lattice.l_minus << "," << c.lattice.l_plus << "] eta=";
    for (std::size_t i = 0; i < c.eta.size(); ++i) {
        if (i) os << ",";
        os << c.eta[i];
    }
    return os.str();
}

/** Parse the CLI literal produced by format_config. */
inline Config parse_config(const std::string& text, int n) {
    long lm = 0, lp = 0;
    std::size_t ep = text.find("eta=");
    if (std::sscanf(text.c_str(), "L=[%ld,%ld]", &lm, &lp) != 2 ||
        ep == std::string::npos)
        throw std::invalid_argument("bad config literal: " + text);
    std::vector<int> eta;
    std::istringstream is(text.substr(ep + 4));
    std::string tok;
    while (std::getline(is, tok, ',')) eta.push_back(std::stoi(tok));
    return Config(Lattice(lm, lp), n, std::move(eta));
}

}  // namespace pasep
