/**
 * @file measures.hpp
 * @brief Reversible, canonical, grand-canonical and blocking measures with
 * exact partition functions and detailed-balance verification.
 */
#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "generator.hpp"
#include "model.hpp"
#include "qcalc.hpp"
#include "scalar.hpp"
#include "sparse.hpp"

namespace pasep {

template <class S>
struct Measure {
    std::vector<S> weights;  // iota-indexed (offset iota - 1)
    bool normalized = false;
};

/** Reversible weight pi(eta) = q^{-E(eta)}. */
template <class S>
S reversible_weight(const Config& c, const QContext<S>& ctx) {
    return ctx.qpow(-energy(c));
}

/** Canonical partition function C_L(N) = [L]_q! / prod_alpha [N^alpha]_q!. */
template <class S>
S canonical_partition(const Lattice& lat, const Counts& ct,
                      const QContext<S>& ctx) {
    long total = 0;
    for (long v : ct.N) total += v;
    if (total != lat.size())
        throw std::invalid_argument("counts do not fill the lattice");
    S r = qfactorial(lat.size(), ctx);
    for (long v : ct.N) r = r / qfactorial(v, ctx);
    return r;
}

/** Iterate all (n+1)^L configurations on the lattice. */
template <class F>
void for_each_config(const Lattice& lat, int n, F&& f) {
    long dim = state_dim(n, lat.size());
    for (long i = 1; i <= dim; ++i) f(basis_config(i, lat, n));
}

/** Normalized measure q^{-E}/C on the particle-number sector of ct. */
template <class S>
Measure<S> canonical_measure(const Lattice& lat, int n, const Counts& ct,
                             const QContext<S>& ctx) {
    Measure<S> m;
    m.weights.assign(state_dim(n, lat.size()), scalar_traits<S>::zero());
    S Z = canonical_partition(lat, ct, ctx);
    for_each_config(lat, n, [&](const Config& c) {
        if (counts(c).N == ct.N)
            m.weights[basis_index(c) - 1] = reversible_weight(c, ctx) / Z;
    });
    m.normalized = true;
    return m;
}

/**
 * Grand-canonical partition function with fugacities z_alpha = e^{mu_alpha},
 * alpha = 1..n: sum over all sectors of prod z^{N^alpha} C_L(N).
 */
template <class S>
S grand_partition(const Lattice& lat, int n, const std::vector<S>& z,
                  const QContext<S>& ctx) {
    if (static_cast<long>(z.size()) != n)
        throw std::invalid_argument("need one fugacity per species 1..n");
    S total = scalar_traits<S>::zero();
    // Enumerate sectors N^1..N^n with sum <= L.
    std::vector<long> N(n + 1, 0);
    std::function<void(int, long)> rec = [&](int a, long used) {
        if (a > n) {
            N[0] = lat.size() - used;
            Counts ct;
            ct.N = N;
            S term = canonical_partition(lat, ct, ctx);
            for (int b = 1; b <= n; ++b) term = term * spow(z[b - 1], N[b]);
            total = total + term;
            return;
        }
        for (long v = 0; v + used <= lat.size(); ++v) {
            N[a] = v;
            rec(a + 1, used + v);
        }
    };
    rec(1, 0);
    return total;
}

/** n = 1 product form: prod_k (1 + z q^{2k - l_plus - l_minus}). */
template <class S>
S grand_partition_product(const Lattice& lat, const S& z,
                          const QContext<S>& ctx) {
    S r = scalar_traits<S>::one();
    for (long k = lat.l_minus; k <= lat.l_plus; ++k)
        r = r * (scalar_traits<S>::one() +
                 z * ctx.qpow(2 * k - lat.l_plus - lat.l_minus));
    return r;
}

/**
 * Blocking measure for a species pair alpha < beta: product measure with
 * site marginals 1/(1+lambda q^{2k}) on alpha and lambda q^{2k}/(1+...) on
 * beta, zero weight on configurations containing any other species.
 */
template <class S>
Measure<S> blocking_measure(const Lattice& lat, int n, int alpha, int beta,
                            const S& lambda, const QContext<S>& ctx) {
    if (!(alpha < beta) || alpha < 0 || beta > n)
        throw std::invalid_argument("need 0 <= alpha < beta <= n");
    Measure<S> m;
    m.weights.assign(state_dim(n, lat.size()), scalar_traits<S>::zero());
    for_each_config(lat, n, [&](const Config& c) {
        S w = scalar_traits<S>::one();
        bool ok = true;
        for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
            S denom = scalar_traits<S>::one() + lambda * ctx.qpow(2 * k);
            if (c.at(k) == alpha)
                w = w / denom;
            else if (c.at(k) == beta)
                w = w * lambda * ctx.qpow(2 * k) / denom;
            else {
                ok = false;
                break;
            }
        }
        if (ok) m.weights[basis_index(c) - 1] = w;
    });
    m.normalized = true;
    return m;
}

/**
 * Detailed balance check: mu(eta') w_{eta' eta} = mu(eta) w_{eta eta'} on
 * every off-diagonal entry. Returns the max violation (exact 0 on pass).
 */
template <class S>
S check_detailed_balance(const SparseOp<S>& H, const Measure<S>& m) {
    S worst = scalar_traits<S>::zero();
    H.for_each([&](long i, long j, const S& v) {
        if (i == j) return;
        bool zi = m.weights[i] == scalar_traits<S>::zero();
        bool zj = m.weights[j] == scalar_traits<S>::zero();
        if (zi && zj) return;
        if (zi != zj)
            throw std::domain_error(
                "measure vanishes on a reachable configuration");
        // H stores -rates off-diagonal; signs cancel in the comparison.
        S lhs = m.weights[j] * v;
        S rhs = m.weights[i] * H.get(j, i);
        S d = scalar_traits<S>::abs(lhs - rhs);
        if (d > worst) worst = d;
    });
    return worst;
}

/** Diagonal operator of a measure's weights. */
template <class S>
SparseOp<S> diag_of(const Measure<S>& m) {
    return SparseOp<S>::diagonal(m.weights);
}

/** CSV export `index,eta,weight` with eta rendered as a digit string. */
template <class S>
void export_measure_csv(std::ostream& os, const Measure<S>& m,
                        const Lattice& lat, int n) {
    os << "index,eta,weight\n";
    for (long i = 1; i <= static_cast<long>(m.weights.size()); ++i) {
        Config c = basis_config(i, lat, n);
        os << i << ",";
        for (int v : c.eta) os << v;
        os << "," << scalar_traits<S>::str(m.weights[i - 1]) << "\n";
    }
}

}  // namespace pasep
