/**
 * @file algebra.hpp
 * @brief U_q[gl(n+1)] representation matrices, symmetry checks and duality
 * functions.
 *
 * Single-site operators are (n+1)x(n+1) dense matrices; global operators are
 * sparse Kronecker embeddings consistent with the iota basis (leftmost site =
 * least significant digit). The ladder sums Y, the exponential-like sums
 * Upsilon and the duality matrix pi^{-1} Upsilon+_1 ... Upsilon+_n follow the
 * ground-state transformed representation, which uses integer powers of q
 * only; the X representation needs a declared square root of q.
 */
#pragma once

#include <optional>
#include <vector>

#include "generator.hpp"
#include "measures.hpp"
#include "model.hpp"
#include "qcalc.hpp"
#include "scalar.hpp"
#include "sparse.hpp"

namespace pasep {

/** Dense single-site operator on C^{n+1}. */
template <class S>
struct SiteOp {
    int n;
    std::vector<S> m;  // (n+1)^2 entries, row-major

    explicit SiteOp(int n_)
        : n(n_), m((n_ + 1) * (n_ + 1), scalar_traits<S>::zero()) {}

    S& at(int r, int c) { return m[r * (n + 1) + c]; }
    const S& at(int r, int c) const { return m[r * (n + 1) + c]; }

    static SiteOp identity(int n) {
        SiteOp o(n);
        for (int a = 0; a <= n; ++a) o.at(a, a) = scalar_traits<S>::one();
        return o;
    }
    /** sigma^{alpha,+} = |alpha-1)(alpha|. */
    static SiteOp sigma_plus(int n, int alpha) {
        SiteOp o(n);
        o.at(alpha - 1, alpha) = scalar_traits<S>::one();
        return o;
    }
    /** sigma^{alpha,-} = |alpha)(alpha-1|. */
    static SiteOp sigma_minus(int n, int alpha) {
        SiteOp o(n);
        o.at(alpha, alpha - 1) = scalar_traits<S>::one();
        return o;
    }
    /** sigma^{alpha beta} = |alpha)(beta|. */
    static SiteOp sigma(int n, int alpha, int beta) {
        SiteOp o(n);
        o.at(alpha, beta) = scalar_traits<S>::one();
        return o;
    }
    /** Projector n_hat^alpha = |alpha)(alpha|. */
    static SiteOp n_hat(int n, int alpha) {
        SiteOp o(n);
        o.at(alpha, alpha) = scalar_traits<S>::one();
        return o;
    }
    /** Cyclic flip gamma: |alpha) -> |alpha - 1 mod n+1). */
    static SiteOp gamma(int n) {
        SiteOp o(n);
        for (int a = 0; a <= n; ++a)
            o.at((a + n) % (n + 1), a) = scalar_traits<S>::one();
        return o;
    }
};

/** Embed a site operator at site k: identity everywhere else. */
template <class S>
SparseOp<S> embed(const SiteOp<S>& a, long k, const Lattice& lat) {
    int n = a.n;
    long dim = state_dim(n, lat.size());
    long place = 1;
    for (long l = lat.l_minus; l < k; ++l) place *= n + 1;
    SparseOp<S> op(dim);
    for (long j = 0; j < dim; ++j) {
        int d = static_cast<int>((j / place) % (n + 1));
        for (int r = 0; r <= n; ++r) {
            const S& v = a.at(r, d);
            if (v == scalar_traits<S>::zero()) continue;
            op.add(j + static_cast<long>(r - d) * place, j, v);
        }
    }
    return op;
}

/** Diagonal operator with entries f(eta) over the iota basis. */
template <class S, class F>
SparseOp<S> diagonal_operator(const Lattice& lat, int n, F&& f) {
    long dim = state_dim(n, lat.size());
    SparseOp<S> op(dim);
    for (long i = 1; i <= dim; ++i)
        op.set(i - 1, i - 1, f(basis_config(i, lat, n)));
    return op;
}

/** pi_hat^c: diagonal q^{-c E(eta)} for integer c. */
template <class S>
SparseOp<S> pi_hat_pow(const Lattice& lat, int n, const QContext<S>& ctx,
                       long c = 1) {
    return diagonal_operator<S>(
        lat, n, [&](const Config& e) { return ctx.qpow(-c * energy(e)); });
}

/** pi_hat^{c/2}: diagonal q^{-c E(eta)/2}; needs sqrt_q for odd energies. */
template <class S>
SparseOp<S> pi_hat_half_pow(const Lattice& lat, int n, const QContext<S>& ctx,
                            long c) {
    return diagonal_operator<S>(lat, n, [&](const Config& e) {
        return ctx.qpow_half(-c * energy(e));
    });
}

/** Number operator N^alpha as a diagonal matrix. */
template <class S>
SparseOp<S> rep_N(int alpha, const Lattice& lat, int n,
                  const QContext<S>& ctx) {
    (void)ctx;
    return diagonal_operator<S>(lat, n, [&](const Config& e) {
        return scalar_traits<S>::from_long(counts(e).N[alpha]);
    });
}

/**
 * Coproduct representation X^{alpha,+/-}: site ladder operators dressed with
 * half-integer powers of the Cartan fields h^alpha = n^{alpha-1} - n^alpha.
 */
template <class S>
SparseOp<S> rep_X(int alpha, int sign, const Lattice& lat, int n,
                  const QContext<S>& ctx) {
    long dim = state_dim(n, lat.size());
    SparseOp<S> op(dim);
    for (long i = 1; i <= dim; ++i) {
        Config e = basis_config(i, lat, n);
        for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
            int from = sign > 0 ? alpha : alpha - 1;
            int to = sign > 0 ? alpha - 1 : alpha;
            if (e.at(k) != from) continue;
            long hl = 0, hr = 0;  // sums of h^alpha over l<k and l>k
            for (long l = lat.l_minus; l < k; ++l)
                hl += indicator_n(e, l, alpha - 1) - indicator_n(e, l, alpha);
            for (long l = k + 1; l <= lat.l_plus; ++l)
                hr += indicator_n(e, l, alpha - 1) - indicator_n(e, l, alpha);
            Config ep = e;
            ep.at(k) = to;
            op.add(basis_index(ep) - 1, i - 1, ctx.qpow_half(hl - hr));
        }
    }
    return op;
}

/**
 * Ground-state transformed ladder sum Y^{+/-}_alpha. Per-site coefficients
 * reduce to integer powers of the particle balances: q^{-N^alpha_k} for the
 * raising and q^{+N^{alpha-1}_k} for the lowering direction.
 */
template <class S>
SparseOp<S> rep_Y(int alpha, int sign, const Lattice& lat, int n,
                  const QContext<S>& ctx) {
    long dim = state_dim(n, lat.size());
    SparseOp<S> op(dim);
    for (long i = 1; i <= dim; ++i) {
        Config e = basis_config(i, lat, n);
        for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
            if (sign > 0) {
                if (e.at(k) != alpha) continue;
                Config ep = e;
                ep.at(k) = alpha - 1;
                op.add(basis_index(ep) - 1, i - 1,
                       ctx.qpow(-balance(e, k, alpha)));
            } else {
                if (e.at(k) != alpha - 1) continue;
                Config ep = e;
                ep.at(k) = alpha;
                op.add(basis_index(ep) - 1, i - 1,
                       ctx.qpow(balance(e, k, alpha - 1)));
            }
        }
    }
    return op;
}

/** Upsilon^{+/-}_alpha = sum_{l=0}^{L} (Y^{+/-}_alpha)^l / [l]_q!. */
template <class S>
SparseOp<S> upsilon(int alpha, int sign, const Lattice& lat, int n,
                    const QContext<S>& ctx) {
    SparseOp<S> Y = rep_Y(alpha, sign, lat, n, ctx);
    SparseOp<S> total = SparseOp<S>::identity(Y.dim());
    SparseOp<S> power = SparseOp<S>::identity(Y.dim());
    for (long l = 1; l <= lat.size(); ++l) {
        power = Y * power;
        if (power.nnz() == 0) break;
        total = total + power.scaled(
                            scalar_traits<S>::inv(qfactorial(l, ctx)));
    }
    return total;
}

/** Max violation of [H, N^alpha] = [H, Y^{+/-}_alpha] = 0 over all alpha. */
template <class S>
S verify_symmetry(const SparseOp<S>& H, const Lattice& lat, int n,
                  const QContext<S>& ctx) {
    S worst = scalar_traits<S>::zero();
    auto note = [&](const SparseOp<S>& c) {
        S v = c.max_abs();
        if (v > worst) worst = v;
    };
    for (int a = 1; a <= n; ++a) {
        note(commutator(H, rep_N<S>(a, lat, n, ctx)));
        note(commutator(H, rep_Y<S>(a, +1, lat, n, ctx)));
        note(commutator(H, rep_Y<S>(a, -1, lat, n, ctx)));
    }
    return worst;
}

/**
 * Duality matrix D = pi^{-1} Upsilon+_1 ... Upsilon+_n. A custom product
 * order/sign list may be supplied for the variant duality matrices; only the
 * default order is checked against the closed form.
 */
template <class S>
SparseOp<S> duality_matrix(
    const Lattice& lat, int n, const QContext<S>& ctx,
    const std::optional<std::vector<std::pair<int, int>>>& product =
        std::nullopt) {
    SparseOp<S> D = pi_hat_pow(lat, n, ctx, -1);
    std::vector<std::pair<int, int>> order;
    if (product) {
        order = *product;
    } else {
        for (int a = 1; a <= n; ++a) order.emplace_back(a, +1);
    }
    for (auto [a, sign] : order) D = D * upsilon(a, sign, lat, n, ctx);
    return D;
}

namespace detail {
template <class S>
S q_to_scalar_power(const QContext<S>& ctx, const S& e);

template <>
inline double q_to_scalar_power<double>(const QContext<double>& ctx,
                                        const double& e) {
    return std::pow(ctx.q, e);
}

template <>
inline mpq_class q_to_scalar_power<mpq_class>(const QContext<mpq_class>& ctx,
                                              const mpq_class& e) {
    if (e.get_den() != 1)
        throw std::domain_error(
            "exact mode requires integer exponents of q (c outside Z)");
    return ctx.qpow(e.get_num().get_si());
}
}  // namespace detail

/**
 * Closed-form duality function D(x, eta; c) = prod_i Qt^{alpha_i}_{x_i},
 * Qt^{a}_k(eta; c) = q^{-(1+c) #empties-left + (1-c) #empties-right} m^a_k,
 * where "empty" counts sites with m^a = 0.
 */
template <class S>
S duality_value(const CoordConfig& x, const Config& e,
                const std::vector<S>& cvec, const QContext<S>& ctx) {
    S r = scalar_traits<S>::one();
    for (long i = 0; i < x.N(); ++i) {
        long k = x.positions[i];
        int a = x.colours[i];
        if (!indicator_m(e, k, a)) return scalar_traits<S>::zero();
        long left = 0, right = 0;
        for (long l = e.lattice.l_minus; l < k; ++l)
            left += 1 - indicator_m(e, l, a);
        for (long l = k + 1; l <= e.lattice.l_plus; ++l)
            right += 1 - indicator_m(e, l, a);
        S c = cvec.empty() ? scalar_traits<S>::zero()
                           : cvec.at(static_cast<std::size_t>(a - 1));
        S one = scalar_traits<S>::one();
        S expo = (scalar_traits<S>::zero() - (one + c)) *
                     scalar_traits<S>::from_long(left) +
                 (one - c) * scalar_traits<S>::from_long(right);
        r = r * detail::q_to_scalar_power(ctx, expo);
    }
    return r;
}

/** Cole-Hopf type observable Q^alpha_k = m^alpha_k q^{M^alpha_k}. */
template <class S>
S q_observable(const Config& e, long k, int alpha, const QContext<S>& ctx) {
    if (!indicator_m(e, k, alpha)) return scalar_traits<S>::zero();
    return ctx.qpow(balance_m(e, k, alpha));
}

/** Linear current J^alpha_k = w (q Q^alpha_k - q^{-1} Q^alpha_{k+1}). */
template <class S>
S q_current(const Config& e, long k, int alpha, const RateParams<S>& p) {
    if (k < e.lattice.l_minus || k >= e.lattice.l_plus)
        return scalar_traits<S>::zero();
    return p.w * (p.ctx.qpow(1) * q_observable(e, k, alpha, p.ctx) -
                  p.ctx.qpow(-1) * q_observable(e, k + 1, alpha, p.ctx));
}

/** Global cyclic flip matrix Gamma: |eta> -> |eta - 1 mod n+1 per site>. */
template <class S>
SparseOp<S> global_gamma(const Lattice& lat, int n) {
    long dim = state_dim(n, lat.size());
    SparseOp<S> op(dim);
    for (long i = 1; i <= dim; ++i) {
        Config e = basis_config(i, lat, n);
        Config down = e;
        for (int& v : down.eta) v = (v + n) % (n + 1);
        op.set(basis_index(down) - 1, i - 1, scalar_traits<S>::one());
    }
    return op;
}

/** V^alpha: diagonal q^{sum_k N^alpha_k(eta)}. */
template <class S>
SparseOp<S> v_hat(int alpha, const Lattice& lat, int n,
                  const QContext<S>& ctx) {
    return diagonal_operator<S>(lat, n, [&](const Config& e) {
        long s = 0;
        for (long k = lat.l_minus; k <= lat.l_plus; ++k)
            s += balance(e, k, alpha);
        return ctx.qpow(s);
    });
}

}  // namespace pasep
