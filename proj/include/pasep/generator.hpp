/**
 * @file generator.hpp
 * @brief Transition rates and the exact sparse generator in quantum
 * Hamiltonian form.
 *
 * H stores the positive exit rates on the diagonal and the negated hop rates
 * off-diagonal, so columns sum to zero. Basis order is the positional iota
 * index with the leftmost site as least significant digit.
 */
#pragma once

#include <cstdlib>
#include <string>

#include "model.hpp"
#include "scalar.hpp"
#include "sparse.hpp"

namespace pasep {

template <class S>
struct RateParams {
    S w;
    QContext<S> ctx;
    int n = 1;

    RateParams(const S& w_, const QContext<S>& ctx_, int n_)
        : w(w_), ctx(ctx_), n(n_) {
        if (!(scalar_traits<S>::to_double(w) > 0.0))
            throw std::invalid_argument("w must be positive");
    }
};

/** Default cap on (n+1)^L, overridable via PRIORITY_ASEP_DIM_CAP. */
inline long dimension_cap() {
    if (const char* env = std::getenv("PRIORITY_ASEP_DIM_CAP")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 200000;
}

/** State space dimension (n+1)^L, or -1 on overflow. */
inline long state_dim(int n, long L) {
    long d = 1;
    for (long k = 0; k < L; ++k) {
        if (d > (1L << 62) / (n + 1)) return -1;
        d *= n + 1;
    }
    return d;
}

/** Rate for swapping the (discordant) pair at bond (k, k+1). */
template <class S>
S hop_rate(const Config& c, long k, const RateParams<S>& p) {
    if (k >= c.lattice.l_plus)
        throw std::invalid_argument("hop_rate: k must be < l_plus");
    int s = sgn(c.at(k) - c.at(k + 1));
    if (s == 0) return scalar_traits<S>::zero();
    return p.w * p.ctx.qpow(s);
}

/** iota(eta) = 1 + sum_k eta_k (n+1)^{k - l_minus}. */
inline long basis_index(const Config& c) {
    long idx = 0;
    long place = 1;
    for (int v : c.eta) {
        idx += v * place;
        place *= c.n + 1;
    }
    return idx + 1;
}

inline Config basis_config(long i, const Lattice& lat, int n) {
    long dim = state_dim(n, lat.size());
    if (i < 1 || i > dim) throw std::out_of_range("basis index out of range");
    std::vector<int> eta(lat.size());
    long r = i - 1;
    for (long k = 0; k < lat.size(); ++k) {
        eta[k] = static_cast<int>(r % (n + 1));
        r /= n + 1;
    }
    return Config(lat, n, std::move(eta));
}

/**
 * Build the generator H = sum_k h_{k,k+1}: for every discordant bond the
 * swap rate enters negated off-diagonal and positively on the diagonal.
 */
template <class S>
SparseOp<S> build_H(const Lattice& lat, const RateParams<S>& p) {
    long dim = state_dim(p.n, lat.size());
    if (dim < 0 || dim > dimension_cap())
        throw std::length_error("state dimension (n+1)^L exceeds cap " +
                                std::to_string(dimension_cap()));
    SparseOp<S> H(dim);
    for (long i = 1; i <= dim; ++i) {
        Config c = basis_config(i, lat, p.n);
        for (long k = lat.l_minus; k < lat.l_plus; ++k) {
            S r = hop_rate(c, k, p);
            if (r == scalar_traits<S>::zero()) continue;
            Config cp = local_permute(c, k);
            H.add(basis_index(cp) - 1, i - 1, scalar_traits<S>::zero() - r);
            H.add(i - 1, i - 1, r);
        }
    }
    return H;
}

/** Generator action L f(eta) = -sum_{eta'} f(eta') H_{eta' eta}. */
template <class S>
S apply_generator(const std::vector<S>& f, const Config& c,
                  const SparseOp<S>& H) {
    long j = basis_index(c) - 1;
    S r = scalar_traits<S>::zero();
    for (const auto& [i, v] : H.column(j)) r = r - f[i] * v;
    return r;
}

/** Instantaneous current of species alpha across bond (k, k+1). */
template <class S>
S current_n(const Config& c, long k, int alpha, const RateParams<S>& p) {
    if (k < c.lattice.l_minus || k >= c.lattice.l_plus)
        return scalar_traits<S>::zero();
    S cur = scalar_traits<S>::zero();
    int a = c.at(k), b = c.at(k + 1);
    // Rightward swap moves eta_k right; count signed transfer of species alpha.
    if (a != b) {
        S rplus = p.w * p.ctx.qpow(sgn(a - b)) ;
        if (a == alpha) cur = cur + rplus;
        if (b == alpha) cur = cur - rplus;
    }
    return cur;
}

/** Decoupled current of the cumulative indicator m^alpha across (k, k+1). */
template <class S>
S current_m(const Config& c, long k, int alpha, const RateParams<S>& p) {
    if (k < c.lattice.l_minus || k >= c.lattice.l_plus)
        return scalar_traits<S>::zero();
    long mk = indicator_m(c, k, alpha);
    long mk1 = indicator_m(c, k + 1, alpha);
    return p.w * (p.ctx.qpow(1) * scalar_traits<S>::from_long(mk * (1 - mk1)) -
                  p.ctx.qpow(-1) *
                      scalar_traits<S>::from_long((1 - mk) * mk1));
}

}  // namespace pasep
