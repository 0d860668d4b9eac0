/**
 * @file qcalc.hpp
 * @brief Symmetric q-numbers, q-factorials and q-binomial coefficients.
 *
 * [c]_q = (q^c - q^{-c})/(q - q^{-1}) with the limit [c]_1 = c, and the
 * derived factorials and binomials. These are the combinatorial building
 * blocks of the canonical partition functions and the Upsilon operator sums.
 */
#pragma once

#include <stdexcept>

#include "scalar.hpp"

namespace pasep {

/** Symmetric q-number [c]_q; the q = 1 case is an explicit limit branch. */
template <class S>
S qnum(long c, const QContext<S>& ctx) {
    if (ctx.is_one()) return scalar_traits<S>::from_long(c);
    return (ctx.qpow(c) - ctx.qpow(-c)) / (ctx.q - ctx.qpow(-1));
}

/** q-factorial [n]_q! = prod_{k=1}^n [k]_q, with [0]_q! = 1. */
template <class S>
S qfactorial(long n, const QContext<S>& ctx) {
    if (n < 0) throw std::invalid_argument("qfactorial: negative argument");
    S r = scalar_traits<S>::one();
    for (long k = 2; k <= n; ++k) r = r * qnum(k, ctx);
    return r;
}

/** q-binomial [n choose k]_q = [n]_q! / ([k]_q! [n-k]_q!). */
template <class S>
S qbinom(long n, long k, const QContext<S>& ctx) {
    if (k < 0 || n < 0 || k > n)
        throw std::invalid_argument("qbinom: require 0 <= k <= n");
    return qfactorial(n, ctx) / (qfactorial(k, ctx) * qfactorial(n - k, ctx));
}

}  // namespace pasep
