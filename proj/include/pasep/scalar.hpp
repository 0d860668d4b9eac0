/**
 * @file scalar.hpp
 * @brief Scalar abstraction for exact-rational and floating computation modes.
 *
 * The whole library is templated on a scalar type S. Two instantiations are
 * supported: mpq_class (exact mode, arithmetic closed over the rationals) and
 * double (float mode, used by the simulator and its predictions). QContext
 * carries the deformation parameter q together with an optional exact square
 * root, needed only by operators with half-integer powers of q.
 */
#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace pasep {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<mpq_class> {
    static constexpr bool exact = true;
    static mpq_class zero() { return mpq_class(0); }
    static mpq_class one() { return mpq_class(1); }
    static mpq_class from_long(long v) { return mpq_class(v); }
    static mpq_class from_ratio(long num, long den) {
        mpq_class r(num, den);
        r.canonicalize();
        return r;
    }
    static mpq_class abs(const mpq_class& v) { return ::abs(v); }
    static double to_double(const mpq_class& v) { return v.get_d(); }
    static mpq_class inv(const mpq_class& v) {
        if (v == 0) throw std::domain_error("division by zero");
        return mpq_class(1) / v;
    }
    static std::string str(const mpq_class& v) { return v.get_str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_long(long v) { return static_cast<double>(v); }
    static double from_ratio(long num, long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
    static double inv(double v) { return 1.0 / v; }
    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
};

/** Integer power by repeated squaring; e may be negative. */
template <class S>
S spow(const S& base, long e) {
    if (e < 0) return scalar_traits<S>::inv(spow(base, -e));
    S r = scalar_traits<S>::one();
    S b = base;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/**
 * @brief Computation context: the deformation parameter q (q >= 1 by the
 * model convention q^{-1} in (0,1]) and an optional exact square root,
 * declared by the user when q = s^2.
 */
template <class S>
struct QContext {
    S q;
    std::optional<S> sqrt_q;

    explicit QContext(const S& q_) : q(q_) {
        if (!(scalar_traits<S>::to_double(q) > 0.0))
            throw std::invalid_argument("q must be positive");
    }
    QContext(const S& q_, const S& sqrt_q_) : q(q_), sqrt_q(sqrt_q_) {
        if (sqrt_q_ * sqrt_q_ != q_)
            throw std::invalid_argument("sqrt_q^2 != q");
    }

    bool is_one() const { return q == scalar_traits<S>::one(); }

    /** q^e for integer e. */
    S qpow(long e) const { return spow(q, e); }

    /** q^{e/2} for integer e; requires sqrt_q when e is odd. */
    S qpow_half(long e) const {
        if (e % 2 == 0) return qpow(e / 2);
        if (!sqrt_q)
            throw std::domain_error(
                "half-integer power of q requires q declared as a perfect "
                "square");
        return spow(*sqrt_q, e);
    }
};

}  // namespace pasep
