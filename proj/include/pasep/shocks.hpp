/**
 * @file shocks.hpp
 * @brief Shock measures, the ground-state/flip transformation, the boundary
 * matrix, the shock exclusion process rates and the exact finite-lattice
 * shock evolution identity.
 *
 * Marker bookkeeping: a shock configuration x carries K marker positions and
 * marker types alpha in {1..n}. As a state of the dual ASEP the marker is a
 * species-alpha particle; under the shock measure its site holds species
 * alpha-1 deterministically; as a shock-process colour it counts as alpha-1.
 */
#pragma once

#include <vector>

#include "algebra.hpp"
#include "generator.hpp"
#include "measures.hpp"
#include "model.hpp"
#include "scalar.hpp"
#include "sparse.hpp"

namespace pasep {

template <class S>
struct ShockConfig {
    std::vector<long> positions;  // strictly increasing marker sites
    std::vector<int> types;       // marker types in {1..n}
    int n;
    S w;
    QContext<S> ctx;
    S q_lambda;     // q^lambda as a scalar (exact for integer lambda)
    double lambda;  // kept for reporting

    ShockConfig(std::vector<long> pos, std::vector<int> ty, int n_, const S& w_,
                const QContext<S>& ctx_, const S& q_lambda_, double lambda_)
        : positions(std::move(pos)),
          types(std::move(ty)),
          n(n_),
          w(w_),
          ctx(ctx_),
          q_lambda(q_lambda_),
          lambda(lambda_) {
        if (positions.empty() || positions.size() != types.size())
            throw std::invalid_argument("need K >= 1 markers with types");
        for (std::size_t i = 1; i < positions.size(); ++i)
            if (positions[i] <= positions[i - 1])
                throw std::invalid_argument("positions must increase");
        for (int t : types)
            if (t < 1 || t > n)
                throw std::invalid_argument("marker type out of range");
    }

    long K() const { return static_cast<long>(positions.size()); }

    /** Convenience constructor with integer lambda (exact mode safe). */
    static ShockConfig with_integer_lambda(std::vector<long> pos,
                                           std::vector<int> ty, int n,
                                           const S& w, const QContext<S>& ctx,
                                           long lambda) {
        return ShockConfig(std::move(pos), std::move(ty), n, w, ctx,
                           ctx.qpow(lambda), static_cast<double>(lambda));
    }
};

/** Segment density rho_j = q^{2j-K+lambda} / (1 + q^{2j-K+lambda}). */
template <class S>
S shock_marginal(long j, const ShockConfig<S>& s) {
    if (j < 0 || j > s.K())
        throw std::invalid_argument("segment index out of range");
    S t = s.ctx.qpow(2 * j - s.K()) * s.q_lambda;
    return t / (scalar_traits<S>::one() + t);
}

/**
 * Shock product measure on the window: species type-1 deterministically at
 * marker sites, Bernoulli(rho_j) mixtures of species n and vacancies between.
 */
template <class S>
Measure<S> shock_measure(const ShockConfig<S>& s, const Lattice& lat) {
    for (long p : s.positions)
        if (!lat.contains(p))
            throw std::invalid_argument("marker outside lattice");
    std::vector<S> rho;
    for (long j = 0; j <= s.K(); ++j) rho.push_back(shock_marginal(j, s));
    Measure<S> m;
    m.weights.assign(state_dim(s.n, lat.size()), scalar_traits<S>::zero());
    for_each_config(lat, s.n, [&](const Config& c) {
        S w = scalar_traits<S>::one();
        long seg = 0;        // current segment index
        std::size_t mi = 0;  // next marker
        for (long k = lat.l_minus; k <= lat.l_plus; ++k) {
            if (mi < s.positions.size() && k == s.positions[mi]) {
                if (c.at(k) != s.types[mi] - 1) return;
                ++mi;
                ++seg;
                continue;
            }
            if (c.at(k) == s.n)
                w = w * rho[seg];
            else if (c.at(k) == 0)
                w = w * (scalar_traits<S>::one() - rho[seg]);
            else
                return;
        }
        m.weights[basis_index(c) - 1] = w;
    });
    m.normalized = true;
    return m;
}

template <class S>
struct ShockRates {
    std::vector<S> v;        // v_i, i = 1..K (index 0 = particle 1)
    std::vector<S> w_plus;   // w v_i
    std::vector<S> w_minus;  // w / v_i
};

/** Hop-rate factors v_i and jump rates of the shock exclusion process. */
template <class S>
ShockRates<S> shock_rates(const ShockConfig<S>& s) {
    ShockRates<S> r;
    S qmqi = s.ctx.qpow(1) - s.ctx.qpow(-1);
    for (long i = 1; i <= s.K(); ++i) {
        S ri = shock_marginal(i, s);
        S rim = shock_marginal(i - 1, s);
        S vi = qmqi * ri * (scalar_traits<S>::one() - ri) / (ri - rim);
        r.v.push_back(vi);
        r.w_plus.push_back(s.w * vi);
        r.w_minus.push_back(s.w / vi);
    }
    return r;
}

/**
 * Colour exchange rate for adjacent markers carrying shock-process colours
 * b1, b2 (= marker type - 1). The bias among colours >= 1 is inverted
 * relative to the ASEP; colour 0 on the right exchanges at wq, on the left
 * at wq^{-1}.
 */
template <class S>
S colour_exchange_rate(int b1, int b2, const S& w, const QContext<S>& ctx) {
    if (b1 > 0 && b2 > 0) {
        if (b1 == b2) return scalar_traits<S>::zero();
        return w * ctx.qpow(sgn(b2 - b1));
    }
    if (b1 > 0 && b2 == 0) return w * ctx.qpow(1);
    if (b1 == 0 && b2 > 0) return w * ctx.qpow(-1);
    return scalar_traits<S>::zero();
}

template <class S>
struct ShockPrediction {
    std::vector<S> v;  // drift of marker i
    std::vector<S> D;  // diffusion coefficient of marker i
};

/** Predicted per-marker drift and diffusion coefficients. */
template <class S>
ShockPrediction<S> shock_predictions(const ShockConfig<S>& s) {
    ShockPrediction<S> p;
    S qmqi = s.ctx.qpow(1) - s.ctx.qpow(-1);
    S half = scalar_traits<S>::from_ratio(1, 2);
    for (long i = 1; i <= s.K(); ++i) {
        S ri = shock_marginal(i, s);
        S rim = shock_marginal(i - 1, s);
        p.v.push_back(s.w * qmqi *
                      (scalar_traits<S>::one() - ri - rim));
        p.D.push_back(half * s.w * qmqi *
                      (ri * (scalar_traits<S>::one() - ri) +
                       rim * (scalar_traits<S>::one() - rim)) /
                      (ri - rim));
    }
    return p;
}

/** Geometric gap-law parameter p_i for interior gap i in 1..K-1. */
template <class S>
S stationary_gap_law(const ShockConfig<S>& s, long i) {
    if (i < 1 || i >= s.K())
        throw std::invalid_argument("gap index must be in 1..K-1");
    S r0 = shock_marginal(0, s);
    S ri = shock_marginal(i, s);
    S rK = shock_marginal(s.K(), s);
    return (rK - ri) * (ri - r0) / (ri * (scalar_traits<S>::one() - ri));
}

/** Composite transformation U^n = pi_hat V^n Gamma. */
template <class S>
SparseOp<S> transform_Un(const Lattice& lat, int n, const QContext<S>& ctx) {
    return pi_hat_pow(lat, n, ctx, 1) * v_hat(n, lat, n, ctx) *
           global_gamma<S>(lat, n);
}

/** Alternative form U^n = Gamma pi_bar with the reduced measure q^{-Ebar}. */
template <class S>
SparseOp<S> transform_Un_alt(const Lattice& lat, int n,
                             const QContext<S>& ctx) {
    return global_gamma<S>(lat, n) *
           diagonal_operator<S>(
               lat, n, [&](const Config& e) { return ctx.qpow(-energy_bar(e)); });
}

/** Inverse of U^n, using Gamma^T = Gamma^{-1} and diagonal inverses. */
template <class S>
SparseOp<S> transform_Un_inverse(const Lattice& lat, int n,
                                 const QContext<S>& ctx) {
    SparseOp<S> gamma_inv = global_gamma<S>(lat, n).transpose();
    SparseOp<S> vinv = diagonal_operator<S>(lat, n, [&](const Config& e) {
        long sum = 0;
        for (long k = lat.l_minus; k <= lat.l_plus; ++k)
            sum += balance(e, k, n);
        return ctx.qpow(-sum);
    });
    return gamma_inv * vinv * pi_hat_pow(lat, n, ctx, -1);
}

/** Boundary matrix B^gamma = w (q - q^{-1}) (n^g_{L+} - n^g_{L-}). */
template <class S>
SparseOp<S> boundary_B(const Lattice& lat, int n, int gamma, const S& w,
                       const QContext<S>& ctx) {
    S f = w * (ctx.qpow(1) - ctx.qpow(-1));
    return diagonal_operator<S>(lat, n, [&](const Config& e) -> S {
        return f * scalar_traits<S>::from_long(
                       indicator_n(e, lat.l_plus, gamma) -
                       indicator_n(e, lat.l_minus, gamma));
    });
}

/** Max violation of H^T = (U^n)^{-1} (H + B^n) U^n. */
template <class S>
S verify_intertwining(const SparseOp<S>& H, const Lattice& lat, int n,
                      const S& w, const QContext<S>& ctx) {
    SparseOp<S> Un = transform_Un(lat, n, ctx);
    SparseOp<S> rhs = transform_Un_inverse(lat, n, ctx) *
                      (H + boundary_B(lat, n, n, w, ctx)) * Un;
    return max_abs_diff(H.transpose(), rhs);
}

/** Occupation configuration of the dual state x (species = marker type). */
template <class S>
Config dual_config(const ShockConfig<S>& s, const Lattice& lat) {
    CoordConfig x;
    x.positions = s.positions;
    x.colours = s.types;
    return to_occupation(x, lat, s.n);
}

/**
 * Decorated duality vector v(eta) = D*(x, eta): sector projector on the
 * species counts >= 2, fugacity factor q^{lambda N^0(eta)} and the c = 0
 * duality function.
 */
template <class S>
std::vector<S> dstar_column(const ShockConfig<S>& s, const Lattice& lat) {
    Config xocc = dual_config(s, lat);
    Counts xct = counts(xocc);
    CoordConfig x = to_coords(xocc);
    long dim = state_dim(s.n, lat.size());
    std::vector<S> v(dim, scalar_traits<S>::zero());
    std::vector<S> c0;
    for (long i = 1; i <= dim; ++i) {
        Config e = basis_config(i, lat, s.n);
        Counts ect = counts(e);
        bool sector = true;
        for (int a = 2; a <= s.n; ++a)
            if (ect.N[a] != xct.N[a]) sector = false;
        if (!sector) continue;
        S val = duality_value(x, e, c0, s.ctx);
        if (val == scalar_traits<S>::zero()) continue;
        v[i - 1] = spow(s.q_lambda, ect.N[0]) * val;
    }
    return v;
}

/** Psi(x) = prod_{i=0}^{K} (1 + q^{2i-K+lambda})^{x_{i+1}-x_i-1}. */
template <class S>
S shock_psi(const ShockConfig<S>& s, const Lattice& lat) {
    S r = scalar_traits<S>::one();
    for (long i = 0; i <= s.K(); ++i) {
        long lo = i == 0 ? lat.l_minus - 1 : s.positions[i - 1];
        long hi = i == s.K() ? lat.l_plus + 1 : s.positions[i];
        S base = scalar_traits<S>::one() + s.ctx.qpow(2 * i - s.K()) *
                                               s.q_lambda;
        r = r * spow(base, hi - lo - 1);
    }
    return r;
}

/** Phi(x) = pi_barbar(x) Psi(x), the shock normalization. */
template <class S>
S shock_phi(const ShockConfig<S>& s, const Lattice& lat) {
    return s.ctx.qpow(-energy_barbar(dual_config(s, lat))) *
           shock_psi(s, lat);
}

/** Phi via the duality route <s| U^n (D*)^T |x> (sum of vector entries). */
template <class S>
S shock_phi_via_duality(const ShockConfig<S>& s, const Lattice& lat) {
    SparseOp<S> Un = transform_Un(lat, s.n, s.ctx);
    std::vector<S> v = Un.apply(dstar_column(s, lat));
    S total = scalar_traits<S>::zero();
    for (const S& e : v) total = total + e;
    return total;
}

/** Boundary constant b = w (q - q^{-1}) (rho_K - rho_0). */
template <class S>
S shock_b(const ShockConfig<S>& s) {
    return s.w * (s.ctx.qpow(1) - s.ctx.qpow(-1)) *
           (shock_marginal(s.K(), s) - shock_marginal(0, s));
}

/** All dual coordinate states with the colour multiset of the template s. */
template <class S>
std::vector<CoordConfig> shock_sector(const ShockConfig<S>& s,
                                      const Lattice& lat) {
    Counts want = counts(dual_config(s, lat));
    std::vector<CoordConfig> sector;
    for_each_config(lat, s.n, [&](const Config& c) {
        if (counts(c).N == want.N) sector.push_back(to_coords(c));
    });
    return sector;
}

template <class S>
ShockConfig<S> with_markers(const ShockConfig<S>& s, const CoordConfig& x) {
    return ShockConfig<S>(x.positions, x.colours, s.n, s.w, s.ctx, s.q_lambda,
                          s.lambda);
}

inline bool markers_interior(const CoordConfig& x, const Lattice& lat) {
    for (long p : x.positions)
        if (p <= lat.l_minus || p >= lat.l_plus) return false;
    return true;
}

/**
 * G = Phi_hat H Phi_hat^{-1} - b on the coordinate sector. Returned indexed
 * like `sector` (columns = source state), together with b.
 */
template <class S>
struct GMatrix {
    std::vector<CoordConfig> sector;
    SparseOp<S> G;
    S b;
};

template <class S>
GMatrix<S> build_G(const ShockConfig<S>& s, const Lattice& lat,
                   const SparseOp<S>& H) {
    GMatrix<S> g{shock_sector(s, lat), SparseOp<S>(0), shock_b(s)};
    long m = static_cast<long>(g.sector.size());
    std::vector<S> phi;
    std::vector<long> eta_index;
    for (const CoordConfig& x : g.sector) {
        phi.push_back(shock_phi(with_markers(s, x), lat));
        eta_index.push_back(
            basis_index(to_occupation(x, lat, s.n)) - 1);
    }
    g.G = SparseOp<S>(m);
    for (long cj = 0; cj < m; ++cj)
        for (long ri = 0; ri < m; ++ri) {
            S h = H.get(eta_index[ri], eta_index[cj]);
            if (h == scalar_traits<S>::zero() && ri != cj) continue;
            S val = phi[ri] * h / phi[cj];
            if (ri == cj) val = val - g.b;
            g.G.add(ri, cj, val);
        }
    return g;
}

/**
 * Exact finite-lattice checks: the duality representation of the shock
 * measure, the Phi normalization and the evolution identity
 * (H + B^n - b) mu_x = sum_y G_{yx} mu_y for every interior x.
 * Returns the max violation (exact 0 on pass).
 */
template <class S>
S verify_shock_evolution(const ShockConfig<S>& s, const Lattice& lat,
                         const SparseOp<S>& H) {
    S worst = scalar_traits<S>::zero();
    auto note = [&](const S& v) {
        S a = scalar_traits<S>::abs(v);
        if (a > worst) worst = a;
    };
    GMatrix<S> g = build_G(s, lat, H);
    SparseOp<S> Un = transform_Un(lat, s.n, s.ctx);
    SparseOp<S> HB = H + boundary_B(lat, s.n, s.n, s.w, s.ctx);
    long dim = H.dim();
    long m = static_cast<long>(g.sector.size());
    std::vector<std::vector<S>> mu;
    for (long j = 0; j < m; ++j)
        mu.push_back(
            shock_measure(with_markers(s, g.sector[j]), lat).weights);
    for (long j = 0; j < m; ++j) {
        const CoordConfig& x = g.sector[j];
        ShockConfig<S> sx = with_markers(s, x);
        // Duality representation of the measure and its normalization.
        S phi_closed = shock_phi(sx, lat);
        std::vector<S> dual_mu = Un.apply(dstar_column(sx, lat));
        S phi_dual = scalar_traits<S>::zero();
        for (const S& e : dual_mu) phi_dual = phi_dual + e;
        note(phi_closed - phi_dual);
        for (long i = 0; i < dim; ++i)
            note(dual_mu[i] / phi_closed - mu[j][i]);
        if (!markers_interior(x, lat)) continue;
        // Evolution identity, only claimed for interior marker states.
        std::vector<S> lhs = HB.apply(mu[j]);
        for (long i = 0; i < dim; ++i)
            lhs[i] = lhs[i] - g.b * mu[j][i];
        std::vector<S> rhs(dim, scalar_traits<S>::zero());
        for (const auto& [y, gv] : g.G.column(j))
            for (long i = 0; i < dim; ++i)
                rhs[i] = rhs[i] + gv * mu[y][i];
        for (long i = 0; i < dim; ++i) note(lhs[i] - rhs[i]);
    }
    return worst;
}

/** CSV export of the per-marker predictions. */
template <class S>
void export_shock_csv(std::ostream& os, const ShockConfig<S>& s) {
    ShockPrediction<S> p = shock_predictions(s);
    os << "i,rho_i,v_i,D_i,p_i\n";
    for (long i = 1; i <= s.K(); ++i) {
        os << i << "," << scalar_traits<S>::str(shock_marginal(i, s)) << ","
           << scalar_traits<S>::str(p.v[i - 1]) << ","
           << scalar_traits<S>::str(p.D[i - 1]) << ",";
        if (i < s.K())
            os << scalar_traits<S>::str(stationary_gap_law(s, i));
        os << "\n";
    }
}

}  // namespace pasep
