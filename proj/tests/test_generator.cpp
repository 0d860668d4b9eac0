/**
 * @file test_generator.cpp
 * @brief Hop rates, the sparse generator in quantum Hamiltonian form, and
 * the exact lattice continuity identities for the conserved currents.
 */
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "pasep/generator.hpp"
#include "pasep/sparse.hpp"

using namespace pasep;
using Q = mpq_class;

static Q frac(long n, long d) { return scalar_traits<Q>::from_ratio(n, d); }

TEST_CASE("hop rates follow the sign of the species difference") {
    Lattice lat(1, 2);
    QContext<Q> q2(Q(2));
    RateParams<Q> rp(Q(1), q2, 2);
    CHECK(hop_rate(Config(lat, 2, {2, 0}), 1, rp) == Q(2));
    CHECK(hop_rate(Config(lat, 2, {0, 2}), 1, rp) == frac(1, 2));
    CHECK(hop_rate(Config(lat, 2, {2, 1}), 1, rp) == Q(2));
    CHECK(hop_rate(Config(lat, 2, {1, 1}), 1, rp) == 0);
    CHECK_THROWS_AS(hop_rate(Config(lat, 2, {1, 1}), 2, rp),
                    std::invalid_argument);
    CHECK_THROWS_AS(RateParams<Q>(Q(0), q2, 1), std::invalid_argument);
}

TEST_CASE("basis index round-trips") {
    Lattice lat(-1, 3);
    for (long i = 1; i <= state_dim(2, lat.size()); ++i)
        CHECK(basis_index(basis_config(i, lat, 2)) == i);
    CHECK_THROWS_AS(basis_config(0, lat, 2), std::out_of_range);
}

TEST_CASE("two-site generator matches the hand-computed matrix") {
    // n=1, L=2, q=2, w=1: the only transitions are (1,0) <-> (0,1); the
    // rightward swap at rate 2, the leftward at rate 1/2.
    Lattice lat(1, 2);
    QContext<Q> q2(Q(2));
    auto H = build_H(lat, RateParams<Q>(Q(1), q2, 1));
    CHECK(H.get(1, 1) == Q(2));
    CHECK(H.get(2, 1) == Q(-2));
    CHECK(H.get(2, 2) == frac(1, 2));
    CHECK(H.get(1, 2) == frac(-1, 2));
    CHECK(H.get(0, 0) == 0);
    CHECK(H.get(3, 3) == 0);
    CHECK(H.nnz() == 4);
}

TEST_CASE("operator dump is 1-based, column-major, rational") {
    Lattice lat(1, 2);
    QContext<Q> q2(Q(2));
    auto H = build_H(lat, RateParams<Q>(Q(1), q2, 1));
    std::ostringstream os;
    H.dump(os);
    CHECK(os.str() == "2 2 2\n3 2 -2\n2 3 -1/2\n3 3 1/2\n");
}

TEST_CASE("columns sum to zero and sectors are preserved") {
    for (int n : {1, 2, 3})
        for (long L : {2L, 3L, 4L})
            for (Q q : {Q(1), frac(3, 2), Q(2)}) {
                Lattice lat(1, L);
                QContext<Q> ctx(q);
                auto H = build_H(lat, RateParams<Q>(Q(1), ctx, n));
                for (long j = 0; j < H.dim(); ++j)
                    CHECK(H.column_sum(j) == 0);
                H.for_each([&](long i, long j, const Q& v) {
                    if (v == 0) return;
                    CHECK(counts(basis_config(i + 1, lat, n)).N ==
                          counts(basis_config(j + 1, lat, n)).N);
                });
            }
}

TEST_CASE("off-diagonal entries are negated swap rates") {
    Lattice lat(1, 4);
    int n = 2;
    QContext<Q> ctx(frac(3, 2));
    RateParams<Q> rp(Q(1), ctx, n);
    auto H = build_H(lat, rp);
    for (long j = 1; j <= H.dim(); ++j) {
        Config c = basis_config(j, lat, n);
        for (long k = 1; k < 4; ++k) {
            Q r = hop_rate(c, k, rp);
            if (r == 0) continue;
            CHECK(H.get(basis_index(local_permute(c, k)) - 1, j - 1) == -r);
        }
    }
}

TEST_CASE("dimension cap raises and is environment-overridable") {
    QContext<Q> ctx(Q(2));
    CHECK_THROWS_AS(build_H(Lattice(1, 12), RateParams<Q>(Q(1), ctx, 3)),
                    std::length_error);
    setenv("PRIORITY_ASEP_DIM_CAP", "10", 1);
    CHECK(dimension_cap() == 10);
    CHECK_THROWS_AS(build_H(Lattice(1, 4), RateParams<Q>(Q(1), ctx, 1)),
                    std::length_error);
    unsetenv("PRIORITY_ASEP_DIM_CAP");
    CHECK(dimension_cap() == 200000);
    CHECK_NOTHROW(build_H(Lattice(1, 4), RateParams<Q>(Q(1), ctx, 1)));
}

TEST_CASE("generator annihilates conserved species counts") {
    Lattice lat(1, 4);
    int n = 2;
    QContext<Q> ctx(Q(2));
    auto H = build_H(lat, RateParams<Q>(Q(1), ctx, n));
    for (int a = 0; a <= n; ++a) {
        std::vector<Q> f;
        for (long i = 1; i <= H.dim(); ++i)
            f.push_back(Q(counts(basis_config(i, lat, n)).N[a]));
        for (long i = 1; i <= H.dim(); ++i)
            CHECK(apply_generator(f, basis_config(i, lat, n), H) == 0);
    }
}

TEST_CASE("lattice continuity of the species and cumulative currents") {
    // L n^a_k = j^a_{k-1} - j^a_k and L m^a_k = jm^a_{k-1} - jm^a_k with
    // vanishing currents at the closed boundaries.
    for (int n : {1, 2, 3}) {
        Lattice lat(1, 4);
        QContext<Q> ctx(frac(3, 2));
        RateParams<Q> rp(Q(2), ctx, n);
        auto H = build_H(lat, rp);
        for (int a = 1; a <= n; ++a)
            for (long k = 1; k <= 4; ++k) {
                std::vector<Q> fn, fm;
                for (long i = 1; i <= H.dim(); ++i) {
                    Config e = basis_config(i, lat, n);
                    fn.push_back(Q(indicator_n(e, k, a)));
                    fm.push_back(Q(indicator_m(e, k, a)));
                }
                for (long i = 1; i <= H.dim(); ++i) {
                    Config e = basis_config(i, lat, n);
                    CHECK(apply_generator(fn, e, H) ==
                          current_n(e, k - 1, a, rp) - current_n(e, k, a, rp));
                    CHECK(apply_generator(fm, e, H) ==
                          current_m(e, k - 1, a, rp) - current_m(e, k, a, rp));
                }
            }
    }
}

TEST_CASE("sparse operator algebra") {
    SparseOp<Q> A(2), B(2);
    A.set(0, 0, Q(1));
    A.set(1, 0, Q(2));
    B.set(0, 1, frac(1, 2));
    auto C = A * B;
    CHECK(C.get(0, 1) == frac(1, 2));
    CHECK(C.get(1, 1) == Q(1));
    CHECK(C.get(0, 0) == 0);
    CHECK((A + B).get(1, 0) == Q(2));
    CHECK((A - A).nnz() == 0);
    CHECK(A.transpose().get(0, 1) == Q(2));
    CHECK(max_abs_diff(A, A) == 0);
    CHECK(commutator(A, A).nnz() == 0);
    std::vector<Q> v{Q(3), Q(0)};
    CHECK(A.apply(v) == std::vector<Q>{Q(3), Q(6)});
}
