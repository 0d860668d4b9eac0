/**
 * @file test_model.cpp
 * @brief Configuration representations, indicators, balances, energies and
 * flip operations.
 */
#include <catch2/catch_amalgamated.hpp>

#include "pasep/generator.hpp"
#include "pasep/model.hpp"

using namespace pasep;

TEST_CASE("basis index enumerates with the left site least significant") {
    Lattice lat(1, 2);
    CHECK(basis_index(Config(lat, 1, {0, 0})) == 1);
    CHECK(basis_index(Config(lat, 1, {1, 0})) == 2);
    CHECK(basis_index(Config(lat, 1, {0, 1})) == 3);
    CHECK(basis_index(Config(lat, 1, {1, 1})) == 4);
}

TEST_CASE("coordinate and occupation representations round-trip") {
    Lattice lat(-1, 2);
    int n = 2;
    for (long i = 1; i <= state_dim(n, lat.size()); ++i) {
        Config c = basis_config(i, lat, n);
        CoordConfig x = to_coords(c);
        CHECK(to_occupation(x, lat, n) == c);
        for (long j = 1; j < x.N(); ++j)
            CHECK(x.positions[j] > x.positions[j - 1]);
    }
    CHECK_THROWS_AS(to_occupation(CoordConfig{{5}, {1}}, lat, n),
                    std::invalid_argument);
    CHECK_THROWS_AS(to_occupation(CoordConfig{{0, 0}, {1, 1}}, lat, n),
                    std::invalid_argument);
    CHECK_THROWS_AS(to_occupation(CoordConfig{{0}, {3}}, lat, n),
                    std::invalid_argument);
}

TEST_CASE("indicators and balances agree with their defining sums") {
    Lattice lat(0, 3);
    Config c(lat, 3, {2, 0, 3, 1});
    CHECK(indicator_n(c, 0, 2) == 1);
    CHECK(indicator_n(c, 0, 1) == 0);
    CHECK(indicator_m(c, 1, 0) == 1);  // m^0 is identically one
    CHECK(indicator_m(c, 3, 1) == 1);
    CHECK(indicator_m(c, 3, 2) == 0);
    // m^alpha = sum_{beta >= alpha} n^beta, hence the same for balances.
    for (long k = 0; k <= 3; ++k)
        for (int a = 0; a <= 3; ++a) {
            long direct = 0;
            for (int b = a; b <= 3; ++b) direct += balance(c, k, b);
            CHECK(balance_m(c, k, a) == direct);
        }
    Counts ct = counts(c);
    CHECK(ct.N == std::vector<long>{1, 1, 1, 1});
    CHECK(ct.M == std::vector<long>{4, 3, 2, 1});
}

TEST_CASE("energy changes by twice the neighbour sign under a swap") {
    Lattice lat(1, 4);
    int n = 2;
    for (long i = 1; i <= state_dim(n, lat.size()); ++i) {
        Config c = basis_config(i, lat, n);
        for (long k = 1; k < 4; ++k) {
            Config cp = local_permute(c, k);
            CHECK(energy(cp) - energy(c) == 2 * sgn(c.at(k + 1) - c.at(k)));
        }
    }
}

TEST_CASE("energy decomposes into species-pair contributions") {
    Lattice lat(1, 4);
    int n = 3;
    for (long i = 1; i <= state_dim(n, lat.size()); ++i) {
        Config c = basis_config(i, lat, n);
        long pair_sum = 0;
        for (int a = 1; a <= n; ++a)
            for (int b = 0; b < a; ++b) pair_sum += partial_energy(c, a, b);
        CHECK(energy(c) == pair_sum);
        // Ebar counts particle pairs only; E0 the particle-vacancy part.
        CHECK(energy0(c) + energy_bar(c) == energy(c));
        // Bound |E| <= L^2 n / (2n+2).
        CHECK(std::abs(energy(c)) * (2 * n + 2) <= 16 * n);
    }
}

TEST_CASE("doubly reduced energy drops the lowest particle species") {
    Lattice lat(1, 3);
    Config c(lat, 3, {3, 2, 1});
    CHECK(energy_barbar(c) == partial_energy(c, 3, 2));
    Config d(lat, 1, {1, 0, 1});
    CHECK(energy_barbar(d) == 0);
    CHECK(energy_bar(d) == 0);
}

TEST_CASE("vacancy energy equals minus the summed vacancy balances") {
    Lattice lat(2, 5);
    Config c(lat, 2, {0, 2, 1, 0});
    long s = 0;
    for (long k = 2; k <= 5; ++k) s += balance(c, k, 0);
    CHECK(energy0(c) == -s);
    // In coordinates: -sum_i (2 x_i - l_plus - l_minus).
    CoordConfig x = to_coords(c);
    long viapos = 0;
    for (long p : x.positions) viapos += 2 * p - 5 - 2;
    CHECK(energy0(c) == -viapos);
}

TEST_CASE("flip operations") {
    Lattice lat(1, 3);
    Config c(lat, 2, {2, 0, 1});
    CHECK(cyclic_flip(c, 1).eta == std::vector<int>{0, 0, 1});
    CHECK(global_flip(c).eta == std::vector<int>{0, 1, 2});
    Config r = c;
    for (int t = 0; t < 3; ++t) r = global_flip(r);
    CHECK(r == c);
    CHECK_THROWS_AS(local_permute(c, 3), std::invalid_argument);
    CHECK(local_permute(c, 1).eta == std::vector<int>{0, 2, 1});
}

TEST_CASE("config literal formatting and parsing") {
    Lattice lat(1, 3);
    Config c(lat, 2, {2, 0, 1});
    CHECK(format_config(c) == "L=[1,3] eta=2,0,1");
    CHECK(parse_config("L=[1,3] eta=2,0,1", 2) == c);
    Config neg = parse_config("L=[-2,1] eta=1,0,0,1", 1);
    CHECK(neg.lattice.l_minus == -2);
    CHECK(parse_config(format_config(neg), 1) == neg);
    CHECK_THROWS_AS(parse_config("garbage", 1), std::invalid_argument);
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(Lattice(3, 3), std::invalid_argument);
    Lattice lat(1, 2);
    CHECK_THROWS_AS(Config(lat, 1, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Config(lat, 1, {0}), std::invalid_argument);
}
