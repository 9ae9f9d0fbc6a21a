#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "compose_approx/combinatorics.hpp"
#include "compose_approx/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compose_approx;

TEST_CASE("partition vectors of small orders") {
    auto one = enumerate_partition_vectors(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].counts() == std::vector<int>{1});

    auto three = enumerate_partition_vectors(3);
    REQUIRE(three.size() == 3);
    CHECK(three[0].counts() == std::vector<int>{3, 0, 0});
    CHECK(three[1].counts() == std::vector<int>{1, 1, 0});
    CHECK(three[2].counts() == std::vector<int>{0, 0, 1});

    CHECK(enumerate_partition_vectors(5).size() == 7);
}

TEST_CASE("partition vectors match exhaustive search and are ordered") {
    for (int r = 1; r <= 8; ++r) {
        auto got = enumerate_partition_vectors(r);
        auto expected = oracle::partition_vectors_exhaustive(r);
        std::set<std::vector<int>> got_set;
        for (const auto& p : got) {
            got_set.insert(p.counts());
            CHECK(p.blocks() >= 1);
            CHECK(p.blocks() <= r);
        }
        CHECK(got_set.size() == got.size());
        CHECK(got_set == std::set<std::vector<int>>(expected.begin(), expected.end()));
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].counts() > got[i].counts());
    }
    for (int r = 1; r <= 12; ++r) CHECK(enumerate_partition_vectors(r).size() == oracle::partition_count(r));
}

TEST_CASE("partition vector caps and validation") {
    CHECK_THROWS_AS(enumerate_partition_vectors(65), ResourceLimitError);
    CHECK_THROWS_AS(enumerate_partition_vectors(0), ArgumentError);
    EnumerationLimits small{.max_order = 4};
    CHECK_THROWS_WITH_AS(enumerate_partition_vectors(5, small), doctest::Contains("max_order=4"), ResourceLimitError);
    CHECK_THROWS_AS(PartitionVector({1, 1}), ArgumentError);
    CHECK(enumerate_partition_vectors(64).size() == 1741630);
}

TEST_CASE("composition matrices") {
    auto unit = enumerate_composition_matrices(PartitionVector({1}), 2);
    REQUIRE(unit.size() == 2);
    CHECK(unit[0].entries() == std::vector<int>{1, 0});
    CHECK(unit[1].entries() == std::vector<int>{0, 1});

    auto pair = enumerate_composition_matrices(PartitionVector({2, 0}), 2);
    REQUIRE(pair.size() == 3);
    CHECK(pair[0].entries() == std::vector<int>{2, 0, 0, 0});
    CHECK(pair[1].entries() == std::vector<int>{1, 1, 0, 0});
    CHECK(pair[2].entries() == std::vector<int>{0, 2, 0, 0});

    for (const auto& p : enumerate_partition_vectors(6)) {
        auto forced = enumerate_composition_matrices(p, 1);
        REQUIRE(forced.size() == 1);
        for (int i = 1; i <= 6; ++i) CHECK(forced[0].q(i, 1) == p.count(i));
    }
}

TEST_CASE("composition matrix counts and invariants") {
    for (int r = 1; r <= 6; ++r) {
        for (const auto& p : enumerate_partition_vectors(r)) {
            for (int n = 1; n <= 4; ++n) {
                auto family = enumerate_composition_matrices(p, n);
                CHECK(BigInt(family.size()) == composition_matrix_count(p, n));
                std::set<std::vector<int>> distinct;
                BigInt weighted = 0;
                for (const auto& q : family) {
                    distinct.insert(q.entries());
                    auto cols = q.column_sums();
                    int k = 0;
                    for (int c : cols) k += c;
                    CHECK(k == p.blocks());
                    BigInt prod = 1;
                    for (int i = 1; i <= r; ++i) {
                        std::vector<int> row;
                        for (int j = 1; j <= n; ++j) row.push_back(q.q(i, j));
                        prod *= multinomial(p.count(i), row);
                    }
                    weighted += prod;
                }
                CHECK(distinct.size() == family.size());
                // sum over the family of prod_i multinomial(k_i; row_i) = n^k
                CHECK(weighted == boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(p.blocks())));
            }
        }
    }
}

TEST_CASE("composition matrix cap") {
    EnumerationLimits tight{.max_order = 64, .max_matrices = 2};
    CHECK_THROWS_AS(enumerate_composition_matrices(PartitionVector({2, 0}), 2, tight), ResourceLimitError);
}

TEST_CASE("incomplete Bell polynomial values") {
    const double abc[] = {2.5, -1.0, 7.0};
    CHECK(incomplete_bell(3, 1, abc) == doctest::Approx(7.0));
    const double xy[] = {2.0, 5.0};
    CHECK(incomplete_bell(3, 2, xy) == doctest::Approx(30.0));
    const double ones[] = {1.0, 1.0, 1.0};
    CHECK(incomplete_bell(4, 2, ones) == 7.0);
    CHECK_THROWS_AS(incomplete_bell(3, 2, abc), ArgumentError);
    CHECK_THROWS_AS(incomplete_bell(3, 4, xy), ArgumentError);
}

TEST_CASE("incomplete Bell polynomials count set partitions") {
    for (int r = 1; r <= 12; ++r) {
        auto brute = oracle::set_partitions_by_blocks(r);
        BigInt total = 0;
        for (int k = 1; k <= r; ++k) {
            const BigInt exact = incomplete_bell_ones(r, k);
            CHECK(exact == BigInt(brute[static_cast<std::size_t>(k)]));
            CHECK(exact == stirling2(r, k));
            std::vector<double> ones(static_cast<std::size_t>(r - k + 1), 1.0);
            CHECK(incomplete_bell(r, k, ones) == static_cast<double>(brute[static_cast<std::size_t>(k)]));
            total += exact;
        }
        CHECK(total == bell_number(r));
    }
}

TEST_CASE("incomplete Bell homogeneity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int r = 1; r <= 9; ++r) {
        for (int k = 1; k <= r; ++k) {
            std::vector<double> x(static_cast<std::size_t>(r - k + 1));
            for (auto& v : x) v = u(rng);
            const double c = u(rng);
            std::vector<double> cx = x;
            for (auto& v : cx) v *= c;
            const double lhs = incomplete_bell(r, k, cx);
            const double rhs = std::pow(c, k) * incomplete_bell(r, k, x);
            CHECK(oracle::close_rel(lhs, rhs, 1e-12, 1e-300));
        }
    }
}

TEST_CASE("Bell numbers") {
    CHECK(bell_number(1) == 1);
    CHECK(bell_number(3) == 5);
    CHECK(bell_number(4) == 15);
    CHECK(bell_number(20) == BigInt("51724158235372"));
    CHECK_THROWS_AS(bell_number(65), ResourceLimitError);
}

TEST_CASE("multinomial") {
    CHECK(multinomial(0, std::vector<int>{}) == 1);
    CHECK(multinomial(2, std::vector<int>{1, 1}) == 2);
    CHECK(multinomial(4, std::vector<int>{2, 1, 1}) == 12);
    CHECK(multinomial(30, std::vector<int>{10, 10, 10}) == BigInt("5550996791340"));
    CHECK_THROWS_AS(multinomial(3, std::vector<int>{1, 1}), ArgumentError);
}

TEST_CASE("exact coefficients past 64-bit factorials") {
    std::vector<int> counts(25, 0);
    counts[0] = 23;
    counts[1] = 1;
    CHECK(partition_coefficient(PartitionVector(counts)) == 300);
    std::vector<int> single(25, 0);
    single[24] = 1;
    CHECK(partition_coefficient(PartitionVector(single)) == 1);
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
}
