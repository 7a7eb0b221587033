#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>

#include "cornermix/spectral.hpp"

using namespace cornermix;

namespace {

Partition three_class(int m) {
    Partition p;
    p.parts.push_back(3);
    for (int i = 3; i < m; ++i) p.parts.push_back(1);
    return p;
}

}  // namespace

TEST_CASE("partition enumeration") {
    auto p3 = partitions(3);
    REQUIRE(p3.size() == 3);
    CHECK(p3[0].parts == std::vector<int>{3});
    CHECK(p3[1].parts == std::vector<int>{2, 1});
    CHECK(p3[2].parts == std::vector<int>{1, 1, 1});
    CHECK(partitions(9).size() == 30);
    for (int m = 1; m <= 40; ++m)
        CHECK(static_cast<long long>(partitions(m).size()) ==
              partition_count_pentagonal(m));
    CHECK_THROWS_AS(partitions(41), std::domain_error);
}

TEST_CASE("conjugate partitions") {
    Partition p{{4, 2, 1}};
    CHECK(conjugate(p).parts == std::vector<int>{3, 2, 1, 1});
    for (const Partition& q : partitions(10)) CHECK(conjugate(conjugate(q)) == q);
}

TEST_CASE("hook length dimensions") {
    CHECK(dimension({{5}}) == 1);
    CHECK(dimension({{1, 1, 1}}) == 1);
    CHECK(dimension({{2, 1}}) == 2);
    for (int m = 1; m <= 12; ++m) {
        long long sum = 0;
        long long fact = 1;
        for (int i = 2; i <= m; ++i) fact *= i;
        for (const Partition& p : partitions(m)) {
            long long d = dimension(p);
            sum += d * d;
            CHECK(d == dimension(conjugate(p)));
        }
        CHECK(sum == fact);
    }
}

TEST_CASE("Murnaghan-Nakayama characters") {
    for (int m = 2; m <= 8; ++m) {
        Partition triv{{m}};
        for (const Partition& cls : partitions(m)) CHECK(mn_character(triv, cls) == 1);
    }
    CHECK(mn_character({{2, 1}}, {{3}}) == -1);
    // identity-class value equals the dimension
    for (const Partition& p : partitions(6)) {
        Partition id{{1, 1, 1, 1, 1, 1}};
        CHECK(mn_character(p, id) == dimension(p));
    }
    // regular character vanishes at the three-cycle class
    for (int m = 3; m <= 10; ++m) {
        long long s = 0;
        for (const Partition& p : partitions(m))
            s += mn_character(p, three_class(m)) * dimension(p);
        CHECK(s == 0);
    }
}

TEST_CASE("three-cycle character ratio formula") {
    CHECK(ingram_r({{4}}) == Rational(1));
    CHECK(ingram_r({{1, 1, 1}}) == Rational(1));
    CHECK(ingram_r({{2, 1}}) == Rational(-1, 2));
    CHECK_THROWS_AS(ingram_r({{2}}), std::domain_error);
    // central check: r * d equals the MN character at the three-cycle class
    for (int m = 3; m <= 12; ++m)
        for (const Partition& p : partitions(m)) {
            Rational lhs = ingram_r(p) * Rational(dimension(p));
            CHECK(lhs == Rational(mn_character(p, three_class(m))));
        }
}

TEST_CASE("character bounds and duality") {
    for (int m = 3; m <= 16; ++m) {
        for (const Partition& p : partitions(m)) {
            CHECK(ingram_r(p) == ingram_r(conjugate(p)));
            if (p.parts == std::vector<int>{m}) continue;
            CharBound b = char_bounds(p);
            CHECK(ingram_r(p) <= b.bound);
            int t1 = p.parts[0];
            if (2 * t1 >= m)
                CHECK(b.which == "large-t1");
            else
                CHECK(b.which == "small-t1");
        }
        // hook partition (m-1,1): bound is 1 - 3/(m-1)
        Partition hook{{m - 1, 1}};
        CHECK(char_bounds(hook).bound == Rational(1) - Rational(3, m - 1));
    }
}

TEST_CASE("spectrum completeness") {
    for (int m : {4, 6, 9, 12, 16}) {
        auto spec = r_spectrum(m);
        __int128 total = 0;
        int plus_ones = 0;
        for (const SpectrumEntry& e : spec) {
            total += static_cast<__int128>(e.d) * e.d;
            CHECK(e.r <= Rational(1));
            CHECK(e.r >= Rational(-1));
            if (e.r == Rational(1)) ++plus_ones;
        }
        __int128 fact = 1;
        for (int i = 2; i <= m; ++i) fact *= i;
        CHECK(total == fact);
        CHECK(plus_ones == 2);
    }
}

TEST_CASE("spectrum matches dense diagonalization at m=4") {
    Eigen::MatrixXd K = r_group_kernel(4);
    CHECK(K.rows() == 24);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    std::vector<double> got(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    std::vector<double> want;
    for (const SpectrumEntry& e : r_spectrum(4))
        for (long long i = 0; i < e.d * e.d; ++i) want.push_back(e.r.to_double());
    std::sort(want.begin(), want.end());
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("mean alternating sign") {
    CHECK(alternating_mean_sign(2, Family::S) == Rational(0));
    // sign pattern: i odd, j == 2 mod 4 contributes -1
    ShuffleFamily f{Family::S0, 6};
    for (long long g = 0; g < generator_count(f); ++g) {
        CornerMove m = generator_move(f, g);
        if (m.i % 2 == 1 && m.j % 4 == 2)
            CHECK(sign(corner_move_perm(6, m)) == -1);
    }
    for (int n = 4; n <= 16; ++n)
        CHECK(alternating_mean_sign(n, Family::S) <= Rational(3, 4));
}

TEST_CASE("spectral upper bound curve") {
    int n = 2, m = 4;
    double c = 10.0, l2 = 0.0;
    double fact = 24.0;
    double at0 = ubl_bound(n, 0.0, c, l2, false);
    CHECK(at0 == doctest::Approx(0.5 * std::sqrt(fact - 1.0)));
    CHECK(ubl_bound(n, 0.0, c, l2) == 1.0);  // clamped
    CHECK(ubl_bound(n, 500.0, c, l2) < 1e-8);
    CHECK(m == 4);
}
