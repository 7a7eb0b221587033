#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cornermix/geometry.hpp"
#include "cornermix/mixing.hpp"

using namespace cornermix;

TEST_CASE("jump sets: corners and formula equivalence") {
    JumpSet top = jump_set(5, {1, 1});
    CHECK(top.size() == 25);  // the top element can be sent anywhere
    JumpSet ne = jump_set(5, {1, 5});
    CHECK(ne.size() == 2 * 5 - 1);  // first column plus last row
    for (Position p : ne.cells()) CHECK((p.col == 1 || p.row == 5));

    for (int n : {2, 3, 6, 11}) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                JumpSet js = jump_set(n, {i, j});
                for (int c = 0; c < n * n; ++c)
                    CHECK((js.gen_count[c] > 0) ==
                          jump_set_formula_contains(n, {i, j}, cell_position(n, c)));
            }
    }
}

TEST_CASE("jump rates into regions") {
    int n = 6;
    Region ab = Region::corner_union(n);
    CHECK(ab.cells(n).size() == 8);  // two 2x2 corner blocks at n=6
    Rational min_rate(2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            min_rate = std::min(min_rate, jump_rate_into(n, {i, j}, ab));
    CHECK(min_rate >= Rational(1, 3 * n));
    // whole-array rate counts exactly the non-fixing generators; at (1,1)
    // those are the n^2 - 1 proper UL rotations plus LR(1,1)
    CHECK(jump_rate_into(n, {1, 1}, Region::whole()) == Rational(1, 2));
    CHECK(jump_rate_into(n, {3, 3}, Region::whole()) <= Rational(1));
}

TEST_CASE("common jump minima") {
    int n = 6;
    CommonJump full = min_common_jump(
        n, Region::of_cells({{1, 1}, {n, n}}, "pair"));
    CHECK(full.minimum == n * n);  // both jump sets are the whole array

    CommonJump ab = min_common_jump(n, Region::corner_union(n));
    CHECK(ab.minimum >= n * n / 9);

    // shrinking the region cannot decrease the minimum
    Region sub = Region::of_cells({{1, 1}, {1, 2}, {2, 1}}, "sub-A");
    CHECK(min_common_jump(n, sub).minimum >= ab.minimum);
}

TEST_CASE("adversarial starts") {
    auto [a, b] = adversarial_starts(4, 2);
    CHECK(a == std::vector<int32_t>{cell_index(4, {1, 4}), cell_index(4, {1, 3})});
    CHECK(b == std::vector<int32_t>{cell_index(4, {4, 1}), cell_index(4, {4, 2})});
}

TEST_CASE("coupling from identical starts meets immediately") {
    std::vector<int32_t> s = {0};
    CouplingResult r = coupling_times(3, 1, 20, 5, 1.0, -1, Family::S, &s, &s);
    for (double t : r.times) CHECK(t == 0.0);
}

TEST_CASE("coupling times are deterministic given a seed and finite") {
    CouplingResult a = coupling_times(4, 1, 50, 99);
    CouplingResult b = coupling_times(4, 1, 50, 99);
    CHECK(a.times == b.times);
    for (double t : a.times) {
        CHECK(t >= 1.0);
        CHECK(std::isfinite(t));
    }
}

TEST_CASE("coupled marginal matches the exact transient law") {
    int n = 4, epoch = 3;
    long long reps = 10000;
    CouplingResult r = coupling_times(n, 1, reps, 31, 1.0, epoch);
    SparseKernel K = marginal_kernel({Family::S, n}, 1);
    Eigen::VectorXd px = transient_distribution(K, r.start_x, epoch * 1.0);
    Eigen::VectorXd py = transient_distribution(K, r.start_y, epoch * 1.0);
    std::vector<long long> hx(n * n, 0), hy(n * n, 0);
    for (long long i = 0; i < reps; ++i) {
        ++hx[r.x_at_checkpoint[i]];
        ++hy[r.y_at_checkpoint[i]];
    }
    for (int c = 0; c < n * n; ++c) {
        double sex = std::sqrt(px[c] * (1 - px[c]) / reps);
        double sey = std::sqrt(py[c] * (1 - py[c]) / reps);
        CHECK(std::abs(hx[c] / double(reps) - px[c]) <= 3.0 * sex + 1e-12);
        CHECK(std::abs(hy[c] / double(reps) - py[c]) <= 3.0 * sey + 1e-12);
    }
}

TEST_CASE("coupling inequality against the exact curve") {
    int n = 4;
    long long reps = 4000;
    CouplingResult r = coupling_times(n, 1, reps, 77);
    for (double t : {1.0, 3.0, 6.0, 10.0}) {
        double exact = kset_distance_exact({Family::S, n}, 1, t);
        long long over = 0;
        for (double ct : r.times) over += ct > t;
        double p = over / double(reps);
        double se = std::sqrt(p * (1 - p) / reps);
        CHECK(exact <= p + 3.0 * se + 1e-9);
    }
}
