// Acceptance gate: one test case per criterion, each printing a PASS/FAIL line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>

#include "cornermix/io.hpp"

using namespace cornermix;

namespace {

void report(int idx, const char* name, bool ok) {
    std::printf("[PRIMARY %d] %-34s %s\n", idx, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

double fitted_exponent(const std::vector<double>& ns, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(ns.size());
    for (int i = 0; i < m; ++i) {
        double x = std::log(ns[i]), y = std::log(ys[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Per-doubling crossing-time ratio: (t2/t1)^(1/log2(n2/n1)).
double doubling_ratio(double n1, double t1, double n2, double t2) {
    return std::pow(t2 / t1, 1.0 / std::log2(n2 / n1));
}

// 1/2-crossing of the L1 curve ||.||_1 = 2*TV, i.e. the TV curve at 1/4.
double l1_half_crossing(ShuffleFamily f, int k, double tmax, int points) {
    DistanceCurve c = kset_curve_exact(f, k, t_grid(0, tmax, points, false));
    REQUIRE(is_nonincreasing(c, 1e-9));
    auto t = crossing_time(c, 0.25);
    REQUIRE(t.has_value());
    return *t;
}

}  // namespace

TEST_CASE("criterion 1: exhaustive decomposition at n=6") {
    const int n = 6;
    bool ok = true;
    long long cycles = 0;
    for (int a = 0; a < n * n && ok; ++a)
        for (int b = a + 1; b < n * n && ok; ++b)
            for (int c = b + 1; c < n * n && ok; ++c)
                for (int o = 0; o < 2; ++o) {
                    Position pa = cell_position(n, a), pb = cell_position(n, b),
                             pc = cell_position(n, c);
                    Perm t = o ? three_cycle_perm(n, pa, pc, pb)
                               : three_cycle_perm(n, pa, pb, pc);
                    Decomposition d = decompose_three_cycle(n, t);
                    ++cycles;
                    if (!(d.word.target == t) || word_product(n, d.word.moves) != t) {
                        ok = false;
                        break;
                    }
                    int len = d.word.length();
                    int ceiling = d.kind == DecompCase::Z   ? 64
                                  : d.kind == DecompCase::W ? 128
                                                            : 640;
                    if (len > ceiling) {
                        ok = false;
                        break;
                    }
                }
    ok = ok && cycles == 2 * 7140;  // 2*C(36,3)
    ComparisonReport r = comparison_constant(n, Family::S0);
    ok = ok && r.failures.empty() && r.max_support_a3 <= 27LL * n * n * n * n &&
         r.B.num() > 0;
    report(1, "decomposition exhaustive n=6", ok);
    CHECK(ok);
}

TEST_CASE("criterion 2: Y-claim and printed figures") {
    bool ok = true;
    for (int n = 5; n <= 10 && ok; ++n)
        for (int i = 2; i <= n && ok; ++i)
            for (int j = 2; j <= n; ++j) {
                MoveWord y = build_Y(n, i, j);
                Perm claimed = y_claimed_target(n, i, j);
                if (!(word_product(n, y.moves) == claimed) || !(y.target == claimed)) {
                    ok = false;
                    break;
                }
            }
    // printed figures for n=5, (i,j)=(5,5): final X55 and Y55 arrays
    auto display = [](const Perm& p) {
        std::vector<int> d(25);
        for (int c = 0; c < 25; ++c) {
            Position h = cell_position(5, c);
            d[p(c)] = h.row * 10 + h.col;
        }
        return d;
    };
    std::vector<int> x55 = {55, 54, 53, 52, 51, 21, 22, 23, 24, 25, 31, 32, 33,
                            34, 35, 41, 42, 43, 44, 45, 15, 14, 13, 12, 11};
    std::vector<int> y55 = {55, 12, 13, 14, 51, 21, 22, 23, 24, 25, 31, 32, 33,
                            34, 35, 41, 42, 43, 44, 45, 15, 52, 53, 54, 11};
    ok = ok && display(word_product(5, build_X(5, 5, 5).moves)) == x55;
    ok = ok && display(word_product(5, build_Y(5, 5, 5).moves)) == y55;
    report(2, "Y-claim and figure arrays", ok);
    CHECK(ok);
}

TEST_CASE("criterion 3: character-ratio formula vs MN oracle") {
    bool ok = true;
    for (int m = 3; m <= 12 && ok; ++m) {
        Partition cls;
        cls.parts.push_back(3);
        for (int i = 3; i < m; ++i) cls.parts.push_back(1);
        for (const Partition& p : partitions(m))
            if (ingram_r(p) * Rational(dimension(p)) != Rational(mn_character(p, cls))) {
                ok = false;
                break;
            }
    }
    for (int m = 3; m <= 16 && ok; ++m)
        for (const Partition& p : partitions(m)) {
            if (p.parts == std::vector<int>{m}) continue;
            if (!(ingram_r(p) <= char_bounds(p).bound)) {
                ok = false;
                break;
            }
        }
    report(3, "character formula and bounds", ok);
    CHECK(ok);
}

TEST_CASE("criterion 4: spectrum vs dense diagonalization") {
    bool ok = true;
    for (int m : {4, 5}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r_group_kernel(m));
        std::vector<double> want;
        int plus_ones = 0;
        for (const SpectrumEntry& e : r_spectrum(m)) {
            if (e.r == Rational(1)) ++plus_ones;
            for (long long i = 0; i < e.d * e.d; ++i) want.push_back(e.r.to_double());
        }
        std::sort(want.begin(), want.end());
        if (plus_ones != 2 ||
            es.eigenvalues().size() != static_cast<Eigen::Index>(want.size())) {
            ok = false;
            continue;
        }
        for (size_t i = 0; i < want.size(); ++i)
            if (std::abs(es.eigenvalues()[i] - want[i]) > 1e-9) ok = false;
    }
    report(4, "R spectrum ground truth m=4,5", ok);
    CHECK(ok);
}

TEST_CASE("criterion 5: exact mixing curves") {
    // (a) k=1, crossing times roughly double with n
    double ta4 = l1_half_crossing({Family::S, 4}, 1, 12, 25);
    double ta8 = l1_half_crossing({Family::S, 8}, 1, 26, 27);
    double ta16 = l1_half_crossing({Family::S, 16}, 1, 52, 27);
    double r1 = doubling_ratio(4, ta4, 8, ta8);
    double r2 = doubling_ratio(8, ta8, 16, ta16);
    bool ok_a = r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4;

    // (b) k=2, same per-doubling band on the n in {6,8,10} grid
    double tb6 = l1_half_crossing({Family::S, 6}, 2, 24, 13);
    double tb8 = l1_half_crossing({Family::S, 8}, 2, 32, 13);
    double tb10 = l1_half_crossing({Family::S, 10}, 2, 36, 13);
    double r3 = doubling_ratio(6, tb6, 8, tb8);
    double r4 = doubling_ratio(8, tb8, 10, tb10);
    bool ok_b = r3 >= 1.6 && r3 <= 2.4 && r4 >= 1.6 && r4 <= 2.4;

    // (c) n=3 full deck: exact TV monotone; upper bound curve dominates
    Rational B = comparison_constant(3, Family::S).B;
    double c = B.to_double();
    double l2 = alternating_mean_sign(3, Family::S).to_double();
    std::vector<double> ss = t_grid(0, 30, 16, false);  // ct values
    DistanceCurve tv = full_tv_curve_exact({Family::S, 3}, ss);
    bool ok_c = is_nonincreasing(tv, 1e-9);
    for (size_t i = 0; i < ss.size(); ++i) {
        double bound = ubl_bound(3, ss[i] / c, c, l2);
        if (bound + 1e-12 < tv.points[i].value) ok_c = false;
    }
    report(5, "exact mixing curves and UBL", ok_a && ok_b && ok_c);
    CHECK(ok_a);
    CHECK(ok_b);
    CHECK(ok_c);
}

TEST_CASE("criterion 6: lower bounds") {
    DistanceCurve tv = full_tv_curve_exact({Family::S0, 3}, t_grid(0, 40, 40, false));
    bool ok = true;
    for (const CurvePoint& p : tv.points)
        if (stuck_card_lower_bound(3, p.t) > p.value + 1e-9) ok = false;
    ok = ok && counting_lower_bound({Family::S, 20}, 0.45 * 400) >= 0.9;
    report(6, "stuck-card and counting bounds", ok);
    CHECK(ok);
}

TEST_CASE("criterion 7: geometry suite") {
    bool ok = true;
    for (int n = 2; n <= 20 && ok; ++n)
        for (int i = 1; i <= n && ok; ++i)
            for (int j = 1; j <= n; ++j) {
                JumpSet js = jump_set(n, {i, j});
                for (int c = 0; c < n * n; ++c)
                    if ((js.gen_count[c] > 0) !=
                        jump_set_formula_contains(n, {i, j}, cell_position(n, c))) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
    for (int n = 6; n <= 30 && ok; n += 3) {
        Region ab = Region::corner_union(n);
        Rational min_rate(2);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                min_rate = std::min(min_rate, jump_rate_into(n, {i, j}, ab));
        if (min_rate < Rational(1, 3LL * n)) ok = false;
        if (min_common_jump(n, ab).minimum < static_cast<long long>(n) * n / 9) ok = false;
    }
    report(7, "jump sets, rates, common jumps", ok);
    CHECK(ok);
}

TEST_CASE("criterion 8: coupling validity and scaling") {
    // marginal validity at n=4, 1e4 replicates, 3 SE per cell
    int n = 4, epoch = 3;
    long long reps = 10000;
    CouplingResult cr = coupling_times(n, 1, reps, 31, 1.0, epoch);
    SparseKernel K = marginal_kernel({Family::S, n}, 1);
    Eigen::VectorXd px = transient_distribution(K, cr.start_x, epoch * 1.0);
    Eigen::VectorXd py = transient_distribution(K, cr.start_y, epoch * 1.0);
    std::vector<long long> hx(n * n, 0), hy(n * n, 0);
    for (long long i = 0; i < reps; ++i) {
        ++hx[cr.x_at_checkpoint[i]];
        ++hy[cr.y_at_checkpoint[i]];
    }
    bool ok_m = true;
    for (int c = 0; c < n * n; ++c) {
        double sex = std::sqrt(px[c] * (1 - px[c]) / reps);
        double sey = std::sqrt(py[c] * (1 - py[c]) / reps);
        if (std::abs(hx[c] / double(reps) - px[c]) > 3.0 * sex + 1e-12) ok_m = false;
        if (std::abs(hy[c] / double(reps) - py[c]) > 3.0 * sey + 1e-12) ok_m = false;
    }

    // coupling inequality on a t grid for n in {4, 8}
    bool ok_i = true;
    for (int nn : {4, 8}) {
        long long creps = 4000;
        CouplingResult r = coupling_times(nn, 1, creps, 77);
        DistanceCurve curve =
            kset_curve_exact({Family::S, nn}, 1, t_grid(1, 3.0 * nn, 8, false));
        for (const CurvePoint& p : curve.points) {
            long long over = 0;
            for (double ct : r.times) over += ct > p.t;
            double frac = over / double(creps);
            double se = std::sqrt(frac * (1 - frac) / creps);
            if (p.value > frac + 3.0 * se + 1e-9) ok_i = false;
        }
    }

    // mean coupling time grows at most like n^1.2
    std::vector<double> ns = {4, 8, 16}, means;
    for (double nn : ns)
        means.push_back(coupling_times(static_cast<int>(nn), 1, 2000, 13).mean_time());
    double expo = fitted_exponent(ns, means);
    bool ok_s = expo <= 1.2;

    report(8, "coupling validity and scaling", ok_m && ok_i && ok_s);
    CHECK(ok_m);
    CHECK(ok_i);
    CHECK(ok_s);
}

TEST_CASE("criterion 9: alternating character") {
    bool ok = true;
    for (int n = 4; n <= 16; ++n)
        if (!(alternating_mean_sign(n, Family::S) <= Rational(3, 4))) ok = false;
    report(9, "mean alternating sign <= 3/4", ok);
    CHECK(ok);
}

TEST_CASE("criterion 10: selftest determinism") {
    auto a = selftest_bundle(2024);
    auto b = selftest_bundle(2024);
    bool ok = a.size() == b.size() && !a.empty();
    for (const auto& [name, content] : a) {
        auto it = b.find(name);
        if (it == b.end() || strip_timestamp(content) != strip_timestamp(it->second))
            ok = false;
    }
    report(10, "selftest byte determinism", ok);
    CHECK(ok);
}
