#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornermix/shuffle.hpp"

namespace cornermix {

struct CurvePoint {
    double t = 0;
    double value = 0;
    double lo = 0;           // == value for exact points
    double hi = 0;
    std::string method;      // "exact" | "mc" | "bound"
};

struct DistanceCurve {
    ShuffleFamily family;
    int k = 1;               // 0 means full deck
    std::vector<CurvePoint> points;
    uint64_t seed = 0;
    long long reps = 0;
    double tol = 0;
};

// t-grid helpers; log grids are geometric with the given point count.
std::vector<double> t_grid(double tmin, double tmax, int points, bool log_spaced);

double tv_from_uniform(const Eigen::VectorXd& p);

// Exact k-set distance: max over starting tuples (reduced to symmetry-orbit
// representatives) of TV(exp(t(K-I)) row, uniform).
double kset_distance_exact(ShuffleFamily f, int k, double t, double tol = 1e-9,
                           long long state_cap = 20000);
DistanceCurve kset_curve_exact(ShuffleFamily f, int k, const std::vector<double>& ts,
                               double tol = 1e-9, long long state_cap = 20000);

struct McEstimate {
    double t = 0;
    double value = 0;
    double lo = 0, hi = 0;   // bootstrap percentile CI
    long long reps = 0;
    uint64_t seed = 0;
    // plug-in TV has positive bias ~ (#states)/(2 reps); recorded, not removed
    double bias_note = 0;
};

McEstimate kset_distance_mc(ShuffleFamily f, int k, double t, long long reps, uint64_t seed);
DistanceCurve kset_curve_mc(ShuffleFamily f, int k, const std::vector<double>& ts,
                            long long reps, uint64_t seed);

// Exact total variation over the generated subgroup (n <= 3).
double full_tv_exact(ShuffleFamily f, double t, double tol = 1e-9);
DistanceCurve full_tv_curve_exact(ShuffleFamily f, const std::vector<double>& ts,
                                  double tol = 1e-9);

// Rigorous lower bounds on TV.
// max_K [ P(Poisson(t) <= K) - G^K / (n^2)! ] with G = #generators.
double counting_lower_bound(ShuffleFamily f, double t);
// max(0, e^{-t/n^2} - 1/n^2); valid for S0 (the (n,n) card moves only on pi_nn).
double stuck_card_lower_bound(int n, double t);

// First crossing of `level` by linear interpolation; nullopt if not crossed.
std::optional<double> crossing_time(const DistanceCurve& c, double level = 0.5);

bool is_nonincreasing(const DistanceCurve& c, double tol = 1e-9);

}  // namespace cornermix
