#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cornermix/mixing.hpp"
#include "cornermix/rational.hpp"
#include "cornermix/shuffle.hpp"

namespace cornermix {

// A pure decidable set of cells with a printable descriptor.
struct Region {
    std::string tag;
    std::function<bool(Position)> contains;

    std::vector<Position> cells(int n) const;

    // The two corner regions of the k=1 coupling argument, floor boundaries:
    // A = {i,j <= n/3}, B = {i,j >= n - n/3 + 1}.
    static Region corner_A(int n);
    static Region corner_B(int n);
    static Region corner_union(int n);  // A union B
    static Region whole();
    static Region rectangle(Position lo, Position hi);
    static Region of_cells(std::vector<Position> cells, std::string tag);
};

// Cells reachable from x by one generator of S whose rectangle covers x, with
// per-target generator counts (size n*n, cell-indexed).
struct JumpSet {
    int n = 0;
    Position x;
    std::vector<int> gen_count;

    std::vector<Position> cells() const;
    bool reaches(Position p) const { return gen_count[cell_index(n, p)] > 0; }
    long long size() const;
};

JumpSet jump_set(int n, Position x);

// Closed form {(a,b) : (n+1-a-i)(n+1-b-j) >= 0} for x = (i,j).
bool jump_set_formula_contains(int n, Position x, Position target);
std::vector<Position> jump_set_formula(int n, Position x);

// (#generators of S moving x into R) / (2n^2), exact; generators fixing x do
// not count as jumps.
Rational jump_rate_into(int n, Position x, const Region& R);

struct CommonJump {
    long long minimum = 0;
    Position witness_x, witness_y;
};

// Min over unordered pairs x != y in R of |jump_set(x) ^ jump_set(y)|.
CommonJump min_common_jump(int n, const Region& R);

// ---------------------------------------------------------------------------
// Epoch-based maximal coupling of the k-tuple marginal chain

struct CouplingResult {
    int n = 0, k = 1;
    Family family = Family::S;
    uint64_t seed = 0;
    double review_dt = 1.0;
    long long start_x = 0, start_y = 0;  // tuple-space ranks
    std::vector<double> times;           // meeting times, one per replicate
    int checkpoint_epoch = -1;
    std::vector<long long> x_at_checkpoint, y_at_checkpoint;

    double mean_time() const;
    double quantile(double q) const;     // of the meeting times
};

// Maximally separated deterministic starts: ((1,n),(1,n-1),...) against
// ((n,1),(n,2),...); for k=1 these are the slowest cells (1,n) and (n,1).
std::pair<std::vector<int32_t>, std::vector<int32_t>> adversarial_starts(int n, int k);

// Two copies of the k-tuple chain; each epoch of length review_dt draws the
// next pair from the maximal coupling of the two exact epoch-kernel rows
// (overlap construction, residual sampled in state-index order).  After
// meeting, the copies move identically.  Either marginal is exactly the
// shuffle's k-tuple chain.
CouplingResult coupling_times(int n, int k, long long reps, uint64_t seed,
                              double review_dt = 1.0, int checkpoint_epoch = -1,
                              Family family = Family::S,
                              const std::vector<int32_t>* start_x = nullptr,
                              const std::vector<int32_t>* start_y = nullptr);

}  // namespace cornermix
