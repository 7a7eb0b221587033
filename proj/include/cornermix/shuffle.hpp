#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cornermix/perm.hpp"

namespace cornermix {

enum class Family { S0, S, R };

// S0: all UL moves at rate 1/n^2 each.  S: all UL and LR moves at rate
// 1/(2n^2) each.  R: a uniform three-cycle of cells at total rate 1.
struct ShuffleFamily {
    Family tag = Family::S;
    int n = 4;
};

const char* family_name(Family f);
Family family_from_name(const std::string& s);

// Number of generators: n^2, 2n^2, or 2*C(n^2,3).
long long generator_count(ShuffleFamily f);

// Generator g of S0/S as a corner move (UL block first, then LR for S).
CornerMove generator_move(ShuffleFamily f, long long g);

struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered k-tuples of distinct cells, lexicographic, with O(1) rank lookup.
class TupleSpace {
public:
    TupleSpace(int n, int k, long long cap);

    int n() const { return n_; }
    int k() const { return k_; }
    int cells() const { return n_ * n_; }
    long long count() const { return static_cast<long long>(tuples_.size()) / k_; }

    const int32_t* tuple(long long idx) const { return tuples_.data() + idx * k_; }
    long long rank(const int32_t* cells) const;

    // Rank of the tuple obtained by relabeling cells via map[].
    long long rank_mapped(long long idx, const std::vector<int32_t>& map) const;

private:
    int n_, k_;
    std::vector<int32_t> tuples_;   // flattened, count*k
    std::vector<int32_t> lookup_;   // size cells^k, -1 for invalid keys
    long long key(const int32_t* cells) const;
};

// Exact one-jump transition kernel on a TupleSpace: integer counts over a
// common denominator, plus the double-precision rows.  Doubly stochastic.
struct SparseKernel {
    ShuffleFamily family;
    std::shared_ptr<const TupleSpace> space;
    long long denom = 1;  // number of generators
    std::vector<long long> row_ptr;
    std::vector<int32_t> col;
    std::vector<long long> count;
    std::vector<double> prob;

    long long states() const { return space->count(); }
    double average_degree() const {
        return states() ? static_cast<double>(col.size()) / static_cast<double>(states()) : 0.0;
    }
};

SparseKernel marginal_kernel(ShuffleFamily f, int k, long long state_cap = 20000);

// Poisson(t) weights w_0..w_jmax with tail mass < tol; pure and deterministic.
std::vector<double> poisson_weights(double t, double tol);
double poisson_cdf(double t, long long k);

// exp(t(K - I)) applied to a point mass, by uniformization; L1 truncation <= tol.
Eigen::VectorXd transient_distribution(const SparseKernel& K, long long start, double t,
                                       double tol = 1e-9);

// Same sweep evaluated at several times at once (shared power iterates).
std::vector<Eigen::VectorXd> transient_grid(const SparseKernel& K, long long start,
                                            const std::vector<double>& ts, double tol = 1e-9);

// One uniformization step: v -> v K (row-vector convention).
void kernel_apply(const SparseKernel& K, const Eigen::VectorXd& v, Eigen::VectorXd& out);

// The subgroup generated by the moves of f (n <= 3) with its one-jump
// transition table; elements are indexed breadth-first from the identity.
struct GroupWalk {
    ShuffleFamily family;
    int gens = 0;
    std::vector<uint64_t> packed;   // packed images, 4 bits per cell
    std::vector<int32_t> trans;     // order x gens, row-major
    long long order() const { return static_cast<long long>(packed.size()); }
};

GroupWalk build_group_walk(ShuffleFamily f);
Perm unpack_group_element(const GroupWalk& g, long long idx);

// Distribution of the time-t walk over the generated subgroup, from identity.
Eigen::VectorXd full_group_distribution(ShuffleFamily f, double t, double tol = 1e-9);
Eigen::VectorXd group_transient(const GroupWalk& g, double t, double tol = 1e-9);
std::vector<Eigen::VectorXd> group_transient_grid(const GroupWalk& g,
                                                  const std::vector<double>& ts,
                                                  double tol = 1e-9);

// One draw of the time-t walk: Poisson(t) jumps, uniform generators.
Perm sample_trajectory(ShuffleFamily f, double t, uint64_t seed);

// Cell-relabeling maps that commute with the walk: identity, transpose and,
// for S and R, the 180-degree rotation and anti-transpose.
std::vector<std::vector<int32_t>> family_symmetries(ShuffleFamily f);

}  // namespace cornermix
