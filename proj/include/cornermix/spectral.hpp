#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornermix/rational.hpp"
#include "cornermix/shuffle.hpp"

namespace cornermix {

// A partition of m, weakly decreasing positive parts; indexes an irreducible
// representation of the symmetric group S_m (m = n^2 in the shuffle
// application, never the array side n).
struct Partition {
    std::vector<int> parts;

    int m() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    std::string str() const;
    bool operator==(const Partition&) const = default;
    bool operator<(const Partition& o) const { return parts < o.parts; }
};

Partition conjugate(const Partition& p);

// All partitions of m, lexicographically decreasing.
std::vector<Partition> partitions(int m, int cap = 40);

// Independent oracle: partition counts by the pentagonal-number recurrence.
long long partition_count_pentagonal(int m);

// Hook-length dimension, exact (128-bit intermediates; valid for m <= 25).
long long dimension(const Partition& p);

// Murnaghan-Nakayama border-strip recursion, exact.
long long mn_character(const Partition& p, const Partition& cycle_type);

// Character ratio at a three-cycle:
//   r = 3 sum_{cells (i,j)} (i-j)^2 / (m(m-1)(m-2)) - 3/(2(m-2)).
Rational ingram_r(const Partition& p);

struct CharBound {
    Rational bound;
    std::string which;  // "large-t1" | "small-t1"
};

// Upper bounds on r: 1 - 3(t1-1)(m-t1)/((m-1)(m-2)) when t1 >= m/2,
// max{t1-1, t1'-1}/(m-2) when t1, t1' <= m/2.
CharBound char_bounds(const Partition& p);

struct SpectrumEntry {
    Partition partition;
    Rational r;
    long long d = 0;  // eigenvalue multiplicity is d^2
};

// Eigenvalues of the three-cycle shuffle R on S_m with multiplicities d^2.
std::vector<SpectrumEntry> r_spectrum(int m, int cap = 25);

// Dense one-jump kernel of R as a walk on S_m itself (m <= 6), for
// diagonalization cross-checks.
Eigen::MatrixXd r_group_kernel(int m);

// (1/|A1|) sum of generator signs, exact.
Rational alternating_mean_sign(int n, Family family);

// (1/2) sqrt( e^{-2ct(1-lambda2)} + sum* d^2 e^{-2t(1-r)} ), sum* excluding
// the trivial and alternating partitions; clamp=false returns the raw value.
double ubl_bound(int n, double t, double c, double lambda2, bool clamp = true);

}  // namespace cornermix
