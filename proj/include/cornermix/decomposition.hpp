#pragma once

#include <map>
#include <string>
#include <vector>

#include "cornermix/perm.hpp"
#include "cornermix/rational.hpp"
#include "cornermix/shuffle.hpp"

namespace cornermix {

// An ordered word over the UL corner moves whose left-to-right product equals
// `target`; verified on construction (directly, or by composing verified
// sub-words).
struct MoveWord {
    int n = 0;
    std::vector<CornerMove> moves;
    Perm target = Perm(1);

    int length() const { return static_cast<int>(moves.size()); }
};

Perm word_product(int n, const std::vector<CornerMove>& moves);

// The building blocks of the three-cycle decompositions.  X has length <= 4,
// Y <= 16, Z <= 64, W <= 128; a general three-cycle decomposes in <= 640.
MoveWord build_X(int n, int i, int j);
MoveWord build_Y(int n, int i, int j);

// Y_ij for i,j >= 2 transposes (i,j) with the top element T=(1,1) and also
// transposes (i,1) with (1,j).
Perm y_claimed_target(int n, int i, int j);

// Z = Y_{p1} Y_{p2} Y_{p1} Y_{p2}: the three-cycle T -> p2 -> p1 -> T.
MoveWord build_Z(int n, Position p1, Position p2);

// W = Z(p1,p2) Z(p2,p3): the three-cycle p1 -> p3 -> p2 -> p1.
MoveWord build_W(int n, Position p1, Position p2, Position p3);

enum class DecompCase { Z, W, FiveW, Split, Bfs };
const char* decomp_case_name(DecompCase c);

struct Decomposition {
    MoveWord word;
    DecompCase kind = DecompCase::Z;
};

// Writes an arbitrary three-cycle of cells as a word over the UL moves.
// Distinct-rows/columns cycles use Z or W; the rest use the five-factor
// W-product with taxicab-6 helper points, or a two-factor split when a cell
// collides with T.  For n <= 3 (where helper points may not exist) falls back
// to breadth-first shortest words.
Decomposition decompose_three_cycle(int n, const Perm& c);

struct ComparisonReport {
    int n = 0;
    Family family = Family::S0;
    Rational B;
    long long max_sum = 0;             // max_sigma sum_pi |pi| N(sigma,pi)
    long long max_support_a3 = 0;      // max_sigma #{pi in A3 : N(sigma,pi)>0}
    long long a3_count = 0;
    long long total_cycles = 0;
    int max_word_length = 0;
    std::map<int, long long> length_histogram;
    std::map<std::string, long long> case_counts;
    std::vector<std::string> failures;
};

// Exact comparison constant B = (|A1|/|A2|) max_sigma sum |pi| N(sigma,pi)
// over this module's fixed decompositions of all 2*C(n^2,3) three-cycles.
ComparisonReport comparison_constant(int n, Family family, long long exhaustive_cap = 10);

}  // namespace cornermix
