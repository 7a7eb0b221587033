#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cornermix {

// A cell of the n x n array, 1-based, matrix convention: (1,1) is upper-left.
struct Position {
    int row = 1;
    int col = 1;
    bool operator==(const Position&) const = default;
    bool operator<(const Position& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
};

enum class Corner { UL, LR };

// A generator of the corner walk: 180-degree rotation of the upper-left
// i x j rectangle (UL) or the lower-right one pivoted at (i,j) (LR).
// UL(1,1) and LR(n,n) rotate a single cell and are identity moves; they stay
// in the generator set so rates match the 1/(2n^2)-per-pivot definition.
struct CornerMove {
    Corner corner = Corner::UL;
    int i = 1;
    int j = 1;
    bool operator==(const CornerMove&) const = default;
};

inline int cell_index(int n, Position p) { return (p.row - 1) * n + (p.col - 1); }
inline Position cell_position(int n, int idx) { return {idx / n + 1, idx % n + 1}; }

// A permutation of the n^2 cells. image()[c] is where the card at cell c goes.
class Perm {
public:
    explicit Perm(int n) : n_(n), img_(static_cast<size_t>(n) * n) {
        for (int i = 0; i < n * n; ++i) img_[i] = i;
    }
    Perm(int n, std::vector<int32_t> img) : n_(n), img_(std::move(img)) {
        if (static_cast<int>(img_.size()) != n * n)
            throw std::domain_error("Perm: image size mismatch");
    }

    static Perm identity(int n) { return Perm(n); }

    int n() const { return n_; }
    int size() const { return n_ * n_; }
    int operator()(int cell) const { return img_[cell]; }
    Position apply(Position p) const { return cell_position(n_, img_[cell_index(n_, p)]); }
    const std::vector<int32_t>& image() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    bool operator==(const Perm&) const = default;

private:
    int n_;
    std::vector<int32_t> img_;
};

// The permutation realized by a single corner move.
Perm corner_move_perm(int n, CornerMove m);

// Left-to-right product: first p, then q.
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);

int sign(const Perm& p);

// Cycle lengths (including fixed points), weakly decreasing; sums to n^2.
std::vector<int> cycle_type(const Perm& p);

bool is_three_cycle(const Perm& p);

// The 3-cycle a -> b -> c -> a on cells of the n x n array.
Perm three_cycle_perm(int n, Position a, Position b, Position c);

void check_move(int n, CornerMove m);

}  // namespace cornermix
