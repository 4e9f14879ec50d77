#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flowlab/rational.hpp"

namespace flowlab::lattice {

// A lattice cell index (i, j). The cell stands for the closed square of side
// eps centered at eps*(i, j).
struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend bool operator<(const Cell& a, const Cell& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Finite set of cells at spacing eps. Cells are kept sorted and unique.
class LatticeSet {
public:
    LatticeSet(Rat eps, std::vector<Cell> cells);

    const Rat& eps() const { return eps_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(const Cell& c) const;

    Rat area() const { return Rat((long long)cells_.size()) * eps_ * eps_; }

    // bounding box in cell indices; only valid for nonempty sets
    int min_x() const { return min_x_; }
    int max_x() const { return max_x_; }
    int min_y() const { return min_y_; }
    int max_y() const { return max_y_; }

    friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
        return a.eps_ == b.eps_ && a.cells_ == b.cells_;
    }

private:
    Rat eps_;
    std::vector<Cell> cells_;
    int min_x_ = 0, max_x_ = -1, min_y_ = 0, max_y_ = -1;
};

// Edge-counting perimeter: eps times the number of nearest-neighbor pairs with
// exactly one endpoint inside. Equals the boundary length of the pixel union.
Rat perimeter_eps(const LatticeSet& set);

// (eps * max row count, eps * max column count); (0, 0) for the empty set.
std::pair<Rat, Rat> proj_widths(const LatticeSet& set);

// l-infinity cell distances, in lattice units (multiples of eps are applied by
// the callers).  dist_to_set is 0 for members; dist_to_complement is 0 for
// non-members and otherwise the smallest ring radius that leaves the set.
int dist_cells_to_set(const LatticeSet& set, const Cell& c);
int dist_cells_to_complement(const LatticeSet& set, const Cell& c);

// dist(i, J) + dist(i, complement of J); rejects the empty set.
Rat dist_inf_eps(const Cell& c, const LatticeSet& set);

// Sum of dist_inf_eps(cell, f) * eps^2 over the symmetric difference.
Rat dissipation_eps(const LatticeSet& e, const LatticeSet& f);

// Row and column count profiles both unimodal about the origin.
bool is_rhombus_like(const LatticeSet& set);

// Variant with half-cell offsets: profiles must increase up to 0 and not
// increase from x_half (resp. y_half) onward, where the flag moves the peak
// column/row from index 0 to index 1. Needed because the column rearrangement
// rule for even vertical side counts biases odd columns one cell upward.
bool is_rhombus_like_about(const LatticeSet& set, bool x_half, bool y_half);

// Indices occupied by a centered run of k cells: [1 - ceil(k/2), floor(k/2)].
// Odd k sits symmetrically about 0, even k is biased one cell to the right.
std::pair<int, int> centered_span(int k);

struct ShapeDescriptor {
    Rat a, b, c;      // side lengths eps*n, eps*m, eps*r
    Rat area;         // a*b + eps*c
    Rat perimeter;    // 2a + 2b + 2*eps*[r > 0]
};

// Rectangle of n x m cells plus a partial top row of r cells, r < n, n >= m,
// embedded so that the barycenter offsets follow the parity table: the run of
// k consecutive cells along either axis occupies centered_span(k), and the
// partial row sits immediately above the rectangle.
class QuasiRect {
public:
    QuasiRect(Rat eps, int n, int m, int r);

    const Rat& eps() const { return eps_; }
    int n() const { return n_; }
    int m() const { return m_; }
    int r() const { return r_; }
    bool q_top() const { return r_ > 0; }

    Rat a() const { return eps_ * Rat(n_); }
    Rat b() const { return eps_ * Rat(m_); }
    Rat c() const { return eps_ * Rat(r_); }

    std::pair<Rat, Rat> barycenter() const;  // of the rectangle part
    ShapeDescriptor descriptor() const;
    LatticeSet to_set() const;

    friend bool operator==(const QuasiRect&, const QuasiRect&) = default;

private:
    Rat eps_;
    int n_, m_, r_;
};

inline LatticeSet quasi_rect_to_set(const QuasiRect& qr) { return qr.to_set(); }

// Line-based text form: header "eps p/q", then one "i j" pair per line.
std::string to_text(const LatticeSet& set);
LatticeSet set_from_text(const std::string& text);

// QuasiRect form: header "eps p/q", then "qr n m r".
std::string to_text(const QuasiRect& qr);
QuasiRect qr_from_text(const std::string& text);

}  // namespace flowlab::lattice
