#include "flowlab/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flowlab::lattice {

LatticeSet::LatticeSet(Rat eps, std::vector<Cell> cells) : eps_(eps), cells_(std::move(cells)) {
    if (!(Rat(0) < eps_)) throw std::invalid_argument("LatticeSet: eps must be positive");
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    if (!cells_.empty()) {
        min_x_ = max_x_ = cells_[0].x;
        min_y_ = cells_.front().y;
        max_y_ = cells_.back().y;
        for (const Cell& c : cells_) {
            min_x_ = std::min(min_x_, c.x);
            max_x_ = std::max(max_x_, c.x);
        }
    }
}

bool LatticeSet::contains(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

Rat perimeter_eps(const LatticeSet& set) {
    long long exposed = 0;
    static const int dx[4] = {1, -1, 0, 0};
    static const int dy[4] = {0, 0, 1, -1};
    for (const Cell& c : set.cells())
        for (int k = 0; k < 4; ++k)
            if (!set.contains({c.x + dx[k], c.y + dy[k]})) ++exposed;
    return Rat(exposed) * set.eps();
}

std::pair<Rat, Rat> proj_widths(const LatticeSet& set) {
    if (set.empty()) return {Rat(0), Rat(0)};
    std::map<int, long long> rows, cols;
    for (const Cell& c : set.cells()) {
        ++rows[c.y];
        ++cols[c.x];
    }
    long long max_row = 0, max_col = 0;
    for (auto& [y, n] : rows) max_row = std::max(max_row, n);
    for (auto& [x, n] : cols) max_col = std::max(max_col, n);
    return {Rat(max_row) * set.eps(), Rat(max_col) * set.eps()};
}

int dist_cells_to_set(const LatticeSet& set, const Cell& c) {
    if (set.empty()) throw std::invalid_argument("dist: empty set");
    if (set.contains(c)) return 0;
    int best = INT32_MAX;
    for (const Cell& s : set.cells()) {
        int d = std::max(std::abs(s.x - c.x), std::abs(s.y - c.y));
        best = std::min(best, d);
        if (best == 1) break;
    }
    return best;
}

int dist_cells_to_complement(const LatticeSet& set, const Cell& c) {
    if (!set.contains(c)) return 0;
    // ring search; the complement is reached at radius <= half the bbox span + 1
    int limit = std::max(set.max_x() - set.min_x(), set.max_y() - set.min_y()) + 1;
    for (int r = 1; r <= limit; ++r) {
        for (int x = c.x - r; x <= c.x + r; ++x) {
            if (!set.contains({x, c.y - r}) || !set.contains({x, c.y + r})) return r;
        }
        for (int y = c.y - r + 1; y <= c.y + r - 1; ++y) {
            if (!set.contains({c.x - r, y}) || !set.contains({c.x + r, y})) return r;
        }
    }
    return limit + 1;  // unreachable for finite sets
}

Rat dist_inf_eps(const Cell& c, const LatticeSet& set) {
    if (set.empty()) throw std::invalid_argument("dist_inf_eps: empty set");
    long long d = dist_cells_to_set(set, c) + dist_cells_to_complement(set, c);
    return Rat(d) * set.eps();
}

Rat dissipation_eps(const LatticeSet& e, const LatticeSet& f) {
    if (e.eps() != f.eps()) throw std::invalid_argument("dissipation_eps: mismatched eps");
    if (f.empty()) throw std::invalid_argument("dissipation_eps: empty reference set");
    long long total = 0;  // in lattice units
    for (const Cell& c : e.cells())
        if (!f.contains(c)) total += dist_cells_to_set(f, c);
    for (const Cell& c : f.cells())
        if (!e.contains(c)) total += dist_cells_to_complement(f, c);
    return Rat(total) * rat_pow(f.eps(), 3);
}

namespace {

// counts must rise up to index 0 and not rise from index `peak` on,
// where peak is 0 (origin) or 1 (half-offset convention).
bool unimodal(const std::map<int, long long>& counts, int peak) {
    if (counts.empty()) return true;
    auto at = [&](int i) {
        auto it = counts.find(i);
        return it == counts.end() ? 0LL : it->second;
    };
    int lo = counts.begin()->first, hi = counts.rbegin()->first;
    for (int i = lo; i <= 0 && i <= hi; ++i)
        if (at(i - 1) > at(i)) return false;
    for (int i = std::max(peak, lo); i <= hi; ++i)
        if (at(i) < at(i + 1)) return false;
    return true;
}

// every fiber is the centered contiguous run of its count, odd counts shifted
// one step when `half` is set
bool fibers_centered(const std::map<int, std::vector<int>>& fibers, bool half) {
    for (auto& [key, vals] : fibers) {
        (void)key;
        auto [lo, hi] = centered_span((int)vals.size());
        if (half && vals.size() % 2 == 1) {
            ++lo;
            ++hi;
        }
        if (vals.front() != lo || vals.back() != hi) return false;
    }
    return true;
}

}  // namespace

bool is_rhombus_like_about(const LatticeSet& set, bool x_half, bool y_half) {
    std::map<int, long long> rows, cols;
    std::map<int, std::vector<int>> row_fibers, col_fibers;
    for (const Cell& c : set.cells()) {  // cells are sorted by (y, x)
        ++rows[c.y];
        ++cols[c.x];
        row_fibers[c.y].push_back(c.x);
        col_fibers[c.x].push_back(c.y);
    }
    for (auto& [x, ys] : col_fibers) std::sort(ys.begin(), ys.end());
    if (!unimodal(cols, x_half ? 1 : 0) || !unimodal(rows, y_half ? 1 : 0)) return false;
    return fibers_centered(row_fibers, x_half) && fibers_centered(col_fibers, y_half);
}

bool is_rhombus_like(const LatticeSet& set) { return is_rhombus_like_about(set, false, false); }

std::pair<int, int> centered_span(int k) {
    return {1 - (k + 1) / 2, k / 2};
}

QuasiRect::QuasiRect(Rat eps, int n, int m, int r) : eps_(eps), n_(n), m_(m), r_(r) {
    if (!(Rat(0) < eps_)) throw std::invalid_argument("QuasiRect: eps must be positive");
    if (n < 1 || m < 1) throw std::invalid_argument("QuasiRect: side counts must be positive");
    if (m > n) throw std::invalid_argument("QuasiRect: requires n >= m (n is the max side)");
    if (r < 0 || r >= n) throw std::invalid_argument("QuasiRect: requires 0 <= r < n");
}

std::pair<Rat, Rat> QuasiRect::barycenter() const {
    Rat half = eps_ / Rat(2);
    return {n_ % 2 == 0 ? half : Rat(0), m_ % 2 == 0 ? half : Rat(0)};
}

ShapeDescriptor QuasiRect::descriptor() const {
    ShapeDescriptor d;
    d.a = a();
    d.b = b();
    d.c = c();
    d.area = d.a * d.b + eps_ * d.c;
    d.perimeter = Rat(2) * (d.a + d.b) + (r_ > 0 ? Rat(2) * eps_ : Rat(0));
    return d;
}

LatticeSet QuasiRect::to_set() const {
    std::vector<Cell> cells;
    cells.reserve((size_t)n_ * m_ + r_);
    auto [x0, x1] = centered_span(n_);
    auto [y0, y1] = centered_span(m_);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells.push_back({x, y});
    if (r_ > 0) {
        auto [qx0, qx1] = centered_span(r_);
        for (int x = qx0; x <= qx1; ++x) cells.push_back({x, y1 + 1});
    }
    return LatticeSet(eps_, std::move(cells));
}

std::string to_text(const LatticeSet& set) {
    std::ostringstream out;
    out << "eps " << set.eps().str() << "\n";
    for (const Cell& c : set.cells()) out << c.x << " " << c.y << "\n";
    return out.str();
}

LatticeSet set_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag, frac;
    if (!(in >> tag >> frac) || tag != "eps")
        throw std::invalid_argument("set_from_text: missing eps header");
    Rat eps = Rat::parse(frac);
    std::vector<Cell> cells;
    int x, y;
    while (in >> x >> y) cells.push_back({x, y});
    return LatticeSet(eps, std::move(cells));
}

std::string to_text(const QuasiRect& qr) {
    std::ostringstream out;
    out << "eps " << qr.eps().str() << "\n";
    out << "qr " << qr.n() << " " << qr.m() << " " << qr.r() << "\n";
    return out.str();
}

QuasiRect qr_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag, frac, tag2;
    int n, m, r;
    if (!(in >> tag >> frac >> tag2 >> n >> m >> r) || tag != "eps" || tag2 != "qr")
        throw std::invalid_argument("qr_from_text: malformed record");
    return QuasiRect(Rat::parse(frac), n, m, r);
}

}  // namespace flowlab::lattice
