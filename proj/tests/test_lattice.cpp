#include <random>

#include "doctest.h"
#include "flowlab/lattice.hpp"

using namespace flowlab;
using namespace flowlab::lattice;

namespace {

LatticeSet make(Rat eps, std::vector<Cell> cells) { return LatticeSet(eps, std::move(cells)); }

// Independent boundary-segment oracle for the distance identity: the exact
// l-infinity distance from the center of cell `c` to the boundary of the
// pixel union, computed in half-cell integer units over the boundary edges.
long long segment_distance_half_units(const LatticeSet& set, const Cell& c) {
    static const int dx[4] = {1, -1, 0, 0};
    static const int dy[4] = {0, 0, 1, -1};
    long long best = -1;
    for (const Cell& s : set.cells()) {
        for (int k = 0; k < 4; ++k) {
            if (set.contains({s.x + dx[k], s.y + dy[k]})) continue;
            // edge between s and the neighbor, in half units
            long long px = 2LL * c.x, py = 2LL * c.y;
            long long d;
            if (dx[k] != 0) {  // vertical edge at x = 2 s.x + dx, y in [2y-1, 2y+1]
                long long sx = 2LL * s.x + dx[k];
                long long y0 = 2LL * s.y - 1, y1 = 2LL * s.y + 1;
                long long dyv = py < y0 ? y0 - py : (py > y1 ? py - y1 : 0);
                d = std::max(std::abs(px - sx), dyv);
            } else {  // horizontal edge at y = 2 s.y + dy, x in [2x-1, 2x+1]
                long long sy = 2LL * s.y + dy[k];
                long long x0 = 2LL * s.x - 1, x1 = 2LL * s.x + 1;
                long long dxv = px < x0 ? x0 - px : (px > x1 ? px - x1 : 0);
                d = std::max(std::abs(py - sy), dxv);
            }
            if (best < 0 || d < best) best = d;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("perimeter of elementary sets") {
    Rat one(1);
    CHECK(perimeter_eps(make(one, {{0, 0}})) == Rat(4));
    CHECK(perimeter_eps(make(one, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == Rat(8));
    CHECK(perimeter_eps(make(one, {{0, 0}, {1, 0}, {0, 1}})) == Rat(8));  // L-tromino
}

TEST_CASE("projection widths") {
    Rat one(1);
    auto [p1, p2] = proj_widths(make(one, {{0, 0}, {1, 0}, {2, 0}}));
    CHECK(p1 == Rat(3));
    CHECK(p2 == Rat(1));

    auto tromino = make(one, {{0, 0}, {1, 0}, {0, 1}});
    auto [q1, q2] = proj_widths(tromino);
    CHECK(q1 == Rat(2));
    CHECK(q2 == Rat(2));
    CHECK(perimeter_eps(tromino) == Rat(2) * (q1 + q2));

    auto block = make(Rat(1, 2), {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});
    auto [r1, r2] = proj_widths(block);
    CHECK(r1 == Rat(3, 2));
    CHECK(r2 == Rat(1));
}

TEST_CASE("signed distance examples") {
    Rat one(1);
    std::vector<Cell> block5;
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) block5.push_back({x, y});
    LatticeSet s(one, block5);
    CHECK(dist_inf_eps({0, 0}, s) == Rat(1));    // boundary-adjacent interior cell
    CHECK(dist_inf_eps({-1, 2}, s) == Rat(1));   // boundary-adjacent exterior cell
    CHECK(dist_inf_eps({2, 2}, s) == Rat(3));    // center of the block
    CHECK_THROWS_AS(dist_inf_eps({0, 0}, make(one, {})), std::invalid_argument);
}

TEST_CASE("dissipation examples") {
    Rat e(1, 4);
    std::vector<Cell> base = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    LatticeSet f(e, base);
    CHECK(dissipation_eps(f, f) == Rat(0));

    auto plus_one = base;
    plus_one.push_back({2, 0});
    CHECK(dissipation_eps(make(e, plus_one), f) == rat_pow(e, 3));

    auto plus_col = base;
    plus_col.push_back({2, 0});
    plus_col.push_back({3, 0});
    CHECK(dissipation_eps(make(e, plus_col), f) == Rat(3) * rat_pow(e, 3));

    CHECK_THROWS_AS(dissipation_eps(make(Rat(1, 2), base), f), std::invalid_argument);
}

TEST_CASE("dissipation lower bound by symmetric difference") {
    Rat e(1, 3);
    LatticeSet f(e, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Cell> cells;
        for (int y = -1; y <= 2; ++y)
            for (int x = -1; x <= 2; ++x)
                if (rng() % 2) cells.push_back({x, y});
        LatticeSet eset(e, cells);
        long long symdiff = 0;
        for (int y = -2; y <= 3; ++y)
            for (int x = -2; x <= 3; ++x)
                if (eset.contains({x, y}) != f.contains({x, y})) ++symdiff;
        CHECK(dissipation_eps(eset, f) >= Rat(symdiff) * rat_pow(e, 3));
    }
}

TEST_CASE("quasi-rectangle embedding") {
    Rat one(1);
    QuasiRect flat(one, 3, 2, 0);
    CHECK(flat.to_set().size() == 6);
    CHECK(flat.barycenter() == std::pair<Rat, Rat>{Rat(0), Rat(1, 2)});

    QuasiRect odd(one, 3, 3, 1);
    LatticeSet odd_set = odd.to_set();
    CHECK(odd_set.size() == 10);
    CHECK(odd_set.contains({0, 2}));   // centered cell above the rectangle
    CHECK(!odd_set.contains({1, 2}));
    CHECK(odd.barycenter() == std::pair<Rat, Rat>{Rat(0), Rat(0)});

    QuasiRect even(one, 4, 2, 2);
    LatticeSet even_set = even.to_set();
    CHECK(even_set.size() == 10);
    CHECK(even_set.contains({0, 2}));  // partial row offset half a cell right
    CHECK(even_set.contains({1, 2}));
    CHECK(!even_set.contains({-1, 2}));
    CHECK(even.barycenter() == std::pair<Rat, Rat>{Rat(1, 2), Rat(1, 2)});

    CHECK_THROWS_AS(QuasiRect(one, 3, 2, 3), std::invalid_argument);  // r >= n
    CHECK_THROWS_AS(QuasiRect(one, 2, 3, 0), std::invalid_argument);  // m > n
}

TEST_CASE("quasi-rectangle perimeter identity") {
    Rat e(1, 5);
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= n; ++m)
            for (int r = 0; r < n; ++r) {
                QuasiRect qr(e, n, m, r);
                Rat expect = Rat(2) * e * Rat(n + m) + (r > 0 ? Rat(2) * e : Rat(0));
                CHECK(perimeter_eps(qr.to_set()) == expect);
                CHECK(qr.descriptor().perimeter == expect);
                CHECK(qr.descriptor().area == Rat((long long)n * m + r) * e * e);
            }
}

TEST_CASE("rhombus-like predicate") {
    Rat one(1);
    LatticeSet plus(one, {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(is_rhombus_like(plus));
    LatticeSet diag(one, {{0, 0}, {1, 1}});
    CHECK(!is_rhombus_like(diag));
    std::vector<Cell> b3;
    for (int y = -1; y <= 1; ++y)
        for (int x = -1; x <= 1; ++x) b3.push_back({x, y});
    CHECK(is_rhombus_like(make(one, b3)));
}

TEST_CASE("projection inequality over every subset of a 4x4 window") {
    Rat one(1);
    long long checked = 0;
    for (uint32_t mask = 1; mask < (1u << 16); ++mask) {
        std::vector<Cell> cells;
        for (int i = 0; i < 16; ++i)
            if (mask & (1u << i)) cells.push_back({i % 4, i / 4});
        LatticeSet s(one, cells);
        auto [p1, p2] = proj_widths(s);
        CHECK(perimeter_eps(s) >= Rat(2) * (p1 + p2));
        ++checked;
    }
    CHECK(checked == 65535);
}

TEST_CASE("distance identity against the boundary-segment oracle") {
    Rat e(1, 2);
    std::mt19937 rng(12345);
    int done = 0;
    while (done < 100) {
        std::vector<Cell> cells;
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x)
                if (rng() % 3 == 0) cells.push_back({x, y});
        if (cells.empty()) continue;
        LatticeSet s(e, cells);
        for (int y = -2; y <= 7; ++y)
            for (int x = -2; x <= 7; ++x) {
                long long oracle_half = segment_distance_half_units(s, {x, y});
                // d^eps = d_inf(center, boundary) + eps/2
                Rat expect = Rat(oracle_half) * e / Rat(2) + e / Rat(2);
                CHECK(dist_inf_eps({x, y}, s) == expect);
            }
        ++done;
    }
}

TEST_CASE("text round trip") {
    Rat e(2, 7);
    LatticeSet s(e, {{-1, 3}, {0, 0}, {2, -5}});
    CHECK(set_from_text(to_text(s)) == s);
    QuasiRect qr(e, 5, 3, 2);
    CHECK(qr_from_text(to_text(qr)) == qr);
}

TEST_CASE("golden serialized forms") {
    Rat e(1, 3);
    LatticeSet s(e, {{1, 0}, {0, 0}, {0, 1}});
    CHECK(to_text(s) == "eps 1/3\n0 0\n1 0\n0 1\n");
    QuasiRect qr(e, 4, 2, 1);
    CHECK(to_text(qr) == "eps 1/3\nqr 4 2 1\n");
}
