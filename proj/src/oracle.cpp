#include "flowlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "flowlab/steiner.hpp"

namespace flowlab::oracle {

using lattice::Cell;

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

std::vector<Cell> window_cells(const Window& w) {
    std::vector<Cell> cells;
    cells.reserve((size_t)w.w * w.h);
    for (int y = w.y0; y < w.y0 + w.h; ++y)
        for (int x = w.x0; x < w.x0 + w.w; ++x) cells.push_back({x, y});
    return cells;
}

// integer dissipation distances of every window cell against `ref`
std::vector<long long> distance_field(const std::vector<Cell>& cells, const LatticeSet& ref) {
    std::vector<long long> d(cells.size());
    for (size_t i = 0; i < cells.size(); ++i)
        d[i] = lattice::dist_cells_to_set(ref, cells[i]) +
               lattice::dist_cells_to_complement(ref, cells[i]);
    return d;
}

}  // namespace

void enumerate_sets(const EnumSpec& spec, const Rat& eps,
                    const std::function<void(const LatticeSet&)>& sink) {
    const int cellcount = spec.window.w * spec.window.h;
    const int N = spec.cardinality;
    if (N < 0 || N > cellcount) throw std::invalid_argument("enumerate_sets: bad cardinality");
    if (binomial(cellcount, N) > spec.budget)
        throw std::runtime_error("enumerate_sets: budget exceeded");
    std::vector<Cell> cells = window_cells(spec.window);
    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    std::vector<Cell> chosen(N);
    while (true) {
        for (int i = 0; i < N; ++i) chosen[i] = cells[idx[i]];
        sink(LatticeSet(eps, chosen));
        int i = N - 1;
        while (i >= 0 && idx[i] == cellcount - N + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < N; ++j) idx[j] = idx[j - 1] + 1;
    }
}

BruteResult brute_force_min_subsets(const QuasiRect& qr, const Rat& alpha, const EnumSpec& spec) {
    const Window& w = spec.window;
    const int cellcount = w.w * w.h;
    if (cellcount > 62) throw std::invalid_argument("brute_force_min_subsets: window too large");
    const int N = spec.cardinality;
    if (binomial(cellcount, N) > spec.budget)
        throw std::runtime_error("brute_force_min_subsets: budget exceeded");

    LatticeSet ref = qr.to_set();
    std::vector<Cell> cells = window_cells(w);
    for (const Cell& c : ref.cells())
        if (c.x < w.x0 || c.x >= w.x0 + w.w || c.y < w.y0 || c.y >= w.y0 + w.h)
            throw std::invalid_argument("brute_force_min_subsets: qr outside the window");

    std::vector<long long> dist = distance_field(cells, ref);
    long long dist_over_ref = 0;
    std::vector<long long> weight(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        bool inref = ref.contains(cells[i]);
        if (inref) dist_over_ref += dist[i];
        // the dissipation of a subset is dist_over_ref plus the signed weights
        weight[i] = inref ? -dist[i] : dist[i];
    }

    // energy * (alpha / eps) = alpha * pcells + S * (eps/alpha) ... instead we
    // compare  pcells * v + S * u  with  eps/alpha = u/v  (both exact)
    Rat ratio = qr.eps() / alpha;
    const long long u = ratio.num(), v = ratio.den();

    // neighbor masks for adjacency popcounts
    uint64_t notleft = 0, nottop = 0;
    for (int i = 0; i < cellcount; ++i) {
        if (i % w.w != 0) notleft |= 1ULL << i;
        if (i >= w.w) nottop |= 1ULL << i;
    }

    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    long long best = INT64_MAX;
    uint64_t best_mask = 0;
    long long evaluated = 0;
    while (true) {
        uint64_t mask = 0;
        long long S = dist_over_ref;
        for (int i = 0; i < N; ++i) {
            mask |= 1ULL << idx[i];
            S += weight[idx[i]];
        }
        long long adj = __builtin_popcountll(mask & (mask >> 1) & notleft) +
                        __builtin_popcountll(mask & (mask >> w.w) & nottop);
        long long pcells = 4LL * N - 2 * adj;
        long long score = pcells * v + S * u;
        if (score < best) {
            best = score;
            best_mask = mask;
        }
        ++evaluated;
        int i = N - 1;
        while (i >= 0 && idx[i] == cellcount - N + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < N; ++j) idx[j] = idx[j - 1] + 1;
    }

    BruteResult out;
    out.evaluated = evaluated;
    for (int i = 0; i < cellcount; ++i)
        if (best_mask & (1ULL << i)) out.argmin.push_back(cells[i]);
    // value = eps * (pcells + S * eps / alpha) recovered from the score parts
    LatticeSet arg(qr.eps(), out.argmin);
    out.value = lattice::perimeter_eps(arg) + lattice::dissipation_eps(arg, ref) / (alpha * qr.eps());
    return out;
}

QrClassResult brute_force_min_quasirects(const QuasiRect& qr, const Rat& alpha) {
    const long long N = (long long)qr.n() * qr.m() + qr.r();
    LatticeSet ref = qr.to_set();
    bool have = false;
    QrClassResult best;
    for (int n = 1; n <= N; ++n) {
        for (int m = 1; m <= n && (long long)n * m <= N; ++m) {
            long long r = N - (long long)n * m;
            if (r >= n) continue;
            QuasiRect cand(qr.eps(), n, m, (int)r);
            LatticeSet cs = cand.to_set();
            Rat value = lattice::perimeter_eps(cs) +
                        lattice::dissipation_eps(cs, ref) / (alpha * qr.eps());
            if (!have || value < best.value) {
                have = true;
                best.value = value;
                best.n = n;
                best.m = m;
                best.r = (int)r;
            }
        }
    }
    if (!have) throw std::runtime_error("brute_force_min_quasirects: empty class");
    return best;
}

SqrResult brute_force_min_sqr(const QuasiRect& qr, const Rat& alpha) {
    const long A = qr.n(), B = qr.m(), C = qr.r();
    LatticeSet ref = qr.to_set();
    dflow::FlowParams p;
    p.alpha = alpha;
    p.eps = qr.eps();
    bool have = false;
    SqrResult best;
    for (long X = 0; A - 2 * X >= 1; ++X) {
        const long A2 = A - 2 * X;
        for (long Y = 0;; ++Y) {
            long long D = C + 2LL * B * X - (long long)Y * (2 * A - 4 * X);
            if (D < 0) break;
            if (D >= A2) continue;          // no valid partial row
            if (A2 < B + 2 * Y) continue;   // horizontal side must stay maximal
            LatticeSet cand = dflow::realize_candidate_set(qr.eps(), A2, B + 2 * Y, (long)D);
            Rat value = lattice::perimeter_eps(cand) +
                        lattice::dissipation_eps(cand, ref) / (alpha * qr.eps());
            ++best.evaluated;
            if (!have || value < best.value ||
                (value == best.value && (X < best.X || (X == best.X && Y < best.Y)))) {
                have = true;
                best.value = value;
                best.X = X;
                best.Y = Y;
                best.D = (long)D;
            }
        }
    }
    if (!have) throw std::runtime_error("brute_force_min_sqr: empty competitor class");
    return best;
}

MinResult brute_force_min(const QuasiRect& qr, const Rat& alpha, const EnumSpec& spec) {
    MinResult out;
    switch (spec.restrict_to) {
        case Restrict::AllSubsets: {
            BruteResult r = brute_force_min_subsets(qr, alpha, spec);
            out.value = r.value;
            out.witness = "subset of " + std::to_string(r.argmin.size()) + " cells";
            break;
        }
        case Restrict::QuasiRects: {
            QrClassResult r = brute_force_min_quasirects(qr, alpha);
            out.value = r.value;
            out.witness = "quasi-rectangle (" + std::to_string(r.n) + "," + std::to_string(r.m) +
                          "," + std::to_string(r.r) + ")";
            break;
        }
        case Restrict::SqrClass: {
            SqrResult r = brute_force_min_sqr(qr, alpha);
            out.value = r.value;
            out.witness = "move (" + std::to_string(r.X) + "," + std::to_string(r.Y) + "," +
                          std::to_string(r.D) + ")";
            break;
        }
    }
    return out;
}

namespace {

// exact l-infinity distance from a point to the boundary of the centered
// rectangle with sides (a, b): negative overshoots fold to the inside rule
double dist_to_rect_boundary(double zx, double zy, double a, double b) {
    double ox = std::abs(zx) - a / 2.0;
    double oy = std::abs(zy) - b / 2.0;
    if (ox <= 0.0 && oy <= 0.0) return std::min(-ox, -oy);
    return std::max(std::max(ox, 0.0), std::max(oy, 0.0));
}

}  // namespace

double quadrature_dissipation(const continuum::Rect& from, const continuum::Rect& to, int grid) {
    if (grid < 64) throw std::invalid_argument("quadrature_dissipation: grid too coarse");
    if (from.center != to.center)
        throw std::invalid_argument("quadrature_dissipation: rectangles must be concentric");
    const double W = std::max(from.a, to.a), H = std::max(from.b, to.b);
    const double dx = W / grid, dy = H / grid;
    double sum = 0.0;
    for (int iy = 0; iy < grid; ++iy) {
        double zy = -H / 2.0 + (iy + 0.5) * dy;
        bool in_to_y = std::abs(zy) < to.b / 2.0;
        bool in_from_y = std::abs(zy) < from.b / 2.0;
        for (int ix = 0; ix < grid; ++ix) {
            double zx = -W / 2.0 + (ix + 0.5) * dx;
            bool in_to = in_to_y && std::abs(zx) < to.a / 2.0;
            bool in_from = in_from_y && std::abs(zx) < from.a / 2.0;
            if (in_to != in_from) sum += dist_to_rect_boundary(zx, zy, to.a, to.b);
        }
    }
    return sum * dx * dy;
}

SteinerAudit exhaustive_steiner_audit(const Window& window, const QuasiRect& qr) {
    const int cellcount = window.w * window.h;
    if (cellcount > 20) throw std::runtime_error("exhaustive_steiner_audit: budget exceeded");
    std::vector<Cell> cells = window_cells(window);
    LatticeSet ref = qr.to_set();

    // distances looked up over a padded box covering window, outputs and qr
    const int pad = std::max({std::abs(window.x0), std::abs(window.y0), window.w, window.h,
                              qr.n(), qr.m()}) +
                    2;
    std::vector<Cell> boxcells;
    for (int y = -pad; y <= pad; ++y)
        for (int x = -pad; x <= pad; ++x) boxcells.push_back({x, y});
    std::vector<long long> field = distance_field(boxcells, ref);
    const int side = 2 * pad + 1;
    auto dist_at = [&](const Cell& c) -> long long {
        return field[(size_t)(c.y + pad) * side + (c.x + pad)];
    };
    auto diss_units = [&](const LatticeSet& s) {
        long long total = 0;
        for (const Cell& c : s.cells())
            if (!ref.contains(c)) total += dist_at(c);
        for (const Cell& c : ref.cells())
            if (!s.contains(c)) total += dist_at(c);
        return total;
    };

    const bool y_half = qr.m() % 2 == 0;
    SteinerAudit audit;
    std::vector<Cell> chosen;
    for (uint32_t mask = 0; mask < (1u << cellcount); ++mask) {
        chosen.clear();
        for (int i = 0; i < cellcount; ++i)
            if (mask & (1u << i)) chosen.push_back(cells[i]);
        LatticeSet e(qr.eps(), chosen);
        LatticeSet rows = steiner::symmetrize_rows(e);
        LatticeSet out = steiner::symmetrize_columns(rows, qr);
        ++audit.checked;

        bool ok = true;
        if (e.size() != rows.size() || rows.size() != out.size()) {
            ++audit.bad_cardinality;
            ok = false;
        }
        Rat pe = lattice::perimeter_eps(e), pr = lattice::perimeter_eps(rows),
            po = lattice::perimeter_eps(out);
        if (!(pe >= pr && pr >= po)) {
            ++audit.bad_perimeter;
            ok = false;
        }
        if (!e.empty()) {
            long long de = diss_units(e), dr = diss_units(rows), dt = diss_units(out);
            if (!(de >= dr && dr >= dt)) {
                ++audit.bad_dissipation;
                ok = false;
            }
        }
        if (!lattice::is_rhombus_like_about(out, false, y_half)) {
            ++audit.bad_rhombus;
            ok = false;
        }
        auto [p1, p2] = lattice::proj_widths(out);
        if (po != Rat(2) * (p1 + p2)) {
            ++audit.bad_output_identity;
            ok = false;
        }
        LatticeSet twice = steiner::symmetrize_columns(steiner::symmetrize_rows(out), qr);
        if (!(twice == out)) {
            ++audit.bad_idempotence;
            ok = false;
        }
        if (!ok && audit.first_counterexample.empty())
            audit.first_counterexample = lattice::to_text(e);
    }
    return audit;
}

std::string audit_report_text(const SteinerAudit& a) {
    std::ostringstream out;
    out << "steiner-audit\n";
    out << "checked " << a.checked << "\n";
    out << "violations cardinality " << a.bad_cardinality << "\n";
    out << "violations perimeter " << a.bad_perimeter << "\n";
    out << "violations dissipation " << a.bad_dissipation << "\n";
    out << "violations rhombus " << a.bad_rhombus << "\n";
    out << "violations output-identity " << a.bad_output_identity << "\n";
    out << "violations idempotence " << a.bad_idempotence << "\n";
    if (!a.first_counterexample.empty()) {
        out << "first-counterexample\n" << a.first_counterexample;
    }
    out << (a.ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace flowlab::oracle
