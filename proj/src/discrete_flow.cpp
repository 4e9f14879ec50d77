#include "flowlab/discrete_flow.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowlab::dflow {

using lattice::Cell;
using lattice::centered_span;

Rat drift(const Rat& a, const Rat& b, const Rat& alpha) {
    if (!(Rat(0) < a) || !(Rat(0) < b)) throw std::invalid_argument("drift: sides must be positive");
    return Rat(2) * alpha * (a - b) / (b * (a + b)) - a / (a + b);
}

namespace detail {

long long pyramid(long n) { return (long long)n * (n + 1) * (2 * n + 1) / 6; }

// Exact distance sum over the removed side strips (width X, height B each).
long long strip_sum(long X, long B) {
    if (X == 0) return 0;
    if (2 * X <= B) return 4 * pyramid(X) + (long long)(B - 2 * X) * X * (X + 1);
    if (B % 2 == 0) {
        long Bp = B / 2;
        return 4 * pyramid(Bp) + 2LL * (X - Bp) * Bp * (Bp + 1);
    }
    long Bp = (B - 1) / 2;
    return 4 * pyramid(Bp) + 2LL * (X - Bp) * Bp * (Bp + 1) + (long long)Bp * (Bp + 1) +
           2LL * (X - Bp) * (Bp + 1);
}

}  // namespace detail

namespace {

using detail::strip_sum;

constexpr long kFar = 1L << 40;  // stands in for "no partial row in this column"

struct Realization {
    long A2, B2, C2;
    long Yu, Yd;  // rows gained above / below the old rectangle
    bool overflow;
};

Realization realize(long A, long B, long C, long X, long Y, long D) {
    Realization r{};
    r.A2 = A - 2 * X;
    if ((r.A2) * (B + 2 * Y) + D != A * B + C)
        throw std::invalid_argument("candidate violates the area identity");
    if (X < 0 || Y < 0 || D < 0) throw std::invalid_argument("candidate counts must be nonnegative");
    if (r.A2 < 1) throw std::invalid_argument("candidate collapses the horizontal side");
    if (D >= 2 * r.A2) throw std::invalid_argument("candidate remainder exceeds two rows");
    r.overflow = D >= r.A2;
    if (!r.overflow) {
        r.B2 = B + 2 * Y;
        r.C2 = D;
        r.Yu = r.Yd = Y;
    } else {
        // split: one full extra row plus the residual partial row; the extra
        // row lands below for even B and above for odd B (parity embedding)
        r.B2 = B + 2 * Y + 1;
        r.C2 = D - r.A2;
        if (B % 2 == 0) {
            r.Yu = Y;
            r.Yd = Y + 1;
        } else {
            r.Yu = Y + 1;
            r.Yd = Y;
        }
    }
    return r;
}

long h_to_partial_row(int i, long C, int qlo, int qhi) {
    if (C == 0) return kFar;
    if (i < qlo) return qlo - i;
    if (i > qhi) return i - qhi;
    return 0;
}

// Distance sum over the region above the old rectangle: Yu added rows across
// the shrunk span, the new partial row, and any removed old partial-row cells.
long long top_sum(long C, const Realization& r) {
    long long S = 0;
    auto [lo, hi] = centered_span((int)r.A2);
    auto [qlo, qhi] = centered_span((int)C);
    for (int i = lo; i <= hi; ++i) {
        long h = h_to_partial_row(i, C, qlo, qhi);
        for (long j = 1; j <= r.Yu; ++j) {
            if (j == 1 && h == 0) continue;  // old partial-row cell, kept
            S += std::min<long long>(j, std::max<long long>(h, j - 1));
        }
    }
    if (r.C2 > 0) {
        auto [dlo, dhi] = centered_span((int)r.C2);
        for (int i = dlo; i <= dhi; ++i) {
            long h = h_to_partial_row(i, C, qlo, qhi);
            if (r.Yu == 0) {
                if (h != 0) S += 1;  // new partial-row cell beside the old one
            } else {
                S += std::min<long long>(r.Yu + 1, std::max<long long>(h, r.Yu));
            }
        }
    }
    if (C > 0 && r.Yu == 0) {  // old partial-row cells not covered by the new one
        auto [dlo, dhi] = r.C2 > 0 ? centered_span((int)r.C2) : std::pair<int, int>{1, 0};
        for (int i = qlo; i <= qhi; ++i)
            if (i < dlo || i > dhi) S += 1;
    }
    return S;
}

void check_strip_guard(long A, long C, long X) {
    if (X == 0 || C == 0) return;
    auto [qlo, qhi] = centered_span((int)C);
    auto [slo, shi] = centered_span((int)(A - 2 * X));
    // the strips are span(A) minus span(A-2X); the closed forms need the old
    // partial row clear of them
    if (qlo < slo || qhi > shi)
        throw std::domain_error("closed form guard: partial row meets the removed strips");
}

}  // namespace

Rat dissipation_closed_form(const QuasiRect& qr, long X, long Y, long D) {
    const long A = qr.n(), B = qr.m(), C = qr.r();
    Realization r = realize(A, B, C, X, Y, D);
    check_strip_guard(A, C, X);
    long long S = strip_sum(X, B);
    S += (long long)r.A2 * r.Yd * (r.Yd + 1) / 2;
    S += top_sum(C, r);
    return Rat(S) * rat_pow(qr.eps(), 3);
}

Rat dissipation_flat_top(const QuasiRect& qr, long X, long Y, long D) {
    const long A = qr.n(), B = qr.m(), C = qr.r();
    const long A2 = A - 2 * X;
    long long S = strip_sum(X, B);
    S += (long long)A2 * Y * (Y + 1) / 2;                     // bottom rows
    S += (long long)D * Y * (Y + 1) / 2;                      // above the new partial row span
    S += (long long)(C - D) * Y * (Y - 1) / 2;                // over the old partial row
    S += (long long)(A2 - C - 2) * Y * (Y + 1) / 2;           // flat top columns
    S += (long long)Y * (Y + 1);                              // columns flanking the old row
    return Rat(S) * rat_pow(qr.eps(), 3);
}

LatticeSet realize_candidate_set(const Rat& eps, long A2, long B2, long C2) {
    std::vector<Cell> cells;
    cells.reserve((size_t)(A2 * B2 + C2));
    auto [x0, x1] = centered_span((int)A2);
    auto [y0, y1] = centered_span((int)B2);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells.push_back({x, y});
    if (C2 > 0) {
        auto [qx0, qx1] = centered_span((int)C2);
        for (int x = qx0; x <= qx1; ++x) cells.push_back({x, y1 + 1});
    }
    return LatticeSet(eps, std::move(cells));
}

Rat energy_closed_form(const QuasiRect& qr, long X, long Y, long D, const FlowParams& p) {
    Realization r = realize(qr.n(), qr.m(), qr.r(), X, Y, D);
    long long pcells = 2 * (r.A2 + r.B2) + (r.C2 > 0 ? 2 : 0);
    Rat diss = dissipation_closed_form(qr, X, Y, D);
    return p.alpha * rat_pow(p.eps, 2) * Rat(pcells) + diss;
}

Rat energy_polynomial(const QuasiRect& qr, long X, long Y, long D, const FlowParams& p) {
    const Rat eps = qr.eps(), alpha = p.alpha;
    const Rat a = qr.a(), b = qr.b(), c = qr.c();
    const Rat x = eps * Rat(X), y = eps * Rat(Y), d = eps * Rat(D);
    const Rat two(2), three(3), four(4);
    Rat chi = D > 0 ? Rat(2) * eps : Rat(0);
    Rat base = alpha * eps * (two * a + two * b + chi);
    if (2 * X <= qr.m()) {
        return base + a * eps * y + a * y * y - four * alpha * eps * x + four * eps * alpha * y +
               b * eps * x + b * x * x - c * eps * y + d * eps * y + two / three * eps * eps * x -
               two * eps * x * y - two / three * x * x * x - two * x * y * y;
    }
    Rat tail = (a - two * x) * y * y + (a - two * x + d - c) * eps * y;
    if (qr.m() % 2 == 0) {
        Rat strips = -rat_pow(b, 3) / Rat(12) + eps * eps * b / three +
                     (b * b / two + eps * b) * x;
        return base + alpha * eps * (four * y - four * x) + strips + tail;
    }
    Rat beta = (b - eps) / two;
    Rat strips = four / three * rat_pow(beta, 3) + three * eps * beta * beta +
                 Rat(5) / three * eps * eps * beta + two * (x - beta) * rat_pow(beta + eps, 2);
    return base + alpha * eps * (four * y - four * x) + strips + tail;
}

std::vector<StepCandidate> candidates(const QuasiRect& qr, const FlowParams& p) {
    const long A = qr.n(), B = qr.m(), C = qr.r();
    Rat x_prime = drift(qr.a(), qr.b(), p.alpha);
    long Xf = std::max(0LL, (long long)x_prime.floor());
    long Xc = std::max(0LL, (long long)x_prime.ceil());

    std::vector<StepCandidate> out;
    for (long X : {Xf, Xc}) {
        if (!out.empty() && out.back().X == X) continue;  // dedup (Xf <= Xc)
        if (A - 2 * X < 1) continue;
        long Y = (C + 2 * B * X) / (2 * A - 4 * X);
        long D = C + 2 * B * X - Y * (2 * A - 4 * X);
        StepCandidate cand;
        cand.X = X;
        cand.Y = Y;
        cand.D = D;
        Realization r = realize(A, B, C, X, Y, D);
        cand.overflow = r.overflow;
        cand.A2 = r.A2;
        cand.B2 = r.B2;
        cand.C2 = r.C2;
        try {
            cand.energy = energy_closed_form(qr, X, Y, D, p);
        } catch (const std::domain_error&) {
            // guard failure: fall back to the cell-sum route, still exact
            LatticeSet realized = realize_candidate_set(qr.eps(), r.A2, r.B2, r.C2);
            long long pcells = 2 * (r.A2 + r.B2) + (r.C2 > 0 ? 2 : 0);
            cand.energy = p.alpha * rat_pow(p.eps, 2) * Rat(pcells) +
                          lattice::dissipation_eps(realized, qr.to_set());
            cand.via_cell_sum = true;
        }
        out.push_back(cand);
    }
    if (out.empty()) throw std::domain_error("candidates: no admissible horizontal retreat");
    return out;
}

StepResult incremental_step(const QuasiRect& qr, const FlowParams& p) {
    std::vector<StepCandidate> cs = candidates(qr, p);
    const StepCandidate* best = &cs[0];
    for (const StepCandidate& c : cs) {
        if (c.energy < best->energy ||
            (c.energy == best->energy && (c.X < best->X || (c.X == best->X && c.Y < best->Y))))
            best = &c;
    }
    StepResult res{qr, *best, false, false, false, false};
    res.regime_warn = p.eps * Rat(10) > qr.b();
    res.pinned = best->X == 0 && best->Y == 0 && best->D == qr.r() && !best->overflow;
    if (best->A2 <= best->B2 && !res.pinned) {
        res.square_reached = true;
        return res;
    }
    res.next = QuasiRect(qr.eps(), (int)best->A2, (int)best->B2, (int)best->C2);
    res.applied = true;
    return res;
}

namespace {

TrajPoint make_point(double t, const QuasiRect& qr, const StepCandidate& chosen, long discarded) {
    lattice::ShapeDescriptor d = qr.descriptor();
    TrajPoint pt;
    pt.t = t;
    pt.A = qr.n();
    pt.B = qr.m();
    pt.C = qr.r();
    pt.a = d.a;
    pt.b = d.b;
    pt.c = d.c;
    pt.perimeter = d.perimeter;
    pt.area = d.area;
    pt.side_sum = d.a + d.b;
    pt.chosen = chosen;
    pt.discarded = discarded;
    return pt;
}

}  // namespace

Trajectory run_symmetric_flow(const QuasiRect& qr0, const FlowParams& p) {
    Trajectory traj;
    QuasiRect cur = qr0;
    double dt = (p.alpha * p.eps).to_double();
    traj.points.push_back(make_point(0.0, cur, StepCandidate{}, 0));
    long long cell_count = (long long)qr0.n() * qr0.m() + qr0.r();
    for (long k = 1; k <= p.steps; ++k) {
        StepResult st = incremental_step(cur, p);
        if (st.square_reached) {
            traj.stop_reason = "square-reached";
            return traj;
        }
        long long cells_after = (long long)st.next.n() * st.next.m() + st.next.r();
        if (cells_after != cell_count)
            throw std::runtime_error("symmetric flow: cell count changed at step " +
                                     std::to_string(k));
        if (st.next.a() + st.next.b() > cur.a() + cur.b())
            throw std::runtime_error("symmetric flow: side sum increased at step " +
                                     std::to_string(k));
        if (st.next.c() > p.lambda) traj.remainder_bound_ok = false;
        if (st.regime_warn) traj.regime_warn = true;
        if (st.pinned && traj.first_pinned_step < 0) traj.first_pinned_step = k;
        cur = st.next;
        traj.points.push_back(make_point(k * dt, cur, st.chosen, 0));
    }
    traj.stop_reason = "steps-exhausted";
    return traj;
}

Trajectory run_rectangular_flow(const QuasiRect& rect0, const FlowParams& p) {
    if (rect0.r() != 0)
        throw std::invalid_argument("run_rectangular_flow: initial datum must be a rectangle");
    Trajectory traj;
    QuasiRect cur = rect0;
    double dt = (p.alpha * p.eps).to_double();
    traj.points.push_back(make_point(0.0, cur, StepCandidate{}, 0));
    for (long k = 1; k <= p.steps; ++k) {
        StepResult st = incremental_step(cur, p);
        if (st.square_reached) {
            traj.stop_reason = "square-reached";
            return traj;
        }
        long discarded = st.chosen.C2;
        if (st.regime_warn) traj.regime_warn = true;
        if (Rat(discarded) * p.eps > p.lambda) traj.remainder_bound_ok = false;
        if (st.pinned && traj.first_pinned_step < 0) traj.first_pinned_step = k;
        cur = QuasiRect(rect0.eps(), (int)st.chosen.A2, (int)st.chosen.B2, 0);
        if (cur.a() + cur.b() > traj.points.back().side_sum)
            throw std::runtime_error("rectangular flow: side sum increased at step " +
                                     std::to_string(k));
        traj.points.push_back(make_point(k * dt, cur, st.chosen, discarded));
    }
    traj.stop_reason = "steps-exhausted";
    return traj;
}

Rat pinning_threshold(const Rat& b) {
    if (!(Rat(0) < b) || !(b < Rat(1)))
        throw std::domain_error("pinning_threshold: requires 0 < b < 1");
    return rat_pow(b, 3) / (Rat(2) * (Rat(1) - b * b));
}

bool is_pinned_window(const Rat& a, const Rat& b, const Rat& alpha) {
    Rat x0 = Rat(2) * alpha / b - (Rat(4) * alpha + a) / (a + b);
    return Rat(0) <= x0 && x0 < Rat(1);
}

bool pinned_threshold_inequality(const Rat& b, const Rat& alpha) {
    return pinning_threshold(b) < alpha;
}

std::pair<Interval, Interval> inclusion_bounds(const Rat& a, const Rat& b, const Rat& c,
                                               const Rat& alpha, bool rectangular) {
    Rat x = drift(a, b, alpha);
    Rat lo, hi;
    if (x.is_integer()) {
        lo = x - Rat(1);
        hi = x + Rat(1);
    } else {
        lo = Rat(x.floor());
        hi = Rat(x.ceil());
    }
    lo = rat_max(lo, Rat(0));
    hi = rat_max(hi, Rat(0));
    Interval da{-Rat(2) / alpha * hi, -Rat(2) / alpha * lo};
    Rat offset = rectangular ? Rat(0) : c / (alpha * a);
    Interval db{offset + Rat(2) * b / (alpha * a) * lo, offset + Rat(2) * b / (alpha * a) * hi};
    return {da, db};
}

}  // namespace flowlab::dflow
