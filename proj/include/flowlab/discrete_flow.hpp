#pragma once

#include <string>
#include <vector>

#include "flowlab/lattice.hpp"
#include "flowlab/rational.hpp"

namespace flowlab::dflow {

using lattice::LatticeSet;
using lattice::QuasiRect;

struct FlowParams {
    Rat alpha{1};    // time-scale ratio, tau = alpha * eps
    Rat eps{1, 20};  // lattice spacing
    Rat lambda{4};   // a-priori bound on a + b and on the remainder length
    long steps = 100;
};

// One admissible incremental move. (X, Y, D) solve the area identity
// (A-2X)(B+2Y) + D = A*B + C; when D does not fit a partial row (D >= A-2X)
// the move is realized as one full extra row plus the residual partial row,
// and `overflow` is set. A2/B2/C2 are the realized side counts.
struct StepCandidate {
    long X = 0, Y = 0, D = 0;
    bool overflow = false;
    long A2 = 0, B2 = 0, C2 = 0;
    Rat energy{0};
    bool via_cell_sum = false;  // closed-form guards failed; energy from cell sums
};

// Leading drift coefficient 2*alpha*(a-b)/(b*(a+b)) - a/(a+b).
Rat drift(const Rat& a, const Rat& b, const Rat& alpha);

// The clamped floor/ceil candidate pair with exact energies, deduplicated.
std::vector<StepCandidate> candidates(const QuasiRect& qr, const FlowParams& p);

// Exact incremental dissipation of the candidate against qr, assembled from
// the per-region closed forms (side strips, bottom extension, top extension
// with the partial rows). Equals dissipation_eps on the realized sets.
Rat dissipation_closed_form(const QuasiRect& qr, long X, long Y, long D);

// alpha*eps*perimeter + dissipation.
Rat energy_closed_form(const QuasiRect& qr, long X, long Y, long D, const FlowParams& p);

// The same energy as a collected trivariate polynomial in (x, y, d) with the
// flat per-row top terms; agrees with the region route whenever the flat top
// terms apply (non-overflow candidates), per branch on eps*X vs b/2 and the
// parity of B. Cross-checked against energy via dissipation_flat_top.
Rat energy_polynomial(const QuasiRect& qr, long X, long Y, long D, const FlowParams& p);

// Region assembly with the flat (per-row height times width) top terms
// instead of the exact corner-aware ones; the polynomial route matches this.
Rat dissipation_flat_top(const QuasiRect& qr, long X, long Y, long D);

// Realized lattice set of a candidate; tolerates A2 < B2 (used to evaluate
// moves that would cross the square, which the flows then refuse).
LatticeSet realize_candidate_set(const Rat& eps, long A2, long B2, long C2);

struct StepResult {
    QuasiRect next;        // the input when !applied
    StepCandidate chosen;
    bool applied = false;
    bool pinned = false;          // identity move chosen
    bool square_reached = false;  // winning move would give a' <= b'
    bool regime_warn = false;     // eps > b/10: outside the proven regime
};

// Evaluates the candidates, picks the minimum energy with ties broken toward
// smaller X then smaller Y, and realizes the winner.
StepResult incremental_step(const QuasiRect& qr, const FlowParams& p);

struct TrajPoint {
    double t = 0.0;
    long A = 0, B = 0, C = 0;
    Rat a, b, c, perimeter, area, side_sum;
    StepCandidate chosen;     // the move leading into this state (step 0: none)
    long discarded = 0;       // rectangular flow: partial-row count dropped
};

struct Trajectory {
    std::vector<TrajPoint> points;
    std::string stop_reason;   // steps-exhausted | square-reached
    long first_pinned_step = -1;
    bool remainder_bound_ok = true;  // c <= lambda held throughout
    bool regime_warn = false;        // some step ran with eps > b/10
};

// Fixed-particle-number flow: iterates incremental_step keeping the partial
// row; cell count is conserved exactly and a+b never increases.
Trajectory run_symmetric_flow(const QuasiRect& qr0, const FlowParams& p);

// Variant that discards the partial row after every step; state stays a
// rectangle and the area drifts by eps^2 * discarded per step.
Trajectory run_rectangular_flow(const QuasiRect& rect0, const FlowParams& p);

// b^3 / (2 (1 - b^2)) for b in (0, 1).
Rat pinning_threshold(const Rat& b);

// Whether 0 <= x(0) < 1 for x(0) = 2 alpha/b - (4 alpha + a)/(a + b).
bool is_pinned_window(const Rat& a, const Rat& b, const Rat& alpha);

// The closed threshold inequality b^3/(2(1-b^2)) < alpha.
bool pinned_threshold_inequality(const Rat& b, const Rat& alpha);

struct Interval {
    Rat lo, hi;
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

// Velocity intervals of the limit differential inclusions for (da/dt, db/dt).
// At integer drift the bracket widens to [x-1, x+1]; brackets clamp at zero
// from below. The rectangular variant omits the c/(alpha a) offset.
std::pair<Interval, Interval> inclusion_bounds(const Rat& a, const Rat& b, const Rat& c,
                                               const Rat& alpha, bool rectangular);

namespace detail {
// distance sum over the removed side strips, in eps^3 units
long long strip_sum(long X, long B);
long long pyramid(long n);
}  // namespace detail

}  // namespace flowlab::dflow
