#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flowlab/continuum.hpp"
#include "flowlab/discrete_flow.hpp"
#include "flowlab/lattice.hpp"

namespace flowlab::oracle {

using lattice::LatticeSet;
using lattice::QuasiRect;

struct Window {
    int x0 = 0, y0 = 0;  // lowest cell index
    int w = 0, h = 0;    // extents in cells
};

enum class Restrict { AllSubsets, QuasiRects, SqrClass };

struct EnumSpec {
    Window window;
    int cardinality = 0;
    Restrict restrict_to = Restrict::AllSubsets;
    long long budget = 2'000'000;
};

long long binomial(long long n, long long k);

// Exhaustive, duplicate-free stream of all cardinality-N subsets of the
// window, in lexicographic (row-major bitmask) order. Throws when the count
// exceeds the budget.
void enumerate_sets(const EnumSpec& spec, const Rat& eps,
                    const std::function<void(const LatticeSet&)>& sink);

struct BruteResult {
    Rat value;                     // minimal P + D/(alpha eps)
    std::vector<lattice::Cell> argmin;
    long long evaluated = 0;
};

// Minimum of P(E) + D_eps(E, qr)/(alpha eps) over all subsets of the window
// with exactly |qr| cells. The qr must lie inside the window.
BruteResult brute_force_min_subsets(const QuasiRect& qr, const Rat& alpha, const EnumSpec& spec);

struct QrClassResult {
    Rat value;
    int n = 0, m = 0, r = 0;
};

// Minimum over all pseudo-axially embedded quasi-rectangles with |qr| cells.
QrClassResult brute_force_min_quasirects(const QuasiRect& qr, const Rat& alpha);

struct SqrResult {
    Rat value;
    long X = 0, Y = 0, D = 0;
    long long evaluated = 0;
};

// Minimum over the incremental competitor class: all (X, Y, D) solving the
// area identity with a valid partial row and a' >= b', energies from cell
// sums. Ties resolve toward smaller X then smaller Y.
SqrResult brute_force_min_sqr(const QuasiRect& qr, const Rat& alpha);

struct MinResult {
    Rat value;
    std::string witness;  // human-readable argmin description
};

// Dispatches on spec.restrict_to; the window/cardinality of the spec only
// matter for the all-subsets class.
MinResult brute_force_min(const QuasiRect& qr, const Rat& alpha, const EnumSpec& spec);

// Midpoint-rule approximation of the dissipation integral between concentric
// axis-aligned rectangles on a grid x grid mesh of their hull.
double quadrature_dissipation(const continuum::Rect& from, const continuum::Rect& to, int grid);

struct SteinerAudit {
    long long checked = 0;
    long long bad_cardinality = 0;
    long long bad_perimeter = 0;
    long long bad_dissipation = 0;
    long long bad_rhombus = 0;
    long long bad_output_identity = 0;
    long long bad_idempotence = 0;
    std::string first_counterexample;
    bool ok() const {
        return bad_cardinality + bad_perimeter + bad_dissipation + bad_rhombus +
                   bad_output_identity + bad_idempotence ==
               0;
    }
};

// Runs the rearrangement over every subset of the window and checks
// cardinality conservation, perimeter and dissipation monotonicity,
// unimodality of the output, the output perimeter identity and idempotence.
SteinerAudit exhaustive_steiner_audit(const Window& window, const QuasiRect& qr);

// Line-oriented report with a machine-readable PASS/FAIL trailer.
std::string audit_report_text(const SteinerAudit& audit);

}  // namespace flowlab::oracle
