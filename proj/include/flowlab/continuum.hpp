#pragma once

#include <array>
#include <utility>
#include <vector>

namespace flowlab::continuum {

// Axis-aligned rectangle with side lengths a (horizontal) and b (vertical).
struct Rect {
    double a = 1.0;
    double b = 1.0;
    std::array<double, 2> center{0.0, 0.0};
};

struct Params {
    double tau = 1e-3;      // time step of the incremental scheme
    double lambda = 4.0;    // a-priori bound on a + b
    double horizon = 1.0;   // total evolution time
    double ode_step = 1e-3; // step of the limit-system integrator
};

struct IncrementResult {
    double x_bar = 0.0;   // optimal horizontal retreat
    double y_bar = 0.0;   // matched vertical advance b*x/(a-2x)
    double energy = 0.0;  // minimal value of E(x, y(x))
    int branch = 0;       // 0: x < b/2, 1: x >= b/2
    bool outside_regime = false;  // tau beyond the small-step guard
    bool sampled = false;         // dense sampling path was decisive
    bool swapped = false;         // roles of a and b were exchanged (a < b)
};

double perimeter_l1(const Rect& r);

// Area-preserving dissipation between the rectangle (a, b) and its competitor
// with horizontal retreat x; both branches of the closed form.
double dissipation_rect(const Rect& r, double x);

// Perimeter plus dissipation/tau along the area constraint y = x*b/(a-2x).
double energy_profile(double a, double b, double tau, double x);

// Numerator of d/dx E(x, y(x)) on the branch x < b/2.
double quartic_f(double a, double b, double tau, double x);

IncrementResult minimize_increment(double a, double b, const Params& p);

// One incremental step: a' = a - 2 x_bar, b' = a*b / a'.
Rect flat_flow_step(const Rect& r, const Params& p);

struct Trajectory {
    std::vector<double> t, a, b;
};

Trajectory run_approximate_flow(const Rect& r0, const Params& p);

// Right-hand side of the limit system:
//   da/dt = -4/b + 8/(a+b),   db/dt = -4/a + 8/(a+b).
std::pair<double, double> ode_rhs(double a, double b);

// Classical 4th-order one-step integration with fixed step h. The product
// a*b is conserved by the exact flow; a per-step drift above 1e-6*h rejects.
Trajectory integrate_limit_ode(const Rect& r0, double horizon, double h);

}  // namespace flowlab::continuum
