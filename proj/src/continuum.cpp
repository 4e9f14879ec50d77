#include "flowlab/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flowlab::continuum {

namespace {

void check_rect(const Rect& r) {
    if (!(r.a > 0.0) || !(r.b > 0.0))
        throw std::invalid_argument("Rect: side lengths must be positive");
}

double constrained_y(double a, double b, double x) { return x * b / (a - 2.0 * x); }

}  // namespace

double perimeter_l1(const Rect& r) {
    check_rect(r);
    return 2.0 * (r.a + r.b);
}

double dissipation_rect(const Rect& r, double x) {
    check_rect(r);
    const double a = r.a, b = r.b;
    if (x < 0.0 || !(x < a / 2.0))
        throw std::domain_error("dissipation_rect: retreat x must lie in [0, a/2)");
    const double y = constrained_y(a, b, x);
    if (x < b / 2.0)
        return y * y * (a - 2.0 * x) + (4.0 / 3.0) * x * x * x + x * x * (b - 2.0 * x);
    return y * y * (a - 2.0 * x) - b * b * b / 12.0 + x * b * b / 2.0;
}

double energy_profile(double a, double b, double tau, double x) {
    if (!(tau > 0.0)) throw std::invalid_argument("energy_profile: tau must be positive");
    const double y = constrained_y(a, b, x);
    return 2.0 * (a - 2.0 * x + b + 2.0 * y) + dissipation_rect(Rect{a, b}, x) / tau;
}

double quartic_f(double a, double b, double tau, double x) {
    return -8.0 * x * x * x * x + (2.0 * a + 8.0 * b) * x * x * x +
           (-8.0 * a * b - 2.0 * b * b - 16.0 * tau - 2.0 * a * a) * x * x +
           (2.0 * a * a * b + 2.0 * a * b * b + 16.0 * a * tau) * x +
           4.0 * a * b * tau - 4.0 * a * a * tau;
}

namespace {

// bisection for a sign change of f(tau, .) inside [lo, hi], f(lo) <= 0 < f(hi)
double bisect_root(double a, double b, double tau, double lo, double hi, double tol) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (quartic_f(a, b, tau, mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// golden-section refinement of a bracketed minimum of E(x, y(x))
double golden_min(double a, double b, double tau, double lo, double hi, double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = energy_profile(a, b, tau, x1), f2 = energy_profile(a, b, tau, x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = energy_profile(a, b, tau, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = energy_profile(a, b, tau, x2);
        }
    }
    return 0.5 * (lo + hi);
}

IncrementResult minimize_oriented(double a, double b, const Params& p) {
    const double tau = p.tau;
    const double tol = 1e-13 * b;

    IncrementResult res;
    res.outside_regime = !(tau < b * b * b);

    std::vector<double> cand{0.0};
    if (b / 2.0 < a / 2.0) cand.push_back(b / 2.0);  // branch endpoint when admissible

    // scan the stationarity polynomial for sign changes on [0, b/2]
    const int nscan = 64;
    bool bracketed = false;
    double prev = quartic_f(a, b, tau, 0.0);
    for (int i = 1; i <= nscan; ++i) {
        double x = (b / 2.0) * i / nscan;
        double fx = quartic_f(a, b, tau, x);
        if (prev <= 0.0 && fx > 0.0) {
            cand.push_back(bisect_root(a, b, tau, (b / 2.0) * (i - 1) / nscan, x, tol));
            bracketed = true;
        }
        prev = fx;
    }

    // beyond the small-step regime the interior root need not be the unique
    // minimizer: dense-sample the whole admissible interval and refine locally
    if (res.outside_regime || !bracketed) {
        res.sampled = true;
        const int ns = 256;
        const double hi = a / 2.0 * (1.0 - 1e-9);
        int best = 0;
        double beste = energy_profile(a, b, tau, 0.0);
        for (int i = 1; i < ns; ++i) {
            double x = hi * i / ns;
            double e = energy_profile(a, b, tau, x);
            if (e < beste) {
                beste = e;
                best = i;
            }
        }
        double lo = hi * std::max(0, best - 1) / ns;
        double up = hi * std::min(ns - 1, best + 1) / ns;
        cand.push_back(best == 0 ? 0.0 : golden_min(a, b, tau, lo, up, tol));
    }

    double bestx = cand[0];
    double beste = energy_profile(a, b, tau, cand[0]);
    for (double x : cand) {
        if (!(x < a / 2.0)) continue;  // degenerate competitor
        double e = energy_profile(a, b, tau, x);
        if (e < beste || (e == beste && x < bestx)) {
            beste = e;
            bestx = x;
        }
    }

    res.x_bar = bestx;
    res.y_bar = constrained_y(a, b, bestx);
    res.energy = beste;
    res.branch = bestx < b / 2.0 ? 0 : 1;
    return res;
}

}  // namespace

IncrementResult minimize_increment(double a, double b, const Params& p) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("minimize_increment: sides must be positive");
    if (!(p.tau > 0.0) || !(p.tau < a))
        throw std::invalid_argument("minimize_increment: requires 0 < tau < a");
    if (b <= a) return minimize_oriented(a, b, p);
    // orientation guard: exchange the roles of the two axes
    IncrementResult r = minimize_oriented(b, a, p);
    r.swapped = true;
    return r;
}

Rect flat_flow_step(const Rect& r, const Params& p) {
    IncrementResult inc = minimize_increment(r.a, r.b, p);
    Rect out = r;
    if (!inc.swapped) {
        out.a = r.a - 2.0 * inc.x_bar;
        out.b = r.a * r.b / out.a;
    } else {
        out.b = r.b - 2.0 * inc.x_bar;
        out.a = r.a * r.b / out.b;
    }
    if (out.a + out.b > r.a + r.b + 1e-9 * (r.a + r.b))
        throw std::runtime_error("flat_flow_step: side sum increased");
    return out;
}

Trajectory run_approximate_flow(const Rect& r0, const Params& p) {
    check_rect(r0);
    Trajectory traj;
    Rect cur = r0;
    traj.t.push_back(0.0);
    traj.a.push_back(cur.a);
    traj.b.push_back(cur.b);
    long steps = (long)std::ceil(p.horizon / p.tau - 1e-12);
    for (long k = 1; k <= steps; ++k) {
        Rect nxt = flat_flow_step(cur, p);
        if (std::abs(nxt.a * nxt.b - cur.a * cur.b) > 1e-9)
            throw std::runtime_error("run_approximate_flow: area constraint violated at step " +
                                     std::to_string(k));
        cur = nxt;
        traj.t.push_back(k * p.tau);
        traj.a.push_back(cur.a);
        traj.b.push_back(cur.b);
    }
    return traj;
}

std::pair<double, double> ode_rhs(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ode_rhs: sides must be positive");
    double s = 8.0 / (a + b);
    return {-4.0 / b + s, -4.0 / a + s};
}

Trajectory integrate_limit_ode(const Rect& r0, double horizon, double h) {
    check_rect(r0);
    if (!(h > 0.0)) throw std::invalid_argument("integrate_limit_ode: step must be positive");
    Trajectory traj;
    double a = r0.a, b = r0.b;
    traj.t.push_back(0.0);
    traj.a.push_back(a);
    traj.b.push_back(b);
    long n_steps = (long)std::ceil(horizon / h - 1e-12);
    for (long k = 1; k <= n_steps; ++k) {
        double t1 = std::min(k * h, horizon);
        double step = t1 - traj.t.back();
        auto [k1a, k1b] = ode_rhs(a, b);
        auto [k2a, k2b] = ode_rhs(a + 0.5 * step * k1a, b + 0.5 * step * k1b);
        auto [k3a, k3b] = ode_rhs(a + 0.5 * step * k2a, b + 0.5 * step * k2b);
        auto [k4a, k4b] = ode_rhs(a + step * k3a, b + step * k3b);
        double na = a + step / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        double nb = b + step / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        if (std::abs(na * nb - a * b) > 1e-6 * h)
            throw std::runtime_error("integrate_limit_ode: step rejected, invariant drift");
        a = na;
        b = nb;
        traj.t.push_back(t1);
        traj.a.push_back(a);
        traj.b.push_back(b);
    }
    return traj;
}

}  // namespace flowlab::continuum
