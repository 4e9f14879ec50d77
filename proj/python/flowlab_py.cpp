#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flowlab/continuum.hpp"
#include "flowlab/discrete_flow.hpp"
#include "flowlab/oracle.hpp"
#include "flowlab/steiner.hpp"

namespace py = pybind11;
using namespace flowlab;

namespace {

Rat to_rat(const std::string& s) { return Rat::parse(s); }

lattice::LatticeSet make_set(const std::string& eps, const std::vector<std::pair<int, int>>& cells) {
    std::vector<lattice::Cell> cs;
    cs.reserve(cells.size());
    for (auto& [x, y] : cells) cs.push_back({x, y});
    return lattice::LatticeSet(to_rat(eps), std::move(cs));
}

std::vector<std::pair<int, int>> cells_of(const lattice::LatticeSet& s) {
    std::vector<std::pair<int, int>> out;
    out.reserve(s.size());
    for (const auto& c : s.cells()) out.emplace_back(c.x, c.y);
    return out;
}

py::dict traj_to_dict(const dflow::Trajectory& tr) {
    py::list t, A, B, C, a, b, X, Y, D, overflow;
    for (const auto& p : tr.points) {
        t.append(p.t);
        A.append(p.A);
        B.append(p.B);
        C.append(p.C);
        a.append(p.a.str());
        b.append(p.b.str());
        X.append(p.chosen.X);
        Y.append(p.chosen.Y);
        D.append(p.chosen.D);
        overflow.append(p.chosen.overflow);
    }
    py::dict d;
    d["t"] = t;
    d["A"] = A;
    d["B"] = B;
    d["C"] = C;
    d["a_pq"] = a;
    d["b_pq"] = b;
    d["chosen_X"] = X;
    d["chosen_Y"] = Y;
    d["chosen_D"] = D;
    d["overflow"] = overflow;
    d["stop_reason"] = tr.stop_reason;
    d["first_pinned_step"] = tr.first_pinned_step;
    return d;
}

dflow::FlowParams params_of(const std::string& alpha, const std::string& eps, long steps) {
    dflow::FlowParams p;
    p.alpha = to_rat(alpha);
    p.eps = to_rat(eps);
    p.steps = steps;
    return p;
}

}  // namespace

PYBIND11_MODULE(_flowlab, m) {
    m.doc() = "two-scale laboratory for area-preserving crystalline curvature flow";

    // continuum operations
    m.def("perimeter_l1",
          [](double a, double b) { return continuum::perimeter_l1({a, b}); });
    m.def("dissipation_rect",
          [](double a, double b, double x) { return continuum::dissipation_rect({a, b}, x); });
    m.def("energy_profile", &continuum::energy_profile);
    m.def("minimize_increment", [](double a, double b, double tau) {
        continuum::Params p;
        p.tau = tau;
        continuum::IncrementResult r = continuum::minimize_increment(a, b, p);
        py::dict d;
        d["x_bar"] = r.x_bar;
        d["y_bar"] = r.y_bar;
        d["energy"] = r.energy;
        d["branch"] = r.branch;
        d["outside_regime"] = r.outside_regime;
        return d;
    });
    m.def("flat_flow_step", [](double a, double b, double tau) {
        continuum::Params p;
        p.tau = tau;
        continuum::Rect r = continuum::flat_flow_step({a, b}, p);
        return std::make_pair(r.a, r.b);
    });
    m.def("ode_rhs", &continuum::ode_rhs);
    m.def("integrate_limit_ode", [](double a, double b, double horizon, double h) {
        continuum::Trajectory tr = continuum::integrate_limit_ode({a, b}, horizon, h);
        py::dict d;
        d["t"] = tr.t;
        d["a"] = tr.a;
        d["b"] = tr.b;
        return d;
    });
    m.def("run_approximate_flow", [](double a, double b, double tau, double horizon) {
        continuum::Params p;
        p.tau = tau;
        p.horizon = horizon;
        continuum::Trajectory tr = continuum::run_approximate_flow({a, b}, p);
        py::dict d;
        d["t"] = tr.t;
        d["a"] = tr.a;
        d["b"] = tr.b;
        return d;
    });

    // lattice operations (rationals travel as "p/q" strings)
    m.def("perimeter_eps", [](const std::string& eps, std::vector<std::pair<int, int>> cells) {
        return lattice::perimeter_eps(make_set(eps, cells)).str();
    });
    m.def("proj_widths", [](const std::string& eps, std::vector<std::pair<int, int>> cells) {
        auto [p1, p2] = lattice::proj_widths(make_set(eps, cells));
        return std::make_pair(p1.str(), p2.str());
    });
    m.def("dist_inf_eps",
          [](int x, int y, const std::string& eps, std::vector<std::pair<int, int>> cells) {
              return lattice::dist_inf_eps({x, y}, make_set(eps, cells)).str();
          });
    m.def("dissipation_eps", [](const std::string& eps, std::vector<std::pair<int, int>> e,
                                std::vector<std::pair<int, int>> f) {
        return lattice::dissipation_eps(make_set(eps, e), make_set(eps, f)).str();
    });
    m.def("is_rhombus_like", [](const std::string& eps, std::vector<std::pair<int, int>> cells) {
        return lattice::is_rhombus_like(make_set(eps, cells));
    });
    m.def("quasi_rect_to_set", [](const std::string& eps, int n, int mm, int r) {
        return cells_of(lattice::QuasiRect(to_rat(eps), n, mm, r).to_set());
    });

    // rearrangement
    m.def("rearrange", [](const std::string& eps, std::vector<std::pair<int, int>> cells, int n,
                          int mm, int r) {
        auto rep = steiner::rearrange(make_set(eps, cells), lattice::QuasiRect(to_rat(eps), n, mm, r));
        py::dict d;
        d["after_rows"] = cells_of(rep.after_rows);
        d["output"] = cells_of(rep.output);
        d["perimeter_before"] = rep.perimeter_before.str();
        d["perimeter_after"] = rep.perimeter_after.str();
        d["dissipation_before"] = rep.dissipation_before.str();
        d["dissipation_after"] = rep.dissipation_after.str();
        return d;
    });

    // discrete flow
    m.def("drift", [](const std::string& a, const std::string& b, const std::string& alpha) {
        return dflow::drift(to_rat(a), to_rat(b), to_rat(alpha)).str();
    });
    m.def("candidates",
          [](int A, int B, int C, const std::string& eps, const std::string& alpha) {
              dflow::FlowParams p = params_of(alpha, eps, 1);
              auto cs = dflow::candidates(lattice::QuasiRect(p.eps, A, B, C), p);
              py::list out;
              for (const auto& c : cs) {
                  py::dict d;
                  d["X"] = c.X;
                  d["Y"] = c.Y;
                  d["D"] = c.D;
                  d["overflow"] = c.overflow;
                  d["energy_pq"] = c.energy.str();
                  out.append(d);
              }
              return out;
          });
    m.def("run_symmetric_flow", [](int A, int B, int C, const std::string& eps,
                                   const std::string& alpha, long steps) {
        dflow::FlowParams p = params_of(alpha, eps, steps);
        return traj_to_dict(dflow::run_symmetric_flow(lattice::QuasiRect(p.eps, A, B, C), p));
    });
    m.def("run_rectangular_flow",
          [](int A, int B, const std::string& eps, const std::string& alpha, long steps) {
              dflow::FlowParams p = params_of(alpha, eps, steps);
              return traj_to_dict(dflow::run_rectangular_flow(lattice::QuasiRect(p.eps, A, B, 0), p));
          });
    m.def("pinning_threshold",
          [](const std::string& b) { return dflow::pinning_threshold(to_rat(b)).str(); });
    m.def("is_pinned_window",
          [](const std::string& a, const std::string& b, const std::string& alpha) {
              return dflow::is_pinned_window(to_rat(a), to_rat(b), to_rat(alpha));
          });
    m.def("inclusion_bounds", [](const std::string& a, const std::string& b, const std::string& c,
                                 const std::string& alpha, bool rectangular) {
        auto [da, db] = dflow::inclusion_bounds(to_rat(a), to_rat(b), to_rat(c), to_rat(alpha),
                                                rectangular);
        py::dict d;
        d["da"] = std::make_pair(da.lo.str(), da.hi.str());
        d["db"] = std::make_pair(db.lo.str(), db.hi.str());
        return d;
    });

    // oracle
    m.def("quadrature_dissipation", [](double a_from, double b_from, double a_to, double b_to,
                                       int grid) {
        return oracle::quadrature_dissipation({a_from, b_from}, {a_to, b_to}, grid);
    });
}
