#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace cfs {

// Tolerances and limits for the adaptive integrations. xi_scale is the
// characteristic frequency used in the xi -> t variable transform of the
// mode-sum integrals; 0 selects the automatic choice max(omega_p's, c/d).
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-20;
    int max_subdivisions = 200;
    double xi_scale = 0.0;  // rad/s, 0 = auto

    void validate() const {
        if (!(rel_tol > 0.0) || !(rel_tol < 1e-2))
            throw std::invalid_argument("quadrature rel_tol must lie in (0, 1e-2)");
        if (!(abs_tol >= 0.0)) throw std::invalid_argument("quadrature abs_tol must be >= 0");
        if (max_subdivisions < 10)
            throw std::invalid_argument("quadrature max_subdivisions must be >= 10");
        if (!(xi_scale >= 0.0)) throw std::invalid_argument("quadrature xi_scale must be >= 0");
    }
};

struct IntegralResult {
    double value = 0.0;
    double abs_error = 0.0;   // estimated
    double abs_integral = 0.0;  // integral of |f|, for cancellation diagnostics
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kGK15KronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kGK15GaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    double resabs;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    double resk = kGK15KronrodW[7] * fc;
    double resg = kGK15GaussW[3] * fc;
    double resabs = kGK15KronrodW[7] * std::fabs(fc);
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGK15Nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kGK15KronrodW[j] * (f1 + f2);
        resabs += kGK15KronrodW[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kGK15GaussW[(j - 1) / 2] * (f1 + f2);
    }

    const double reskh = 0.5 * resk;
    double resasc = kGK15KronrodW[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kGK15KronrodW[j] *
                  (std::fabs(fv[2 * j] - reskh) + std::fabs(fv[2 * j + 1] - reskh));

    // |K15 - G7| kept raw: the rescaled QUADPACK estimate can hide panels
    // whose exponential tail underflows at every node.
    double err = std::fabs((resk - resg) * half);
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);
    err = std::min(err, resasc);
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

    return Panel{a, b, resk * half, err, resabs};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b].
//
// Convergence target: sum of panel errors <= max(abs_tol,
// rel_tol * max(|I|, l1_fraction * int|f|)). The l1 term keeps the
// subdivision effort bounded when the integrand cancels almost exactly;
// pass 0 for the strict relative test. Optional interior breakpoints seed
// the initial panels so that sharply localized integrands are not missed
// by the first coarse rule.
template <class F>
IntegralResult integrate_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol,
                                  int max_subdivisions, std::span<const double> breakpoints = {},
                                  double l1_fraction = 0.0) {
    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(max_subdivisions) + 8);

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] > edges[i]) panels.push_back(detail::gk15(f, edges[i], edges[i + 1]));

    IntegralResult out;
    int splits = 0;
    const double eps = std::numeric_limits<double>::epsilon();

    auto totals = [&panels](double& value, double& error, double& resabs) {
        value = error = resabs = 0.0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
            resabs += p.resabs;
        }
    };

    double value, error, resabs;
    totals(value, error, resabs);

    while (splits < max_subdivisions) {
        const double scale = std::max(std::fabs(value), l1_fraction * resabs);
        const double tol = std::max(abs_tol, rel_tol * scale);
        if (error <= tol) break;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;

        const detail::Panel target = panels[worst];
        const double mid = 0.5 * (target.a + target.b);
        if (!(mid > target.a && mid < target.b) ||
            (target.b - target.a) <= 8.0 * eps * std::max(std::fabs(target.a), std::fabs(target.b))) {
            break;  // cannot refine further in double precision
        }
        panels[worst] = detail::gk15(f, target.a, mid);
        panels.push_back(detail::gk15(f, mid, target.b));
        ++splits;
        totals(value, error, resabs);
    }

    totals(value, error, resabs);
    out.value = value;
    out.abs_error = error;
    out.abs_integral = resabs;
    out.subdivisions = splits;
    const double scale = std::max(std::fabs(value), l1_fraction * resabs);
    out.converged = error <= std::max(abs_tol, rel_tol * scale);
    return out;
}

}  // namespace cfs
