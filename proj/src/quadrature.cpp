#include "qstat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qstat {

namespace {

struct AdaptiveSimpson {
    const std::function<double(double)>& f;
    int max_depth;
    bool converged = true;

    double refine(double a, double b, double fa, double fb, double fm,
                  double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double refined = left + right;
        const double err = (refined - whole) / 15.0;
        if (std::abs(err) <= tol) {
            return refined + err;
        }
        if (depth <= 0) {
            converged = false;
            return refined + err;
        }
        return refine(a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
    }

    double integrate(double a, double b, double tol) {
        const double fa = f(a);
        const double fb = f(b);
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return refine(a, b, fa, fb, fm, whole, tol, max_depth);
    }
};

// Integrate over a ladder of geometric panels. Panel edges double from the
// innermost scale outward, so boundary layers near the left end are always
// sampled: a single adaptive pass over the full interval can mistake a
// narrow spike for zero.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, double panel_tol) {
    double total = 0.0;
    AdaptiveSimpson quad{f, 48};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += quad.integrate(edges[i], edges[i + 1], panel_tol);
    }
    if (!quad.converged || !std::isfinite(total)) {
        throw quadrature_error("theta_integral_oracle: quadrature did not converge");
    }
    return total;
}

std::vector<double> head_edges(double rate) {
    std::vector<double> edges{0.0};
    double b = std::min(1.0, 0.25 / std::max(rate, 1.0));
    while (b < 1.0) {
        edges.push_back(b);
        b *= 2.0;
    }
    edges.push_back(1.0);
    return edges;
}

std::vector<double> tail_edges() {
    // u runs over (0, 1/e]; panels halve down to where any admissible
    // integrand is far below tolerance.
    std::vector<double> edges;
    double b = std::exp(-1.0);
    while (b > 1e-40) {
        edges.push_back(b);
        b *= 0.5;
    }
    edges.push_back(b);
    std::reverse(edges.begin(), edges.end());
    return edges;
}

}  // namespace

double theta_integral_oracle(Statistics kind, double z, double n, int order) {
    if (!(z >= 1.0)) throw std::domain_error("theta_integral_oracle: z must be >= 1");
    if (order != 0 && order != 1) {
        throw std::domain_error("theta_integral_oracle: order must be 0 or 1");
    }
    if (kind == Statistics::fermi) {
        if (!(n >= 0.0 && n <= 1.0)) {
            throw std::domain_error("theta_integral_oracle: Fermi population outside [0,1]");
        }
    } else if (!(n >= 0.0)) {
        throw std::domain_error("theta_integral_oracle: Bose population negative");
    }

    const double zn = z * n;
    // Integrands are finite at t = 0 (removable singularity); expm1 keeps
    // the 0/0 limits accurate for small t.
    std::function<double(double)> integrand;
    if (kind == Statistics::bose) {
        integrand = [z, zn, order](double t) {
            const double em = std::expm1(t);
            if (em == 0.0) return (order == 0) ? z - 1.0 : 0.0;
            const double core = std::exp(-zn * t) * (-std::expm1(-(z - 1.0) * t)) / em;
            return order == 0 ? core : t * core;
        };
    } else {
        const double zh = z - zn;
        if (order == 0) {
            integrand = [zn, zh](double t) {
                const double em = std::expm1(t);
                if (em == 0.0) return zh - zn;
                return (std::exp(-zn * t) - std::exp(-zh * t)) / em;
            };
        } else {
            integrand = [zn, zh](double t) {
                const double em = std::expm1(t);
                if (em == 0.0) return 2.0;
                return t * (std::exp(-zn * t) + std::exp(-zh * t)) / em;
            };
        }
    }

    const double rate = z * (n + 2.0);
    const double head = integrate_panels(integrand, head_edges(rate), 2e-12);

    // Tail: substitute u = e^(-t), int_1^inf f(t) dt = int_0^(1/e) f(-ln u)/u du.
    // The lowest panel edge clips the interval; the omitted mass is far
    // below tolerance for every admissible integrand.
    std::function<double(double)> tail = [&integrand](double u) {
        return integrand(-std::log(u)) / u;
    };
    const double tail_value = integrate_panels(tail, tail_edges(), 2e-12);

    const double sign = (order == 1) ? -1.0 : 1.0;
    return sign * (head + tail_value);
}

}  // namespace qstat
