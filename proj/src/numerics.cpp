#include "cpfluct/numerics.hpp"

#include <cmath>
#include <limits>

namespace cpfluct {

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    if (!(b > a)) throw std::invalid_argument("gauss_legendre: need b > a");

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    // Newton iteration on P_n with the Chebyshev-angle initial guess.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double xl = 0.5 * (b - a);
        const double xm = 0.5 * (a + b);
        const double w = 2.0 * xl / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = xm - xl * x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = xm + xl * x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

Extrapolation extrapolate_to_zero(std::span<const double> xs,
                                  std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n == 0 || ys.size() != n)
        throw std::invalid_argument("extrapolate_to_zero: size mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(xs[i] < xs[i - 1]) || !(xs[i] > 0.0))
            throw std::invalid_argument(
                "extrapolate_to_zero: xs must be strictly decreasing and positive");

    Extrapolation out;
    std::vector<double> col(ys.begin(), ys.end());
    out.trace.emplace_back(0.0, col.back());
    double prev = col.back();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            // Neville step evaluated at x = 0
            col[i] = (xs[i] * col[i + 1] - xs[i + m] * col[i]) / (xs[i] - xs[i + m]);
        }
        col.resize(n - m);
        out.trace.emplace_back(static_cast<double>(m), col.back());
        out.uncertainty = std::abs(col.back() - prev);
        prev = col.back();
    }
    out.value = col.front();
    return out;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::domain_error("brent_root: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol || fb == 0.0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {       // inverse quadratic
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (xm > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return b;
}

} // namespace cpfluct
