#ifndef CPFLUCT_NUMERICS_HPP
#define CPFLUCT_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cpfluct {

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n, double a, double b);

/// Polynomial extrapolation of a sequence (x_i, y_i) to x = 0 (Neville).
/// The x_i must be strictly decreasing and positive; the diagonal of the
/// tableau is kept as the convergence trace.
struct Extrapolation {
    double value = 0.0;
    double uncertainty = 0.0;                       // |last diagonal step|
    std::vector<std::pair<double, double>> trace;   // (order, diagonal value)
};

Extrapolation extrapolate_to_zero(std::span<const double> xs,
                                  std::span<const double> ys);

/// Bracketed scalar root finding (Brent). f(a) and f(b) must straddle zero.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-15, int max_iter = 200);

/// Compensated (Kahan) accumulator. Gives a deterministic, fixed-order
/// reduction independent of how partial results would otherwise associate.
class KahanSum {
public:
    void add(double v) {
        const double y = v - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace cpfluct

#endif
