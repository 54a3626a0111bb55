#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace dlab {

/// Composite Gauss-Legendre rule on [-L, L], `panels` panels of 16 nodes.
class QuadGrid {
  public:
    QuadGrid(double L, int panels);

    double L() const { return L_; }
    int panels() const { return panels_; }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

    /// Serial reference reduction.
    double integrate_serial(const std::vector<double>& f) const;
    /// Parallel evaluation + deterministic (serial, fixed-order) summation.
    double integrate(const std::function<double(double)>& f) const;
    double integrate(const std::vector<double>& f) const { return integrate_serial(f); }

    /// Antiderivative u(x_i) = int_{-L}^{x_i} f, via panel-local barycentric
    /// interpolation of the samples. Nodes of each panel support a degree-15
    /// interpolant, so partial-panel integrals keep full accuracy.
    std::vector<double> cumulative(const std::vector<double>& f) const;

    /// Tail heuristic: fraction of |integrand| mass carried by the outermost
    /// panel on each side. Used to flag an under-sized domain.
    double tail_fraction(const std::vector<double>& abs_integrand) const;

  private:
    double L_;
    int panels_;
    std::vector<double> x_, w_;
};

/// Smallest half-width L with (1 + L^2)^m exp(-L^2 / (4 nu_T)) < tol.
double gaussian_safe_halfwidth(double nu_T, int m, double tol = 1e-14);

/// Gauss-Legendre grid sized for Gaussian-weighted integrands of scale nu_T
/// against weights (1+xi^2)^m.
QuadGrid make_weighted_grid(double nu_T, int m, double tail_tol = 1e-14);

/// Real-valued function sampled on a quadrature grid together with the weight
/// exponent of the norm it is meant to be measured in.
struct WeightedFunction {
    std::shared_ptr<const QuadGrid> grid;
    std::vector<double> values;
    int m = 0;
};

WeightedFunction sample_function(std::shared_ptr<const QuadGrid> grid,
                                 const std::function<double(double)>& f, int m);

/// || f ||_m = (int (1+xi^2)^m |f|^2 dxi)^{1/2}. Throws when the estimated
/// tail truncation exceeds `tail_tol` (strict = contract of the operation).
double weighted_norm(const WeightedFunction& f, int m, double tail_tol = 1e-10);
double weighted_norm(const WeightedFunction& f) ;

/// u(xi) = int_{-inf}^{xi} v, demanding int v = 0 (relative tolerance against
/// ||v||). A final linear drift correction enforces u(+L) = 0 exactly.
WeightedFunction antiderivative(const WeightedFunction& v, double mean_tol = 1e-10);

}  // namespace dlab
