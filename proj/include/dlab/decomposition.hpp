#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dlab/fourier.hpp"
#include "dlab/hermite.hpp"
#include "dlab/series.hpp"
#include "dlab/types.hpp"

namespace dlab {

/// Smooth low/high frequency cutoff: identically 1 on |k| <= r1 = sqrt(15) nu/8,
/// identically 0 for |k| >= r2 = r1 + nu^2, C-infinity bridge in between.
struct CutoffSpec {
    double nu = 0.5;
    double r1 = 0.0;
    double r2 = 0.0;
    static CutoffSpec standard(double nu);
};

double cutoff(const CutoffSpec& spec, double k);

/// Fourier-side initial data with optional exact Taylor series at k = 0.
struct SpectralData {
    std::function<complexd(double)> what0, vhat0;
    std::function<TaylorSeries(int)> w_series, v_series;  // may be empty
};

SpectralData spectral_data(const GaussianData& g);

/// Lambda(k) = lambda_plus(k) + nu_T k^2 evaluated from the eigenvalue
/// (analytic continuation of the series; agrees with lambda_remainder on its
/// convergence region).
complexd lambda_correction(double k, double nu);

/// wbar(k,t) = e^{Lambda(k) t} (f1 w0 + f2 v0); defined on the cutoff support.
complexd wbar(const SpectralData& data, double k, double t, double nu);
/// companion for v_hat
complexd vbar(const SpectralData& data, double k, double t, double nu);

/// The pieces of the decomposition
///   what = psi e^{-nu_T k^2 t} (wbar_low^N + wbar_low^res) + psi g e^{lambda_- t} + what_high,
/// each evaluated in an overflow-safe arrangement.
struct DecompositionParts {
    complexd low_poly;    ///< psi e^{-nu_T k^2 t} wbar_low^N
    complexd low_res;     ///< psi e^{-nu_T k^2 t} wbar_low^res
    complexd minus_part;  ///< psi g e^{lambda_- t}
    complexd high;        ///< (1 - psi) what
};

class Decomposer {
  public:
    Decomposer(SpectralData data, double nu, int N);

    const CutoffSpec& spec() const { return spec_; }

    /// d^j/dk^j wbar(0, t) for j = 0..N, by series arithmetic on the closed
    /// forms; a finite-difference cross-check (spacing nu/100, orders <= 3)
    /// guards the analytic route.
    std::vector<complexd> taylor_at_zero(double t, bool cross_check = true) const;
    std::vector<complexd> taylor_at_zero_v(double t) const;

    DecompositionParts parts(double k, double t) const;
    /// what(k, t) via the propagator (for the recombination identity).
    complexd exact_what(double k, double t) const;

  private:
    complexd slow_w(double k, double t) const;  // e^{lambda_+ t}(f1 w0 + f2 v0)
    SpectralData data_;
    double nu_;
    int N_;
    CutoffSpec spec_;
};

/// C^nu_{j,l} = binom(j,l) nu_T^{(j-l)/2} P^{j-l}(0) with P^n(0) = n!/(n/2)!
/// for even n, zero for odd. (The v-side D coefficients coincide.)
double c_coeff(int j, int l, double nu);

/// Both routes to d^l_k what(0, t): numerically transformed and finite-
/// differenced on one side, moments of the projected field on the other.
struct MomentIdentity {
    complexd fourier_route;
    complexd moment_route;
};

MomentIdentity moment_identity(int l, const WeightedFunction& w_scaling, double t,
                               const HermiteBasis& basis, int N);

/// Assembly of the truncated approximate solutions from Hermite-coefficient
/// trajectories. Works in the (xi_tilde = x/sqrt(t), tau_tilde = log t) frame
/// and converts to the (xi, tau) frame for comparisons.
class AppAssembler {
  public:
    AppAssembler(double nu, int N);

    const HermiteBasis& basis() const { return basis_; }

    /// phi-coefficients of w_app at physical time t (tau_tilde = log t), from
    /// alpha sampled at tau = log(1+t). Throws if the imaginary residue of
    /// the complex assembly exceeds 1e-9 relative.
    std::vector<double> w_phi_coeffs(const std::vector<double>& alpha, double t) const;
    /// Same for v_app from the antiderivative-side coefficients beta.
    std::vector<double> v_phi_coeffs(const std::vector<double>& beta, double t) const;

    /// Sampled approximate solutions in the (xi, tau) frame at time t.
    std::vector<double> w_app_on_xi(const std::vector<double>& alpha, double t,
                                    const std::vector<double>& xis) const;
    std::vector<double> v_app_on_xi(const std::vector<double>& beta, double t,
                                    const std::vector<double>& xis) const;

  private:
    double nu_;
    int N_;
    HermiteBasis basis_;
};

/// || k^d e^{-nu_T k^2 t} ||_{L^2} and its Gaussian-moment closed form
/// C(d) (nu_T t)^{-(2d+1)/4}.
struct MomentNormCheck {
    double quadrature;
    double closed_form;
};
MomentNormCheck gaussian_moment_norm(int d, double nu_T, double t);

/// Residual-bound experiment: fitted log-log t slope of the low-mode residual
/// norm, per derivative order, plus the smallest constant making the stated
/// bound hold across the time grid ("stabilized": its late-time trend).
struct BoundReport {
    std::vector<double> t_grid;
    std::vector<std::vector<double>> norms;  ///< [order][time]
    std::vector<double> slopes;              ///< fitted slope per order
    std::vector<double> constants;           ///< sup of bound ratio per order
    std::vector<double> constant_trend;      ///< late-window slope of the ratio
};

BoundReport residual_bound_check(const Decomposer& dec, double nu, int N,
                                 const std::vector<double>& t_grid,
                                 const std::vector<int>& orders);

BoundReport high_mode_bound_check(const Decomposer& dec, double nu,
                                  const std::vector<double>& t_grid,
                                  const std::vector<int>& orders);

}  // namespace dlab
