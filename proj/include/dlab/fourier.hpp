#pragma once

#include <functional>
#include <vector>

#include "dlab/propagator.hpp"
#include "dlab/types.hpp"

namespace dlab {

/// Uniform grid on [a, b] with n nodes (n >= 2).
struct UniformGrid {
    double a = -1.0, b = 1.0;
    int n = 2;
    double h() const { return (b - a) / (n - 1); }
    double node(int i) const { return a + i * h(); }
    std::vector<double> nodes() const {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = node(i);
        return x;
    }
};

/// Standard wavenumber grid for the experiments. The node count is chosen so
/// that +-nu/2 never coincides with a node (the split coefficients blow up
/// there; the propagator itself is fine).
UniformGrid default_kgrid(double halfwidth = 9.0, int n = 4097);

/// Trapezoid integration; for smooth fields decaying below roundoff at the
/// grid ends this is spectrally accurate.
double trapz(const std::vector<double>& f, double h);
complexd trapz(const std::vector<complexd>& f, double h);

double l2_norm(const std::vector<complexd>& f, double h);

/// Centered 4th order first derivative; values beyond the ends are taken as
/// zero (fields are assumed negligible there).
std::vector<complexd> deriv4(const std::vector<complexd>& f, double h);
std::vector<complexd> deriv4_n(const std::vector<complexd>& f, double h, int order);

/// ||| w |||(t) = C(m) (t+1)^{1/4} sqrt( sum_{j<=m} || (1+t)^{-j/2} d_k^j what ||^2 )
/// with C(m) = 1. Derivatives by finite differences; a coarse-grid comparison
/// flags insufficient resolution.
double triple_norm(const std::vector<complexd>& what, double h, double t, int m,
                   double resolution_tol = 1e-5);

/// Same norm with analytic derivatives d_k^j what(k), j <= m.
double triple_norm_analytic(const std::function<complexd(double, int)>& deriv,
                            const UniformGrid& kgrid, double t, int m);

/// f(x) = (1/2pi) int e^{+ikx} fhat(k) dk  (inverse of fhat = int e^{-ikx} f dx),
/// trapezoid over the k-grid, parallel over the x samples.
std::vector<complexd> inverse_transform(const UniformGrid& kgrid,
                                        const std::vector<complexd>& fhat,
                                        const std::vector<double>& xs);

/// Forward transform of a sampled real-space field at requested wavenumbers.
std::vector<complexd> forward_transform(const std::vector<double>& xs,
                                        const std::vector<double>& weights,
                                        const std::vector<double>& f,
                                        const std::vector<double>& ks);

/// Fourier data of Gaussian initial conditions
///   w0(x) = amp exp(-x^2 / (2 width^2))  ->  what0(k) = amp width sqrt(2pi) e^{-(width k)^2/2},
/// plus an optional derivative-of-Gaussian v component (zero mean by parity).
struct GaussianData {
    double w_amp = 1.0, w_width = 1.0;
    double v_amp = 0.0, v_width = 1.0;
    bool v_is_derivative = true;

    complexd what0(double k) const;
    complexd vhat0(double k) const;
    /// d^j/dk^j of what0 at wavenumber k (Hermite closed form).
    complexd what0_deriv(double k, int j) const;
};

ModeState make_mode_state(const UniformGrid& kgrid, const GaussianData& data);

}  // namespace dlab
