#pragma once

#include <atomic>
#include <vector>

#include "dlab/types.hpp"

namespace dlab {

/// Coupling matrix of the Fourier-side system:
///   A(k) = [ -nu k^2      -i k        ]
///          [ -i k         -nu (k^2+1) ]
Mat2c coupling_matrix(double k, double nu);

/// Spectral data of A(k). The discriminant root is the principal branch of
/// sqrt(nu^2 - 4k^2): nonnegative real when nu^2 >= 4k^2, positive imaginary
/// otherwise, which keeps lambda_plus the slow eigenvalue near k = 0.
struct EigenData {
    complexd lambda_plus;
    complexd lambda_minus;
    complexd sqrt_disc;    ///< sqrt(nu^2 - 4 k^2), principal branch
    bool degenerate;       ///< |nu^2 - 4k^2| below the Jordan threshold
    Mat2c S;               ///< eigenvector columns (identity convention at k = 0)
    Mat2c S_inv;
};

/// Jordan-window threshold on |nu^2 - 4 k^2|.
inline double jordan_threshold(double nu) { return 1e-8 * nu * nu; }

EigenData eigenvalues(double k, double nu);

/// Number of propagator evaluations that fell inside the Jordan window since
/// process start. Exposed so callers can log threshold crossings.
long jordan_window_evaluations();

/// e^{A(k) t}, exact in closed form for every k including the degenerate
/// points k = +-nu/2. Writing A = lam_bar I + Ntilde with Ntilde^2 = z^2 I,
///   e^{At} = e^{lam_bar t} ( cosh(zt) I + t sinhc(zt) Ntilde ),
/// which reduces to the diagonalized form away from the double eigenvalue and
/// to the Jordan formula e^{lam t}(I + t(A - lam I)) at it. Evaluation
/// switches between series, trigonometric and explicit-exponential branches
/// so no regime suffers cancellation or overflow.
Mat2c propagator(double k, double t, double nu);

/// Fourier samples of the pair (w_hat, v_hat) on a uniform wavenumber grid.
struct ModeState {
    std::vector<double> k;
    std::vector<complexd> what;
    std::vector<complexd> vhat;
    double t = 0.0;
};

/// Pointwise application of the propagator, parallel map over the grid.
ModeState evolve(const ModeState& state, double t_target, double nu);
/// Serial reference implementation kept for testing the parallel kernel.
ModeState evolve_serial(const ModeState& state, double t_target, double nu);

/// Correction Lambda(k) = lambda_plus(k) + (nu + 1/nu) k^2, summed from the
/// binomial series. Requires 4k^2/nu^2 <= 15/16 so the tail is geometric.
double lambda_remainder(double k, double nu, double tol = 1e-16);

/// Coefficients of the slow/fast split of one solution component:
///   component(k,t) = (f1 * w0 + f2 * v0) e^{lambda_plus t}
///                  + (g1 * w0 + g2 * v0) e^{lambda_minus t}.
struct SplitCoeffs {
    complexd f1, f2, g1, g2;
};

/// Split coefficients for w_hat. Rejects near-degenerate k.
SplitCoeffs w_split_coeffs(double k, double nu);
/// Split coefficients for v_hat (the "and similarly" companion formula).
SplitCoeffs v_split_coeffs(double k, double nu);

struct SplitParts {
    complexd plus_w, minus_w;
    complexd plus_v, minus_v;
};

/// Evaluates both exponential parts for initial data (w0, v0); their sums
/// reproduce evolve() output.
SplitParts solution_split(complexd w0, complexd v0, double k, double t, double nu);

}  // namespace dlab
