#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dlab/manifold.hpp"
#include "dlab/types.hpp"

namespace dlab {

/// Classical fixed-step RK4 on U' = A(k) U, the independent check of the
/// propagator. Steps are halved until the answer moves by less than
/// `conv_tol` in relative terms; failure to converge throws.
struct Rk4Result {
    complexd w, v;
    int steps;        ///< step count of the accepted run
    double step_change;  ///< relative change at the final halving
};

Rk4Result rk4_oracle(double k, double nu, complexd w0, complexd v0, double t_end,
                     double dt, double conv_tol = 1e-10);
/// Chooses the initial dt from the spectral scale of A(k).
Rk4Result rk4_oracle_auto(double k, double nu, complexd w0, complexd v0, double t_end,
                          double conv_tol = 1e-10);

using OdeRhs = std::function<void(double, std::span<const double>, std::span<double>)>;

/// Dormand-Prince 5(4) with PI-free step control. Integrates y' = f(t, y)
/// from t0, stopping exactly at each requested output time.
/// `observer(t, y)` fires at every output time (including t0 when requested).
void integrate_adaptive(const OdeRhs& f, std::vector<double>& y, double t0,
                        std::span<const double> out_times,
                        const std::function<void(double, std::span<const double>)>& observer,
                        double rtol = 1e-10, double atol = 1e-12, double h_max = 1e30);

/// One-parity reduced state in the t clock. Vectors indexed by mode number.
struct ReducedState {
    Parity parity = Parity::Even;
    std::vector<double> a, b;
    double t = 0.0;
    double eta() const { return 1.0 / (1.0 + t); }
};

/// Integrates the (a, b) system. The -nu b_k terms are removed by an exact
/// exponential factor per step (integrating-factor transform), the remaining
/// eta-scale terms are handled explicitly by the embedded pair. When
/// `on_manifold` is set, b is slaved to h(a, eta) at every evaluation and
/// only a is integrated.
std::vector<ReducedState> integrate_reduced(const CMCoeffTable& table, double nu,
                                            const ReducedState& start, double t_end,
                                            bool on_manifold,
                                            std::span<const double> out_times,
                                            double rtol = 1e-10, double atol = 1e-13);

/// On-manifold a-dynamics in the tau clock: da_k/dtau = -k/2 a_k - h_{k-2}.
std::vector<std::vector<double>> integrate_manifold_tau(const CMCoeffTable& table, double nu,
                                                        std::vector<double> a0, double tau0,
                                                        std::span<const double> out_taus,
                                                        double rtol = 1e-11,
                                                        double atol = 1e-14);

/// Trajectories of the full projected system for (alpha, beta), both
/// parities, sampled at the requested times of the t clock. Internally runs
/// the diagonalized blocks with the stiff terms factored exactly.
struct AlphaBetaTrajectory {
    std::vector<double> times;                 ///< t clock
    std::vector<std::vector<double>> alpha;    ///< [sample][mode]
    std::vector<std::vector<double>> beta;
};

AlphaBetaTrajectory integrate_alphabeta(double nu, int N, std::span<const double> alpha0,
                                        std::span<const double> beta0,
                                        std::span<const double> out_times,
                                        double rtol = 1e-11, double atol = 1e-14);

}  // namespace dlab
