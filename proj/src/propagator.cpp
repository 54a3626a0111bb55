#include "dlab/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "dlab/threads.hpp"

namespace dlab {

namespace {
std::atomic<long> g_jordan_hits{0};
}

Mat2c coupling_matrix(double k, double nu) {
    const complexd ik(0.0, k);
    return {complexd(-nu * k * k, 0.0), -ik, -ik, complexd(-nu * (k * k + 1.0), 0.0)};
}

EigenData eigenvalues(double k, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("eigenvalues: nu must be positive");
    EigenData e;
    const double disc = nu * nu - 4.0 * k * k;
    e.sqrt_disc = disc >= 0.0 ? complexd(std::sqrt(disc), 0.0)
                              : complexd(0.0, std::sqrt(-disc));
    const double lam_bar = -nu * k * k - 0.5 * nu;
    e.lambda_plus = lam_bar + 0.5 * e.sqrt_disc;
    e.lambda_minus = lam_bar - 0.5 * e.sqrt_disc;
    e.degenerate = std::abs(disc) < jordan_threshold(nu);

    if (k == 0.0) {
        e.S = Mat2c::identity();
        e.S_inv = Mat2c::identity();
        return e;
    }
    const complexd ik(0.0, k);
    const complexd d = e.sqrt_disc;
    e.S = {ik, ik, 0.5 * (nu - d), 0.5 * (nu + d)};
    if (!e.degenerate) {
        const complexd det = e.S.a11 * e.S.a22 - e.S.a12 * e.S.a21;  // = ik d
        e.S_inv = {e.S.a22 / det, -e.S.a12 / det, -e.S.a21 / det, e.S.a11 / det};
    } else {
        e.S_inv = Mat2c::identity();  // not meaningful at the Jordan point
    }
    return e;
}

long jordan_window_evaluations() { return g_jordan_hits.load(); }

Mat2c propagator(double k, double t, double nu) {
    if (t < 0.0) throw std::invalid_argument("propagator: t must be >= 0");
    const double disc = nu * nu - 4.0 * k * k;  // (2z)^2
    const double lam_bar = -nu * k * k - 0.5 * nu;
    if (std::abs(disc) < jordan_threshold(nu)) g_jordan_hits.fetch_add(1);

    // C = cosh(z t), S = sinh(z t)/z with z = sqrt(disc)/2; both are real
    // functions of disc regardless of its sign.
    const double wsq = 0.25 * disc * t * t;  // (z t)^2
    double C, S, expfac;
    if (std::abs(wsq) < 1e-8) {
        // series in (zt)^2; covers the Jordan window without forming z
        C = 1.0 + wsq * (0.5 + wsq / 24.0);
        S = t * (1.0 + wsq * (1.0 / 6.0 + wsq / 120.0));
        expfac = std::exp(lam_bar * t);
    } else if (disc > 0.0) {
        const double z = 0.5 * std::sqrt(disc);
        if (z * t < 0.5) {
            C = std::cosh(z * t);
            S = std::sinh(z * t) / z;
            expfac = std::exp(lam_bar * t);
        } else {
            // explicit eigen-exponentials; both exponents are <= 0, so this
            // branch cannot overflow even when exp(lam_bar t) would underflow
            const double Ep = std::exp((lam_bar + z) * t);
            const double Em = std::exp((lam_bar - z) * t);
            C = 0.5 * (Ep + Em);
            S = 0.5 * (Ep - Em) / z;
            expfac = 1.0;
        }
    } else {
        const double zi = 0.5 * std::sqrt(-disc);
        C = std::cos(zi * t);
        S = std::sin(zi * t) / zi;
        expfac = std::exp(lam_bar * t);
    }

    // A - lam_bar I = [ nu/2, -ik; -ik, -nu/2 ]
    const complexd ikS(0.0, -k * S);
    Mat2c M;
    M.a11 = expfac * complexd(C + 0.5 * nu * S, 0.0);
    M.a12 = expfac * ikS;
    M.a21 = M.a12;
    M.a22 = expfac * complexd(C - 0.5 * nu * S, 0.0);
    return M;
}

namespace {

ModeState evolve_impl(const ModeState& state, double t_target, double nu, bool parallel) {
    if (t_target < state.t) throw std::invalid_argument("evolve: target before state time");
    ModeState out = state;
    out.t = t_target;
    const double dt = t_target - state.t;
    const std::int64_t n = static_cast<std::int64_t>(state.k.size());
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(dlab::threads::max_threads())
    for (std::int64_t i = 0; i < n; ++i) {
        const Mat2c M = propagator(state.k[i], dt, nu);
        auto [w, v] = M.apply(state.what[i], state.vhat[i]);
        out.what[i] = w;
        out.vhat[i] = v;
    }
    return out;
}

}  // namespace

ModeState evolve(const ModeState& state, double t_target, double nu) {
    return evolve_impl(state, t_target, nu, true);
}

ModeState evolve_serial(const ModeState& state, double t_target, double nu) {
    return evolve_impl(state, t_target, nu, false);
}

double lambda_remainder(double k, double nu, double tol) {
    const double x = 4.0 * k * k / (nu * nu);
    if (x > 15.0 / 16.0)
        throw std::domain_error("lambda_remainder: 4k^2/nu^2 must be <= 15/16");
    // Lambda = (nu/2) sum_{n>=2} binom(1/2,n) (-1)^n x^n
    double binom = 0.5;  // binom(1/2, 1)
    double xn = x;       // x^1
    double sum = 0.0;
    for (int n = 2; n < 400; ++n) {
        binom *= (0.5 - (n - 1)) / n;
        xn *= x;
        const double term = 0.5 * nu * binom * ((n % 2 == 0) ? 1.0 : -1.0) * xn;
        sum += term;
        if (std::abs(term) < tol * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum;
}

namespace {

complexd checked_sqrt_disc(double k, double nu) {
    const double disc = nu * nu - 4.0 * k * k;
    if (std::abs(disc) < jordan_threshold(nu))
        throw std::domain_error("solution split undefined at the degenerate wavenumber");
    return disc >= 0.0 ? complexd(std::sqrt(disc), 0.0) : complexd(0.0, std::sqrt(-disc));
}

}  // namespace

SplitCoeffs w_split_coeffs(double k, double nu) {
    const complexd d = checked_sqrt_disc(k, nu);
    const complexd ik(0.0, k);
    SplitCoeffs c;
    c.f1 = 0.5 * (nu + d) / d;
    c.f2 = -ik / d;
    c.g1 = 0.5 * (d - nu) / d;
    c.g2 = ik / d;
    return c;
}

SplitCoeffs v_split_coeffs(double k, double nu) {
    const complexd d = checked_sqrt_disc(k, nu);
    const complexd ik(0.0, k);
    SplitCoeffs c;
    c.f1 = 0.5 * (d - nu) / d;  // multiplies v0
    c.f2 = -ik / d;             // multiplies w0
    c.g1 = 0.5 * (d + nu) / d;
    c.g2 = ik / d;
    return c;
}

SplitParts solution_split(complexd w0, complexd v0, double k, double t, double nu) {
    const EigenData e = eigenvalues(k, nu);
    const SplitCoeffs cw = w_split_coeffs(k, nu);
    const SplitCoeffs cv = v_split_coeffs(k, nu);
    const complexd Ep = std::exp(e.lambda_plus * t);
    const complexd Em = std::exp(e.lambda_minus * t);
    SplitParts p;
    p.plus_w = (cw.f1 * w0 + cw.f2 * v0) * Ep;
    p.minus_w = (cw.g1 * w0 + cw.g2 * v0) * Em;
    p.plus_v = (cv.f1 * v0 + cv.f2 * w0) * Ep;
    p.minus_v = (cv.g1 * v0 + cv.g2 * w0) * Em;
    return p;
}

}  // namespace dlab
