#include "dlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlab {

namespace {

void rk4_run(const Mat2c& A, complexd& w, complexd& v, double t_end, int steps) {
    const double h = t_end / steps;
    for (int s = 0; s < steps; ++s) {
        const auto [k1w, k1v] = A.apply(w, v);
        const auto [k2w, k2v] = A.apply(w + 0.5 * h * k1w, v + 0.5 * h * k1v);
        const auto [k3w, k3v] = A.apply(w + 0.5 * h * k2w, v + 0.5 * h * k2v);
        const auto [k4w, k4v] = A.apply(w + h * k3w, v + h * k3v);
        w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
}

}  // namespace

Rk4Result rk4_oracle(double k, double nu, complexd w0, complexd v0, double t_end,
                     double dt, double conv_tol) {
    if (t_end < 0.0 || dt <= 0.0) throw std::invalid_argument("rk4_oracle: bad time step");
    if (t_end == 0.0) return {w0, v0, 0, 0.0};
    const Mat2c A = coupling_matrix(k, nu);
    int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt)));
    complexd w = w0, v = v0;
    rk4_run(A, w, v, t_end, steps);
    for (int refine = 0; refine < 24; ++refine) {
        complexd w2 = w0, v2 = v0;
        steps *= 2;
        rk4_run(A, w2, v2, t_end, steps);
        const double scale =
            std::max({std::abs(w2), std::abs(v2), 1e-280});
        const double change = std::max(std::abs(w2 - w), std::abs(v2 - v)) / scale;
        w = w2;
        v = v2;
        if (change < conv_tol) return {w, v, steps, change};
    }
    throw std::runtime_error("rk4_oracle: step-size convergence failure");
}

Rk4Result rk4_oracle_auto(double k, double nu, complexd w0, complexd v0, double t_end,
                          double conv_tol) {
    const double rate = nu * (k * k + 1.0) + std::abs(k) + nu;
    const double dt = 0.02 / rate;
    return rk4_oracle(k, nu, w0, v0, t_end, dt, conv_tol);
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DpStepper {
    const OdeRhs& f;
    std::size_t n;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

    explicit DpStepper(const OdeRhs& f_, std::size_t n_) : f(f_), n(n_) {
        for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &ytmp, &ynew}) v->resize(n);
    }

    // returns the error norm (scaled); fills ynew
    double step(double t, std::span<const double> y, double h, double rtol, double atol) {
        f(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        return std::sqrt(err / std::max<std::size_t>(1, n));
    }
};

}  // namespace

void integrate_adaptive(const OdeRhs& f, std::vector<double>& y, double t0,
                        std::span<const double> out_times,
                        const std::function<void(double, std::span<const double>)>& observer,
                        double rtol, double atol, double h_max) {
    DpStepper st(f, y.size());
    double t = t0;
    double h = 1e-4;
    for (double t_out : out_times) {
        if (t_out < t - 1e-12) throw std::invalid_argument("integrate_adaptive: times not sorted");
        while (t < t_out) {
            h = std::min({h, h_max, t_out - t});
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw std::runtime_error("integrate_adaptive: step size underflow");
            const double err = st.step(t, y, h, rtol, atol);
            if (err <= 1.0) {
                t += h;
                std::copy(st.ynew.begin(), st.ynew.end(), y.begin());
                const double grow = err > 1e-12 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
        }
        if (observer) observer(t_out, y);
    }
}

namespace {

// RHS of the factored reduced system on (a, c) with b = e^{-nu sigma} c:
// the -nu b part of b' is integrated exactly, the rest explicitly.
struct FactoredReduced {
    Parity parity;
    double nu;
    double t_base;   // step start; sigma = t - t_base
    int modes;       // vector length (N+1)
    const CMCoeffTable* table = nullptr;  // only for on-manifold slaving

    void operator()(double sigma, std::span<const double> y, std::span<double> dy) const {
        const double t = t_base + sigma;
        const double eta = 1.0 / (1.0 + t);
        const double decay = std::exp(-nu * sigma);
        const int lo = parity_floor(parity);
        std::vector<double> a(y.begin(), y.begin() + modes);
        std::vector<double> b(modes, 0.0);
        for (int k = lo; k < modes; k += 2) b[k] = decay * y[modes + k];
        std::vector<double> da(modes, 0.0), db(modes, 0.0);
        ab_rhs(parity, nu, eta, a, b, da, db);
        for (int k = 0; k < modes; ++k) dy[k] = da[k];
        for (int k = 0; k < modes; ++k) dy[modes + k] = 0.0;
        for (int k = lo; k < modes; k += 2)
            dy[modes + k] = (db[k] + nu * b[k]) / decay;  // e^{+nu sigma} (db + nu b)
    }
};

}  // namespace

std::vector<ReducedState> integrate_reduced(const CMCoeffTable& table, double nu,
                                            const ReducedState& start, double t_end,
                                            bool on_manifold,
                                            std::span<const double> out_times,
                                            double rtol, double atol) {
    if (t_end < start.t) throw std::invalid_argument("integrate_reduced: t_end before start");
    const int modes = static_cast<int>(start.a.size());
    const Parity parity = start.parity;
    const int lo = parity_floor(parity);

    std::vector<ReducedState> out;
    out.reserve(out_times.size());

    if (on_manifold) {
        // only a evolves; b is slaved to the graph at every evaluation
        OdeRhs rhs = [&](double t, std::span<const double> a, std::span<double> da) {
            const double eta = 1.0 / (1.0 + t);
            std::vector<double> b(modes, 0.0);
            for (int k = lo + 2; k < modes; k += 2)
                b[k] = table.h_value(k, a, eta, nu);
            std::vector<double> db(modes, 0.0);
            ab_rhs(parity, nu, eta, a, b, std::span<double>(da.data(), modes), db);
        };
        std::vector<double> y = start.a;
        integrate_adaptive(
            rhs, y, start.t, out_times,
            [&](double t, std::span<const double> ycur) {
                ReducedState s;
                s.parity = parity;
                s.t = t;
                s.a.assign(ycur.begin(), ycur.end());
                s.b.assign(modes, 0.0);
                const double eta = 1.0 / (1.0 + t);
                for (int k = lo + 2; k < modes; k += 2)
                    s.b[k] = table.h_value(k, s.a, eta, nu);
                out.push_back(std::move(s));
            },
            rtol, atol);
        return out;
    }

    // full system: step in segments between output times with the exponential
    // factor reset at each segment start to keep e^{nu sigma} bounded
    std::vector<double> a = start.a, b = start.b;
    double t = start.t;
    for (double t_out : out_times) {
        double seg_start = t;
        while (t < t_out) {
            const double seg_end = std::min(t_out, seg_start + 2.0 / nu);
            FactoredReduced rhs{parity, nu, seg_start, modes, nullptr};
            std::vector<double> y(2 * modes, 0.0);
            for (int k = 0; k < modes; ++k) y[k] = a[k];
            for (int k = 0; k < modes; ++k) y[modes + k] = b[k];
            const double span_out[] = {seg_end - seg_start};
            integrate_adaptive(
                [&rhs](double s, std::span<const double> yy, std::span<double> dyy) {
                    rhs(s, yy, dyy);
                },
                y, t - seg_start, span_out, nullptr, rtol, atol, 1.0 / nu);
            const double decay = std::exp(-nu * (seg_end - seg_start));
            for (int k = 0; k < modes; ++k) a[k] = y[k];
            for (int k = lo; k < modes; k += 2) b[k] = decay * y[modes + k];
            t = seg_end;
            seg_start = seg_end;
        }
        ReducedState s;
        s.parity = parity;
        s.t = t;
        s.a = a;
        s.b = b;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::vector<double>> integrate_manifold_tau(const CMCoeffTable& table, double nu,
                                                        std::vector<double> a0, double tau0,
                                                        std::span<const double> out_taus,
                                                        double rtol, double atol) {
    const int modes = static_cast<int>(a0.size());
    const int lo = parity_floor(table.parity());
    OdeRhs rhs = [&](double tau, std::span<const double> a, std::span<double> da) {
        const double eta = std::exp(-tau);
        for (int k = 0; k < modes; ++k) da[k] = 0.0;
        for (int k = lo; k < modes; k += 2) {
            da[k] = -0.5 * k * a[k];
            if (k - 2 >= lo + 2) da[k] -= table.h_value(k - 2, a, eta, nu);
        }
    };
    std::vector<std::vector<double>> out;
    out.reserve(out_taus.size());
    integrate_adaptive(
        rhs, a0, tau0, out_taus,
        [&](double, std::span<const double> a) { out.emplace_back(a.begin(), a.end()); }, rtol,
        atol);
    return out;
}

AlphaBetaTrajectory integrate_alphabeta(double nu, int N, std::span<const double> alpha0,
                                        std::span<const double> beta0,
                                        std::span<const double> out_times, double rtol,
                                        double atol) {
    const int modes = N + 1;
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    alphabeta_to_ab(alpha0, beta0, nu, a, b);

    AlphaBetaTrajectory traj;
    traj.times.assign(out_times.begin(), out_times.end());
    traj.alpha.assign(out_times.size(), std::vector<double>(modes, 0.0));
    traj.beta.assign(out_times.size(), std::vector<double>(modes, 0.0));

    // no center-manifold data needed for the full system; a throwaway table
    const CMCoeffTable even = build_even_table(0);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
        ReducedState s0;
        s0.parity = parity;
        s0.t = 0.0;
        s0.a = a;
        s0.b = b;
        // zero the other parity so the blocks stay independent
        const int lo = parity_floor(parity);
        for (int k = 0; k < modes; ++k)
            if ((k - lo) % 2 != 0) s0.a[k] = s0.b[k] = 0.0;
        auto traj_p = integrate_reduced(even, nu, s0, out_times.empty() ? 0.0 : out_times.back(),
                                        false, out_times, rtol, atol);
        for (std::size_t i = 0; i < traj_p.size(); ++i) {
            std::vector<double> al(modes, 0.0), be(modes, 0.0);
            ab_to_alphabeta(traj_p[i].a, traj_p[i].b, nu, al, be);
            for (int k = lo; k < modes; k += 2) {
                traj.alpha[i][k] = al[k];
                traj.beta[i][k] = be[k];
            }
        }
    }
    return traj;
}

}  // namespace dlab
