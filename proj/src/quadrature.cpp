#include "dlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlab/threads.hpp"

namespace dlab {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]: positive abscissas and weights.
constexpr int kNodes = 16;
constexpr double kAbs[8] = {
    0.0950125098376374401853, 0.2816035507792589132304, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kWgt[8] = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

}  // namespace

QuadGrid::QuadGrid(double L, int panels) : L_(L), panels_(panels) {
    if (!(L > 0.0) || panels < 1) throw std::invalid_argument("QuadGrid: bad domain");
    x_.reserve(static_cast<std::size_t>(panels) * kNodes);
    w_.reserve(x_.capacity());
    const double width = 2.0 * L / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = -L + p * width;
        const double mid = a + 0.5 * width;
        const double half = 0.5 * width;
        // nodes in ascending order within the panel
        for (int i = 7; i >= 0; --i) {
            x_.push_back(mid - half * kAbs[i]);
            w_.push_back(half * kWgt[i]);
        }
        for (int i = 0; i < 8; ++i) {
            x_.push_back(mid + half * kAbs[i]);
            w_.push_back(half * kWgt[i]);
        }
    }
}

double QuadGrid::integrate_serial(const std::vector<double>& f) const {
    if (f.size() != x_.size()) throw std::invalid_argument("integrate: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w_[i] * f[i];
    return s;
}

double QuadGrid::integrate(const std::function<double(double)>& f) const {
    std::vector<double> vals(x_.size());
    const std::int64_t n = static_cast<std::int64_t>(x_.size());
#pragma omp parallel for schedule(static) num_threads(dlab::threads::max_threads())
    for (std::int64_t i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = f(x_[i]);
    return integrate_serial(vals);
}

std::vector<double> QuadGrid::cumulative(const std::vector<double>& f) const {
    if (f.size() != x_.size()) throw std::invalid_argument("cumulative: size mismatch");
    const double width = 2.0 * L_ / panels_;
    std::vector<double> out(f.size());

    // Barycentric weights for the 16 reference nodes (computed once).
    static const std::vector<double> ref_nodes = [] {
        std::vector<double> r(kNodes);
        for (int i = 7; i >= 0; --i) r[7 - i] = -kAbs[i];
        for (int i = 0; i < 8; ++i) r[8 + i] = kAbs[i];
        return r;
    }();
    static const std::vector<double> bary = [] {
        std::vector<double> b(kNodes, 1.0);
        for (int i = 0; i < kNodes; ++i)
            for (int j = 0; j < kNodes; ++j)
                if (i != j) b[i] /= (ref_nodes[i] - ref_nodes[j]);
        return b;
    }();

    double before = 0.0;  // integral over fully covered panels
    for (int p = 0; p < panels_; ++p) {
        const std::size_t base = static_cast<std::size_t>(p) * kNodes;
        const double a = -L_ + p * width;
        const double half = 0.5 * width;
        const double mid = a + half;

        auto interp = [&](double s) {  // s in [-1,1], panel-local
            double num = 0.0, den = 0.0;
            for (int i = 0; i < kNodes; ++i) {
                const double d = s - ref_nodes[i];
                if (std::abs(d) < 1e-14) return f[base + i];
                const double c = bary[i] / d;
                num += c * f[base + i];
                den += c;
            }
            return num / den;
        };

        for (int i = 0; i < kNodes; ++i) {
            const double si = (x_[base + i] - mid) / half;  // in (-1,1)
            // integral of the interpolant over [-1, si], nested 16-pt rule
            const double m2 = 0.5 * (si - 1.0);  // half-length
            const double c2 = 0.5 * (si + (-1.0));
            double acc = 0.0;
            for (int q = 0; q < 8; ++q) {
                acc += kWgt[q] * (interp(c2 - m2 * kAbs[q]) + interp(c2 + m2 * kAbs[q]));
            }
            out[base + i] = before + half * acc * (-m2);
        }
        double full = 0.0;
        for (int i = 0; i < kNodes; ++i) full += w_[base + i] * f[base + i];
        before += full;
    }
    return out;
}

double QuadGrid::tail_fraction(const std::vector<double>& g) const {
    if (g.size() != x_.size()) throw std::invalid_argument("tail_fraction: size mismatch");
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) total += w_[i] * std::abs(g[i]);
    const std::size_t pn = static_cast<std::size_t>(kNodes);
    for (std::size_t i = 0; i < pn; ++i) {
        tail += w_[i] * std::abs(g[i]);
        tail += w_[g.size() - 1 - i] * std::abs(g[g.size() - 1 - i]);
    }
    return total > 0.0 ? tail / total : 0.0;
}

double gaussian_safe_halfwidth(double nu_T, int m, double tol) {
    auto ok = [&](double L) {
        return m * std::log1p(L * L) - L * L / (4.0 * nu_T) < std::log(tol);
    };
    double L = std::sqrt(nu_T);
    while (!ok(L)) L *= 2.0;
    double lo = L / 2.0, hi = L;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

QuadGrid make_weighted_grid(double nu_T, int m, double tail_tol) {
    const double L = std::ceil(gaussian_safe_halfwidth(nu_T, m, tail_tol)) + 2.0;
    // panel width below the Gaussian scale sqrt(2 nu_T), and never too coarse
    const int panels = std::max(32, static_cast<int>(std::ceil(2.0 * L / std::sqrt(nu_T))));
    return QuadGrid(L, panels);
}

WeightedFunction sample_function(std::shared_ptr<const QuadGrid> grid,
                                 const std::function<double(double)>& f, int m) {
    WeightedFunction out;
    out.grid = std::move(grid);
    out.m = m;
    out.values.resize(out.grid->size());
    const auto& xs = out.grid->nodes();
    for (std::size_t i = 0; i < xs.size(); ++i) out.values[i] = f(xs[i]);
    return out;
}

double weighted_norm(const WeightedFunction& f, int m, double tail_tol) {
    const auto& g = *f.grid;
    std::vector<double> integrand(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.nodes()[i];
        integrand[i] = std::pow(1.0 + x * x, m) * f.values[i] * f.values[i];
    }
    const double frac = g.tail_fraction(integrand);
    if (frac > tail_tol)
        throw std::runtime_error("weighted_norm: quadrature tail above tolerance; enlarge L");
    return std::sqrt(std::max(0.0, g.integrate_serial(integrand)));
}

double weighted_norm(const WeightedFunction& f) { return weighted_norm(f, f.m); }

WeightedFunction antiderivative(const WeightedFunction& v, double mean_tol) {
    const auto& g = *v.grid;
    const double total = g.integrate_serial(v.values);
    double l2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) l2 += g.weights()[i] * v.values[i] * v.values[i];
    l2 = std::sqrt(std::max(0.0, l2));
    // Cauchy-Schwarz normalization: |int v| <= ||v||_2 sqrt(2L)
    const double rel = std::abs(total) / std::max(1e-300, l2 * std::sqrt(2.0 * g.L()));
    if (rel > mean_tol)
        throw std::invalid_argument("antiderivative: input must have zero mean");

    WeightedFunction u;
    u.grid = v.grid;
    u.m = v.m;
    u.values = g.cumulative(v.values);
    // linear drift correction pinning u(+L) = 0
    const double drift = u.values.empty() ? 0.0 : total;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double x = g.nodes()[i];
        u.values[i] -= drift * (x + g.L()) / (2.0 * g.L());
    }
    return u;
}

}  // namespace dlab
