#include "dlab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dlab {

FitResult fit_decay_exponent(std::span<const double> clock, std::span<const double> value,
                             double lo, double hi) {
    if (clock.size() != value.size())
        throw std::invalid_argument("fit_decay_exponent: size mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < clock.size(); ++i) {
        if (clock[i] < lo || clock[i] > hi) continue;
        if (!(std::abs(value[i]) > 0.0))
            throw std::invalid_argument("fit_decay_exponent: non-positive value in window");
        xs.push_back(clock[i]);
        ys.push_back(std::log(std::abs(value[i])));
    }
    if (xs.size() < 3) throw std::invalid_argument("fit_decay_exponent: window too short");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    FitResult r;
    r.n = static_cast<int>(xs.size());
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.intercept + r.slope * xs[i]);
        rss += e * e;
    }
    r.residual_rms = std::sqrt(rss / n);
    return r;
}

FitResult fit_decay_exponent(std::span<const double> clock, std::span<const double> value) {
    if (clock.empty()) throw std::invalid_argument("fit_decay_exponent: empty series");
    return fit_decay_exponent(clock, value, clock.front(), clock.back());
}

namespace {

std::vector<double> ranks_with_ties(std::span<const double> v, double eps) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] - v[idx[i]] <= eps) ++j;
        const double avg = 0.5 * (i + j) + 1.0;
        for (std::size_t q = i; q <= j; ++q) rank[idx[q]] = avg;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y, double tie_rel_eps) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman: need two equal-length series");
    auto range = [](std::span<const double> v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    const auto rx = ranks_with_ties(x, tie_rel_eps * range(x));
    const auto ry = ranks_with_ties(y, tie_rel_eps * range(y));
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (rx[i] - mean) * (ry[i] - mean);
        dx += (rx[i] - mean) * (rx[i] - mean);
        dy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (dx == 0.0 || dy == 0.0) return 0.0;  // a constant series carries no trend
    return num / std::sqrt(dx * dy);
}

}  // namespace dlab
