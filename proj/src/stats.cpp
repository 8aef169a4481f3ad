#include "ghz/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>

#include "ghz/core.hpp"

namespace ghz::stats {

double chi_square_sf(double x, int dof) {
    if (dof <= 0) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquare chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities) {
    if (observed.size() != probabilities.size()) throw InvalidInput("chi_square_gof: size mismatch");
    std::uint64_t total = 0;
    for (auto o : observed) total += o;
    ChiSquare r;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * double(total);
        if (expected <= 0.0) {
            if (observed[i] != 0) r.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        const double d = double(observed[i]) - expected;
        r.statistic += d * d / expected;
        ++cells;
    }
    r.dof = cells - 1;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.size() != b.size()) throw InvalidInput("chi_square_two_sample: size mismatch");
    double na = 0, nb = 0;
    for (auto v : a) na += double(v);
    for (auto v : b) nb += double(v);
    ChiSquare r;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = double(a[i]) + double(b[i]);
        if (col == 0.0) continue;
        const double ea = col * na / (na + nb);
        const double eb = col * nb / (na + nb);
        r.statistic += (double(a[i]) - ea) * (double(a[i]) - ea) / ea + (double(b[i]) - eb) * (double(b[i]) - eb) / eb;
        ++cells;
    }
    r.dof = cells - 1;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

double ks_uniform_statistic(std::vector<double> sample, double lo, double hi) {
    if (sample.empty()) return 0.0;
    std::sort(sample.begin(), sample.end());
    const double n = double(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = std::clamp((sample[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max({d, double(i + 1) / n - cdf, cdf - double(i) / n});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(double(n)); }

}  // namespace ghz::stats
