#include "ipc/gw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ipc {

double theta(double lambda) {
    if (lambda <= 1.0) return 0.0;
    // root of g(t) = 1 - t - exp(-lambda t) in (0, 1); g(0) = 0 is the trivial
    // root, g'(0) = lambda - 1 > 0, g(1) < 0
    double lo = 0.0, hi = 1.0;
    // move lo off the trivial root
    double t = 1.0 - std::exp(-lambda);
    for (int i = 0; i < 200; ++i) {
        double g = 1.0 - t - std::exp(-lambda * t);
        double gp = -1.0 + lambda * std::exp(-lambda * t);
        if (g > 0.0) lo = t; else hi = t;
        double nt = t - g / gp;
        if (!(nt > lo && nt < hi)) nt = 0.5 * (lo + hi);
        if (nt == t) break;
        t = nt;
    }
    return t;
}

double theta_prime(double lambda) {
    if (lambda <= 1.0) return 0.0;
    double th = theta(lambda);
    return th * (1.0 - th) / (1.0 - lambda * (1.0 - th));
}

double dual_m(double lambda) {
    if (lambda <= 1.0) return lambda;
    return lambda * (1.0 - theta(lambda));
}

double dual_inverse(double m) {
    if (m <= 0.0 || m > 1.0) throw std::invalid_argument("dual_inverse: m must be in (0,1]");
    if (m == 1.0) return 1.0;
    // solve lambda e^{-lambda} = m e^{-m}, lambda >= 1 (strictly decreasing there)
    double target = m * std::exp(-m);
    double lo = 1.0, hi = 2.0;
    while (hi * std::exp(-hi) > target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid * std::exp(-mid) > target) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double pgw_size_pmf(double mu, std::int64_t n) {
    if (n < 1) return 0.0;
    if (mu <= 0.0) return n == 1 ? 1.0 : 0.0;
    double nd = static_cast<double>(n);
    double log_p = -mu * nd + (nd - 1.0) * std::log(mu * nd) - std::lgamma(nd + 1.0);
    return std::exp(log_p);
}

double borel_pmf(std::int64_t n) { return pgw_size_pmf(1.0, n); }

double forward_height_density(double h, double y) {
    if (!(y > 1.0 && y < h)) return 0.0;
    return theta_prime(y) / theta(h);
}

double forward_joint_density(double h, std::int64_t n, double y) {
    if (!(y > 1.0 && y < h) || n < 1) return 0.0;
    double nd = static_cast<double>(n);
    double log_t = -y * nd + (nd - 1.0) * std::log(y * nd) - std::lgamma(nd);
    return theta(y) / theta(h) * std::exp(log_t);
}

double pond_size_given_height(double y, std::int64_t n) {
    if (n < 1 || y <= 1.0) return 0.0;
    double nd = static_cast<double>(n);
    double log_t = -y * nd + (nd - 1.0) * std::log(y * nd) - std::lgamma(nd);
    return theta(y) / theta_prime(y) * std::exp(log_t);
}

double phi_pmf(double y, std::int64_t n) {
    if (n < 1 || y <= 0.0 || y >= 1.0) return 0.0;
    double nd = static_cast<double>(n);
    double log_t = -y * nd + (nd - 1.0) * std::log(y * nd) - std::lgamma(nd);
    return (1.0 - y) * std::exp(log_t);
}

double geometric_pmf(double x, std::int64_t k) {
    if (k < 0 || x < 0.0 || x >= 1.0) return 0.0;
    return std::pow(x, static_cast<double>(k)) * (1.0 - x);
}

double cayley_distance_pmf(std::int64_t n, std::int64_t k) {
    if (k < 1 || k > n) return 0.0;
    double p = static_cast<double>(k) / static_cast<double>(n);
    for (std::int64_t i = 0; i < k; ++i)
        p *= static_cast<double>(n - i) / static_cast<double>(n);
    return p;
}

double walk_chance_probability(double lambda) { return std::min(lambda, 1.0); }

double walk_survival_probability(double lambda) { return theta(lambda); }

double q_map(double lambda, QVariant variant) {
    switch (variant) {
    case QVariant::OneMinusTheta: return 1.0 - theta(lambda);
    case QVariant::Dual: return dual_m(lambda);
    }
    return 0.0;
}

double perm_identity(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end());
    double sum = 0.0;
    do {
        double prefix = 0.0, term = 1.0;
        for (std::size_t idx : order) {
            prefix += values[idx];
            term /= prefix;
        }
        sum += term;
    } while (std::next_permutation(order.begin(), order.end()));
    double scale = 1.0;
    for (double v : values) scale *= v;
    return scale * sum;
}

namespace {

// 64-point Gauss-Legendre nodes/weights on [-1, 1] would be overkill to embed;
// composite 16-panel Simpson at this smoothness already clears 1e-12.
double integral_x_pow_exp(double a, double b) {
    // int_0^1 x^a e^{-b x} dx via composite Simpson with Richardson refinement
    auto f = [a, b](double x) { return std::pow(x, a) * std::exp(-b * x); };
    auto simpson = [&f](int panels) {
        double h = 1.0 / panels;
        double s = f(0.0) + f(1.0);
        for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
        return s * h / 3.0;
    };
    double prev = simpson(64);
    for (int panels = 128; panels <= 16384; panels *= 2) {
        double cur = simpson(panels);
        if (std::abs(cur - prev) < 1e-14) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double integrate_identity_lhs(std::int64_t b) {
    double bd = static_cast<double>(b);
    return integral_x_pow_exp(bd - 1.0, bd) - integral_x_pow_exp(bd, bd);
}

double integrate_identity_rhs(std::int64_t b) {
    double bd = static_cast<double>(b);
    return std::exp(-bd) / bd;
}

double cycle_lemma_check(const std::vector<int>& steps) {
    const std::size_t n = steps.size();
    if (n == 0) throw std::invalid_argument("cycle_lemma_check: empty sequence");
    for (int s : steps)
        if (s > 1) throw std::invalid_argument("cycle_lemma_check: step exceeds 1");
    std::size_t good = 0;
    for (std::size_t r = 0; r < n; ++r) {
        long long sum = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            sum += steps[(r + i) % n];
            if (sum <= 0) { ok = false; break; }
        }
        if (ok) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(n);
}

} // namespace ipc
