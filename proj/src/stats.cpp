#include "elcs/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace elcs {

G2Statistic g2_statistic(const ContingencyTable& t) {
    G2Statistic out;
    std::vector<std::int64_t> row_tot(static_cast<std::size_t>(t.rx));
    std::vector<std::int64_t> col_tot(static_cast<std::size_t>(t.ry));
    double sum = 0.0;
    for (std::size_t k = 0; k < t.strata; ++k) {
        std::fill(row_tot.begin(), row_tot.end(), 0);
        std::fill(col_tot.begin(), col_tot.end(), 0);
        std::int64_t total = 0;
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const auto c = t.at(k, i, j);
                row_tot[static_cast<std::size_t>(i)] += c;
                col_tot[static_cast<std::size_t>(j)] += c;
                total += c;
            }
        if (total == 0) continue;
        int nonzero_rows = 0;
        int nonzero_cols = 0;
        for (auto r : row_tot) nonzero_rows += r > 0;
        for (auto c : col_tot) nonzero_cols += c > 0;
        out.dof += std::max(0, (nonzero_rows - 1) * (nonzero_cols - 1));

        const double n_k = static_cast<double>(total);
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const auto c = t.at(k, i, j);
                if (c == 0) continue;
                const double expected = static_cast<double>(row_tot[static_cast<std::size_t>(i)]) *
                                        static_cast<double>(col_tot[static_cast<std::size_t>(j)]) / n_k;
                sum += static_cast<double>(c) * std::log(static_cast<double>(c) / expected);
            }
    }
    // Rounding can leave a tiny negative value on exactly independent tables.
    out.statistic = std::max(0.0, 2.0 * sum);
    return out;
}

namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-16;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by Lentz's continued fraction; for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma_q: a must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
    return std::clamp(gamma_q_fraction(a, x), 0.0, 1.0);
}

double chi2_sf(double x, int dof) {
    if (dof < 1) throw std::invalid_argument("chi2_sf: dof must be >= 1");
    if (x < 0.0) throw std::invalid_argument("chi2_sf: x must be nonnegative");
    return gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace elcs
