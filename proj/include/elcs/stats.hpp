#pragma once

#include "elcs/dataset.hpp"

namespace elcs {

struct G2Statistic {
    double statistic = 0.0;
    int dof = 0;
};

/// Log-likelihood-ratio statistic
///   G2 = 2 * sum_ijk N_ijk ln(N_ijk N_..k / (N_i.k N_.jk)),
/// with zero cells contributing nothing. Degrees of freedom are summed per
/// stratum over the rows and columns that are actually nonempty.
G2Statistic g2_statistic(const ContingencyTable& table);

/// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.
double gamma_q(double a, double x);

/// Chi-square survival function P(X > x) for `dof` degrees of freedom.
/// Throws std::invalid_argument for dof < 1 or x < 0.
double chi2_sf(double x, int dof);

}  // namespace elcs
