#pragma once

#include <optional>

#include "gaussmax/model.hpp"

namespace gaussmax {

// Scaling and centering sequences for the normalized maxima.
// aT = sqrt(2 log T1T2); the three centerings differ only in the constant
// inside the log: H_a1 H_a2 (continuous), 1/(p1 p2) (sparse grid),
// H_{a1,a1} H_{a2,a2} (Pickands grid).
struct NormalizingConstants {
    double aT = 0.0;
    double bT = 0.0;  // continuous max centering
    double bTp = 0.0; // sparse-grid centering
    double baT = 0.0; // Pickands-grid centering
};

NormalizingConstants norm_constants(const Horizon& h, const CovarianceModel& model,
                                    const GridSpec& grid, double H1, double H2,
                                    double Ha1, double Ha2);

enum class Centering { Continuous, SparseGrid, PickandsGrid };

// Exact level transform (b + x/aT - sqrt(rho) z) / sqrt(1-rho) for the
// conditional maxima of the mixture field; rho = 2r/aT^2.
double u_star(double x, double r, double z, const NormalizingConstants& nc,
              Centering which);

// First-order form (x + r - sqrt(2r) z)/aT + b; cross-check only, the exact
// form above is canonical.
double u_star_first_order(double x, double r, double z, const NormalizingConstants& nc,
                          Centering which);

struct QuadResult {
    double value = 0.0;
    int nodes = 0;
};

// Core mixture integral: int exp(-coef * e^{-r + sqrt(2r) z}) phi(z) dz,
// Gauss-Hermite with node doubling 16..512 until successive values agree
// to 1e-10. All four limit laws reduce to this with a nonnegative coef.
QuadResult mixture_integral(double coef, double r);

QuadResult limit_cdf_sparse(double x, double y, double r);

// joint_shifted is the Pickands joint constant already evaluated at the
// shifted arguments (log(H1 H2) + x, log(Ha1 Ha2) + y).
QuadResult limit_cdf_pickands(double x, double y, double r, double joint_shifted);

QuadResult limit_cdf_dense(double x, double y, double r);

QuadResult limit_cdf_marginal(double x, double r);

// High-excursion predictions.
double normal_tail(double u); // Psi(u)

double tail_prediction_continuous(const CovarianceModel& model, double h1, double h2,
                                  double u, double H1, double H2);

double tail_prediction_sparse_grid(const GridSpec& grid, double S1, double S2, double u);

// Joint union form: S1 S2 p1^-1 p2^-1 Psi(u) (1 + e^{-x} H1 H2).
double tail_prediction_sparse_joint(const GridSpec& grid, double S1, double S2, double u,
                                    double x, double H1, double H2);

// Closed-form Pickands constants where known: H_1 = 1, H_2 = 1/sqrt(pi).
std::optional<double> closed_form_pickands(double alpha);

} // namespace gaussmax
