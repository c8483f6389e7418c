#include "gaussmax/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace gaussmax {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

struct GaussHermiteRule {
    std::vector<double> nodes;   // abscissae for weight e^{-x^2}
    std::vector<double> weights; // sum of weights = sqrt(pi)
};

// Golub-Welsch via implicit-shift QL on the Jacobi matrix (diagonal 0,
// off-diagonal sqrt(k/2)), tracking only the first eigenvector component.
GaussHermiteRule build_rule(int n) {
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k / 2.0);
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;

    const double eps = 2.22e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw QuadratureNotConverged("QL iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = i >= l;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Sort nodes ascending, weights = sqrt(pi) * z^2.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[order[i]];
        rule.weights[i] = kSqrtPi * z[order[i]] * z[order[i]];
    }
    return rule;
}

const GaussHermiteRule& rule_for(int n) {
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

// int f(z) phi(z) dz with z = sqrt(2) u against weight e^{-u^2}.
template <typename F>
double gauss_hermite_phi(const F& f, int n) {
    const GaussHermiteRule& rule = rule_for(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(M_SQRT2 * rule.nodes[i]);
    return acc / kSqrtPi;
}

constexpr double kQuadTol = 1e-10;
constexpr int kQuadMaxNodes = 512;

} // namespace

QuadResult mixture_integral(double coef, double r) {
    if (!(coef >= 0.0)) throw InvalidConstants("mixture integral needs coef >= 0");
    if (!(r >= 0.0)) throw DomainError("dependence constant r must be >= 0");
    if (coef == 0.0) return {1.0, 0};
    if (r == 0.0) return {std::exp(-coef), 0}; // integrand constant in z

    const double sqrt2r = std::sqrt(2.0 * r);
    auto f = [&](double z) { return std::exp(-coef * std::exp(-r + sqrt2r * z)); };

    double prev = gauss_hermite_phi(f, 16);
    for (int n = 32; n <= kQuadMaxNodes; n *= 2) {
        const double cur = gauss_hermite_phi(f, n);
        if (std::fabs(cur - prev) <= kQuadTol) return {cur, n};
        prev = cur;
    }
    std::ostringstream msg;
    msg << "mixture integral did not stabilize to " << kQuadTol << " by "
        << kQuadMaxNodes << " nodes (coef=" << coef << ", r=" << r << ")";
    throw QuadratureNotConverged(msg.str());
}

QuadResult limit_cdf_sparse(double x, double y, double r) {
    return mixture_integral(std::exp(-x) + std::exp(-y), r);
}

QuadResult limit_cdf_pickands(double x, double y, double r, double joint_shifted) {
    if (!(joint_shifted >= 0.0))
        throw InvalidConstants("joint Pickands constant must be >= 0");
    double coef = std::exp(-x) + std::exp(-y) - joint_shifted;
    // The bracket is the tail mass of a union minus the intersection term;
    // a materially negative value means the joint constant is overestimated.
    if (coef < -1e-9)
        throw InvalidConstants("e^{-x}+e^{-y} < joint constant: inconsistent estimate");
    coef = std::max(coef, 0.0);
    return mixture_integral(coef, r);
}

QuadResult limit_cdf_dense(double x, double y, double r) {
    return mixture_integral(std::exp(-std::min(x, y)), r);
}

QuadResult limit_cdf_marginal(double x, double r) {
    return mixture_integral(std::exp(-x), r);
}

NormalizingConstants norm_constants(const Horizon& h, const CovarianceModel& model,
                                    const GridSpec& grid, double H1, double H2,
                                    double Ha1, double Ha2) {
    h.validate();
    model.validate();
    grid.validate();
    if (!(h.T1 * h.T2 > M_E)) throw DomainError("norm constants need T1*T2 > e");
    if (!(H1 > 0.0) || !(H2 > 0.0) || !(Ha1 > 0.0) || !(Ha2 > 0.0))
        throw DomainError("Pickands constants must be positive");

    NormalizingConstants nc;
    nc.aT = std::sqrt(2.0 * h.log_area());
    const double inv_sqrt_2pi = 0.39894228040143267793994605993438;
    const double cont_exp = 1.0 / model.alpha1 + 1.0 / model.alpha2 - 0.5;
    nc.bT = nc.aT + std::log(inv_sqrt_2pi * H1 * H2 * std::pow(nc.aT, cont_exp)) / nc.aT;
    nc.bTp = nc.aT +
             std::log(inv_sqrt_2pi / (grid.p1 * grid.p2) * std::pow(nc.aT, -0.5)) / nc.aT;
    nc.baT = nc.aT + std::log(inv_sqrt_2pi * Ha1 * Ha2 * std::pow(nc.aT, cont_exp)) / nc.aT;
    return nc;
}

namespace {

double centering(const NormalizingConstants& nc, Centering which) {
    switch (which) {
        case Centering::Continuous: return nc.bT;
        case Centering::SparseGrid: return nc.bTp;
        case Centering::PickandsGrid: return nc.baT;
    }
    return nc.bT;
}

} // namespace

double u_star(double x, double r, double z, const NormalizingConstants& nc,
              Centering which) {
    const double rho = 2.0 * r / (nc.aT * nc.aT);
    if (rho >= 1.0) throw HorizonTooSmall("rho >= 1 in u_star");
    const double b = centering(nc, which);
    return (b + x / nc.aT - std::sqrt(rho) * z) / std::sqrt(1.0 - rho);
}

double u_star_first_order(double x, double r, double z, const NormalizingConstants& nc,
                          Centering which) {
    return (x + r - std::sqrt(2.0 * r) * z) / nc.aT + centering(nc, which);
}

double normal_tail(double u) { return 0.5 * std::erfc(u * M_SQRT1_2); }

double tail_prediction_continuous(const CovarianceModel& model, double h1, double h2,
                                  double u, double H1, double H2) {
    if (!(u > 0.0)) throw DomainError("tail prediction needs u > 0");
    const double power = 2.0 / model.alpha1 + 2.0 / model.alpha2;
    return H1 * H2 * h1 * h2 * std::pow(u, power) * normal_tail(u);
}

double tail_prediction_sparse_grid(const GridSpec& grid, double S1, double S2, double u) {
    return S1 * S2 / (grid.p1 * grid.p2) * normal_tail(u);
}

double tail_prediction_sparse_joint(const GridSpec& grid, double S1, double S2, double u,
                                    double x, double H1, double H2) {
    return tail_prediction_sparse_grid(grid, S1, S2, u) * (1.0 + std::exp(-x) * H1 * H2);
}

std::optional<double> closed_form_pickands(double alpha) {
    if (alpha == 1.0) return 1.0;
    if (alpha == 2.0) return 1.0 / kSqrtPi;
    return std::nullopt;
}

} // namespace gaussmax
