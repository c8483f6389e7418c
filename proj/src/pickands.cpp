#include "gaussmax/pickands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gaussmax/fieldsim.hpp"
#include "gaussmax/rng.hpp"

namespace gaussmax {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0) throw InvalidAlpha("alpha must lie in (0,2]");
}

void check_budget(long reps, double points_per_rep, std::uint64_t cap) {
    const double work = static_cast<double>(reps) * points_per_rep;
    if (work > static_cast<double>(cap)) {
        std::ostringstream msg;
        msg << "work " << work << " exceeds cap " << cap;
        throw BudgetExceeded(msg.str());
    }
}

int exact_stride(double a, double dt) {
    const int stride = static_cast<int>(std::lround(a / dt));
    if (stride < 1 || std::fabs(stride * dt - a) > 1e-9 * a)
        throw DomainError("dt must divide the grid spacing a exactly");
    return stride;
}

struct Moments {
    double mean;
    double se;
    double trimmed;
};

Moments summarize(std::vector<double> v) {
    const std::size_t n = v.size();
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double se = n > 1 ? std::sqrt(ss / double(n - 1) / double(n)) : 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t cut = n / 10;
    double tsum = 0.0;
    for (std::size_t i = cut; i < n - cut; ++i) tsum += v[i];
    const double trimmed = tsum / double(n - 2 * cut);
    return {mean, se, trimmed};
}

// Two-sided fBm B(t_k), t_k = (k - mid) * dt, with B(0) = 0; n_inc even.
std::vector<double> two_sided_fbm(double hurst, int n_inc, double dt, Philox& rng) {
    std::vector<double> inc = fgn_increments(hurst, n_inc, dt, rng);
    std::vector<double> b(n_inc + 1);
    b[0] = 0.0;
    for (int k = 1; k <= n_inc; ++k) b[k] = b[k - 1] + inc[k - 1];
    const double pivot = b[n_inc / 2];
    for (double& v : b) v -= pivot;
    return b;
}

// Ratio functional 1 / (spacing * sum exp(Z - max Z)) over the window.
double ratio_functional(const std::vector<double>& z, double spacing) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (double v : z) denom += std::exp(v - zmax);
    return 1.0 / (spacing * denom);
}

PickandsEstimate ratio_estimate(double alpha, double lambda, double spacing, long reps,
                                std::uint64_t seed, std::uint64_t work_cap,
                                PickandsKind kind, double a) {
    check_alpha(alpha);
    if (!(lambda > 0.0) || !(spacing > 0.0) || reps < 2)
        throw DomainError("need lambda > 0, spacing > 0, reps >= 2");
    int n_inc = 2 * static_cast<int>(std::lround(lambda / (2.0 * spacing)));
    if (n_inc < 4) throw DomainError("window too short for spacing");
    check_budget(reps, n_inc + 1.0, work_cap);

    std::vector<double> vals(reps);
    std::vector<double> z(n_inc + 1);
    for (long rep = 0; rep < reps; ++rep) {
        Philox rng(seed, static_cast<std::uint64_t>(rep), StreamRole::FbmPrimary);
        const std::vector<double> b = two_sided_fbm(alpha / 2.0, n_inc, spacing, rng);
        const int mid = n_inc / 2;
        for (int k = 0; k <= n_inc; ++k) {
            const double t = (k - mid) * spacing;
            z[k] = M_SQRT2 * b[k] - std::pow(std::fabs(t), alpha);
        }
        vals[rep] = ratio_functional(z, spacing);
    }
    const Moments m = summarize(std::move(vals));
    PickandsEstimate est;
    est.kind = kind;
    est.value = m.mean;
    est.stderr_ = m.se;
    est.trimmed_value = m.trimmed;
    est.alpha1 = alpha;
    est.a1 = a;
    est.lambda1 = lambda;
    est.dt = spacing;
    est.reps = reps;
    return est;
}

} // namespace

PickandsEstimate estimate_H_alpha(double alpha, double lambda, double dt, long reps,
                                  std::uint64_t seed, std::uint64_t work_cap) {
    if (!(dt <= lambda / 16.0)) throw DomainError("need dt <= lambda/16");
    return ratio_estimate(alpha, lambda, dt, reps, seed, work_cap,
                          PickandsKind::Continuous, 0.0);
}

PickandsEstimate estimate_H_alpha_refined(double alpha, double lambda, double dt,
                                          long reps, std::uint64_t seed,
                                          std::uint64_t work_cap) {
    PickandsEstimate fine = estimate_H_alpha(alpha, lambda, dt, reps, seed, work_cap);
    // Coarse companion on an independent stream block.
    PickandsEstimate coarse =
        estimate_H_alpha(alpha, lambda, 4.0 * dt, reps, seed ^ 0x9E3779B97F4A7C15ULL,
                         work_cap);
    const double kappa = std::pow(2.0, alpha); // (4 dt / dt)^{alpha/2}
    PickandsEstimate est = fine;
    est.value = (kappa * fine.value - coarse.value) / (kappa - 1.0);
    est.stderr_ = std::sqrt(kappa * kappa * fine.stderr_ * fine.stderr_ +
                            coarse.stderr_ * coarse.stderr_) /
                  (kappa - 1.0);
    est.trimmed_value =
        (kappa * fine.trimmed_value - coarse.trimmed_value) / (kappa - 1.0);
    return est;
}

PickandsEstimate estimate_H_a_alpha(double alpha, double a, double lambda, long reps,
                                    std::uint64_t seed, std::uint64_t work_cap) {
    if (!(a > 0.0)) throw DomainError("grid spacing a must be positive");
    if (!(a <= lambda / 4.0)) throw DomainError("need a <= lambda/4");
    return ratio_estimate(alpha, lambda, a, reps, seed, work_cap,
                          PickandsKind::DiscreteGrid, a);
}

CoupledWindowFunctionals coupled_window_functionals(double alpha, double a, double lambda,
                                                    double dt, long reps,
                                                    std::uint64_t seed,
                                                    std::uint64_t work_cap) {
    check_alpha(alpha);
    if (!(dt <= lambda / 16.0)) throw DomainError("need dt <= lambda/16");
    if (!(a <= lambda / 4.0)) throw DomainError("need a <= lambda/4");
    const int stride = exact_stride(a, dt);
    const int n = static_cast<int>(std::lround(lambda / dt));
    check_budget(reps, n + 1.0, work_cap);

    CoupledWindowFunctionals out;
    out.cont.resize(reps);
    out.grid.resize(reps);
    out.lambda = lambda;
    out.dt = dt;
    out.a = a;
    for (long rep = 0; rep < reps; ++rep) {
        Philox rng(seed, static_cast<std::uint64_t>(rep), StreamRole::FbmPrimary);
        const std::vector<double> inc = fgn_increments(alpha / 2.0, n, dt, rng);
        double b = 0.0;
        double max_cont = 0.0; // Z(0) = 0
        double max_grid = 0.0;
        for (int k = 1; k <= n; ++k) {
            b += inc[k - 1];
            const double t = k * dt;
            const double z = M_SQRT2 * b - std::pow(t, alpha);
            max_cont = std::max(max_cont, z);
            if (k % stride == 0) max_grid = std::max(max_grid, z);
        }
        out.cont[rep] = std::exp(max_cont) / lambda;
        out.grid[rep] = std::exp(max_grid) / lambda;
    }
    return out;
}

PickandsEstimate naive_estimate(const CoupledWindowFunctionals& f, bool use_grid,
                                double alpha) {
    const Moments m = summarize(use_grid ? f.grid : f.cont);
    PickandsEstimate est;
    est.kind = use_grid ? PickandsKind::DiscreteGrid : PickandsKind::Continuous;
    est.value = m.mean;
    est.stderr_ = m.se;
    est.trimmed_value = m.trimmed;
    est.alpha1 = alpha;
    est.a1 = use_grid ? f.a : 0.0;
    est.lambda1 = f.lambda;
    est.dt = f.dt;
    est.reps = static_cast<long>(f.cont.size());
    return est;
}

namespace {

// Max of sqrt(2) B(k dt) - (k dt)^alpha over [0,lambda], full lattice and
// {ka} subgrid; the sheet maxima are sums of these per-axis maxima.
void axis_maxima(double alpha, double a, double lambda, double dt, Philox& rng,
                 double& max_cont, double& max_grid) {
    const int stride = exact_stride(a, dt);
    const int n = static_cast<int>(std::lround(lambda / dt));
    const std::vector<double> inc = fgn_increments(alpha / 2.0, n, dt, rng);
    double b = 0.0;
    max_cont = 0.0;
    max_grid = 0.0;
    for (int k = 1; k <= n; ++k) {
        b += inc[k - 1];
        const double z = M_SQRT2 * b - std::pow(k * dt, alpha);
        max_cont = std::max(max_cont, z);
        if (k % stride == 0) max_grid = std::max(max_grid, z);
    }
}

} // namespace

JointPathMaxima joint_path_maxima(double alpha1, double alpha2, double a1, double a2,
                                  double lambda1, double lambda2, double dt1, double dt2,
                                  long reps, std::uint64_t seed, std::uint64_t work_cap) {
    check_alpha(alpha1);
    check_alpha(alpha2);
    if (!(a1 <= lambda1 / 4.0) || !(a2 <= lambda2 / 4.0))
        throw DomainError("need a_i <= lambda_i/4");
    check_budget(reps, lambda1 / dt1 + lambda2 / dt2 + 2.0, work_cap);

    JointPathMaxima out;
    out.m_cont.resize(reps);
    out.m_grid.resize(reps);
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    for (long rep = 0; rep < reps; ++rep) {
        Philox rng1(seed, static_cast<std::uint64_t>(rep), StreamRole::FbmPrimary);
        Philox rng2(seed, static_cast<std::uint64_t>(rep), StreamRole::FbmSecondary);
        double c1, g1, c2, g2;
        axis_maxima(alpha1, a1, lambda1, dt1, rng1, c1, g1);
        axis_maxima(alpha2, a2, lambda2, dt2, rng2, c2, g2);
        out.m_cont[rep] = c1 + c2;
        out.m_grid[rep] = g1 + g2;
    }
    return out;
}

PickandsEstimate estimate_joint_constant(const JointPathMaxima& paths, double x,
                                         double y) {
    const std::size_t n = paths.m_cont.size();
    if (n < 2) throw EmptySample("joint estimate needs at least 2 paths");
    std::vector<double> vals(n);
    const double area = paths.lambda1 * paths.lambda2;
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] =
            std::exp(std::min(paths.m_cont[i] - x, paths.m_grid[i] - y)) / area;
    }
    const Moments m = summarize(std::move(vals));
    PickandsEstimate est;
    est.kind = PickandsKind::Joint;
    est.value = m.mean;
    est.stderr_ = m.se;
    est.trimmed_value = m.trimmed;
    est.x = x;
    est.y = y;
    est.lambda1 = paths.lambda1;
    est.lambda2 = paths.lambda2;
    est.reps = static_cast<long>(n);
    return est;
}

PickandsEstimate estimate_joint_constant(double alpha1, double alpha2, double a1,
                                         double a2, double x, double y, double lambda1,
                                         double lambda2, double dt1, double dt2, long reps,
                                         std::uint64_t seed, std::uint64_t work_cap) {
    const JointPathMaxima paths = joint_path_maxima(alpha1, alpha2, a1, a2, lambda1,
                                                    lambda2, dt1, dt2, reps, seed,
                                                    work_cap);
    PickandsEstimate est = estimate_joint_constant(paths, x, y);
    est.alpha1 = alpha1;
    est.alpha2 = alpha2;
    est.a1 = a1;
    est.a2 = a2;
    est.dt = dt1;
    return est;
}

ExtrapolationResult extrapolate(const std::vector<PickandsEstimate>& estimates) {
    if (estimates.size() < 3)
        throw DomainError("extrapolation needs at least 3 windows");
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        if (!(estimates[i].lambda1 > estimates[i - 1].lambda1))
            throw DomainError("windows must be increasing in lambda");
    }
    const PickandsEstimate& last = estimates.back();
    const PickandsEstimate& prev = estimates[estimates.size() - 2];
    ExtrapolationResult res;
    res.value = last.value;
    res.drift = std::fabs(last.value - prev.value);
    const double band = 3.0 * (last.stderr_ + prev.stderr_) + 0.05 * std::fabs(last.value);
    res.converged = res.drift <= band;
    return res;
}

} // namespace gaussmax
