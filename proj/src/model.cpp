#include "gaussmax/model.hpp"

#include <cmath>
#include <vector>

namespace gaussmax {

double covariance(const CovarianceModel& model, double t1, double t2) {
    return std::exp(-(std::pow(std::fabs(t1), model.alpha1) +
                      std::pow(std::fabs(t2), model.alpha2)));
}

double rho(const CovarianceModel& model, const Horizon& h) {
    h.validate();
    if (model.r == 0.0) return 0.0;
    const double denom = h.log_area();
    if (denom <= model.r)
        throw HorizonTooSmall("log(T1*T2) <= r: mixture weight would reach 1");
    return model.r / denom;
}

namespace {

// D_i(T) = p_i(T) * (2 log T1T2)^{1/alpha_i} along the probe ladder.
std::vector<double> probe_sequence(const SpacingRule& rule, double alpha) {
    std::vector<double> d;
    for (int k = 2; k <= 8; ++k) {
        const double t = std::pow(10.0, k);
        const Horizon h{t, t};
        const double p = rule(h);
        if (!(p > 0.0)) throw DomainError("spacing rule must stay positive");
        d.push_back(p * std::pow(2.0 * h.log_area(), 1.0 / alpha));
    }
    return d;
}

struct AxisLimit {
    RegimeKind kind;
    double a; // finite limit when kind == Pickands
};

AxisLimit classify_axis(const std::vector<double>& d) {
    constexpr double kRelTol = 1e-2;

    // Direction over the probe tail must be monotone (ties allowed).
    int direction = 0; // -1 falling, +1 rising
    for (std::size_t i = 1; i < d.size(); ++i) {
        const double diff = d[i] - d[i - 1];
        const double scale = std::max(std::fabs(d[i - 1]), 1e-300);
        if (std::fabs(diff) <= kRelTol * scale) continue;
        const int step = diff > 0 ? 1 : -1;
        if (direction != 0 && step != direction)
            throw OscillatingLimit("spacing rule probe sequence is not monotone");
        direction = step;
    }

    const double last = d.back();
    const double prev = d[d.size() - 2];
    const double rel_change = std::fabs(last - prev) / std::max(std::fabs(prev), 1e-300);
    if (rel_change < kRelTol) {
        if (last < 1e-8) return {RegimeKind::Dense, 0.0};
        return {RegimeKind::Pickands, last};
    }
    if (direction > 0) return {RegimeKind::Sparse, 0.0};
    return {RegimeKind::Dense, 0.0};
}

} // namespace

Regime classify_grid(const SpacingRule& rule1, const SpacingRule& rule2,
                     const CovarianceModel& model) {
    model.validate();
    const AxisLimit lim1 = classify_axis(probe_sequence(rule1, model.alpha1));
    const AxisLimit lim2 = classify_axis(probe_sequence(rule2, model.alpha2));
    if (lim1.kind != lim2.kind)
        throw RegimeMismatch("axes classify to different regimes; mixed grids unsupported");
    Regime regime;
    regime.kind = lim1.kind;
    if (regime.kind == RegimeKind::Pickands) {
        regime.a1 = lim1.a;
        regime.a2 = lim2.a;
    }
    return regime;
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::Sparse: return "sparse";
        case RegimeKind::Pickands: return "pickands";
        case RegimeKind::Dense: return "dense";
    }
    return "unknown";
}

RegimeKind regime_kind_from_string(const std::string& name) {
    if (name == "sparse") return RegimeKind::Sparse;
    if (name == "pickands") return RegimeKind::Pickands;
    if (name == "dense") return RegimeKind::Dense;
    throw DomainError("unknown regime: " + name);
}

} // namespace gaussmax
