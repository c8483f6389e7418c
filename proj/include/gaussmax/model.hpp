#pragma once

#include <array>
#include <functional>
#include <string>

#include "gaussmax/errors.hpp"

namespace gaussmax {

enum class CovarianceFamily { SeparableExp };

// Stationary 2D correlation function r(t) = exp(-|t1|^a1 - |t2|^a2).
// The separable exponential satisfies the local expansion
// 1 - r(t) ~ |t1|^a1 + |t2|^a2 with exact unit coefficients and is
// positive definite as a product of 1D stable characteristic functions.
// The long-range parameter r only enters through the mixture field; the
// stationary covariance itself is weakly dependent.
struct CovarianceModel {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double r = 0.0;
    CovarianceFamily family = CovarianceFamily::SeparableExp;

    void validate() const {
        if (!(alpha1 > 0.0) || alpha1 > 2.0 || !(alpha2 > 0.0) || alpha2 > 2.0)
            throw InvalidAlpha("alpha exponents must lie in (0,2]");
        if (!(r >= 0.0))
            throw DomainError("dependence constant r must be >= 0");
    }
};

double covariance(const CovarianceModel& model, double t1, double t2);

struct Horizon {
    double T1 = 0.0;
    double T2 = 0.0;

    void validate() const {
        if (!(T1 > 0.0) || !(T2 > 0.0) || !(T1 * T2 > 1.0))
            throw DomainError("horizon requires T1,T2 > 0 and T1*T2 > 1");
    }
    double log_area() const { return std::log(T1 * T2); }
};

// rho(T) = r / log(T1 T2), the finite-horizon mixing weight.
double rho(const CovarianceModel& model, const Horizon& h);

enum class RegimeKind { Sparse, Pickands, Dense };

struct Regime {
    RegimeKind kind = RegimeKind::Sparse;
    double a1 = 0.0; // Pickands only
    double a2 = 0.0;
};

struct GridSpec {
    double p1 = 1.0;
    double p2 = 1.0;
    Regime regime;

    void validate() const {
        if (!(p1 > 0.0) || !(p2 > 0.0))
            throw DomainError("grid spacings must be positive");
        if (regime.kind == RegimeKind::Pickands && (!(regime.a1 > 0.0) || !(regime.a2 > 0.0)))
            throw DomainError("Pickands regime requires a1,a2 > 0");
    }
};

// Spacing as a function of the horizon, one rule per axis.
using SpacingRule = std::function<double(const Horizon&)>;

// Classifies a spacing rule by probing T1=T2=10^k, k=2..8, and watching
// D_i = p_i (2 log T1T2)^{1/alpha_i}. Divergence -> Sparse, stabilized
// positive limit -> Pickands(a), monotone decay -> Dense.
// Throws OscillatingLimit when the probe sequence changes direction.
Regime classify_grid(const SpacingRule& rule1, const SpacingRule& rule2,
                     const CovarianceModel& model);

std::string to_string(RegimeKind kind);
RegimeKind regime_kind_from_string(const std::string& name);

} // namespace gaussmax
