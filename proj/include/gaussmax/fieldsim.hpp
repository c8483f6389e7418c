#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gaussmax/model.hpp"
#include "gaussmax/rng.hpp"

namespace gaussmax {

struct FbmPath {
    std::vector<double> values; // values[k] = B(k*dt), values[0] = 0
    double hurst = 0.5;
    double dt = 1.0;
    int n = 0;
    std::uint64_t seed = 0;
};

struct FieldSample {
    std::vector<double> values; // row-major, values[i*ny + j] = X(i*dx, j*dy)
    double dx = 1.0;
    double dy = 1.0;
    int nx = 0;
    int ny = 0;
    std::uint64_t seed = 0;
    double common_shift = 0.0; // sqrt(rho)*U for mixture samples, else 0

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }
};

// Exact stationary fractional Gaussian noise increments (Davies-Harte
// circulant embedding); m increments with Var = dt^{2H}.
std::vector<double> fgn_increments(double hurst, int m, double dt, Philox& rng);

FbmPath simulate_fbm(double hurst, int n, double dt, std::uint64_t seed);

// Precomputes the embedding spectrum once so replications only pay for
// noise synthesis. PSD failures retry with doubled embedding (twice) and
// then throw EmbeddingNotPSD with diagnostics.
class FieldSimulator {
public:
    FieldSimulator(const CovarianceModel& model, const Horizon& horizon,
                   double dx, double dy,
                   std::uint64_t lattice_point_cap = kDefaultLatticeCap);

    FieldSample sample(std::uint64_t seed, std::uint64_t rep) const;

    // sqrt(1-rho)*field + sqrt(rho)*U with U from the rep's CommonShift
    // stream; reduces to sample() exactly when model.r = 0.
    FieldSample sample_mixture(std::uint64_t seed, std::uint64_t rep) const;

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double rho() const { return rho_; }

    static constexpr std::uint64_t kDefaultLatticeCap = std::uint64_t(4096) * 4096;

private:
    int nx_, ny_;
    int m1_, m2_; // embedding dimensions
    double dx_, dy_;
    double rho_;
    std::vector<double> sqrt_eigenvalues_; // m1_ x m2_, row-major
};

FieldSample simulate_field(const CovarianceModel& model, const Horizon& horizon,
                           double dx, double dy, std::uint64_t seed);

FieldSample simulate_strong_field(const CovarianceModel& model, const Horizon& horizon,
                                  double dx, double dy, std::uint64_t seed);

// Maximum over the sub-lattice {0, sx, 2sx, ...} x {0, sy, ...}.
double max_on_subgrid(const FieldSample& sample, int stride_x, int stride_y);

// Binary dump: 32-byte header {magic "GFLD", u32 nx, u32 ny, f64 dx, f64 dy,
// 4 zero bytes} followed by nx*ny little-endian doubles, row-major.
void write_field(std::ostream& os, const FieldSample& sample);
FieldSample read_field(std::istream& is);

} // namespace gaussmax
