#include "gaussmax/fieldsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gaussmax/fft.hpp"

namespace gaussmax {

namespace {

// Forward-transform the symmetric first row/block of the circulant and
// return eigenvalues (real parts). min/max reported for the PSD check.
struct Spectrum {
    std::vector<double> eigenvalues;
    double min_ev;
    double max_ev;
};

Spectrum circulant_spectrum_1d(const std::vector<double>& first_row) {
    const int m = static_cast<int>(first_row.size());
    fft::ComplexBuffer buf(m);
    for (int i = 0; i < m; ++i) buf[i] = first_row[i];
    fft::transform_1d(buf, m, -1);
    Spectrum s;
    s.eigenvalues.resize(m);
    s.min_ev = std::numeric_limits<double>::infinity();
    s.max_ev = -s.min_ev;
    for (int i = 0; i < m; ++i) {
        const double ev = buf[i].real();
        s.eigenvalues[i] = ev;
        s.min_ev = std::min(s.min_ev, ev);
        s.max_ev = std::max(s.max_ev, ev);
    }
    return s;
}

constexpr double kPsdRelTol = 1e-10;

// Clamp round-off negatives; throw if anything is materially negative.
void clamp_or_throw(Spectrum& s, const char* what) {
    if (s.min_ev < -kPsdRelTol * s.max_ev) {
        std::ostringstream msg;
        msg << what << ": circulant embedding not PSD (min eigenvalue "
            << s.min_ev << ", max " << s.max_ev << ")";
        throw EmbeddingNotPSD(msg.str());
    }
    for (double& ev : s.eigenvalues) ev = std::max(ev, 0.0);
}

} // namespace

std::vector<double> fgn_increments(double hurst, int m, double dt, Philox& rng) {
    if (!(hurst > 0.0) || hurst > 1.0) throw InvalidAlpha("hurst must lie in (0,1]");
    if (m < 1) throw DomainError("need at least one increment");

    // Autocovariance of increments, gamma(k) for k = 0..m.
    const double scale = 0.5 * std::pow(dt, 2.0 * hurst);
    const double two_h = 2.0 * hurst;
    std::vector<double> gamma(m + 1);
    for (int k = 0; k <= m; ++k) {
        gamma[k] = scale * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(double(k), two_h) +
                            std::pow(std::fabs(k - 1.0), two_h));
    }

    const int big_m = 2 * m;
    std::vector<double> row(big_m);
    for (int j = 0; j < big_m; ++j) row[j] = gamma[std::min(j, big_m - j)];

    Spectrum spec = circulant_spectrum_1d(row);
    clamp_or_throw(spec, "fgn");

    fft::ComplexBuffer noise(big_m);
    const double norm = 1.0 / std::sqrt(double(big_m));
    for (int k = 0; k < big_m; ++k) {
        const double amp = std::sqrt(spec.eigenvalues[k]);
        const double a = rng.next_normal();
        const double b = rng.next_normal();
        noise[k] = {amp * a, amp * b};
    }
    fft::transform_1d(noise, big_m, +1);

    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = noise[j].real() * norm;
    return out;
}

FbmPath simulate_fbm(double hurst, int n, double dt, std::uint64_t seed) {
    if (n < 2) throw DomainError("fbm path needs n >= 2");
    if (!(dt > 0.0)) throw DomainError("dt must be positive");

    Philox rng(seed, 0, StreamRole::FbmPrimary);
    const std::vector<double> inc = fgn_increments(hurst, n - 1, dt, rng);

    FbmPath path;
    path.hurst = hurst;
    path.dt = dt;
    path.n = n;
    path.seed = seed;
    path.values.resize(n);
    path.values[0] = 0.0;
    double acc = 0.0;
    for (int k = 1; k < n; ++k) {
        acc += inc[k - 1];
        path.values[k] = acc;
    }
    return path;
}

FieldSimulator::FieldSimulator(const CovarianceModel& model, const Horizon& horizon,
                               double dx, double dy, std::uint64_t lattice_point_cap)
    : dx_(dx), dy_(dy) {
    model.validate();
    horizon.validate();
    if (!(dx > 0.0) || !(dy > 0.0)) throw DomainError("lattice spacings must be positive");

    nx_ = static_cast<int>(std::ceil(horizon.T1 / dx)) + 1;
    ny_ = static_cast<int>(std::ceil(horizon.T2 / dy)) + 1;
    if (static_cast<std::uint64_t>(nx_) * static_cast<std::uint64_t>(ny_) > lattice_point_cap) {
        std::ostringstream msg;
        msg << "lattice " << nx_ << "x" << ny_ << " exceeds cap " << lattice_point_cap;
        throw BudgetExceeded(msg.str());
    }
    rho_ = rho(model, horizon);

    // Minimal even embedding, doubled on PSD failure (at most twice).
    int m1 = std::max(2 * nx_ - 2, 2);
    int m2 = std::max(2 * ny_ - 2, 2);
    double worst_min_ev = 0.0;
    for (int attempt = 0; attempt <= 2; ++attempt) {
        fft::ComplexBuffer block(static_cast<std::size_t>(m1) * m2);
        for (int i = 0; i < m1; ++i) {
            const double t1 = std::min(i, m1 - i) * dx;
            for (int j = 0; j < m2; ++j) {
                const double t2 = std::min(j, m2 - j) * dy;
                block[static_cast<std::size_t>(i) * m2 + j] = covariance(model, t1, t2);
            }
        }
        fft::transform_2d(block, m1, m2, -1);

        double min_ev = std::numeric_limits<double>::infinity();
        double max_ev = -min_ev;
        const std::size_t total = static_cast<std::size_t>(m1) * m2;
        for (std::size_t k = 0; k < total; ++k) {
            min_ev = std::min(min_ev, block[k].real());
            max_ev = std::max(max_ev, block[k].real());
        }
        if (min_ev >= -kPsdRelTol * max_ev) {
            m1_ = m1;
            m2_ = m2;
            sqrt_eigenvalues_.resize(total);
            for (std::size_t k = 0; k < total; ++k)
                sqrt_eigenvalues_[k] = std::sqrt(std::max(block[k].real(), 0.0));
            return;
        }
        worst_min_ev = min_ev;
        m1 *= 2;
        m2 *= 2;
    }
    std::ostringstream msg;
    msg << "field embedding not PSD after doubling to " << m1 / 2 << "x" << m2 / 2
        << " (min eigenvalue " << worst_min_ev << ")";
    throw EmbeddingNotPSD(msg.str());
}

FieldSample FieldSimulator::sample(std::uint64_t seed, std::uint64_t rep) const {
    const std::size_t total = static_cast<std::size_t>(m1_) * m2_;
    fft::ComplexBuffer noise(total);
    Philox rng(seed, rep, StreamRole::FieldNoise);
    for (std::size_t k = 0; k < total; ++k) {
        const double a = rng.next_normal();
        const double b = rng.next_normal();
        noise[k] = {sqrt_eigenvalues_[k] * a, sqrt_eigenvalues_[k] * b};
    }
    fft::transform_2d(noise, m1_, m2_, +1);

    FieldSample out;
    out.dx = dx_;
    out.dy = dy_;
    out.nx = nx_;
    out.ny = ny_;
    out.seed = seed;
    out.values.resize(static_cast<std::size_t>(nx_) * ny_);
    const double norm = 1.0 / std::sqrt(double(total));
    for (int i = 0; i < nx_; ++i) {
        const std::size_t src = static_cast<std::size_t>(i) * m2_;
        const std::size_t dst = static_cast<std::size_t>(i) * ny_;
        for (int j = 0; j < ny_; ++j) out.values[dst + j] = noise[src + j].real() * norm;
    }
    return out;
}

FieldSample FieldSimulator::sample_mixture(std::uint64_t seed, std::uint64_t rep) const {
    FieldSample out = sample(seed, rep);
    if (rho_ == 0.0) return out;
    Philox shift_rng(seed, rep, StreamRole::CommonShift);
    const double u = shift_rng.next_normal();
    const double shift = std::sqrt(rho_) * u;
    const double damp = std::sqrt(1.0 - rho_);
    for (double& v : out.values) v = damp * v + shift;
    out.common_shift = shift;
    return out;
}

FieldSample simulate_field(const CovarianceModel& model, const Horizon& horizon,
                           double dx, double dy, std::uint64_t seed) {
    return FieldSimulator(model, horizon, dx, dy).sample(seed, 0);
}

FieldSample simulate_strong_field(const CovarianceModel& model, const Horizon& horizon,
                                  double dx, double dy, std::uint64_t seed) {
    return FieldSimulator(model, horizon, dx, dy).sample_mixture(seed, 0);
}

double max_on_subgrid(const FieldSample& sample, int stride_x, int stride_y) {
    if (stride_x < 1 || stride_y < 1) throw DomainError("strides must be >= 1");
    if (stride_x > sample.nx || stride_y > sample.ny)
        throw DomainError("stride exceeds lattice dimension");
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < sample.nx; i += stride_x)
        for (int j = 0; j < sample.ny; j += stride_y)
            best = std::max(best, sample.at(i, j));
    return best;
}

void write_field(std::ostream& os, const FieldSample& sample) {
    char header[32] = {};
    std::memcpy(header, "GFLD", 4);
    const std::uint32_t nx = static_cast<std::uint32_t>(sample.nx);
    const std::uint32_t ny = static_cast<std::uint32_t>(sample.ny);
    std::memcpy(header + 4, &nx, 4);
    std::memcpy(header + 8, &ny, 4);
    std::memcpy(header + 12, &sample.dx, 8);
    std::memcpy(header + 20, &sample.dy, 8);
    os.write(header, sizeof(header));
    os.write(reinterpret_cast<const char*>(sample.values.data()),
             static_cast<std::streamsize>(sample.values.size() * sizeof(double)));
}

FieldSample read_field(std::istream& is) {
    char header[32];
    is.read(header, sizeof(header));
    if (!is || std::memcmp(header, "GFLD", 4) != 0)
        throw DomainError("not a GFLD field dump");
    std::uint32_t nx, ny;
    FieldSample out;
    std::memcpy(&nx, header + 4, 4);
    std::memcpy(&ny, header + 8, 4);
    std::memcpy(&out.dx, header + 12, 8);
    std::memcpy(&out.dy, header + 20, 8);
    out.nx = static_cast<int>(nx);
    out.ny = static_cast<int>(ny);
    out.values.resize(static_cast<std::size_t>(nx) * ny);
    is.read(reinterpret_cast<char*>(out.values.data()),
            static_cast<std::streamsize>(out.values.size() * sizeof(double)));
    if (!is) throw DomainError("truncated GFLD field dump");
    return out;
}

} // namespace gaussmax
