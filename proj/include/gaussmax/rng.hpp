#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <span>

namespace gaussmax {

// Stream roles keep the noise consumed by different parts of one replication
// on disjoint counter-based streams, so adding a draw in one place never
// shifts another.
enum class StreamRole : std::uint64_t {
    FieldNoise = 0,
    CommonShift = 1,
    FbmPrimary = 2,
    FbmSecondary = 3,
    Generic = 4,
};

// Philox4x64-10 counter-based generator (Salmon et al., SC'11 reference
// constants). Keyed by (seed, stream id); any two distinct keys give
// independent streams, so replications can be dispatched to worker threads
// in any order without affecting the draw sequence.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream_id)
        : key_{seed, stream_id}, ctr_{0, 0, 0, 0} {}

    Philox(std::uint64_t seed, std::uint64_t rep, StreamRole role)
        : Philox(seed, (rep << 8) | static_cast<std::uint64_t>(role)) {}

    std::uint64_t next_u64() {
        if (idx_ == 4) {
            block_ = bijection(ctr_, key_);
            increment(ctr_);
            idx_ = 0;
        }
        return block_[idx_++];
    }

    // Uniform on (0,1]; never returns 0 so it is safe under log().
    double next_double() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second variate cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    void fill_normals(std::span<double> out) {
        for (double& v : out) v = next_normal();
    }

private:
    using Block = std::array<std::uint64_t, 4>;

    static void mulhilo(std::uint64_t a, std::uint64_t b,
                        std::uint64_t& hi, std::uint64_t& lo) {
        const __uint128_t p = static_cast<__uint128_t>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static Block bijection(Block ctr, std::array<std::uint64_t, 2> key) {
        constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ULL;
        constexpr std::uint64_t M1 = 0xCA5A826395121157ULL;
        constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ULL;
        constexpr std::uint64_t W1 = 0xBB67AE8584CAA73BULL;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, lo0, hi1, lo1;
            mulhilo(M0, ctr[0], hi0, lo0);
            mulhilo(M1, ctr[2], hi1, lo1);
            ctr = Block{hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }

    static void increment(Block& c) {
        for (auto& word : c) {
            if (++word != 0) break;
        }
    }

    std::array<std::uint64_t, 2> key_;
    Block ctr_;
    Block block_{};
    int idx_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gaussmax
