#include "lrdlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "lrdlab/errors.hpp"
#include "lrdlab/parallel.hpp"

namespace lrdlab {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t b) const noexcept {
    std::array<std::uint32_t, 4> c{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                                   static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kW0;
        k1 += kW1;
    }
    return c;
}

double Philox4x32::uniform() noexcept {
    if (used_ >= 4) {
        buffer_ = block(next_block_++);
        used_ = 0;
    }
    const std::uint64_t hi = buffer_[static_cast<std::size_t>(used_)];
    const std::uint64_t lo = buffer_[static_cast<std::size_t>(used_ + 1)];
    used_ += 2;
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

double Philox4x32::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

CirculantEmbedding::CirculantEmbedding(const AcvfTable& acvf, std::size_t N) : N_(N) {
    if (N < 2) throw DomainError("sample paths need N >= 2");
    std::size_t M = 2 * (N - 1);
    std::vector<double> lambda;
    double lo = 0.0;
    double hi = 0.0;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        const std::size_t half = M / 2;
        const auto gamma = acvf.values(half);
        std::vector<double> c(M);
        for (std::size_t k = 0; k <= half; ++k) c[k] = gamma[k];
        for (std::size_t k = half + 1; k < M; ++k) c[k] = gamma[M - k];
        const auto spec = detail::dft_real(c);
        lambda.resize(M);
        for (std::size_t k = 0; k < M; ++k) lambda[k] = spec[k].real();
        lo = *std::min_element(lambda.begin(), lambda.end());
        hi = *std::max_element(lambda.begin(), lambda.end());
        if (lo >= -1e-10 * hi || attempt == 3) break;
        std::size_t p = 1;
        while (p <= M) p *= 2;
        M = p;
    }
    if (lo < -1e-6 * hi) {
        std::ostringstream msg;
        msg << "circulant embedding of size " << M << " has eigenvalue " << lo << " (max " << hi
            << "); use a larger embedding or a shorter path";
        throw ConvergenceError(msg.str());
    }
    if (lo < -1e-10 * hi) {
        clipped_ = true;
        std::cerr << "warning: clipping negative circulant eigenvalues (min " << lo << ", max " << hi << ")\n";
    }
    scale_.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        scale_[k] = std::sqrt(std::max(lambda[k], 0.0) / static_cast<double>(M));
    }
}

std::vector<double> CirculantEmbedding::draw(Philox4x32& rng) const {
    const std::size_t M = scale_.size();
    std::vector<std::complex<double>> z(M);
    for (std::size_t k = 0; k < M; ++k) {
        const double a = rng.normal();
        const double b = rng.normal();
        z[k] = scale_[k] * std::complex<double>(a, b);
    }
    const auto y = detail::dft(z);
    std::vector<double> out(N_);
    for (std::size_t k = 0; k < N_; ++k) out[k] = y[k].real();
    return out;
}

SamplePath sample(const ProcessSpec& spec, std::size_t N, std::uint64_t seed, const Tolerance& tol,
                  std::uint64_t stream) {
    if (N < 2) throw DomainError("sample paths need N >= 2");
    const CirculantEmbedding emb(acvf(spec, N - 1, tol), N);
    Philox4x32 rng(seed, stream);
    return {spec, seed, stream, emb.draw(rng)};
}

std::vector<SamplePath> sample_paths(const ProcessSpec& spec, std::size_t N, std::size_t count,
                                     std::uint64_t seed, const Tolerance& tol) {
    if (N < 2) throw DomainError("sample paths need N >= 2");
    const CirculantEmbedding emb(acvf(spec, N - 1, tol), N);
    std::vector<SamplePath> paths(count, SamplePath{spec, seed, 0, {}});
    parallel_for(count, [&](std::size_t i) {
        Philox4x32 rng(seed, i);
        paths[i].stream = i;
        paths[i].values = emb.draw(rng);
    });
    return paths;
}

}  // namespace lrdlab
