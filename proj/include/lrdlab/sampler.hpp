#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lrdlab/covariance.hpp"

namespace lrdlab {

/// Philox4x32-10 counter-based generator. The key is the 64-bit seed; the 128-bit
/// counter is (block index, stream index), so stream s of seed k yields the same
/// numbers whichever thread draws it.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept : seed_(seed), stream_(stream) {}

    /// The four words of counter block b.
    [[nodiscard]] std::array<std::uint32_t, 4> block(std::uint64_t b) const noexcept;

    /// Uniform on (0, 1) with 53 random bits.
    [[nodiscard]] double uniform() noexcept;
    /// Standard normal by Box-Muller.
    [[nodiscard]] double normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t next_block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Davies-Harte circulant embedding of gamma(0..N-1).
class CirculantEmbedding {
public:
    /// Embeds in size 2(N-1); when eigenvalues fall below -1e-10 * max the size is
    /// padded to the next power of two (up to 3 times). Remaining small negative
    /// eigenvalues are clipped with a warning on stderr; ConvergenceError if they
    /// stay below -1e-6 * max.
    CirculantEmbedding(const AcvfTable& acvf, std::size_t N);

    [[nodiscard]] std::vector<double> draw(Philox4x32& rng) const;

    [[nodiscard]] std::size_t length() const noexcept { return N_; }
    [[nodiscard]] std::size_t embedding_size() const noexcept { return scale_.size(); }
    [[nodiscard]] bool clipped() const noexcept { return clipped_; }

private:
    std::size_t N_;
    std::vector<double> scale_;  // sqrt(lambda_k / M)
    bool clipped_ = false;
};

struct SamplePath {
    ProcessSpec spec;
    std::uint64_t seed;
    std::uint64_t stream;
    std::vector<double> values;
};

[[nodiscard]] SamplePath sample(const ProcessSpec& spec, std::size_t N, std::uint64_t seed,
                                const Tolerance& tol = {}, std::uint64_t stream = 0);

/// count independent paths, path i on stream i; generated in parallel.
[[nodiscard]] std::vector<SamplePath> sample_paths(const ProcessSpec& spec, std::size_t N, std::size_t count,
                                                   std::uint64_t seed, const Tolerance& tol = {});

}  // namespace lrdlab
