#pragma once

#include <array>
#include <cstdint>

namespace bnpid {

/// Deterministic pseudo-random stream (xoshiro256**) addressed by a
/// (master_seed, stream_index) pair.
///
/// The state is a keyed mix of the pair; stream `i` is the same sequence
/// no matter how many other streams exist. A stream is single-owner: copy it to fork an identical sequence, never
/// share one between threads.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on the open interval (0, 1); safe to pass to log or a quantile.
    double uniform_open() noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    /// Child stream keyed by this stream's identity and `sub`; does not
    /// consume or depend on the parent's current position.
    RngStream child(std::uint64_t sub) const;

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
};

/// Stream `index` of the family rooted at `master_seed`.
RngStream substream(std::uint64_t master_seed, std::uint64_t index);

/// Mixes a master seed with a purpose tag into a new master seed; used to
/// carve independent families (data, prior draws, posterior draws, ...).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept;

}  // namespace bnpid
