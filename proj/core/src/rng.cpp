#include "bnpid/rng.hpp"

namespace bnpid {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& x) noexcept {
    x += kGolden;
    return mix64(x);
}

std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    // Two rounds of mixing so that neighbouring (seed, index) pairs land on
    // unrelated splitmix starting points.
    std::uint64_t key = mix64(master_seed ^ mix64(stream_index * kGolden + 0x632BE59BD9B4E019ULL));
    key = mix64(key + stream_index);
    for (auto& word : state_) {
        word = splitmix_next(key);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = kGolden;
    }
}

RngStream::result_type RngStream::operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::child(std::uint64_t sub) const {
    return RngStream(derive_seed(master_seed_, stream_index_), sub);
}

RngStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(master_seed, index);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept {
    return mix64(mix64(master_seed + kGolden) ^ mix64(tag ^ 0xD1B54A32D192ED03ULL));
}

}  // namespace bnpid
