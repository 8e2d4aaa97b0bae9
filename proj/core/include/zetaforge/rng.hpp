#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011) plus the
// small reduction helpers used by the Monte Carlo drivers.
//
// A stream is identified by a 64-bit key; sample i of the stream is a pure
// function of (key, i), so shards can be evaluated in any order and on any
// number of threads without changing the result.

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace zetaforge::rng {

using Block = std::array<std::uint32_t, 4>;

Block philox4x32_10(Block counter, std::array<std::uint32_t, 2> key);

/// 64-bit FNV-1a; used to fold (op, params, seed) into a stream key.
std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Key for a named operation. `params` should be a canonical text rendering
/// of the inputs.
std::uint64_t stream_key(const std::string& op, const std::string& params, std::uint64_t seed);

class Stream {
public:
    Stream(std::uint64_t key, std::uint64_t substream = 0)
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          sub_(substream) {}

    /// Uniform in (0, 1), never exactly 0 or 1.
    double uniform();

    /// Jump so that the next draw is the first of block `index`.
    void seek(std::uint64_t index) {
        ctr_ = index;
        have_ = 4;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t sub_;
    std::uint64_t ctr_ = 0;
    Block buf_{};
    int have_ = 4;
};

/// Neumaier-compensated accumulator.
class KahanSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Run fn(shard) for shard in [0, n). Uses up to hardware_concurrency threads;
/// fn must only write to per-shard storage.
void for_each_shard(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace zetaforge::rng
