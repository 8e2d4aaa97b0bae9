#include "zetaforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace zetaforge::rng {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Block philox4x32_10(Block c, std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t stream_key(const std::string& op, const std::string& params, std::uint64_t seed) {
    std::uint64_t h = fnv1a(op);
    h = fnv1a("|" + params + "|", h);
    return fnv1a(std::to_string(seed), h);
}

double Stream::uniform() {
    if (have_ >= 4) {
        Block ctr = {static_cast<std::uint32_t>(ctr_), static_cast<std::uint32_t>(ctr_ >> 32),
                     static_cast<std::uint32_t>(sub_), static_cast<std::uint32_t>(sub_ >> 32)};
        buf_ = philox4x32_10(ctr, key_);
        ++ctr_;
        have_ = 0;
    }
    std::uint64_t a = buf_[have_] >> 5;
    std::uint64_t b = buf_[have_ + 1] >> 6;
    have_ += 2;
    return (static_cast<double>(a * 67108864ULL + b) + 0.5) * 0x1.0p-53;
}

void KahanSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

void for_each_shard(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace zetaforge::rng
