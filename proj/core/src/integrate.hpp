#pragma once

// Sample-average integration shared by specval and spectra. Not installed.

#include <cstdint>
#include <functional>

#include "zetaforge/rng.hpp"

namespace zetaforge::detail {

struct SampleStats {
    double mean = 0;
    double std_error = 0;
    std::uint64_t n = 0;
};

/// Mean of draw(stream) over `samples` draws split across a fixed number of
/// shards; the result depends only on (key, samples), not on thread count.
SampleStats monte_carlo(std::uint64_t key, std::uint64_t samples,
                        const std::function<double(rng::Stream&)>& draw);

/// Randomly shifted Kronecker lattice in [0,1)^dim. f receives the point.
/// std_error comes from the spread over independent shifts.
SampleStats shifted_lattice(std::uint64_t key, std::uint64_t samples, unsigned dim,
                            const std::function<double(const double*)>& f);

/// Product Gauss-Legendre rule on [0,1]^dim with 30 nodes per axis.
SampleStats tensor_gauss(unsigned dim, const std::function<double(const double*)>& f);

}  // namespace zetaforge::detail
