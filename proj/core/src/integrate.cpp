#include "integrate.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "zetaforge/errors.hpp"

namespace zetaforge::detail {

namespace {

constexpr std::size_t kShards = 64;
constexpr std::size_t kShifts = 16;

SampleStats finish(const std::vector<double>& sums, const std::vector<double>& sq,
                   std::uint64_t n) {
    rng::KahanSum s, s2;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        s.add(sums[i]);
        s2.add(sq[i]);
    }
    SampleStats r;
    r.n = n;
    r.mean = s.value() / static_cast<double>(n);
    double var = s2.value() / static_cast<double>(n) - r.mean * r.mean;
    r.std_error = n > 1 ? std::sqrt(std::max(var, 0.0) / static_cast<double>(n - 1)) : 0.0;
    return r;
}

}  // namespace

SampleStats monte_carlo(std::uint64_t key, std::uint64_t samples,
                        const std::function<double(rng::Stream&)>& draw) {
    if (samples < 2) throw InvalidArgument("Monte Carlo needs at least 2 samples");
    std::vector<double> sums(kShards), sq(kShards);
    rng::for_each_shard(kShards, [&](std::size_t shard) {
        std::uint64_t n = samples / kShards + (shard < samples % kShards ? 1 : 0);
        rng::Stream stream(key, shard);
        rng::KahanSum s, s2;
        for (std::uint64_t i = 0; i < n; ++i) {
            double v = draw(stream);
            s.add(v);
            s2.add(v * v);
        }
        sums[shard] = s.value();
        sq[shard] = s2.value();
    });
    return finish(sums, sq, samples);
}

SampleStats shifted_lattice(std::uint64_t key, std::uint64_t samples, unsigned dim,
                            const std::function<double(const double*)>& f) {
    static const std::array<double, 8> primes = {2, 3, 5, 7, 11, 13, 17, 19};
    if (dim == 0 || dim > primes.size()) throw InvalidArgument("lattice dimension out of range");
    std::vector<double> alpha(dim);
    for (unsigned d = 0; d < dim; ++d) alpha[d] = std::sqrt(primes[d]) - std::floor(std::sqrt(primes[d]));
    std::uint64_t per = std::max<std::uint64_t>(samples / kShifts, 1);
    std::vector<double> means(kShifts);
    rng::for_each_shard(kShifts, [&](std::size_t shift) {
        rng::Stream stream(key, shift);
        std::vector<double> x(dim);
        for (auto& xi : x) xi = stream.uniform();
        rng::KahanSum s;
        for (std::uint64_t i = 0; i < per; ++i) {
            s.add(f(x.data()));
            for (unsigned d = 0; d < dim; ++d) {
                x[d] += alpha[d];
                if (x[d] >= 1.0) x[d] -= 1.0;
                if (x[d] <= 0.0) x[d] = 0x1.0p-53;
            }
        }
        means[shift] = s.value() / static_cast<double>(per);
    });
    rng::KahanSum m;
    for (double v : means) m.add(v);
    SampleStats r;
    r.n = per * kShifts;
    r.mean = m.value() / kShifts;
    double var = 0;
    for (double v : means) var += (v - r.mean) * (v - r.mean);
    r.std_error = std::sqrt(var / (kShifts - 1) / kShifts);
    return r;
}

SampleStats tensor_gauss(unsigned dim, const std::function<double(const double*)>& f) {
    using rule = boost::math::quadrature::gauss<double, 30>;
    // Boost stores the nonnegative half of the symmetric rule on [-1, 1].
    std::vector<double> x, w;
    const auto& ab = rule::abscissa();
    const auto& wt = rule::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        x.push_back(0.5 * (1 + ab[i]));
        w.push_back(0.5 * wt[i]);
        if (ab[i] != 0) {
            x.push_back(0.5 * (1 - ab[i]));
            w.push_back(0.5 * wt[i]);
        }
    }
    const std::size_t m = x.size();
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> pt(dim);
    rng::KahanSum s;
    std::uint64_t count = 0;
    while (true) {
        double weight = 1;
        for (unsigned d = 0; d < dim; ++d) {
            pt[d] = x[idx[d]];
            weight *= w[idx[d]];
        }
        s.add(weight * f(pt.data()));
        ++count;
        unsigned d = 0;
        while (d < dim && ++idx[d] == m) idx[d++] = 0;
        if (d == dim) break;
    }
    SampleStats r;
    r.mean = s.value();
    r.n = count;
    return r;
}

}  // namespace zetaforge::detail
