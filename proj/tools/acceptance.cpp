// One PASS/FAIL line per acceptance criterion. Criteria 1-11 run at the full
// budget; 12 runs `verify-all --budget quick` twice and compares the bytes.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "suite.hpp"

using namespace zetaforge::cli;

int main(int argc, char** argv) {
    Tier tier = Tier::FULL;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) tier = Tier::QUICK;
    const std::uint64_t seed = 1;
    int failed = 0;

    for (int id = 1; id <= 11; ++id) {
        auto t0 = std::chrono::steady_clock::now();
        auto res = run_suite(tier, seed, {id});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const Criterion& c = res.front();
        bool in_time = secs <= c.limit_seconds;
        bool ok = c.ok && in_time;
        failed += !ok;
        std::printf("%s %2d  %s  (%.1f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    c.limit_seconds);
        for (const auto& ch : c.checks)
            if (!ch.ok) std::printf("       failed: %s  %s\n", ch.name.c_str(), ch.detail.dump().c_str());
        if (!in_time) std::printf("       over the runtime limit\n");
        std::fflush(stdout);
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> args{"verify-all", "--budget", "quick", "--seed", "1", "--no-meta"};
    std::ostringstream a, b, ea, eb;
    int ra = run(args, a, ea), rb = run(args, b, eb);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool same = a.str() == b.str() && !a.str().empty();
    bool ok = same && ra == 0 && rb == 0 && secs <= 600;
    failed += !ok;
    std::printf("%s 12  verify-all --budget quick is byte-identical across runs  (%.1f s, limit 600 s)\n",
                ok ? "PASS" : "FAIL", secs);
    if (!same) std::printf("       outputs differ (%zu vs %zu bytes)\n", a.str().size(), b.str().size());
    if (ra != 0 || rb != 0) std::printf("       exit codes %d, %d\n%s", ra, rb, a.str().c_str());

    std::printf("%d of 12 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
