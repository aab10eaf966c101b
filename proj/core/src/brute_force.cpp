#include "whid/brute_force.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "whid/errors.hpp"

namespace whid {

namespace {

AllocationVector bits_for_index(std::uint64_t index, int group_count) {
    AllocationVector alloc;
    alloc.bits.resize(static_cast<std::size_t>(group_count));
    for (int g = 0; g < group_count; ++g) {
        alloc.bits[static_cast<std::size_t>(g)] =
            static_cast<std::uint8_t>((index >> (group_count - 1 - g)) & 1U);
    }
    return alloc;
}

void check_group_count(int group_count) {
    if (group_count < 0) {
        throw DegenerateError("group count cannot be negative");
    }
    if (group_count > kMaxScanGroups) {
        throw CapacityError("exhaustive enumeration limited to " +
                            std::to_string(kMaxScanGroups) + " groups");
    }
}

}  // namespace

std::vector<AllocationVector> enumerate_allocations(int group_count) {
    check_group_count(group_count);
    const std::uint64_t total = std::uint64_t(1) << group_count;
    std::vector<AllocationVector> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) {
        out.push_back(bits_for_index(i, group_count));
    }
    return out;
}

ScanResult brute_force_scan(const PoleZeroGroups& groups, const Signal& u, const Signal& y,
                            std::span<const int> degrees, const ScanOptions& options) {
    const int m = groups.group_count();
    check_group_count(m);
    const auto start = std::chrono::steady_clock::now();

    const detail::AllocationCostEvaluator evaluator(groups, u, y, degrees);
    const std::uint64_t total = std::uint64_t(1) << m;
    std::vector<double> costs(total);

    // Counting order doubles as lexicographic order of the bit vectors
    // because bit 0 is mapped to the most significant position.
    const auto scan_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            costs[i] = evaluator.cost(bits_for_index(i, m));
        }
    };

    int jobs = options.jobs;
    if (jobs <= 0) {
        jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs <= 0) {
            jobs = 1;
        }
    }
    jobs = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), total));
    if (jobs <= 1) {
        scan_range(0, total);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        const std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) /
                                    static_cast<std::uint64_t>(jobs);
        for (int t = 0; t < jobs; ++t) {
            const std::uint64_t begin = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end) {
                break;
            }
            workers.emplace_back(scan_range, begin, end);
        }
        for (std::thread& w : workers) {
            w.join();
        }
    }

    ScanResult result;
    result.evaluations = total;

    double min_cost = costs[0];
    for (std::uint64_t i = 1; i < total; ++i) {
        min_cost = std::min(min_cost, costs[i]);
    }
    const double tie_threshold = min_cost * (1.0 + kCostTieRelTol);
    std::uint64_t best_index = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        if (costs[i] <= tie_threshold) {
            best_index = i;
            break;
        }
    }
    result.best = ScanEntry{bits_for_index(best_index, m), costs[best_index]};

    std::vector<std::uint64_t> order(total);
    std::iota(order.begin(), order.end(), std::uint64_t(0));
    std::sort(order.begin(), order.end(), [&costs](std::uint64_t a, std::uint64_t b) {
        if (costs[a] != costs[b]) {
            return costs[a] < costs[b];
        }
        return a < b;
    });
    std::size_t kept = static_cast<std::size_t>(total);
    if (options.max_kept && *options.max_kept < kept) {
        kept = *options.max_kept;
    }
    result.entries.reserve(kept);
    for (std::size_t r = 0; r < kept; ++r) {
        result.entries.push_back(ScanEntry{bits_for_index(order[r], m), costs[order[r]]});
    }

    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace whid
