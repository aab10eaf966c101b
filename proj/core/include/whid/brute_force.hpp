#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "whid/allocation.hpp"
#include "whid/signal.hpp"

namespace whid {

/// Widest exhaustive scan accepted before enumerate_allocations and
/// brute_force_scan refuse with CapacityError.
inline constexpr int kMaxScanGroups = 30;

/// One evaluated allocation.
struct ScanEntry {
    AllocationVector alloc;
    double mse = 0.0;
};

/// Result of an exhaustive scan, sorted by (mse, bits) ascending.
struct ScanResult {
    /// Best-first; truncated to ScanOptions::max_kept when set.
    std::vector<ScanEntry> entries;
    /// Winner after the tie rule: among entries within kCostTieRelTol of the
    /// minimum mse, the lexicographically smallest bit vector.
    ScanEntry best;
    std::uint64_t evaluations = 0;
    double elapsed_seconds = 0.0;
};

struct ScanOptions {
    /// Worker threads; 0 means one per hardware thread.
    int jobs = 1;
    /// Keep only the best max_kept entries when set (best is unaffected).
    std::optional<std::size_t> max_kept;
};

/// All 2^n allocation vectors for n groups in lexicographic (counting)
/// order. CapacityError when n exceeds kMaxScanGroups.
std::vector<AllocationVector> enumerate_allocations(int group_count);

/// Evaluates every allocation of the groups against the data.
ScanResult brute_force_scan(const PoleZeroGroups& groups, const Signal& u, const Signal& y,
                            std::span<const int> degrees, const ScanOptions& options = {});

}  // namespace whid
