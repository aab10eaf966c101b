#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"

namespace whid {

/// A real root or an exact conjugate pair, always assigned to a block as a
/// unit so expanded coefficients stay real.
struct RootGroup {
    // One member for a real root; two (upper half plane first) for a pair.
    std::vector<std::complex<double>> members;

    bool is_pair() const { return members.size() == 2; }
    const std::complex<double>& representative() const { return members.front(); }
};

/// Poles and zeros of the overall dynamics, grouped into allocation units.
///
/// Group order is deterministic: poles first, then zeros, each sorted by
/// representative magnitude then angle. Allocation bit i refers to
/// pole_groups[i] for i < pole_groups.size() and to
/// zero_groups[i - pole_groups.size()] otherwise.
struct PoleZeroGroups {
    std::vector<RootGroup> pole_groups;
    std::vector<RootGroup> zero_groups;
    double source_gain = 1.0;

    int group_count() const {
        return static_cast<int>(pole_groups.size() + zero_groups.size());
    }
};

/// Binary assignment of each group: 1 puts the group in the front block H,
/// 0 in the back block S.
struct AllocationVector {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }

    /// Serialized form: '0'/'1' characters in group order.
    std::string to_string() const;
    static AllocationVector from_string(const std::string& s);

    bool operator==(const AllocationVector& other) const = default;
    /// Lexicographic order; the deterministic tie breaker everywhere.
    bool operator<(const AllocationVector& other) const { return bits < other.bits; }
};

/// Outcome of fitting the static nonlinearity for one allocation.
struct FitResult {
    std::vector<double> weights;
    double mse = 0.0;
    TransferFunction front;
    TransferFunction back;
    /// Ratio of extreme singular values of the RMS-scaled regressor matrix;
    /// infinity flags a rank-deficient fit solved in the minimum-norm sense.
    double condition_estimate = 0.0;
};

/// Groups a conjugate-closed root set into allocation units. Real roots make
/// singleton groups; complex roots are matched to their conjugates within
/// `conj_tol` (ConjugacyError when unmatched). Ordering is deterministic as
/// documented on PoleZeroGroups.
PoleZeroGroups group_conjugates(const PoleZeroGain& zpk, double conj_tol = kConjTol);

/// All poles and zeros of the groups as flat vectors (pair members expanded).
PoleZeroGain ungrouped(const PoleZeroGroups& groups);

/// Materializes the (front, back) blocks for one allocation. Both blocks get
/// gain 1; the overall gain is absorbed later by the nonlinearity estimate.
std::pair<TransferFunction, TransferFunction> build_split(const PoleZeroGroups& groups,
                                                          const AllocationVector& alloc);

/// Least-squares estimate of the static nonlinearity for a fixed split.
///
/// Builds x = filter_periodic(front, u), one regressor column per monomial
/// degree filtered through the back block, scales columns to unit RMS, and
/// solves by singular value decomposition. mse is the mean squared output
/// residual over the period.
FitResult estimate_nonlinearity(const TransferFunction& front, const TransferFunction& back,
                                const Signal& u, const Signal& y, std::span<const int> degrees);

/// Mean squared error of the allocation: build_split then
/// estimate_nonlinearity. The single cost function shared by the brute-force
/// scan and the genetic algorithm.
double allocation_cost(const PoleZeroGroups& groups, const AllocationVector& alloc,
                       const Signal& u, const Signal& y, std::span<const int> degrees);

/// Full fit (blocks plus weights) for one allocation.
FitResult fit_allocation(const PoleZeroGroups& groups, const AllocationVector& alloc,
                         const Signal& u, const Signal& y, std::span<const int> degrees);

/// Relative tolerance under which two allocation costs count as tied; the
/// lexicographically smaller bit vector wins the tie.
inline constexpr double kCostTieRelTol = 1e-14;

namespace detail {

/// Shared evaluation state for repeated allocation_cost calls on one data
/// set: caches the input spectrum and reuses transform buffers. Both search
/// strategies and the public allocation_cost go through this path.
class AllocationCostEvaluator {
  public:
    AllocationCostEvaluator(const PoleZeroGroups& groups, const Signal& u, const Signal& y,
                            std::span<const int> degrees);
    ~AllocationCostEvaluator();

    AllocationCostEvaluator(const AllocationCostEvaluator&) = delete;
    AllocationCostEvaluator& operator=(const AllocationCostEvaluator&) = delete;

    double cost(const AllocationVector& alloc) const;
    FitResult fit(const AllocationVector& alloc) const;

  private:
    struct Impl;
    Impl* impl_;
};

}  // namespace detail

}  // namespace whid
