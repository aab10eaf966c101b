#include "whid/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "fft.hpp"
#include "root_order.hpp"
#include "whid/errors.hpp"
#include "whid/filtering.hpp"

namespace whid {

namespace {

using cplx = std::complex<double>;

void validate_degrees(std::span<const int> degrees) {
    if (degrees.empty()) {
        throw DegenerateError("at least one monomial degree is required");
    }
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1) {
            throw DegenerateError("monomial degrees must be >= 1");
        }
        for (std::size_t j = i + 1; j < degrees.size(); ++j) {
            if (degrees[i] == degrees[j]) {
                throw DegenerateError("monomial degrees must be distinct");
            }
        }
    }
}

std::vector<RootGroup> make_groups(const std::vector<cplx>& roots, double conj_tol) {
    const ConjugatePartition part = pair_conjugates(roots, conj_tol);
    std::vector<RootGroup> groups;
    groups.reserve(part.pair_representatives.size() + part.reals.size());
    for (const cplx& rep : part.pair_representatives) {
        groups.push_back(RootGroup{{rep, std::conj(rep)}});
    }
    for (double r : part.reals) {
        groups.push_back(RootGroup{{cplx(r, 0.0)}});
    }
    std::sort(groups.begin(), groups.end(), [](const RootGroup& a, const RootGroup& b) {
        return detail::root_less(a.representative(), b.representative());
    });
    return groups;
}

struct SolvedFit {
    std::vector<double> weights;
    double mse = 0.0;
    double condition = 0.0;
};

/// Least-squares solve of columns * w = y with unit-RMS column scaling.
/// Singular values below Eigen's default threshold are dropped, giving the
/// minimum-norm solution for rank-deficient regressors.
SolvedFit solve_weights(const Eigen::MatrixXd& columns, const Eigen::VectorXd& y) {
    const Eigen::Index n = columns.rows();
    const Eigen::Index d = columns.cols();
    Eigen::VectorXd scale(d);
    Eigen::MatrixXd scaled = columns;
    for (Eigen::Index j = 0; j < d; ++j) {
        const double s = std::sqrt(columns.col(j).squaredNorm() / static_cast<double>(n));
        scale[j] = (s > 0.0 && std::isfinite(s)) ? s : 1.0;
        scaled.col(j) /= scale[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd scaled_w = svd.solve(y);
    const Eigen::VectorXd residual = scaled * scaled_w - y;

    SolvedFit out;
    out.mse = residual.squaredNorm() / static_cast<double>(n);
    out.weights.resize(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
        out.weights[static_cast<std::size_t>(j)] = scaled_w[j] / scale[j];
    }
    const double sv_max = svd.singularValues()(0);
    const double sv_min = svd.singularValues()(d - 1);
    out.condition = sv_min > 0.0 ? sv_max / sv_min : std::numeric_limits<double>::infinity();
    return out;
}

void elementwise_power(const std::vector<double>& x, int degree, std::vector<double>& out) {
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double acc = x[i];
        for (int d = 1; d < degree; ++d) {
            acc *= x[i];
        }
        out[i] = acc;
    }
}

}  // namespace

std::string AllocationVector::to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        s[i] = bits[i] ? '1' : '0';
    }
    return s;
}

AllocationVector AllocationVector::from_string(const std::string& s) {
    AllocationVector out;
    out.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw ConfigError("allocation string must contain only '0' and '1'");
        }
        out.bits.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

PoleZeroGroups group_conjugates(const PoleZeroGain& zpk, double conj_tol) {
    PoleZeroGroups out;
    out.pole_groups = make_groups(zpk.poles, conj_tol);
    out.zero_groups = make_groups(zpk.zeros, conj_tol);
    out.source_gain = zpk.gain;
    return out;
}

PoleZeroGain ungrouped(const PoleZeroGroups& groups) {
    PoleZeroGain out;
    out.gain = groups.source_gain;
    for (const RootGroup& g : groups.pole_groups) {
        out.poles.insert(out.poles.end(), g.members.begin(), g.members.end());
    }
    for (const RootGroup& g : groups.zero_groups) {
        out.zeros.insert(out.zeros.end(), g.members.begin(), g.members.end());
    }
    return out;
}

std::pair<TransferFunction, TransferFunction> build_split(const PoleZeroGroups& groups,
                                                          const AllocationVector& alloc) {
    if (alloc.size() != static_cast<std::size_t>(groups.group_count())) {
        throw DegenerateError("allocation length does not match group count");
    }
    PoleZeroGain front;
    PoleZeroGain back;
    const std::size_t n_poles = groups.pole_groups.size();
    for (std::size_t i = 0; i < n_poles; ++i) {
        auto& dest = alloc.bits[i] ? front.poles : back.poles;
        const auto& members = groups.pole_groups[i].members;
        dest.insert(dest.end(), members.begin(), members.end());
    }
    for (std::size_t i = 0; i < groups.zero_groups.size(); ++i) {
        auto& dest = alloc.bits[n_poles + i] ? front.zeros : back.zeros;
        const auto& members = groups.zero_groups[i].members;
        dest.insert(dest.end(), members.begin(), members.end());
    }
    return {tf_from_zpk(front), tf_from_zpk(back)};
}

FitResult estimate_nonlinearity(const TransferFunction& front, const TransferFunction& back,
                                const Signal& u, const Signal& y, std::span<const int> degrees) {
    validate(u);
    validate(y);
    if (u.size() != y.size()) {
        throw DegenerateError("input and output signals must have equal length");
    }
    validate_degrees(degrees);

    const Signal x = filter_periodic(front, u);
    const Eigen::Index n = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd columns(n, static_cast<Eigen::Index>(degrees.size()));
    std::vector<double> powered;
    Signal powered_signal;
    powered_signal.sample_rate = u.sample_rate;
    for (std::size_t j = 0; j < degrees.size(); ++j) {
        elementwise_power(x.samples, degrees[j], powered);
        powered_signal.samples = powered;
        const Signal col = filter_periodic(back, powered_signal);
        for (Eigen::Index i = 0; i < n; ++i) {
            columns(i, static_cast<Eigen::Index>(j)) = col.samples[static_cast<std::size_t>(i)];
        }
    }
    Eigen::VectorXd y_vec(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y_vec[i] = y.samples[static_cast<std::size_t>(i)];
    }
    SolvedFit solved = solve_weights(columns, y_vec);

    FitResult out;
    out.weights = std::move(solved.weights);
    out.mse = solved.mse;
    out.front = front;
    out.back = back;
    out.condition_estimate = solved.condition;
    return out;
}

namespace detail {

struct AllocationCostEvaluator::Impl {
    PoleZeroGroups groups;
    std::vector<int> degrees;
    double sample_rate = 1.0;
    std::size_t n = 0;
    std::vector<cplx> u_spectrum;
    Eigen::VectorXd y_vec;
    // factor_response[g][k]: the kth-bin response of group g's factor,
    // poles first, zeros after, in allocation-bit order.
    std::vector<std::vector<cplx>> factor_response;

    Impl(const PoleZeroGroups& groups_in, const Signal& u, const Signal& y,
         std::span<const int> degrees_in)
        : groups(groups_in), degrees(degrees_in.begin(), degrees_in.end()) {
        validate(u);
        validate(y);
        if (u.size() != y.size()) {
            throw DegenerateError("input and output signals must have equal length");
        }
        if (u.size() < 2) {
            throw DegenerateError("allocation fitting needs at least 2 samples");
        }
        validate_degrees(degrees);
        for (const RootGroup& g : groups.pole_groups) {
            if (g.members.empty() || g.members.size() > 2) {
                throw DegenerateError("root group must hold one real root or one pair");
            }
            if (std::abs(g.representative()) >= 1.0) {
                throw InstabilityError("grouped poles must be strictly inside the unit circle");
            }
        }
        for (const RootGroup& g : groups.zero_groups) {
            if (g.members.empty() || g.members.size() > 2) {
                throw DegenerateError("root group must hold one real root or one pair");
            }
        }

        sample_rate = u.sample_rate;
        n = u.size();
        u_spectrum = rfft(u.samples);
        y_vec.resize(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            y_vec[static_cast<Eigen::Index>(i)] = y.samples[i];
        }

        const std::size_t bins = u_spectrum.size();
        const auto add_factor_table = [&](const RootGroup& g) {
            std::vector<cplx> table(bins);
            for (std::size_t k = 0; k < bins; ++k) {
                const double angle =
                    -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
                const cplx zeta(std::cos(angle), std::sin(angle));
                if (g.is_pair()) {
                    const cplx rep = g.representative();
                    table[k] = 1.0 + zeta * (-2.0 * rep.real() + zeta * std::norm(rep));
                } else {
                    table[k] = 1.0 - g.representative().real() * zeta;
                }
            }
            factor_response.push_back(std::move(table));
        };
        for (const RootGroup& g : groups.pole_groups) {
            add_factor_table(g);
        }
        for (const RootGroup& g : groups.zero_groups) {
            add_factor_table(g);
        }
    }

    /// Builds the regressor matrix for one allocation. All scratch state is
    /// local, so concurrent calls on one evaluator are safe.
    Eigen::MatrixXd regressors(const AllocationVector& alloc) const {
        if (alloc.size() != static_cast<std::size_t>(groups.group_count())) {
            throw DegenerateError("allocation length does not match group count");
        }
        const std::size_t bins = u_spectrum.size();
        const std::size_t n_poles = groups.pole_groups.size();

        std::vector<cplx> front_resp(bins, cplx(1.0, 0.0));
        std::vector<cplx> back_resp(bins, cplx(1.0, 0.0));
        for (std::size_t g = 0; g < alloc.size(); ++g) {
            const bool to_front = alloc.bits[g] != 0;
            const bool is_pole = g < n_poles;
            const std::vector<cplx>& table = factor_response[g];
            std::vector<cplx>& resp = to_front ? front_resp : back_resp;
            if (is_pole) {
                for (std::size_t k = 0; k < bins; ++k) {
                    resp[k] /= table[k];
                }
            } else {
                for (std::size_t k = 0; k < bins; ++k) {
                    resp[k] *= table[k];
                }
            }
        }

        std::vector<cplx> x_spectrum(bins);
        for (std::size_t k = 0; k < bins; ++k) {
            x_spectrum[k] = u_spectrum[k] * front_resp[k];
        }
        const std::vector<double> x = irfft(x_spectrum, n);

        Eigen::MatrixXd columns(static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(degrees.size()));
        std::vector<double> powered;
        std::vector<cplx> col_spectrum(bins);
        for (std::size_t j = 0; j < degrees.size(); ++j) {
            elementwise_power(x, degrees[j], powered);
            std::vector<cplx> p_spectrum = rfft(powered);
            for (std::size_t k = 0; k < bins; ++k) {
                col_spectrum[k] = p_spectrum[k] * back_resp[k];
            }
            const std::vector<double> col = irfft(col_spectrum, n);
            for (std::size_t i = 0; i < n; ++i) {
                columns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
            }
        }
        return columns;
    }
};

AllocationCostEvaluator::AllocationCostEvaluator(const PoleZeroGroups& groups, const Signal& u,
                                                 const Signal& y, std::span<const int> degrees)
    : impl_(new Impl(groups, u, y, degrees)) {}

AllocationCostEvaluator::~AllocationCostEvaluator() { delete impl_; }

double AllocationCostEvaluator::cost(const AllocationVector& alloc) const {
    const Eigen::MatrixXd columns = impl_->regressors(alloc);
    return solve_weights(columns, impl_->y_vec).mse;
}

FitResult AllocationCostEvaluator::fit(const AllocationVector& alloc) const {
    const Eigen::MatrixXd columns = impl_->regressors(alloc);
    SolvedFit solved = solve_weights(columns, impl_->y_vec);
    auto split = build_split(impl_->groups, alloc);

    FitResult out;
    out.weights = std::move(solved.weights);
    out.mse = solved.mse;
    out.front = std::move(split.first);
    out.back = std::move(split.second);
    out.condition_estimate = solved.condition;
    return out;
}

}  // namespace detail

double allocation_cost(const PoleZeroGroups& groups, const AllocationVector& alloc,
                       const Signal& u, const Signal& y, std::span<const int> degrees) {
    detail::AllocationCostEvaluator evaluator(groups, u, y, degrees);
    return evaluator.cost(alloc);
}

FitResult fit_allocation(const PoleZeroGroups& groups, const AllocationVector& alloc,
                         const Signal& u, const Signal& y, std::span<const int> degrees) {
    detail::AllocationCostEvaluator evaluator(groups, u, y, degrees);
    return evaluator.fit(alloc);
}

}  // namespace whid
