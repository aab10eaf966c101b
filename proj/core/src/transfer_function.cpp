#include "whid/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "root_order.hpp"
#include "whid/errors.hpp"

namespace whid {

namespace {

void check_finite(const std::vector<double>& coeffs, const char* what) {
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            throw DegenerateError(std::string(what) + " has a non-finite coefficient");
        }
    }
}

void trim_trailing_zeros(std::vector<double>& coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) {
        coeffs.pop_back();
    }
}

/// Parlett-Reinsch balancing: diagonal similarity scaling by powers of two
/// until row and column norms are roughly equal. Exact powers of the radix
/// keep the eigenvalues bit-for-bit unaffected by the transform itself.
void balance_matrix(Eigen::MatrixXd& a) {
    const double radix = 2.0;
    const double radix_sq = radix * radix;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double row_norm = 0.0;
            double col_norm = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                row_norm += std::abs(a(i, j));
                col_norm += std::abs(a(j, i));
            }
            if (row_norm == 0.0 || col_norm == 0.0) {
                continue;
            }
            double f = 1.0;
            double c = col_norm;
            const double s = col_norm + row_norm;
            double g = row_norm / radix;
            while (c < g) {
                f *= radix;
                c *= radix_sq;
            }
            g = row_norm * radix;
            while (c > g) {
                f /= radix;
                c /= radix_sq;
            }
            if ((c + row_norm) / f < 0.95 * s) {
                done = false;
                const double g_inv = 1.0 / f;
                a.row(i) *= g_inv;
                a.col(i) *= f;
            }
        }
    }
}

std::vector<std::complex<double>> companion_roots(const std::vector<double>& monic_tail) {
    // monic_tail holds c0..c_{n-1} of x^n + c_{n-1} x^{n-1} + ... + c0.
    const Eigen::Index n = static_cast<Eigen::Index>(monic_tail.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        companion(i + 1, i) = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        companion(i, n - 1) = -monic_tail[static_cast<std::size_t>(i)];
    }
    balance_matrix(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw DegenerateError("polynomial rooting failed to converge");
    }
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    }
    return roots;
}

using detail::root_less;

// (1 - r x) for a real root, as ascending coefficients in x.
void multiply_real_factor(std::vector<double>& poly, double root) {
    std::vector<double> out(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out[i] += poly[i];
        out[i + 1] -= poly[i] * root;
    }
    poly = std::move(out);
}

// (1 - 2 Re(z) x + |z|^2 x^2) for a conjugate pair representative z.
void multiply_pair_factor(std::vector<double>& poly, const std::complex<double>& rep) {
    const double b = -2.0 * rep.real();
    const double c = std::norm(rep);
    std::vector<double> out(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out[i] += poly[i];
        out[i + 1] += poly[i] * b;
        out[i + 2] += poly[i] * c;
    }
    poly = std::move(out);
}

}  // namespace

TransferFunction::TransferFunction() : num_{1.0}, den_{1.0} {}

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || den_.empty()) {
        throw DegenerateError("transfer function needs nonempty numerator and denominator");
    }
    check_finite(num_, "numerator");
    check_finite(den_, "denominator");
    if (den_[0] == 0.0) {
        throw DegenerateError("leading denominator coefficient must be nonzero");
    }
    const double scale = den_[0];
    if (scale != 1.0) {
        for (double& c : num_) {
            c /= scale;
        }
        for (double& c : den_) {
            c /= scale;
        }
        den_[0] = 1.0;
    }
    trim_trailing_zeros(num_);
    trim_trailing_zeros(den_);
}

bool TransferFunction::is_identity() const {
    return num_.size() == 1 && den_.size() == 1 && num_[0] == 1.0;
}

double TransferFunction::max_pole_magnitude() const {
    if (max_pole_mag_) {
        return *max_pole_mag_;
    }
    if (den_.size() == 1) {
        return 0.0;
    }
    // Poles are the roots of the coefficient-reversed denominator.
    std::vector<double> reversed(den_.rbegin(), den_.rend());
    double max_mag = 0.0;
    for (const auto& root : polynomial_roots(reversed)) {
        max_mag = std::max(max_mag, std::abs(root));
    }
    return max_mag;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = coeffs;
    check_finite(c, "polynomial");
    trim_trailing_zeros(c);
    std::vector<std::complex<double>> roots;
    if (c.size() <= 1) {
        return roots;
    }
    // Deflate exact roots at the origin before forming the companion matrix.
    std::size_t origin_roots = 0;
    while (origin_roots + 1 < c.size() && c[origin_roots] == 0.0) {
        ++origin_roots;
    }
    roots.assign(origin_roots, std::complex<double>(0.0, 0.0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(origin_roots));

    const std::size_t degree = c.size() - 1;
    if (degree == 0) {
        return roots;
    }
    if (degree == 1) {
        roots.emplace_back(-c[0] / c[1], 0.0);
    } else if (degree == 2) {
        const double a = c[2];
        const double b = c[1];
        const double c0 = c[0];
        const double disc = b * b - 4.0 * a * c0;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            if (q != 0.0) {
                roots.emplace_back(q / a, 0.0);
                roots.emplace_back(c0 / q, 0.0);
            } else {
                roots.emplace_back(0.0, 0.0);
                roots.emplace_back(0.0, 0.0);
            }
        } else {
            const double re = -b / (2.0 * a);
            const double im = std::sqrt(-disc) / (2.0 * a);
            roots.emplace_back(re, std::abs(im));
            roots.emplace_back(re, -std::abs(im));
        }
    } else {
        std::vector<double> monic_tail(degree);
        for (std::size_t i = 0; i < degree; ++i) {
            monic_tail[i] = c[i] / c[degree];
        }
        auto companion = companion_roots(monic_tail);
        roots.insert(roots.end(), companion.begin(), companion.end());
    }
    std::sort(roots.begin() + static_cast<std::ptrdiff_t>(origin_roots), roots.end(), root_less);
    return roots;
}

ConjugatePartition pair_conjugates(const std::vector<std::complex<double>>& roots,
                                   double conj_tol) {
    ConjugatePartition out;
    std::vector<std::complex<double>> upper;
    std::vector<std::complex<double>> lower;
    for (const auto& z : roots) {
        const double scale = std::max(1.0, std::abs(z));
        if (std::abs(z.imag()) <= conj_tol * scale) {
            out.reals.push_back(z.real());
        } else if (z.imag() > 0.0) {
            upper.push_back(z);
        } else {
            lower.push_back(z);
        }
    }
    if (upper.size() != lower.size()) {
        throw ConjugacyError("complex roots are not closed under conjugation");
    }
    std::sort(upper.begin(), upper.end(), root_less);
    std::sort(lower.begin(), lower.end(), root_less);
    std::vector<bool> used(lower.size(), false);
    for (const auto& z : upper) {
        std::size_t best = lower.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) {
                continue;
            }
            const double dist = std::abs(z - std::conj(lower[j]));
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        const double scale = std::max(1.0, std::abs(z));
        if (best == lower.size() || best_dist > conj_tol * scale) {
            throw ConjugacyError("complex root has no conjugate partner within tolerance");
        }
        used[best] = true;
        // Symmetrize the matched pair to an exact conjugate.
        const std::complex<double> mate = std::conj(lower[best]);
        out.pair_representatives.push_back(0.5 * (z + mate));
    }
    std::sort(out.pair_representatives.begin(), out.pair_representatives.end(), root_less);
    std::sort(out.reals.begin(), out.reals.end());
    return out;
}

TransferFunction tf_from_zpk(const PoleZeroGain& zpk, double conj_tol) {
    if (!std::isfinite(zpk.gain)) {
        throw DegenerateError("gain must be finite");
    }
    const ConjugatePartition zero_part = pair_conjugates(zpk.zeros, conj_tol);
    const ConjugatePartition pole_part = pair_conjugates(zpk.poles, conj_tol);

    std::vector<double> num{zpk.gain};
    for (const auto& rep : zero_part.pair_representatives) {
        multiply_pair_factor(num, rep);
    }
    for (double r : zero_part.reals) {
        multiply_real_factor(num, r);
    }
    std::vector<double> den{1.0};
    for (const auto& rep : pole_part.pair_representatives) {
        multiply_pair_factor(den, rep);
    }
    for (double r : pole_part.reals) {
        multiply_real_factor(den, r);
    }

    TransferFunction tf(std::move(num), std::move(den));
    double max_mag = 0.0;
    for (const auto& p : zpk.poles) {
        max_mag = std::max(max_mag, std::abs(p));
    }
    tf.max_pole_mag_ = max_mag;
    return tf;
}

PoleZeroGain zpk_from_tf(const TransferFunction& tf, double conj_tol) {
    const std::vector<double>& num = tf.num();
    const std::vector<double>& den = tf.den();
    if (num.size() == 1 && num[0] == 0.0) {
        throw DegenerateError("zero system has no pole-zero-gain form");
    }
    if (num[0] == 0.0) {
        throw DegenerateError("pure delay factor has no pole-zero-gain form");
    }

    PoleZeroGain zpk;
    zpk.gain = num[0];

    const auto factored_roots = [conj_tol](const std::vector<double>& coeffs) {
        // Roots of the coefficient-reversed polynomial are the v of the
        // (1 - v q^-1) factors directly.
        std::vector<double> reversed(coeffs.rbegin(), coeffs.rend());
        const auto raw = polynomial_roots(reversed);
        const ConjugatePartition part = pair_conjugates(raw, conj_tol);
        std::vector<std::complex<double>> out;
        for (const auto& rep : part.pair_representatives) {
            out.push_back(rep);
            out.push_back(std::conj(rep));
        }
        for (double r : part.reals) {
            out.emplace_back(r, 0.0);
        }
        return out;
    };

    zpk.zeros = factored_roots(num);
    zpk.poles = factored_roots(den);
    return zpk;
}

TransferFunction multiply(const TransferFunction& a, const TransferFunction& b) {
    const auto conv = [](const std::vector<double>& p, const std::vector<double>& q) {
        std::vector<double> out(p.size() + q.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = 0; j < q.size(); ++j) {
                out[i + j] += p[i] * q[j];
            }
        }
        return out;
    };
    return TransferFunction(conv(a.num(), b.num()), conv(a.den(), b.den()));
}

}  // namespace whid
