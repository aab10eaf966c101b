#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace whid {

/// Default relative tolerance when pairing numerically computed conjugate
/// roots. Matches the noise floor of companion-matrix rooting.
inline constexpr double kConjTol = 1e-8;

/// Poles, zeros and gain of a rational discrete-time system.
///
/// A pole or zero v corresponds to the factor (1 - v q^-1); stability is
/// |pole| < 1. Roots at the origin have no representation in this form.
struct PoleZeroGain {
    std::vector<std::complex<double>> zeros;
    std::vector<std::complex<double>> poles;
    double gain = 1.0;
};

/// Rational transfer function in the backward-shift variable q^-1.
///
/// num = [b0..b_nb], den = [a0..a_na] for
///   (b0 + b1 q^-1 + ... ) / (a0 + a1 q^-1 + ...).
/// Construction normalizes den[0] to 1 and trims trailing zero coefficients,
/// so the stored orders are well defined. Immutable after construction.
class TransferFunction {
  public:
    /// Identity system (num = [1], den = [1]).
    TransferFunction();

    /// Throws DegenerateError on empty vectors or den[0] == 0.
    TransferFunction(std::vector<double> num, std::vector<double> den);

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    int num_order() const { return static_cast<int>(num_.size()) - 1; }
    int den_order() const { return static_cast<int>(den_.size()) - 1; }

    bool is_identity() const;
    /// True when den is trivial, i.e. the system is a pure scaling.
    bool is_static_gain() const { return den_.size() == 1 && num_.size() == 1; }

    /// Largest pole magnitude; roots the denominator unless the value is
    /// already known from construction via tf_from_zpk.
    double max_pole_magnitude() const;

    /// All poles strictly inside the unit circle.
    bool is_stable() const { return max_pole_magnitude() < 1.0; }

    bool operator==(const TransferFunction& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }

  private:
    std::vector<double> num_;
    std::vector<double> den_;
    // Filled in when the poles are known at construction time, so hot paths
    // can check stability without rooting.
    std::optional<double> max_pole_mag_;

    friend TransferFunction tf_from_zpk(const PoleZeroGain&, double);
};

/// Expands factored poles/zeros into real polynomial coefficients.
///
/// Conjugate pairs are matched first and expanded as real quadratics, so the
/// result is real by construction. Gain is folded into the numerator and
/// den[0] is normalized to 1. Throws ConjugacyError when a complex root has
/// no conjugate partner within `conj_tol`.
TransferFunction tf_from_zpk(const PoleZeroGain& zpk, double conj_tol = kConjTol);

/// Recovers poles, zeros and gain by rooting num and den.
///
/// Roots are computed as eigenvalues of the balanced companion matrix of the
/// coefficient-reversed polynomials, then symmetrized into exact conjugate
/// pairs. Throws DegenerateError when num is identically zero or when the
/// leading coefficient vanishes (pure delays have no pole-zero-gain form).
PoleZeroGain zpk_from_tf(const TransferFunction& tf, double conj_tol = kConjTol);

/// Series connection: polynomial product of numerators and denominators.
TransferFunction multiply(const TransferFunction& a, const TransferFunction& b);

/// Roots of a real polynomial c[0] + c[1] x + ... + c[n] x^n.
/// Leading zero coefficients are trimmed; a constant has no roots.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Splits roots into conjugate pairs and reals, symmetrizing each matched
/// pair to an exact conjugate. Returns pairs as their upper-half-plane
/// representative. Throws ConjugacyError on an unmatched complex root.
struct ConjugatePartition {
    std::vector<std::complex<double>> pair_representatives;  // imag > 0
    std::vector<double> reals;
};
ConjugatePartition pair_conjugates(const std::vector<std::complex<double>>& roots,
                                   double conj_tol = kConjTol);

}  // namespace whid
