#include "whid/bla.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "fft.hpp"
#include "whid/errors.hpp"

namespace whid {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> period_spectrum(const std::vector<double>& samples, std::size_t period,
                                  std::size_t period_index) {
    const auto begin = samples.begin() + static_cast<std::ptrdiff_t>(period_index * period);
    const std::vector<double> slice(begin, begin + static_cast<std::ptrdiff_t>(period));
    return detail::rfft(slice);
}

}  // namespace

Signal generate_periodic_gaussian(std::size_t period, std::size_t periods, double sigma, Rng& rng,
                                  double sample_rate) {
    if (period < 2) {
        throw DegenerateError("period must span at least 2 samples");
    }
    if (periods < 1) {
        throw DegenerateError("at least one period is required");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw DegenerateError("standard deviation must be nonnegative and finite");
    }
    std::vector<double> one_period(period);
    for (double& v : one_period) {
        v = sigma * rng.gaussian();
    }
    Signal out;
    out.sample_rate = sample_rate;
    out.samples.reserve(period * periods);
    for (std::size_t p = 0; p < periods; ++p) {
        out.samples.insert(out.samples.end(), one_period.begin(), one_period.end());
    }
    return out;
}

FrfEstimate estimate_frf(const Signal& u, const Signal& y, std::size_t period,
                         std::size_t discard_periods) {
    validate(u);
    validate(y);
    if (u.size() != y.size()) {
        throw DegenerateError("input and output signals must have equal length");
    }
    if (period < 2) {
        throw DegenerateError("period must span at least 2 samples");
    }
    if (u.size() % period != 0) {
        throw DegenerateError("signal length must be a whole number of periods");
    }
    const std::size_t total_periods = u.size() / period;
    if (discard_periods >= total_periods) {
        throw DegenerateError("discarding all periods leaves nothing to estimate from");
    }
    const std::size_t kept = total_periods - discard_periods;
    const std::size_t bins = period / 2 + 1;

    std::vector<std::vector<cplx>> u_spectra;
    std::vector<std::vector<cplx>> y_spectra;
    u_spectra.reserve(kept);
    y_spectra.reserve(kept);
    for (std::size_t p = discard_periods; p < total_periods; ++p) {
        u_spectra.push_back(period_spectrum(u.samples, period, p));
        y_spectra.push_back(period_spectrum(y.samples, period, p));
    }

    FrfEstimate out;
    out.period = period;
    out.periods_used = kept;
    out.frequencies.resize(bins);
    out.response.assign(bins, cplx(0.0, 0.0));
    out.variance.assign(bins, 0.0);
    out.valid.assign(bins, false);

    std::vector<cplx> u_avg(bins, cplx(0.0, 0.0));
    std::vector<cplx> y_avg(bins, cplx(0.0, 0.0));
    for (std::size_t p = 0; p < kept; ++p) {
        for (std::size_t k = 0; k < bins; ++k) {
            u_avg[k] += u_spectra[p][k];
            y_avg[k] += y_spectra[p][k];
        }
    }
    double u_max = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        u_avg[k] /= static_cast<double>(kept);
        y_avg[k] /= static_cast<double>(kept);
        u_max = std::max(u_max, std::abs(u_avg[k]));
    }
    const double floor = 1e-12 * u_max;

    for (std::size_t k = 0; k < bins; ++k) {
        out.frequencies[k] = static_cast<double>(k) / static_cast<double>(period);
        if (std::abs(u_avg[k]) <= floor) {
            continue;
        }
        out.valid[k] = true;
        out.response[k] = y_avg[k] / u_avg[k];
        if (kept >= 2) {
            cplx ratio_mean(0.0, 0.0);
            std::vector<cplx> ratios(kept);
            for (std::size_t p = 0; p < kept; ++p) {
                ratios[p] = y_spectra[p][k] / u_spectra[p][k];
                ratio_mean += ratios[p];
            }
            ratio_mean /= static_cast<double>(kept);
            double acc = 0.0;
            for (std::size_t p = 0; p < kept; ++p) {
                acc += std::norm(ratios[p] - ratio_mean);
            }
            out.variance[k] = acc / static_cast<double>(kept - 1);
        }
    }
    return out;
}

RationalFit fit_rational(const FrfEstimate& frf, int num_order, int den_order,
                         const RationalFitOptions& options) {
    if (num_order < 0 || den_order < 0) {
        throw DegenerateError("fit orders cannot be negative");
    }
    if (options.max_iterations < 1) {
        throw DegenerateError("at least one fit iteration is required");
    }
    const std::size_t bins = frf.frequencies.size();
    if (!options.weights.empty() && options.weights.size() != bins) {
        throw DegenerateError("weight vector length must match the frequency grid");
    }

    std::vector<std::size_t> fit_bins;
    for (std::size_t k = 0; k < bins; ++k) {
        if (frf.valid[k]) {
            fit_bins.push_back(k);
        }
    }
    const std::size_t unknowns =
        static_cast<std::size_t>(num_order) + 1 + static_cast<std::size_t>(den_order);
    if (2 * fit_bins.size() < unknowns) {
        throw FitDegenerateError("too few valid frequency bins for the requested orders");
    }

    // Base weights: user supplied, else inverse noise variance, else flat.
    std::vector<double> base_weight(fit_bins.size(), 1.0);
    if (!options.weights.empty()) {
        for (std::size_t i = 0; i < fit_bins.size(); ++i) {
            base_weight[i] = options.weights[fit_bins[i]];
        }
    } else {
        double var_max = 0.0;
        for (std::size_t k : fit_bins) {
            var_max = std::max(var_max, frf.variance[k]);
        }
        if (var_max > 0.0) {
            const double var_floor = 1e-10 * var_max;
            for (std::size_t i = 0; i < fit_bins.size(); ++i) {
                base_weight[i] = 1.0 / std::max(frf.variance[fit_bins[i]], var_floor);
            }
        }
    }

    std::vector<cplx> zetas(fit_bins.size());
    std::vector<cplx> responses(fit_bins.size());
    for (std::size_t i = 0; i < fit_bins.size(); ++i) {
        const double angle = -2.0 * std::numbers::pi * frf.frequencies[fit_bins[i]];
        zetas[i] = cplx(std::cos(angle), std::sin(angle));
        responses[i] = frf.response[fit_bins[i]];
    }

    const auto evaluate_poly = [](const Eigen::VectorXd& coeffs, const cplx& zeta) {
        cplx acc(0.0, 0.0);
        for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) {
            acc = acc * zeta + coeffs[i];
        }
        return acc;
    };

    const Eigen::Index nb = num_order + 1;
    const Eigen::Index na = den_order;
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(nb + na);
    std::vector<double> denominator_weight(fit_bins.size(), 1.0);

    RationalFit result;
    for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
        Eigen::MatrixXd a_mat(2 * static_cast<Eigen::Index>(fit_bins.size()), nb + na);
        Eigen::VectorXd rhs(2 * static_cast<Eigen::Index>(fit_bins.size()));
        for (std::size_t i = 0; i < fit_bins.size(); ++i) {
            const double row_weight = std::sqrt(base_weight[i]) * denominator_weight[i];
            const cplx zeta = zetas[i];
            const cplx g = responses[i];
            cplx zeta_pow(1.0, 0.0);
            std::vector<cplx> powers(static_cast<std::size_t>(std::max(nb, na + 1)));
            for (std::size_t p = 0; p < powers.size(); ++p) {
                powers[p] = zeta_pow;
                zeta_pow *= zeta;
            }
            const Eigen::Index row_re = 2 * static_cast<Eigen::Index>(i);
            const Eigen::Index row_im = row_re + 1;
            for (Eigen::Index c = 0; c < nb; ++c) {
                const cplx v = row_weight * powers[static_cast<std::size_t>(c)];
                a_mat(row_re, c) = v.real();
                a_mat(row_im, c) = v.imag();
            }
            for (Eigen::Index c = 0; c < na; ++c) {
                const cplx v = -row_weight * g * powers[static_cast<std::size_t>(c + 1)];
                a_mat(row_re, nb + c) = v.real();
                a_mat(row_im, nb + c) = v.imag();
            }
            const cplx r = row_weight * g;
            rhs(row_re) = r.real();
            rhs(row_im) = r.imag();
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a_mat);
        if (qr.rank() < nb + na) {
            throw FitDegenerateError("rational fit system is rank deficient");
        }
        const Eigen::VectorXd theta_new = qr.solve(rhs);
        const double change = (theta_new - theta).norm();
        const double scale = std::max(1.0, theta_new.norm());
        theta = theta_new;
        result.iterations = iteration;
        if (iteration > 1 && change <= options.tolerance * scale) {
            result.converged = true;
            break;
        }

        // Reweight by the new denominator magnitude for the next pass.
        const Eigen::VectorXd a_coeffs = theta.tail(na);
        for (std::size_t i = 0; i < fit_bins.size(); ++i) {
            cplx a_val(1.0, 0.0);
            cplx zeta_pow = zetas[i];
            for (Eigen::Index c = 0; c < na; ++c) {
                a_val += a_coeffs[c] * zeta_pow;
                zeta_pow *= zetas[i];
            }
            const double mag = std::abs(a_val);
            denominator_weight[i] = mag > 1e-12 ? 1.0 / mag : 1e12;
        }
    }

    std::vector<double> num(theta.data(), theta.data() + nb);
    std::vector<double> den(static_cast<std::size_t>(na) + 1, 0.0);
    den[0] = 1.0;
    for (Eigen::Index c = 0; c < na; ++c) {
        den[static_cast<std::size_t>(c) + 1] = theta[nb + c];
    }

    // Stabilize: reflect any pole outside the unit circle back inside and
    // rescale the numerator so the magnitude response is preserved.
    if (den.size() > 1) {
        std::vector<double> reversed(den.rbegin(), den.rend());
        std::vector<cplx> poles = polynomial_roots(reversed);
        bool changed = false;
        double num_scale = 1.0;
        for (cplx& p : poles) {
            const double mag = std::abs(p);
            if (mag >= 1.0) {
                p /= mag * mag;
                if (std::abs(p) >= 1.0) {
                    p *= 1.0 - 1e-9;
                }
                num_scale /= mag;
                ++result.reflected_poles;
                changed = true;
            }
        }
        if (changed) {
            const ConjugatePartition part = pair_conjugates(poles, 1e-6);
            std::vector<double> new_den{1.0};
            for (const cplx& rep : part.pair_representatives) {
                std::vector<double> next(new_den.size() + 2, 0.0);
                for (std::size_t i = 0; i < new_den.size(); ++i) {
                    next[i] += new_den[i];
                    next[i + 1] += new_den[i] * (-2.0 * rep.real());
                    next[i + 2] += new_den[i] * std::norm(rep);
                }
                new_den = std::move(next);
            }
            for (double r : part.reals) {
                std::vector<double> next(new_den.size() + 1, 0.0);
                for (std::size_t i = 0; i < new_den.size(); ++i) {
                    next[i] += new_den[i];
                    next[i + 1] -= new_den[i] * r;
                }
                new_den = std::move(next);
            }
            den = std::move(new_den);
            for (double& b : num) {
                b *= num_scale;
            }
        }
    }

    result.tf = TransferFunction(num, den);

    Eigen::VectorXd num_vec = Eigen::Map<Eigen::VectorXd>(num.data(),
                                                          static_cast<Eigen::Index>(num.size()));
    Eigen::VectorXd den_vec = Eigen::Map<Eigen::VectorXd>(den.data(),
                                                          static_cast<Eigen::Index>(den.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < fit_bins.size(); ++i) {
        const cplx model = evaluate_poly(num_vec, zetas[i]) / evaluate_poly(den_vec, zetas[i]);
        acc += std::norm(model - responses[i]);
    }
    result.residual = acc / static_cast<double>(fit_bins.size());
    return result;
}

}  // namespace whid
