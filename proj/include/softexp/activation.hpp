#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace softexp {

/// A complex value flowing through evaluation.
using CScalar = std::complex<double>;

/// Domain policy for the logarithmic branch (alpha < 0).
///
/// RealStrict rejects evaluations whose log argument is not strictly
/// positive real; ComplexPrincipal continues through the principal complex
/// logarithm instead. An argument of exactly zero is an error in both modes.
enum class EvalMode { RealStrict, ComplexPrincipal };

/// The per-unit activation parameter, alpha = re + i*im.
struct Alpha {
    double re = 0.0;
    double im = 0.0;

    Alpha() = default;
    Alpha(double re_, double im_ = 0.0) : re(re_), im(im_) {
        if (!std::isfinite(re) || !std::isfinite(im))
            throw NonFiniteError("alpha components must be finite");
    }
    explicit Alpha(CScalar v) : Alpha(v.real(), v.imag()) {}

    bool is_real() const { return im == 0.0; }
    CScalar value() const { return {re, im}; }

    friend bool operator==(const Alpha& a, const Alpha& b) {
        return a.re == b.re && a.im == b.im;
    }
};

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw NonFiniteError(std::string(name) + " must be finite");
}

inline void require_finite(CScalar v, const char* name) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteError(std::string(name) + " must be finite");
}

inline bool finite(CScalar v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// (e^w - 1) / w with the removable singularity at w = 0 filled in.
///
/// For |w| < 0.5 the naive expression cancels catastrophically; there the
/// identity expm1(w) = (u - 1) * w / log(u) with u = e^w is safe because the
/// rounding of u - 1 and log(u) correlate (and |Im w| < pi, so no wrap).
inline CScalar expm1_over(CScalar w) {
    if (std::abs(w) >= 0.5)
        return (std::exp(w) - 1.0) / w;
    CScalar u = std::exp(w);
    if (u == CScalar{1.0, 0.0}) return {1.0, 0.0};
    return (u - 1.0) / std::log(u);
}

/// log(1 + w) for complex w, accurate near w = 0 (same correlated-rounding
/// trick as expm1_over). The caller guarantees 1 + w != 0.
inline CScalar log1p_c(CScalar w) {
    if (std::abs(w) >= 0.5)
        return std::log(1.0 + w);
    CScalar u = 1.0 + w;
    if (u == CScalar{1.0, 0.0}) return w;
    return std::log(u) * (w / (u - 1.0));
}

} // namespace detail

/// Lower bound of the real domain of the log branch: for alpha < 0 the
/// activation is defined exactly for x strictly above 1/alpha - alpha.
inline double real_domain_lower_bound(double alpha) {
    detail::require_finite(alpha, "alpha");
    if (alpha >= 0.0)
        throw InvalidArgument("real_domain_lower_bound requires alpha < 0");
    return 1.0 / alpha - alpha;
}

/// Soft exponential activation, real path (RealStrict).
///
///   f(a, x) = -log(1 - a (x + a)) / a   for a < 0
///           = x                         for a = 0
///           = (e^{a x} - 1) / a + a     for a > 0
///
/// Throws DomainError when a < 0 and the log argument is not strictly
/// positive, RangeError on overflow.
inline double softexp(double alpha, double x) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha == 0.0) return x;
    if (alpha > 0.0) {
        double v = std::expm1(alpha * x) / alpha + alpha;
        if (!std::isfinite(v)) throw RangeError("softexp overflowed");
        return v;
    }
    // log branch: 1 - a(x + a) = 1 + t with t = -a(x + a)
    double t = -alpha * (x + alpha);
    if (!(t > -1.0))
        throw DomainError("softexp log argument 1 - alpha*(x + alpha) <= 0; "
                          "x must exceed 1/alpha - alpha");
    double v = -std::log1p(t) / alpha;
    if (!std::isfinite(v)) throw RangeError("softexp overflowed");
    return v;
}

/// Soft exponential with an explicit domain policy. In ComplexPrincipal mode
/// a negative log argument continues through the principal logarithm and the
/// result acquires an imaginary part; an argument of exactly zero is an error
/// in both modes.
inline CScalar softexp(double alpha, double x, EvalMode mode) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha >= 0.0) return {softexp(alpha, x), 0.0};
    double t = -alpha * (x + alpha);
    if (t > -1.0) {
        double v = -std::log1p(t) / alpha;
        if (!std::isfinite(v)) throw RangeError("softexp overflowed");
        return {v, 0.0};
    }
    if (!(t < -1.0) || mode == EvalMode::RealStrict) {
        // t == -1 (argument exactly zero) is an error in every mode.
        throw DomainError("softexp log argument 1 - alpha*(x + alpha) <= 0; "
                          "x must exceed 1/alpha - alpha");
    }
    // principal log of the negative real argument -(1 + t)
    double u = -(1.0 + t);
    CScalar v{-std::log(u) / alpha, -std::numbers::pi / alpha};
    if (!detail::finite(v)) throw RangeError("softexp overflowed");
    return v;
}

/// Analytic continuation of the activation to complex alpha and x.
///
/// Real alpha reproduces the real path (principal-log policy); alpha with a
/// nonzero imaginary part always evaluates the exponential form
/// (e^{a x} - 1)/a + a, the unique continuation that stays continuous at
/// a = 0. Alpha exactly 0 + 0i returns x.
inline CScalar softexp_complex(Alpha alpha, CScalar x) {
    detail::require_finite(x, "x");
    if (alpha.is_real()) {
        if (x.imag() == 0.0)
            return softexp(alpha.re, x.real(), EvalMode::ComplexPrincipal);
        if (alpha.re == 0.0) return x;
        if (alpha.re < 0.0) {
            CScalar w = -alpha.re * (x + alpha.re);
            if (1.0 + w == CScalar{0.0, 0.0})
                throw DomainError("softexp log argument is exactly zero");
            CScalar v = -detail::log1p_c(w) / alpha.re;
            if (!detail::finite(v)) throw RangeError("softexp overflowed");
            return v;
        }
    }
    CScalar a = alpha.value();
    CScalar v = x * detail::expm1_over(a * x) + a;
    if (!detail::finite(v)) throw RangeError("softexp overflowed");
    return v;
}

/// d f / d x on the real path: 1 / (1 - a (a + x)) for a < 0, e^{a x} for
/// a >= 0. Strictly positive on its domain.
inline double dsoftexp_dx(double alpha, double x) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha >= 0.0) {
        double v = std::exp(alpha * x);
        if (!std::isfinite(v)) throw RangeError("dsoftexp_dx overflowed");
        return v;
    }
    double u = 1.0 - alpha * (alpha + x);
    if (!(u > 0.0))
        throw DomainError("dsoftexp_dx: point is outside the log-branch domain");
    return 1.0 / u;
}

namespace detail {

// Series expansions of df/dalpha about alpha = 0. The two sides of the seam
// meet only to first order, so each side needs its own expansion:
//   a >= 0:  1 + x^2/2 + a x^3/3 + a^2 x^4/8
//   a <  0:  1 + x^2/2 + a (2x + 2x^3/3) + a^2 (3/2 + 3x^2 + 3x^4/4)
template <typename S>
inline S dalpha_series_pos(S alpha, S x) {
    S x2 = x * x;
    return 1.0 + x2 / 2.0 + alpha * x2 * x / 3.0 + alpha * alpha * x2 * x2 / 8.0;
}

template <typename S>
inline S dalpha_series_neg(S alpha, S x) {
    S x2 = x * x;
    return 1.0 + x2 / 2.0 + alpha * (2.0 * x + 2.0 * x2 * x / 3.0) +
           alpha * alpha * (1.5 + 3.0 * x2 + 0.75 * x2 * x2);
}

constexpr double kDalphaSeriesCutoff = 1e-4;

// The closed forms of df/dalpha lose ~alpha^2 of precision to cancellation,
// but only where both alpha and alpha*x are small; that is exactly where the
// series expansions converge.
inline bool use_dalpha_series(double alpha_mag, double x_mag) {
    return alpha_mag < kDalphaSeriesCutoff && alpha_mag * x_mag < 0.1;
}

} // namespace detail

/// d f / d alpha on the real path, with the 0/0 cancellation near alpha = 0
/// replaced by a series on each side of the seam.
inline double dsoftexp_dalpha(double alpha, double x) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha < 0.0) {
        double u = 1.0 - alpha * (alpha + x);
        if (!(u > 0.0))
            throw DomainError("dsoftexp_dalpha: point is outside the log-branch domain");
        if (detail::use_dalpha_series(-alpha, std::abs(x)))
            return detail::dalpha_series_neg(alpha, x);
        return (std::log(u) + (2.0 * alpha * alpha + alpha * x) / u) / (alpha * alpha);
    }
    if (detail::use_dalpha_series(alpha, std::abs(x)))
        return detail::dalpha_series_pos(alpha, x);
    double e = std::exp(alpha * x);
    double v = (alpha * alpha + (alpha * x - 1.0) * e + 1.0) / (alpha * alpha);
    if (!std::isfinite(v)) throw RangeError("dsoftexp_dalpha overflowed");
    return v;
}

namespace detail {

/// Holomorphic derivative of the unit activation with respect to its
/// (complex) pre-activation, on the branch selected by alpha.
inline CScalar dsoftexp_dx_c(Alpha alpha, CScalar p) {
    if (alpha.is_real()) {
        if (alpha.re == 0.0) return {1.0, 0.0};
        if (alpha.re < 0.0) {
            CScalar u = 1.0 - alpha.re * (p + alpha.re);
            return 1.0 / u;
        }
    }
    return std::exp(alpha.value() * p);
}

/// Holomorphic derivative of the unit activation with respect to alpha, on
/// the branch selected by the current alpha. For real negative alpha this is
/// the derivative of the log form along the real line (its continuation to
/// complex pre-activations); everywhere else it is the derivative of the
/// exponential form, which is analytic in alpha with a removable singularity
/// at 0.
inline CScalar dsoftexp_dalpha_c(Alpha alpha, CScalar p) {
    if (alpha.is_real() && alpha.re < 0.0) {
        double a = alpha.re;
        if (use_dalpha_series(-a, std::abs(p)))
            return dalpha_series_neg(CScalar{a, 0.0}, p);
        CScalar u = 1.0 - a * (p + a);
        return (std::log(u) + (2.0 * a * a + a * p) / u) / (a * a);
    }
    CScalar a = alpha.value();
    if (use_dalpha_series(std::abs(a), std::abs(p)))
        return dalpha_series_pos(a, p);
    CScalar e = std::exp(a * p);
    return (a * a + (a * p - 1.0) * e + 1.0) / (a * a);
}

} // namespace detail

/// Interpolation between linear and exponential: (e^{a x} - 1)/a + a, with
/// a = 0 giving x.
inline double g_linexp(double alpha, double x) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha == 0.0) return x;
    double v = std::expm1(alpha * x) / alpha + alpha;
    if (!std::isfinite(v)) throw RangeError("g_linexp overflowed");
    return v;
}

/// Interpolation between logarithmic and linear: log(1 + a (x - a))/a, the
/// exact inverse of g_linexp in x; a = 0 gives x.
inline double g_loglin(double alpha, double x) {
    detail::require_finite(alpha, "alpha");
    detail::require_finite(x, "x");
    if (alpha == 0.0) return x;
    double t = alpha * (x - alpha);
    if (!(t > -1.0))
        throw DomainError("g_loglin argument 1 + alpha*(x - alpha) <= 0");
    double v = std::log1p(t) / alpha;
    if (!std::isfinite(v)) throw RangeError("g_loglin overflowed");
    return v;
}

/// Continuous interpolation between addition (beta = 0) and multiplication
/// (beta = 1): f(beta, f(-beta, p) + f(-beta, q)). Accepts any real beta for
/// which the nested domains hold; propagates DomainError otherwise.
inline double addmul(double beta, double p, double q) {
    detail::require_finite(beta, "beta");
    return softexp(beta, softexp(-beta, p) + softexp(-beta, q));
}

} // namespace softexp
