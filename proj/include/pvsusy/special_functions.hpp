#ifndef PVSUSY_SPECIAL_FUNCTIONS_HPP
#define PVSUSY_SPECIAL_FUNCTIONS_HPP

// Complex-valued elementary special functions: Kummer 1F1, log-gamma,
// Hermite/Laguerre polynomials and the modified Bessel function I_mu.
// All functions are pure; 1F1 and the polynomials are templates over the real type.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "pvsusy/error.hpp"
#include "pvsusy/numeric.hpp"

namespace pvsusy {

/// True when z is (numerically exactly) one of 0, -1, -2, ...
inline bool is_nonpositive_integer(Complex z, double tol = 0.0) noexcept {
    if (std::abs(z.imag()) > tol) return false;
    const double r = z.real();
    return r <= tol && std::abs(r - std::round(r)) <= tol;
}

template <class R>
bool is_nonpositive_integer(const ComplexT<R>& z) noexcept {
    return is_nonpositive_integer(lower(z));
}

namespace detail {

// Neumaier summation on each component.
template <class R>
class CompensatedSum {
public:
    void add(const ComplexT<R>& v) {
        add_component(re_, re_c_, v.real());
        add_component(im_, im_c_, v.imag());
    }
    ComplexT<R> value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_component(R& s, R& c, const R& v) {
        using std::abs;
        const R t = s + v;
        if (abs(s) >= abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }

    R re_{0}, re_c_{0}, im_{0}, im_c_{0};
};

inline constexpr int kSeriesTermCap = 500;

template <class R>
R series_tolerance() {
    const R eps = machine_epsilon<R>();
    return eps < R(1e-16) ? eps : R(1e-16);
}

// Direct Taylor series of 1F1; assumes b is not a forbidden pole.
template <class R>
ComplexT<R> kummer_series(const ComplexT<R>& a, const ComplexT<R>& b, const ComplexT<R>& x) {
    using std::abs;
    using C = ComplexT<R>;
    CompensatedSum<R> sum;
    sum.add(C(R(1)));
    C term(R(1));
    R largest(1);
    const R tol = series_tolerance<R>();
    const R tiny_floor = tol * tol;
    int small_run = 0;
    for (int k = 0; k < kSeriesTermCap; ++k) {
        const R kd(k);
        const C ratio = (a + kd) / (b + kd) * x / (kd + R(1));
        term *= ratio;
        if (term == C{}) return sum.value();  // terminating series
        sum.add(term);
        const R mag = abs(term);
        if (mag > largest) largest = mag;
        const R scale = abs(sum.value());
        const bool tiny = mag <= tol * scale || mag <= tiny_floor * largest;
        // A term is only trusted as a tail bound once the terms are shrinking.
        if (tiny && abs(ratio) < R(1)) {
            if (++small_run >= 2) return sum.value();
        } else {
            small_run = 0;
        }
    }
    throw Error(ErrorKind::NoConvergence, "1F1 series did not converge within the term cap");
}

}  // namespace detail

/// Confluent hypergeometric function 1F1(a; b; x).
///
/// Uses the Kummer transformation 1F1(a,b;x) = e^x 1F1(b-a,b;-x) when
/// Re(x) < 0 so that the series never alternates in sign for real
/// arguments. Terminating (polynomial) cases are summed exactly.
template <class R>
ComplexT<R> kummer_1f1(const ComplexT<R>& a, const ComplexT<R>& b, const ComplexT<R>& x) {
    using std::exp;
    const bool a_polynomial = is_nonpositive_integer(a);
    if (is_nonpositive_integer(b)) {
        // (a)_k / (b)_k stays finite only if the series stops before (b)_k hits zero.
        if (!(a_polynomial && a.real() >= b.real())) {
            throw Error(ErrorKind::ParameterPole, "1F1 lower parameter is a non-positive integer");
        }
    }
    if (x == ComplexT<R>{}) return ComplexT<R>(R(1));
    if (a_polynomial || x.real() >= R(0)) return detail::kummer_series<R>(a, b, x);
    return exp(x) * detail::kummer_series<R>(b - a, b, -x);
}

inline Complex kummer_1f1(Complex a, Complex b, Complex x) { return kummer_1f1<double>(a, b, x); }

/// d/dx 1F1(a; b; x) = (a/b) 1F1(a+1; b+1; x).
template <class R>
ComplexT<R> kummer_1f1_dx(const ComplexT<R>& a, const ComplexT<R>& b, const ComplexT<R>& x) {
    using C = ComplexT<R>;
    if (is_nonpositive_integer(b)) {
        // Polynomial case: differentiate the terminating series directly.
        if (!(is_nonpositive_integer(a) && a.real() >= b.real())) {
            throw Error(ErrorKind::ParameterPole, "1F1 lower parameter is a non-positive integer");
        }
        detail::CompensatedSum<R> sum;
        C coeff(R(1));
        C power(R(1));
        const int n = static_cast<int>(std::lround(-static_cast<double>(a.real())));
        for (int k = 0; k < n; ++k) {
            const R kd(k);
            coeff *= (a + kd) / (b + kd) / (kd + R(1));
            sum.add(coeff * (kd + R(1)) * power);
            power *= x;
        }
        return sum.value();
    }
    if (a == C{}) return C{};
    return a / b * kummer_1f1<R>(a + R(1), b + R(1), x);
}

inline Complex kummer_1f1_dx(Complex a, Complex b, Complex x) { return kummer_1f1_dx<double>(a, b, x); }

/// Principal ln Gamma(z) by the Lanczos approximation (g = 7, n = 9), with
/// upward recurrence for Re(z) < 1/2.
inline Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z)) {
        throw Error(ErrorKind::GammaPole, "Gamma has a pole at a non-positive integer");
    }
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        Complex logs = 0.0;
        while (z.real() < 0.5) {
            logs += std::log(z);
            z += 1.0;
        }
        return log_gamma(z) - logs;
    }
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;
    const Complex zm = z - 1.0;
    Complex series = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) series += c[i] / (zm + static_cast<double>(i));
    const Complex t = zm + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm + 0.5) * std::log(t) - t + std::log(series);
}

inline Complex gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0) return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

/// 1/Gamma(z), which is entire: zero at the poles of Gamma.
inline Complex rgamma(Complex z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return 1.0 / gamma(z);
}

enum class PolyKind { Hermite, Laguerre };

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
template <class R>
ComplexT<R> hermite(int n, const ComplexT<R>& x) {
    if (n < 0) throw Error(ErrorKind::Domain, "polynomial degree must be non-negative");
    ComplexT<R> prev(R(1));
    if (n == 0) return prev;
    ComplexT<R> cur = R(2) * x;
    for (int k = 1; k < n; ++k) {
        const ComplexT<R> next = R(2) * x * cur - R(2 * k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline Complex hermite(int n, Complex x) { return hermite<double>(n, x); }

/// Generalised Laguerre polynomial L_n^alpha(x) by three-term recurrence.
template <class R>
ComplexT<R> laguerre(int n, const R& alpha, const ComplexT<R>& x) {
    if (n < 0) throw Error(ErrorKind::Domain, "polynomial degree must be non-negative");
    ComplexT<R> prev(R(1));
    if (n == 0) return prev;
    ComplexT<R> cur = R(1) + alpha - x;
    for (int k = 1; k < n; ++k) {
        const R kd(k);
        const ComplexT<R> next = ((R(2) * kd + R(1) + alpha - x) * cur - (kd + alpha) * prev) / (kd + R(1));
        prev = cur;
        cur = next;
    }
    return cur;
}

inline Complex laguerre(int n, double alpha, Complex x) { return laguerre<double>(n, alpha, x); }

inline Complex classical_poly(PolyKind kind, int n, double alpha, Complex x) {
    return kind == PolyKind::Hermite ? hermite(n, x) : laguerre(n, alpha, x);
}

/// Modified Bessel function of the first kind I_mu(x) from its ascending
/// series; the leading coefficient is normalised through log_gamma.
inline Complex bessel_i(double mu, Complex x) {
    if (std::abs(x) > 60.0) throw Error(ErrorKind::Domain, "bessel_i series regime is |x| <= 60");
    if (mu < 0.0 && mu == std::round(mu)) mu = -mu;  // I_{-n} = I_n
    if (x == Complex{0.0, 0.0}) {
        if (mu == 0.0) return 1.0;
        if (mu > 0.0) return 0.0;
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    const Complex half = 0.5 * x;
    const Complex quarter_sq = half * half;
    Complex term = std::exp(mu * std::log(half) - log_gamma(mu + 1.0));
    detail::CompensatedSum<double> sum;
    sum.add(term);
    double largest = std::abs(term);
    for (int k = 0; k < detail::kSeriesTermCap; ++k) {
        const double kd = static_cast<double>(k);
        term *= quarter_sq / ((kd + 1.0) * (mu + kd + 1.0));
        sum.add(term);
        const double mag = std::abs(term);
        largest = std::max(largest, mag);
        if (kd + 1.0 > std::abs(half) &&
            (mag <= 1e-16 * std::abs(sum.value()) || mag <= 1e-20 * largest)) {
            return sum.value();
        }
    }
    throw Error(ErrorKind::NoConvergence, "I_mu series did not converge within the term cap");
}

/// Lower incomplete gamma gamma(s, y) = y^s/s 1F1(s; s+1; -y), principal power.
inline Complex lower_incomplete_gamma(Complex s, Complex y) {
    if (y == Complex{0.0, 0.0}) return 0.0;
    return std::pow(y, s) / s * kummer_1f1(s, s + 1.0, -y);
}

}  // namespace pvsusy

#endif  // PVSUSY_SPECIAL_FUNCTIONS_HPP
