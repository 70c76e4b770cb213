#ifndef PVSUSY_NUMERIC_HPP
#define PVSUSY_NUMERIC_HPP

// Scalar types. The library runs in double; every evaluator is a template
// over the real type so that ill-conditioned points can be re-evaluated in
// 113-bit precision.

#include <cmath>
#include <complex>
#include <limits>

#include <boost/multiprecision/float128.hpp>

namespace pvsusy {

using Complex = std::complex<double>;
using Quad = boost::multiprecision::float128;

template <class R>
using ComplexT = std::complex<R>;

template <class R>
R machine_epsilon() {
    return std::numeric_limits<R>::epsilon();
}

template <class R>
ComplexT<R> lift(Complex z) {
    return {R(z.real()), R(z.imag())};
}

template <class R>
Complex lower(const ComplexT<R>& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R>
double magnitude(const ComplexT<R>& z) {
    using std::abs;
    return static_cast<double>(abs(z));
}

inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace pvsusy

#endif  // PVSUSY_NUMERIC_HPP
