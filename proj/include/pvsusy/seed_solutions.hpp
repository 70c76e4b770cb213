#ifndef PVSUSY_SEED_SOLUTIONS_HPP
#define PVSUSY_SEED_SOLUTIONS_HPP

// Solutions of the radial-oscillator Schrodinger equation
//   -u''/2 + (x^2/8 + l(l+1)/(2x^2)) u = eps u
// represented by their Cauchy data (u, u') at any x > 0. Higher derivatives
// follow from the ODE itself, so a solution is fully described by (l, eps)
// and a callable returning (u, u').

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/jet.hpp"
#include "pvsusy/numeric.hpp"
#include "pvsusy/special_functions.hpp"

namespace pvsusy {

template <class R>
using BasicCauchyData = std::pair<ComplexT<R>, ComplexT<R>>;
using CauchyData = BasicCauchyData<double>;

inline double ground_energy(double l) { return l / 2.0 + 0.75; }

/// Radial oscillator potential V0(x) = x^2/8 + l(l+1)/(2x^2).
template <class R>
R oscillator_potential(double l, const R& x) {
    return x * x / R(8) + R(l * (l + 1.0)) / (R(2) * x * x);
}

/// Derivatives of q(x) = 2(V0(x) - eps) = x^2/4 + L/x^2 - 2 eps up to the given order.
template <class R>
std::vector<ComplexT<R>> closure_coefficient_derivs(double l, Complex eps, const R& x, int order) {
    using C = ComplexT<R>;
    const R L(l * (l + 1.0));
    std::vector<C> q(static_cast<std::size_t>(order) + 1, C{});
    // d^j x^{-2} = (-1)^j (j+1)! x^{-2-j}
    R fact(1);
    R inv_pow = R(1) / (x * x);
    for (int j = 0; j <= order; ++j) {
        fact *= R(j + 1);
        const R sign = (j % 2 == 0) ? R(1) : R(-1);
        q[static_cast<std::size_t>(j)] = C(L * sign * fact * inv_pow);
        inv_pow /= x;
    }
    q[0] += C(x * x / R(4)) - R(2) * lift<R>(eps);
    if (order >= 1) q[1] += C(x / R(2));
    if (order >= 2) q[2] += C(R(1) / R(2));
    return q;
}

/// Derivative jet of a solution from its Cauchy data, via u'' = q u differentiated repeatedly.
template <class R>
BasicJet<R> closure_jet(double l, Complex eps, const R& x, const ComplexT<R>& u, const ComplexT<R>& du, int order) {
    using C = ComplexT<R>;
    std::vector<C> d(static_cast<std::size_t>(std::max(order, 1)) + 1, C{});
    d[0] = u;
    d[1] = du;
    if (order >= 2) {
        const auto q = closure_coefficient_derivs<R>(l, eps, x, order - 2);
        for (int n = 0; n + 2 <= order; ++n) {
            C s{};
            for (int j = 0; j <= n; ++j) {
                s += R(binomial(n, j)) * q[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(n - j)];
            }
            d[static_cast<std::size_t>(n + 2)] = s;
        }
    }
    d.resize(static_cast<std::size_t>(order) + 1);
    return BasicJet<R>(std::move(d));
}

/// An immutable solution of the radial-oscillator equation at energy eps.
template <class R>
class BasicSolution {
public:
    using C = ComplexT<R>;
    using Cauchy = std::function<BasicCauchyData<R>(const R&)>;

    BasicSolution(double l, Complex energy, Cauchy cauchy, bool zero = false)
        : l_(l), energy_(energy), cauchy_(std::make_shared<Cauchy>(std::move(cauchy))), zero_(zero) {}

    double l() const noexcept { return l_; }
    Complex energy() const noexcept { return energy_; }
    /// True when the solution was detected to vanish identically.
    bool is_zero() const noexcept { return zero_; }

    BasicCauchyData<R> cauchy(const R& x) const {
        if (!(x > R(0))) throw Error(ErrorKind::Domain, "solutions are evaluated on x > 0 only");
        return (*cauchy_)(x);
    }
    C value(const R& x) const { return cauchy(x).first; }

    BasicJet<R> jet(const R& x, int order) const {
        const auto [u, du] = cauchy(x);
        return closure_jet<R>(l_, energy_, x, u, du, order);
    }

private:
    double l_;
    Complex energy_;
    std::shared_ptr<const Cauchy> cauchy_;
    bool zero_;
};

using SchrodingerSolution = BasicSolution<double>;

/// Relative Schrodinger residual at x with u'' taken from a 6th-order central
/// difference of u' (independent of the ODE closure). The step scales with the
/// local length min(x, 1/x); the best of a short step sweep is reported.
inline double schrodinger_residual(const SchrodingerSolution& s, double x, double rel_step = 1e-2) {
    const auto d = [&](double t) { return s.cauchy(t).second; };
    const Complex u = s.value(x);
    const double len = std::min(x, 1.0 / x);
    double best = std::numeric_limits<double>::infinity();
    for (double f : {2.0, 1.0, 0.5, 0.25}) {
        const double h = f * rel_step * len;
        const Complex d2 = (45.0 * (d(x + h) - d(x - h)) - 9.0 * (d(x + 2 * h) - d(x - 2 * h)) +
                            (d(x + 3 * h) - d(x - 3 * h))) /
                           (60.0 * h);
        const Complex res = -0.5 * d2 + (oscillator_potential(s.l(), x) - s.energy()) * u;
        best = std::min(best, std::abs(res) / std::max({std::abs(u), std::abs(d2), std::numeric_limits<double>::min()}));
    }
    return best;
}

/// a*s1 + b*s2 for two solutions sharing (l, eps).
template <class R>
BasicSolution<R> linear_combination(Complex a, const BasicSolution<R>& s1, Complex b, const BasicSolution<R>& s2) {
    if (s1.l() != s2.l() || std::abs(s1.energy() - s2.energy()) > 1e-14 * (1.0 + std::abs(s1.energy()))) {
        throw Error(ErrorKind::TypeMismatch, "linear combination of solutions with different (l, eps)");
    }
    const auto ca = lift<R>(a);
    const auto cb = lift<R>(b);
    return BasicSolution<R>(s1.l(), s1.energy(), [=](const R& x) {
        const auto [u1, d1] = s1.cauchy(x);
        const auto [u2, d2] = s2.cauchy(x);
        return BasicCauchyData<R>{ca * u1 + cb * u2, ca * d1 + cb * d2};
    });
}

enum class Mode { RealPhysical, ComplexOverReal, FullyComplex };

struct Mixture {
    Complex mu1{1.0};
    Complex mu2{0.0};
};

/// The weight of the second branch in the Gamma-normalised form; infinite selects branch 2 alone.
struct Nu {
    double value = 0.0;
    bool infinite = false;
    static Nu inf() { return {0.0, true}; }
};

struct SeedSpec {
    double l = 0.0;
    Complex eps1{0.0};
    Mixture mixture{};
    int k = 1;
    Mode mode = Mode::RealPhysical;
    std::string order = "1234";
    std::optional<Nu> nu{};  // kept for hierarchy detection and the nodelessness check
};

inline bool is_half_odd(double l) {
    const double t = l - 0.5;
    return std::abs(t - std::round(t)) < 1e-12;
}

/// Mixture coefficients (1, nu Gamma((3+2l-4eps)/4)/Gamma((3+2l)/2)); nu = inf gives (0, 1).
inline Mixture nu_to_mixture(Nu nu, double l, Complex eps) {
    if (nu.infinite) return {0.0, 1.0};
    if (nu.value == 0.0) return {1.0, 0.0};
    const Complex ga = (3.0 + 2.0 * l - 4.0 * eps) / 4.0;
    const Complex gb = (3.0 + 2.0 * l) / 2.0;
    if (is_nonpositive_integer(ga) || is_nonpositive_integer(gb)) {
        throw Error(ErrorKind::GammaPole, "nu weight has a gamma pole");
    }
    return {1.0, nu.value * std::exp(log_gamma(ga) - log_gamma(gb))};
}

/// Smallest nu giving a nodeless seed: -Gamma((1-2l)/2)/Gamma((1-2l-4eps)/4).
inline double nu_lower_bound(double l, double eps) {
    const Complex num = (1.0 - 2.0 * l) / 2.0;
    if (is_nonpositive_integer(num)) throw Error(ErrorKind::GammaPole, "Gamma((1-2l)/2) has a pole");
    return (-gamma(num) * rgamma((1.0 - 2.0 * l - 4.0 * eps) / 4.0)).real();
}

inline Nu mixture_to_nu(const Mixture& m, double l, Complex eps) {
    if (m.mu1 == Complex{0.0, 0.0}) return Nu::inf();
    if (m.mu2 == Complex{0.0, 0.0}) return {0.0, false};
    const Complex ga = (3.0 + 2.0 * l - 4.0 * eps) / 4.0;
    const Complex gb = (3.0 + 2.0 * l) / 2.0;
    return {(m.mu2 / m.mu1 * std::exp(log_gamma(gb) - log_gamma(ga))).real(), false};
}

/// Checks the SeedSpec invariants, including the nodelessness condition in real-physical mode.
inline void validate(const SeedSpec& s) {
    if (s.k < 1) throw Error(ErrorKind::InvalidSpec, "SUSY order k must be at least 1");
    if (!(s.l >= -0.5)) throw Error(ErrorKind::InvalidSpec, "l must satisfy l >= -1/2");
    if (s.mixture.mu1 == Complex{0.0, 0.0} && s.mixture.mu2 == Complex{0.0, 0.0}) {
        throw Error(ErrorKind::InvalidSpec, "mixture coefficients are both zero");
    }
    if (s.mode != Mode::RealPhysical) return;
    if (s.eps1.imag() != 0.0 || s.mixture.mu1.imag() != 0.0 || s.mixture.mu2.imag() != 0.0) {
        throw Error(ErrorKind::InvalidSpec, "real-physical mode needs real energy and mixture");
    }
    if (!(s.eps1.real() < ground_energy(s.l))) {
        throw Error(ErrorKind::InvalidSpec, "real-physical mode needs eps1 < E0");
    }
    const Nu nu = s.nu ? *s.nu : mixture_to_nu(s.mixture, s.l, s.eps1);
    if (!nu.infinite && !is_half_odd(s.l) && nu.value < nu_lower_bound(s.l, s.eps1.real())) {
        throw Error(ErrorKind::InvalidSpec, "nu lies below the nodelessness bound");
    }
}

namespace detail {

// x^{-l} e^{-x^2/4} 1F1((1-2l-4eps)/4, (1-2l)/2; x^2/2) with its derivative.
template <class R>
BasicCauchyData<R> branch1(double l, Complex eps, const R& x) {
    using std::exp;
    using std::pow;
    using C = ComplexT<R>;
    const C a = lift<R>((1.0 - 2.0 * l - 4.0 * eps) / 4.0);
    const C b(R((1.0 - 2.0 * l) / 2.0));
    const C y(x * x / R(2));
    const R pref = pow(x, R(-l)) * exp(-x * x / R(4));
    const C f = kummer_1f1<R>(a, b, y);
    const C df = kummer_1f1_dx<R>(a, b, y);
    return {pref * f, pref * ((R(-l) / x - x / R(2)) * f + x * df)};
}

// (x^2/2)^{l+1/2} x^{-l} e^{-x^2/4} 1F1((3+2l-4eps)/4, (3+2l)/2; x^2/2) with its derivative.
template <class R>
BasicCauchyData<R> branch2(double l, Complex eps, const R& x) {
    using std::exp;
    using std::pow;
    using C = ComplexT<R>;
    const C a = lift<R>((3.0 + 2.0 * l - 4.0 * eps) / 4.0);
    const C b(R((3.0 + 2.0 * l) / 2.0));
    const C y(x * x / R(2));
    const R pref = pow(R(2), R(-l - 0.5)) * pow(x, R(l + 1.0)) * exp(-x * x / R(4));
    const C f = kummer_1f1<R>(a, b, y);
    const C df = kummer_1f1_dx<R>(a, b, y);
    return {pref * f, pref * ((R(l + 1.0) / x - x / R(2)) * f + x * df)};
}

inline constexpr std::array<double, 4> kZeroProbe = {0.7, 1.3, 2.1, 3.4};

// Decide whether a transformed solution vanishes identically by probing a few points.
template <class R>
bool probe_zero(const BasicSolution<R>& in, const typename BasicSolution<R>::Cauchy& out) {
    for (double xd : kZeroProbe) {
        const R x(xd);
        const auto [u, du] = in.cauchy(x);
        const auto [v, dv] = out(x);
        const double scale = (magnitude<R>(u) + magnitude<R>(du)) * (1.0 + xd * xd + std::abs(in.energy()));
        if (magnitude<R>(v) + magnitude<R>(dv) > 1e-12 * scale) return false;
    }
    return true;
}

}  // namespace detail

/// General solution mu1*branch1 + mu2*branch2 at energy eps1.
template <class R = double>
BasicSolution<R> make_seed(const SeedSpec& spec) {
    using C = ComplexT<R>;
    const double l = spec.l;
    const Complex eps = spec.eps1;
    const C m1 = lift<R>(spec.mixture.mu1);
    const C m2 = lift<R>(spec.mixture.mu2);
    const bool use1 = spec.mixture.mu1 != Complex{0.0, 0.0};
    const bool use2 = spec.mixture.mu2 != Complex{0.0, 0.0};
    if (use1 && use2 && is_half_odd(l)) {
        throw Error(ErrorKind::BranchDegeneracy, "branches coincide for half-odd l");
    }
    if (!use1 && !use2) throw Error(ErrorKind::InvalidSpec, "mixture coefficients are both zero");
    return BasicSolution<R>(l, eps, [=](const R& x) {
        BasicCauchyData<R> r{C{}, C{}};
        if (use1) {
            const auto [u, du] = detail::branch1<R>(l, eps, x);
            r.first += m1 * u;
            r.second += m1 * du;
        }
        if (use2) {
            const auto [u, du] = detail::branch2<R>(l, eps, x);
            r.first += m2 * u;
            r.second += m2 * du;
        }
        return r;
    });
}

/// b^- u: energy eps -> eps - 1.
template <class R>
BasicSolution<R> apply_b_minus(const BasicSolution<R>& s) {
    using C = ComplexT<R>;
    const R L(s.l() * (s.l() + 1.0));
    const C two_eps = R(2) * lift<R>(s.energy());
    const R half(0.5);
    typename BasicSolution<R>::Cauchy f = [=](const R& x) {
        const auto [u, du] = s.cauchy(x);
        const C q = C(x * x / R(4) + L / (x * x)) - two_eps;
        const C v = half * (x * du + (C(x * x / R(2) + half) - two_eps) * u);
        const C dv = half * ((x * q + x) * u + (C(x * x / R(2) + R(1.5)) - two_eps) * du);
        return BasicCauchyData<R>{v, dv};
    };
    const bool zero = s.is_zero() || detail::probe_zero<R>(s, f);
    return BasicSolution<R>(s.l(), s.energy() - 1.0, std::move(f), zero);
}

/// b^+ u: energy eps -> eps + 1.
template <class R>
BasicSolution<R> apply_b_plus(const BasicSolution<R>& s) {
    using C = ComplexT<R>;
    const R L(s.l() * (s.l() + 1.0));
    const C two_eps = R(2) * lift<R>(s.energy());
    const R half(0.5);
    typename BasicSolution<R>::Cauchy f = [=](const R& x) {
        const auto [u, du] = s.cauchy(x);
        const C q = C(x * x / R(4) + L / (x * x)) - two_eps;
        const C v = half * (-x * du + (C(x * x / R(2) - half) - two_eps) * u);
        const C dv = half * ((x - x * q) * u + (C(x * x / R(2) - R(1.5)) - two_eps) * du);
        return BasicCauchyData<R>{v, dv};
    };
    const bool zero = s.is_zero() || detail::probe_zero<R>(s, f);
    return BasicSolution<R>(s.l(), s.energy() + 1.0, std::move(f), zero);
}

/// [u_1, ..., u_k] with u_i = (b^-)^{i-1} u_1 and energies eps1 - (i-1).
template <class R = double>
std::vector<BasicSolution<R>> seed_chain(const SeedSpec& spec) {
    validate(spec);
    std::vector<BasicSolution<R>> chain;
    chain.reserve(static_cast<std::size_t>(spec.k));
    chain.push_back(make_seed<R>(spec));
    for (int i = 1; i < spec.k; ++i) {
        chain.push_back(apply_b_minus(chain.back()));
        if (chain.back().is_zero()) {
            throw Error(ErrorKind::ChainAnnihilation, "b^- annihilates seed " + std::to_string(i) + " of the chain");
        }
    }
    return chain;
}

/// Closed-form formal eigenfunctions, indexed by the energy ladder they start:
///   1: x^{l+1} e^{-x^2/4} L_n^{l+1/2}(x^2/2),   E0 + n
///   2: x^{-l}  e^{-x^2/4} L_n^{-l-1/2}(x^2/2),  -E0 + 1 + n
///   3: x^{-l}  e^{ x^2/4} L_n^{-l-1/2}(-x^2/2), E0 - 1 - n
///   4: x^{l+1} e^{ x^2/4} L_n^{l+1/2}(-x^2/2),  -E0 - n
template <class R = double>
BasicSolution<R> physical_eigenfunction(int family, int n, double l) {
    using C = ComplexT<R>;
    if (n < 0) throw Error(ErrorKind::Domain, "eigenfunction index must be non-negative");
    const double e0 = ground_energy(l);
    double p = 0.0, s = 0.0, sigma = 0.0, alpha = 0.0, energy = 0.0;
    switch (family) {
        case 1: p = l + 1.0; s = -1.0; sigma = 1.0; alpha = l + 0.5; energy = e0 + n; break;
        case 2: p = -l; s = -1.0; sigma = 1.0; alpha = -l - 0.5; energy = -e0 + 1.0 + n; break;
        case 3: p = -l; s = 1.0; sigma = -1.0; alpha = -l - 0.5; energy = e0 - 1.0 - n; break;
        case 4: p = l + 1.0; s = 1.0; sigma = -1.0; alpha = l + 0.5; energy = -e0 - n; break;
        default: throw Error(ErrorKind::Domain, "eigenfunction family must be 1..4");
    }
    return BasicSolution<R>(l, energy, [=](const R& x) {
        using std::exp;
        using std::pow;
        const C y(R(sigma) * x * x / R(2));
        const R pref = pow(x, R(p)) * exp(R(s) * x * x / R(4));
        const C lag = laguerre<R>(n, R(alpha), y);
        const C dlag = n == 0 ? C{} : -laguerre<R>(n - 1, R(alpha + 1.0), y);
        return BasicCauchyData<R>{pref * lag, pref * ((R(p) / x + R(s) * x / R(2)) * lag + R(sigma) * x * dlag)};
    });
}

namespace detail {

// One Taylor step of u'' = q u from x to x + h (coefficient form).
template <class R>
BasicCauchyData<R> taylor_step(double l, Complex eps, const R& x, const ComplexT<R>& u, const ComplexT<R>& du, const R& h) {
    using C = ComplexT<R>;
    const int N = std::numeric_limits<R>::digits > 60 ? 80 : 40;
    const R L(l * (l + 1.0));
    std::vector<C> q(static_cast<std::size_t>(N) + 1);
    R inv_pow = R(1) / (x * x);
    for (int j = 0; j <= N; ++j) {
        const R sign = (j % 2 == 0) ? R(1) : R(-1);
        q[static_cast<std::size_t>(j)] = C(L * sign * R(j + 1) * inv_pow);
        inv_pow /= x;
    }
    q[0] += C(x * x / R(4)) - R(2) * lift<R>(eps);
    q[1] += C(x / R(2));
    q[2] += C(R(1) / R(4));
    std::vector<C> c(static_cast<std::size_t>(N) + 1);
    c[0] = u;
    c[1] = du;
    for (int n = 0; n + 2 <= N; ++n) {
        C s{};
        for (int j = 0; j <= n; ++j) s += q[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(n - j)];
        c[static_cast<std::size_t>(n + 2)] = s / R((n + 2.0) * (n + 1.0));
    }
    C v{}, dv{};
    for (int n = N; n >= 0; --n) {
        v = v * h + c[static_cast<std::size_t>(n)];
        if (n >= 1) dv = dv * h + R(n) * c[static_cast<std::size_t>(n)];
    }
    return {v, dv};
}

}  // namespace detail

/// Solution fixed by Cauchy data (u0, du0) at x0, evaluated by Taylor-series stepping.
template <class R = double>
BasicSolution<R> integrated_solution(double l, Complex eps, double x0, Complex u0, Complex du0) {
    return BasicSolution<R>(l, eps, [=](const R& target) {
        using std::abs;
        R x(x0);
        ComplexT<R> u = lift<R>(u0), du = lift<R>(du0);
        while (x != target) {
            const R limit = R(0.3) * x < R(0.25) ? R(0.3) * x : R(0.25);
            R h = target - x;
            if (abs(h) > limit) h = h > R(0) ? limit : R(-limit);
            const auto r = detail::taylor_step<R>(l, eps, x, u, du, h);
            u = r.first;
            du = r.second;
            x = abs(target - (x + h)) < machine_epsilon<R>() * target ? target : R(x + h);
        }
        return BasicCauchyData<R>{u, du};
    });
}

}  // namespace pvsusy

#endif  // PVSUSY_SEED_SOLUTIONS_HPP
