#ifndef PVSUSY_PAINLEVE_HPP
#define PVSUSY_PAINLEVE_HPP

// Painleve V endpoint: g and w from an extremal quartet, the (a, b, c, d)
// parameters, the six inequivalent orderings and the ODE residual.
//
//   w'' = (1/(2w) + 1/(w-1)) w'^2 - w'/z + (w-1)^2/z^2 (a w + b/w) + c w/z + d w(w+1)/(w-1)

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/jet.hpp"
#include "pvsusy/seed_solutions.hpp"
#include "pvsusy/susy_engine.hpp"

namespace pvsusy {

template <class T>
struct BasicPVParams {
    T a{}, b{}, c{}, d{};
    std::array<T, 4> alphas{};
};

using PVParams = BasicPVParams<Complex>;

/// alpha_1 = e1-e2, alpha_2 = e2-e3, alpha_3 = e3-e4, alpha_4 = e4-e1+1;
/// a = alpha_1^2/2, b = -alpha_3^2/2, c = (alpha_2-alpha_4)/2, d = -1/8.
template <class T>
BasicPVParams<T> pv_params_from_energies(const std::array<T, 4>& e) {
    BasicPVParams<T> p;
    p.alphas = {e[0] - e[1], e[1] - e[2], e[2] - e[3], e[3] - e[0] + T(1)};
    p.a = p.alphas[0] * p.alphas[0] / T(2);
    p.b = -(p.alphas[2] * p.alphas[2]) / T(2);
    p.c = (p.alphas[1] - p.alphas[3]) / T(2);
    p.d = T(-1) / T(8);
    return p;
}

inline const std::array<std::string, 6>& canonical_labels() {
    static const std::array<std::string, 6> labels = {"1234", "1324", "1423", "2314", "2413", "3412"};
    return labels;
}

/// Maps any permutation of "1234" to its representative under the 1<->2, 3<->4 slot exchanges.
inline std::string normalize_label(const std::string& label) {
    std::string s = label;
    std::string sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (s.size() != 4 || sorted != "1234") throw Error(ErrorKind::InvalidLabel, "'" + label + "' is not a permutation of 1234");
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    if (s[2] > s[3]) std::swap(s[2], s[3]);
    return s;
}

/// Energies in slot order for a label over canonical energies: slot i holds state label[i].
template <class T>
std::array<T, 4> permute_energies(const std::array<T, 4>& canonical, const std::string& label) {
    const std::string n = normalize_label(label);
    std::array<T, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = canonical[static_cast<std::size_t>(n[i] - '1')];
    return out;
}

/// Closed-form parameters of a k-th order partner for each canonical ordering.
template <class T>
BasicPVParams<T> pv_params_closed_form(T l, T eps1, T k, const std::string& label) {
    const std::string n = normalize_label(label);
    const auto sq = [](T v) { return v * v; };
    T a32{}, b32{}, c4{};
    if (n == "1234") {
        a32 = sq(T(2) * l + T(4) * eps1 + T(3));
        b32 = -sq(-T(2) * l + T(4) * eps1 - T(4) * k + T(1));
        c4 = -T(2) * l + T(2) * k - T(3);
    } else if (n == "1324") {
        a32 = T(16) * k * k;
        b32 = -T(4) * sq(T(2) * l + T(1));
        c4 = T(4) * eps1 - T(2) * k;
    } else if (n == "1423") {
        a32 = sq(-T(2) * l + T(4) * eps1 + T(1));
        b32 = -sq(T(2) * l + T(4) * eps1 - T(4) * k + T(3));
        c4 = T(2) * l + T(2) * k - T(1);
    } else if (n == "2314") {
        a32 = sq(T(2) * l + T(4) * eps1 - T(4) * k + T(3));
        b32 = -sq(T(2) * l - T(4) * eps1 - T(1));
        c4 = -T(2) * l - T(2) * k - T(3);
    } else if (n == "2413") {
        a32 = T(4) * sq(T(2) * l + T(1));
        b32 = -T(16) * k * k;
        c4 = -T(4) * eps1 + T(2) * k - T(4);
    } else {
        a32 = sq(T(2) * l - T(4) * eps1 + T(4) * k - T(1));
        b32 = -sq(T(2) * l + T(4) * eps1 + T(3));
        c4 = T(2) * l - T(2) * k - T(1);
    }
    BasicPVParams<T> p;
    p.a = a32 / T(32);
    p.b = b32 / T(32);
    p.c = c4 / T(4);
    p.d = T(-1) / T(8);
    // alphas follow from the energies, recorded for completeness
    const std::array<T, 4> e = {eps1 + T(1), -(l / T(2) + T(3) / T(4)) + T(1), eps1 - k + T(1), l / T(2) + T(3) / T(4)};
    p.alphas = pv_params_from_energies(permute_energies(e, n)).alphas;
    return p;
}

template <class R>
PVParams pv_params(const BasicExtremalQuartet<R>& q) { return pv_params_from_energies(q.energies()); }

/// Reordered quartet: slot i receives the state currently labelled label[i].
template <class R>
BasicExtremalQuartet<R> permute_quartet(const BasicExtremalQuartet<R>& q, const std::string& label) {
    const std::string n = normalize_label(label);
    BasicExtremalQuartet<R> out = q;
    for (std::size_t i = 0; i < 4; ++i) {
        const int want = n[i] - '0';
        const auto it = std::find_if(q.states.begin(), q.states.end(), [&](const auto& s) { return s.id == want; });
        if (it == q.states.end()) throw Error(ErrorKind::InvalidLabel, "quartet lacks state " + std::to_string(want));
        out.states[i] = *it;
    }
    out.label = n;
    return out;
}

/// (g, g', g'') with g = -x - (ln W(psi_3, psi_4))'.
template <class R>
BasicJet<R> g_from_quartet(const BasicExtremalQuartet<R>& q, const R& x) {
    const auto wv = wronskian_of<R>({q.states[2].fn, q.states[3].fn}, x, 3);
    if (wv.singular) throw Error(ErrorKind::SingularEvaluation, "W(psi_3, psi_4) vanishes");
    return -BasicJet<R>::variable(x, 2) - log_derivative(wv.w);
}

/// Same g through h = 2(e3 - e4) psi_3 psi_4 / W(psi_3, psi_4).
template <class R>
BasicJet<R> g_energy_route(const BasicExtremalQuartet<R>& q, const R& x) {
    const auto wv = wronskian_of<R>({q.states[2].fn, q.states[3].fn}, x, 2);
    if (wv.singular) throw Error(ErrorKind::SingularEvaluation, "W(psi_3, psi_4) vanishes");
    const BasicJet<R> p3 = q.states[2].fn(x, 2);
    const BasicJet<R> p4 = q.states[3].fn(x, 2);
    const ComplexT<R> de = lift<R>(q.states[2].energy - q.states[3].energy);
    return -BasicJet<R>::variable(x, 2) - (R(2) * de) * (p3 * p4) / wv.w;
}

template <class R>
ComplexT<R> pv_rhs(const ComplexT<R>& w, const ComplexT<R>& dw, const R& z, const BasicPVParams<ComplexT<R>>& p) {
    const R one(1);
    return (one / (R(2) * w) + one / (w - one)) * dw * dw - dw / z +
           (w - one) * (w - one) / (z * z) * (p.a * w + p.b / w) + p.c * w / z +
           p.d * w * (w + one) / (w - one);
}

inline Complex pv_rhs(Complex w, Complex dw, double z, const PVParams& p) { return pv_rhs<double>(w, dw, z, p); }

inline constexpr double kSingularLocus = 1e-10;

/// |w'' - RHS| / max(|w''|, |RHS|, 1).
template <class R>
double pv_residual(const ComplexT<R>& w, const ComplexT<R>& dw, const ComplexT<R>& d2w, const R& z,
                   const BasicPVParams<ComplexT<R>>& p) {
    if (!(z > R(0))) throw Error(ErrorKind::Domain, "z must be positive");
    if (magnitude<R>(w) < kSingularLocus || magnitude<R>(w - R(1)) < kSingularLocus) {
        throw Error(ErrorKind::EquationSingularity, "w sits on the singular locus {0, 1}");
    }
    const ComplexT<R> rhs = pv_rhs<R>(w, dw, z, p);
    return magnitude<R>(d2w - rhs) / std::max({magnitude<R>(d2w), magnitude<R>(rhs), 1.0});
}

inline double pv_residual(Complex w, Complex dw, Complex d2w, double z, const PVParams& p) {
    return pv_residual<double>(w, dw, d2w, z, p);
}

template <class R>
BasicPVParams<ComplexT<R>> lift_params(const PVParams& p) {
    BasicPVParams<ComplexT<R>> out;
    out.a = lift<R>(p.a);
    out.b = lift<R>(p.b);
    out.c = lift<R>(p.c);
    out.d = lift<R>(p.d);
    for (std::size_t i = 0; i < 4; ++i) out.alphas[i] = lift<R>(p.alphas[i]);
    return out;
}

enum class SampleFlag { Ok, Pole, Degenerate };

inline std::string to_string(SampleFlag f) {
    switch (f) {
        case SampleFlag::Ok: return "ok";
        case SampleFlag::Pole: return "pole";
        case SampleFlag::Degenerate: return "degenerate";
    }
    return "?";
}

struct GridSample {
    double z = 0.0;
    Complex w{}, dw{}, d2w{};
    std::optional<double> residual;
    SampleFlag flag = SampleFlag::Ok;
    int precision_bits = 53;
};

enum class Degeneracy { Generic, One, Infinite, Constant };

inline std::string to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::Generic: return "generic";
        case Degeneracy::One: return "w=1";
        case Degeneracy::Infinite: return "w=inf";
        case Degeneracy::Constant: return "w=const";
    }
    return "?";
}

using QuadQuartet = BasicExtremalQuartet<Quad>;

struct PVSolution {
    PVParams params;
    ExtremalQuartet quartet;
    std::optional<QuadQuartet> quad_quartet;  // same states in 113-bit arithmetic
    std::string label = "1234";
    std::optional<SeedSpec> spec;
    std::string hierarchy = "transcendent";
    Degeneracy degeneracy = Degeneracy::Generic;
    bool corrupt = false;  // perturbs c; used only to self-test the harness
};

/// (w, w_z, w_zz) at z from the x-jet of F = x/g, x = sqrt(z).
template <class R>
std::array<ComplexT<R>, 3> w_from_g(const BasicJet<R>& g, const R& x) {
    const BasicJet<R> f = BasicJet<R>::variable(x, 2) / g;
    return {R(1) + f[0], f[1] / (R(2) * x), (x * f[2] - f[1]) / (R(4) * x * x * x)};
}

/// Residual above which a sample is re-evaluated in extended precision.
inline constexpr double kPrecisionFallback = 1e-10;

namespace detail {

template <class R>
GridSample w_eval_in(const BasicExtremalQuartet<R>& q, const PVParams& params, double z) {
    GridSample s;
    s.z = z;
    s.precision_bits = std::numeric_limits<R>::digits;
    using std::sqrt;
    const R zr(z);
    const R x = sqrt(zr);
    BasicJet<R> g;
    try {
        g = g_from_quartet<R>(q, x);
    } catch (const Error&) {
        s.flag = SampleFlag::Pole;
        return s;
    }
    const Complex g0 = lower<R>(g[0]);
    if (std::abs(g0) < 1e-10 * (1.0 + static_cast<double>(x)) || !is_finite(g0) || !is_finite(lower<R>(g[1])) ||
        !is_finite(lower<R>(g[2]))) {
        s.flag = SampleFlag::Pole;
        return s;
    }
    const auto w = w_from_g<R>(g, x);
    s.w = lower<R>(w[0]);
    s.dw = lower<R>(w[1]);
    s.d2w = lower<R>(w[2]);
    if (std::abs(s.w) < kSingularLocus || std::abs(s.w - 1.0) < kSingularLocus) {
        s.flag = SampleFlag::Degenerate;
        return s;
    }
    s.residual = pv_residual<R>(w[0], w[1], w[2], zr, lift_params<R>(params));
    return s;
}

}  // namespace detail

/// Evaluates w, its z-derivatives and the residual at z. Samples whose double
/// residual exceeds kPrecisionFallback are recomputed with the quad quartet.
inline GridSample w_eval(const PVSolution& sol, double z) {
    if (!(z > 0.0)) throw Error(ErrorKind::Domain, "z must be positive");
    PVParams p = sol.params;
    if (sol.corrupt) p.c += 0.01;
    if (sol.degeneracy == Degeneracy::One || sol.degeneracy == Degeneracy::Infinite) {
        GridSample s;
        s.z = z;
        s.w = sol.degeneracy == Degeneracy::One ? Complex{1.0, 0.0} : Complex{INFINITY, 0.0};
        s.flag = SampleFlag::Degenerate;
        return s;
    }
    GridSample s = detail::w_eval_in<double>(sol.quartet, p, z);
    if (!sol.quad_quartet || sol.corrupt || s.flag == SampleFlag::Degenerate) return s;
    if (s.flag == SampleFlag::Pole || (s.residual && *s.residual > kPrecisionFallback)) {
        GridSample hi = detail::w_eval_in<Quad>(*sol.quad_quartet, p, z);
        if (hi.flag != SampleFlag::Pole || s.flag == SampleFlag::Pole) return hi;
    }
    return s;
}

/// Constancy test on sampled w values (non-finite or huge values count as infinite).
inline Degeneracy classify_degenerate(const std::vector<Complex>& w) {
    if (w.size() < 8) throw Error(ErrorKind::Domain, "classification needs at least 8 samples");
    const bool all_inf = std::all_of(w.begin(), w.end(), [](Complex v) { return !is_finite(v) || std::abs(v) > 1e12; });
    if (all_inf) return Degeneracy::Infinite;
    double lo_re = w[0].real(), hi_re = lo_re, lo_im = w[0].imag(), hi_im = lo_im, scale = 1.0;
    for (Complex v : w) {
        if (!is_finite(v)) return Degeneracy::Generic;
        lo_re = std::min(lo_re, v.real());
        hi_re = std::max(hi_re, v.real());
        lo_im = std::min(lo_im, v.imag());
        hi_im = std::max(hi_im, v.imag());
        scale = std::max(scale, std::abs(v));
    }
    if (std::max(hi_re - lo_re, hi_im - lo_im) >= 1e-12 * scale) return Degeneracy::Generic;
    if (std::abs(w[0] - 1.0) < 1e-9) return Degeneracy::One;
    return Degeneracy::Constant;
}

inline constexpr std::array<double, 8> kClassifyPoints = {0.35, 0.8, 1.5, 2.6, 3.9, 5.5, 7.7, 10.3};

/// Samples the quartet's w and classifies it. Annihilated slot-3/4 states make
/// W(psi_3, psi_4) vanish identically, i.e. g infinite and w = 1.
inline Degeneracy classify_quartet(const ExtremalQuartet& q) {
    if (q.states[2].annihilated || q.states[3].annihilated) return Degeneracy::One;
    std::vector<Complex> w;
    for (double z : kClassifyPoints) {
        const double x = std::sqrt(z);
        try {
            const Jet g = g_from_quartet<double>(q, x);
            w.push_back(std::abs(g[0]) < 1e-10 * (1.0 + x) ? Complex{INFINITY, 0.0} : 1.0 + x / g[0]);
        } catch (const Error&) {
            w.push_back({INFINITY, 0.0});
        }
    }
    return classify_degenerate(w);
}

inline PVSolution make_solution(const ExtremalQuartet& canonical, const std::string& label,
                                std::optional<QuadQuartet> quad = std::nullopt) {
    PVSolution sol;
    sol.quartet = permute_quartet(canonical, label);
    if (quad) sol.quad_quartet = permute_quartet(*quad, label);
    sol.label = sol.quartet.label;
    sol.params = pv_params(sol.quartet);
    sol.degeneracy = classify_quartet(sol.quartet);
    return sol;
}

/// seed chain -> extremal quartet -> ordering -> g -> w, with parameters attached.
inline PVSolution solve(const SeedSpec& spec, bool allow_degenerate = false) {
    PVSolution sol = make_solution(extremal_quartet(spec), spec.order, extremal_quartet<Quad>(spec));
    sol.spec = spec;
    if (!allow_degenerate && sol.degeneracy != Degeneracy::Generic) {
        throw Error(ErrorKind::DegenerateOutput, "ordering " + sol.label + " gives " + to_string(sol.degeneracy));
    }
    return sol;
}

struct Grid {
    double z_min = 0.1;
    double z_max = 20.0;
    int points = 200;
    bool geometric = true;
};

inline std::vector<double> grid_points(const Grid& g) {
    if (!(g.z_min > 0.0) || !(g.z_max > g.z_min) || g.points < 2) {
        throw Error(ErrorKind::InvalidConfig, "grid needs 0 < z_min < z_max and at least 2 points");
    }
    std::vector<double> z(static_cast<std::size_t>(g.points));
    for (int i = 0; i < g.points; ++i) {
        const double t = static_cast<double>(i) / (g.points - 1);
        z[static_cast<std::size_t>(i)] = g.geometric ? g.z_min * std::pow(g.z_max / g.z_min, t) : g.z_min + t * (g.z_max - g.z_min);
    }
    z.back() = g.z_max;
    return z;
}

struct Certificate {
    std::vector<GridSample> samples;
    double max_residual = 0.0;
    int masked = 0;
};

inline Certificate certify(const PVSolution& sol, const Grid& grid = {}) {
    Certificate c;
    for (double z : grid_points(grid)) {
        c.samples.push_back(w_eval(sol, z));
        const auto& s = c.samples.back();
        if (s.residual) {
            c.max_residual = std::max(c.max_residual, *s.residual);
        } else {
            ++c.masked;
        }
    }
    return c;
}

}  // namespace pvsusy

#endif  // PVSUSY_PAINLEVE_HPP
