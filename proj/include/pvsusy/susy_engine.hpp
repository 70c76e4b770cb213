#ifndef PVSUSY_SUSY_ENGINE_HPP
#define PVSUSY_SUSY_ENGINE_HPP

// k-th order SUSY partners of the radial oscillator built from a seed chain,
// Wronskian-ratio transformed states and the extremal quartet.

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/jet.hpp"
#include "pvsusy/seed_solutions.hpp"
#include "pvsusy/wronskian.hpp"

namespace pvsusy {

template <class R>
BasicJetFn<R> as_jet_fn(const BasicSolution<R>& s) {
    return [s](const R& x, int order) { return s.jet(x, order); };
}

inline constexpr std::array<double, 4> kAnnihilationProbe = {0.6, 1.1, 1.9, 2.8};
inline constexpr double kAnnihilationThreshold = 1e-10;

/// Ordered stack of solutions sharing l.
template <class R>
class BasicWronskianStack {
public:
    BasicWronskianStack() = default;
    explicit BasicWronskianStack(std::vector<BasicSolution<R>> sols) : sols_(std::move(sols)) {
        for (const auto& s : sols_) {
            if (s.l() != sols_.front().l()) throw Error(ErrorKind::TypeMismatch, "stack members differ in l");
        }
    }

    std::size_t size() const noexcept { return sols_.size(); }
    const std::vector<BasicSolution<R>>& solutions() const noexcept { return sols_; }

    std::vector<BasicJetFn<R>> functions(std::size_t count) const {
        std::vector<BasicJetFn<R>> out;
        for (std::size_t i = 0; i < count && i < sols_.size(); ++i) out.push_back(as_jet_fn(sols_[i]));
        return out;
    }

    BasicWronskianValue<R> at(const R& x, int n) const { return at_prefix(sols_.size(), x, n); }

    /// Wronskian of the first `count` members.
    BasicWronskianValue<R> at_prefix(std::size_t count, const R& x, int n) const {
        if (!(x > R(0))) throw Error(ErrorKind::Domain, "Wronskians are evaluated on x > 0 only");
        return wronskian_of<R>(functions(count), x, n);
    }

private:
    std::vector<BasicSolution<R>> sols_;
};

using WronskianStack = BasicWronskianStack<double>;

/// W, W' or W'' of the stack at x; a vanishing W is reported through `singular`.
inline Complex wronskian(const WronskianStack& stack, double x, int deriv_order, bool* singular = nullptr) {
    if (deriv_order < 0 || deriv_order > 2) throw Error(ErrorKind::Domain, "deriv_order must be 0, 1 or 2");
    const auto v = stack.at(x, deriv_order);
    if (singular) *singular = v.singular;
    return v.w[deriv_order];
}

/// Jet of V0 = x^2/8 + l(l+1)/(2x^2) with n derivatives.
template <class R>
BasicJet<R> oscillator_potential_jet(double l, const R& x, int n) {
    using C = ComplexT<R>;
    const R L(l * (l + 1.0));
    std::vector<C> v0(static_cast<std::size_t>(n) + 1);
    R fact(1);
    R inv_pow = R(1) / (x * x);
    for (int i = 0; i <= n; ++i) {
        fact *= R(i + 1);
        const R sign = (i % 2 == 0) ? R(1) : R(-1);
        v0[static_cast<std::size_t>(i)] = C(L * sign * fact * inv_pow / R(2));
        inv_pow /= x;
    }
    v0[0] += C(x * x / R(8));
    if (n >= 1) v0[1] += C(x / R(4));
    if (n >= 2) v0[2] += C(R(1) / R(4));
    return BasicJet<R>(std::move(v0));
}

/// H_k partner of the oscillator generated by a seed chain.
template <class R>
class BasicSusyPartner {
public:
    using C = ComplexT<R>;

    explicit BasicSusyPartner(double l, std::vector<BasicSolution<R>> chain = {})
        : l_(l), stack_(std::move(chain)) {}

    static BasicSusyPartner from_spec(const SeedSpec& spec) {
        return BasicSusyPartner(spec.l, seed_chain<R>(spec));
    }

    double l() const noexcept { return l_; }
    int k() const noexcept { return static_cast<int>(stack_.size()); }
    const BasicWronskianStack<R>& stack() const noexcept { return stack_; }
    const std::vector<BasicSolution<R>>& chain() const noexcept { return stack_.solutions(); }

    /// (W_j, W_j', ..., W_j^(n)) for the first j seeds (all of them by default).
    BasicWronskianValue<R> wronskian(const R& x, int n, int j = -1) const {
        return stack_.at_prefix(count(j), x, n);
    }

    /// Jet of V_j = V0 - (ln W_j)'' with n derivatives.
    BasicJet<R> potential_jet(const R& x, int n, int j = -1) const {
        const auto wv = wronskian(x, n + 2, j);
        if (wv.singular) throw Error(ErrorKind::SingularEvaluation, "partner potential at a Wronskian zero");
        const BasicJet<R> lw = log_derivative(wv.w).derivative();
        return oscillator_potential_jet<R>(l_, x, n) - lw.truncated(n);
    }

    C potential(const R& x) const { return potential_jet(x, 0)[0]; }

    /// Superpotential jet w_j = (ln W_j)' - (ln W_{j-1})' of the j-th first-order step.
    BasicJet<R> superpotential_jet(const R& x, int n, int j) const {
        if (j < 1 || j > k()) throw Error(ErrorKind::Domain, "superpotential index out of range");
        const auto hi = wronskian(x, n + 1, j);
        const auto lo = wronskian(x, n + 1, j - 1);
        if (hi.singular) throw Error(ErrorKind::SingularSuperpotential, "superpotential at a Wronskian zero");
        return log_derivative(hi.w) - log_derivative(lo.w);
    }

    /// psi -> W(u_1..u_j, psi)/W(u_1..u_j).
    BasicJetFn<R> transform(BasicJetFn<R> target, int j = -1) const {
        const auto fns = stack_.functions(count(j));
        return [fns, target](const R& x, int order) {
            auto with = fns;
            with.push_back(target);
            const auto num = wronskian_of<R>(with, x, order);
            const auto den = wronskian_of<R>(fns, x, order);
            if (den.singular) throw Error(ErrorKind::SingularEvaluation, "transformed state at a Wronskian zero");
            return num.w / den.w;
        };
    }

    /// True when W(u_1..u_k, target) vanishes identically (target lies in the seed span).
    bool annihilates(const BasicJetFn<R>& target) const {
        auto fns = stack_.functions(stack_.size());
        fns.push_back(target);
        for (double x : kAnnihilationProbe) {
            if (wronskian_of<R>(fns, R(x), 0).relative > kAnnihilationThreshold) return false;
        }
        return true;
    }

    /// W(u_1..u_{j-1})/W(u_1..u_j): the state of H_j at the new level eps_j.
    BasicJetFn<R> new_level_state(int j = -1) const {
        const std::size_t c = count(j);
        if (c == 0) throw Error(ErrorKind::InvalidSpec, "no new level without seeds");
        const auto fns = stack_.functions(c);
        return [fns](const R& x, int order) {
            const std::vector<BasicJetFn<R>> head(fns.begin(), fns.end() - 1);
            const auto num = wronskian_of<R>(head, x, order);
            const auto den = wronskian_of<R>(fns, x, order);
            if (den.singular) throw Error(ErrorKind::SingularEvaluation, "new-level state at a Wronskian zero");
            return num.w / den.w;
        };
    }

private:
    std::size_t count(int j) const {
        if (j > k()) throw Error(ErrorKind::Domain, "partial stack longer than the chain");
        return j < 0 ? stack_.size() : static_cast<std::size_t>(j);
    }

    double l_;
    BasicWronskianStack<R> stack_;
};

using SusyPartner = BasicSusyPartner<double>;

/// V_k(x) for the chain of the spec.
inline Complex partner_potential(const SeedSpec& spec, double x) {
    return SusyPartner::from_spec(spec).potential(x);
}

/// (value, derivative) of W(u_1..u_k, target)/W(u_1..u_k).
inline std::pair<Complex, Complex> transformed_state(const SeedSpec& spec, const SchrodingerSolution& target, double x) {
    if (target.l() != spec.l) throw Error(ErrorKind::TypeMismatch, "target and seeds differ in l");
    const auto partner = SusyPartner::from_spec(spec);
    const Jet j = partner.transform(as_jet_fn(target))(x, 1);
    return {j[0], j[1]};
}

template <class R>
struct BasicQuartetState {
    BasicJetFn<R> fn;
    Complex energy;
    bool annihilated = false;
    int id = 0;  // position in the canonical ordering, 1..4
};

template <class R>
struct BasicExtremalQuartet {
    std::array<BasicQuartetState<R>, 4> states;
    std::string label = "1234";
    double l = 0.0;
    /// Jet of the potential the states live in.
    std::function<BasicJet<R>(const R&, int)> potential;

    std::array<Complex, 4> energies() const {
        return {states[0].energy, states[1].energy, states[2].energy, states[3].energy};
    }
};

using QuartetState = BasicQuartetState<double>;
using ExtremalQuartet = BasicExtremalQuartet<double>;

/// Extremal states of H_k in canonical order 1234:
/// B_k^+ b^+ u_1, B_k^+ x^{-l}e^{-x^2/4}, W_{k-1}/W_k, B_k^+ x^{l+1}e^{-x^2/4}.
template <class R>
BasicExtremalQuartet<R> extremal_quartet(const BasicSusyPartner<R>& partner) {
    if (partner.k() < 1) throw Error(ErrorKind::InvalidSpec, "extremal quartet needs k >= 1");
    const double l = partner.l();
    const double e0 = ground_energy(l);
    const auto& u1 = partner.chain().front();
    const auto bu = apply_b_plus(u1);
    const BasicJetFn<R> raw1 = as_jet_fn(bu);
    const BasicJetFn<R> raw2 = as_jet_fn(physical_eigenfunction<R>(2, 0, l));
    const BasicJetFn<R> raw4 = as_jet_fn(physical_eigenfunction<R>(1, 0, l));

    BasicExtremalQuartet<R> q;
    q.l = l;
    q.states[0] = {partner.transform(raw1), u1.energy() + 1.0, bu.is_zero() || partner.annihilates(raw1), 1};
    q.states[1] = {partner.transform(raw2), -e0 + 1.0, partner.annihilates(raw2), 2};
    q.states[2] = {partner.new_level_state(), partner.chain().back().energy(), false, 3};
    q.states[3] = {partner.transform(raw4), e0, partner.annihilates(raw4), 4};
    q.potential = [partner](const R& x, int n) { return partner.potential_jet(x, n); };
    return q;
}

template <class R = double>
BasicExtremalQuartet<R> extremal_quartet(const SeedSpec& spec) {
    return extremal_quartet(BasicSusyPartner<R>::from_spec(spec));
}

/// Second solution at E_1l with W(psi_1l, psi_perp) = 1, by Taylor integration from x0 = 1.
template <class R = double>
BasicSolution<R> perpendicular_state(double l, Complex admixture = 0.0) {
    const auto psi = physical_eigenfunction<R>(1, 1, l);
    const Complex psi_at_anchor = lower<R>(psi.value(R(1)));
    const auto perp = integrated_solution<R>(l, psi.energy(), 1.0, 0.0, 1.0 / psi_at_anchor);
    if (admixture == Complex{0.0, 0.0}) return perp;
    return linear_combination<R>(1.0, perp, admixture, psi);
}

/// Extremal states of H_0 in canonical order:
/// x^{l+1}e^{-x^2/4}, x^{-l}e^{-x^2/4}, psi_1l, psi_1l^perp.
template <class R = double>
BasicExtremalQuartet<R> radial_oscillator_quartet(double l, Complex perp_admixture = 0.0) {
    if (!(l >= -0.5)) throw Error(ErrorKind::InvalidSpec, "l must satisfy l >= -1/2");
    const double e0 = ground_energy(l);
    BasicExtremalQuartet<R> q;
    q.l = l;
    q.states[0] = {as_jet_fn(physical_eigenfunction<R>(1, 0, l)), e0, false, 1};
    q.states[1] = {as_jet_fn(physical_eigenfunction<R>(2, 0, l)), -e0 + 1.0, false, 2};
    q.states[2] = {as_jet_fn(physical_eigenfunction<R>(1, 1, l)), e0 + 1.0, false, 3};
    q.states[3] = {as_jet_fn(perpendicular_state<R>(l, perp_admixture)), e0 + 1.0, false, 4};
    q.potential = [l](const R& x, int n) { return oscillator_potential_jet<R>(l, x, n); };
    return q;
}

/// Relative Schrodinger residual of quartet state i (0-based) in its potential.
inline double state_residual(const ExtremalQuartet& q, int i, double x) {
    const auto& s = q.states[static_cast<std::size_t>(i)];
    const Jet j = s.fn(x, 2);
    const Complex v = q.potential(x, 0)[0];
    const Complex res = -0.5 * j[2] + (v - s.energy) * j[0];
    return std::abs(res) / std::max({std::abs(j[0]), std::abs(j[2]), std::numeric_limits<double>::min()});
}

}  // namespace pvsusy

#endif  // PVSUSY_SUSY_ENGINE_HPP
