#ifndef PVSUSY_LADDER_ALGEBRA_HPP
#define PVSUSY_LADDER_ALGEBRA_HPP

// Differential-operator chains acting on jets, and the numerical checks of
// the intertwining, ladder and number-operator identities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/jet.hpp"
#include "pvsusy/seed_solutions.hpp"
#include "pvsusy/susy_engine.hpp"

namespace pvsusy {

/// Function space an operator acts on: oscillator with L = l(l+1), SUSY level j.
struct Space {
    double L = 0.0;
    int level = 0;
};

inline bool same_space(const Space& a, const Space& b) {
    return a.level == b.level && std::abs(a.L - b.L) <= 1e-9 * (1.0 + std::abs(a.L));
}

enum class AtomKind { ShiftMinus, ShiftPlus, LadderMinus, LadderPlus, SusyMinus, SusyPlus, Hamiltonian };

struct Atom {
    AtomKind kind;
    double index = 0.0;  // m of a_m, l of b_l
    int step = 0;        // j of A_j, level of H
    Complex offset{};    // H - offset

    int order() const {
        switch (kind) {
            case AtomKind::LadderMinus:
            case AtomKind::LadderPlus:
            case AtomKind::Hamiltonian: return 2;
            default: return 1;
        }
    }

    Space input(double l) const {
        const double m = index;
        switch (kind) {
            case AtomKind::ShiftMinus: return {(m - 1.0) * m, 0};
            case AtomKind::ShiftPlus: return {m * (m + 1.0), 0};
            case AtomKind::LadderMinus:
            case AtomKind::LadderPlus: return {m * (m + 1.0), 0};
            case AtomKind::SusyMinus: return {l * (l + 1.0), step};
            case AtomKind::SusyPlus: return {l * (l + 1.0), step - 1};
            case AtomKind::Hamiltonian: return {m * (m + 1.0), step};
        }
        return {};
    }

    Space output(double l) const {
        const double m = index;
        switch (kind) {
            case AtomKind::ShiftMinus: return {m * (m + 1.0), 0};
            case AtomKind::ShiftPlus: return {(m - 1.0) * m, 0};
            case AtomKind::SusyMinus: return {l * (l + 1.0), step - 1};
            case AtomKind::SusyPlus: return {l * (l + 1.0), step};
            default: return input(l);
        }
    }
};

/// Product of atoms written left to right; the rightmost atom acts first.
template <class R>
class BasicOperatorChain {
public:
    using C = ComplexT<R>;
    using Partner = BasicSusyPartner<R>;
    using OperatorChain = BasicOperatorChain<R>;

    BasicOperatorChain(double l, std::shared_ptr<const Partner> partner = nullptr)
        : l_(l), partner_(std::move(partner)) {}

    double l() const noexcept { return l_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    bool empty() const noexcept { return atoms_.empty(); }
    int order() const {
        int n = 0;
        for (const auto& a : atoms_) n += a.order();
        return n;
    }

    /// Added to every SUSY superpotential; nonzero only for harness self-tests.
    OperatorChain& perturb(double delta) {
        perturbation_ = delta;
        return *this;
    }

    OperatorChain& a_minus(double m) { return push({AtomKind::ShiftMinus, m}); }
    OperatorChain& a_plus(double m) { return push({AtomKind::ShiftPlus, m}); }
    OperatorChain& b_minus() { return push({AtomKind::LadderMinus, l_}); }
    OperatorChain& b_plus() { return push({AtomKind::LadderPlus, l_}); }
    OperatorChain& A_minus(int j) { return push({AtomKind::SusyMinus, l_, j}); }
    OperatorChain& A_plus(int j) { return push({AtomKind::SusyPlus, l_, j}); }
    OperatorChain& H(int level, Complex offset = 0.0) { return push({AtomKind::Hamiltonian, l_, level, offset}); }
    /// H for an oscillator of index m (level 0).
    OperatorChain& H_index(double m, Complex offset = 0.0) { return push({AtomKind::Hamiltonian, m, 0, offset}); }

    /// B_k^- = A_1^- ... A_k^- (k defaults to the partner's order).
    OperatorChain& B_minus(int k = -1) {
        for (int j = 1; j <= resolve(k); ++j) A_minus(j);
        return *this;
    }
    /// B_k^+ = A_k^+ ... A_1^+.
    OperatorChain& B_plus(int k = -1) {
        for (int j = resolve(k); j >= 1; --j) A_plus(j);
        return *this;
    }

    OperatorChain& then(const OperatorChain& right) {
        for (const auto& a : right.atoms_) push(a);
        return *this;
    }

    Space input_space() const {
        if (atoms_.empty()) return {l_ * (l_ + 1.0), 0};
        return atoms_.back().input(l_);
    }
    Space output_space() const {
        if (atoms_.empty()) return {l_ * (l_ + 1.0), 0};
        return atoms_.front().output(l_);
    }

    /// Jet of (chain f) at x, `extra` orders deep.
    BasicJet<R> apply_jet(const BasicJetFn<R>& f, const R& x, int extra = 0) const {
        if (!(x > R(0))) throw Error(ErrorKind::Domain, "operators act on x > 0 only");
        BasicJet<R> F = f(x, order() + extra);
        if (F.order() < order() + extra) throw Error(ErrorKind::JetOrderExceeded, "test function jet too short");
        for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) F = act(*it, F, x);
        return F;
    }

    C apply(const BasicJetFn<R>& f, const R& x) const { return apply_jet(f, x)[0]; }

private:
    int resolve(int k) const {
        if (k >= 0) return k;
        if (!partner_) throw Error(ErrorKind::TypeMismatch, "B_k needs a SUSY partner");
        return partner_->k();
    }

    OperatorChain& push(const Atom& a) {
        if (a.kind == AtomKind::SusyMinus || a.kind == AtomKind::SusyPlus ||
            (a.kind == AtomKind::Hamiltonian && a.step > 0)) {
            if (!partner_) throw Error(ErrorKind::TypeMismatch, "SUSY atoms need a partner");
            if (a.step < 1 || a.step > partner_->k()) throw Error(ErrorKind::TypeMismatch, "SUSY step outside the chain");
            if (a.kind == AtomKind::Hamiltonian && std::abs(a.index - l_) > 1e-12) {
                throw Error(ErrorKind::TypeMismatch, "partner Hamiltonian uses the partner's l");
            }
        }
        if (!atoms_.empty() && !same_space(atoms_.back().input(l_), a.output(l_))) {
            throw Error(ErrorKind::TypeMismatch, "operator output space does not match the next input space");
        }
        atoms_.push_back(a);
        return *this;
    }

    BasicJet<R> potential(const Atom& a, const R& x, int n) const {
        if (a.step > 0) return partner_->potential_jet(x, n, a.step);
        const BasicJet<R> t = BasicJet<R>::variable(x, n);
        const R L(a.index * (a.index + 1.0));
        return t * t * C(R(1) / R(8)) + C(L / R(2)) / (t * t);
    }

    BasicJet<R> act(const Atom& a, const BasicJet<R>& F, const R& x) const {
        using std::sqrt;
        const int n = F.order() - a.order();
        const BasicJet<R> t = BasicJet<R>::variable(x, n);
        const BasicJet<R> f0 = F.truncated(n);
        const BasicJet<R> f1 = F.derivative().truncated(n);
        const C r2(R(1) / sqrt(R(2)));
        const C half(R(1) / R(2));
        switch (a.kind) {
            case AtomKind::ShiftMinus:
            case AtomKind::ShiftPlus: {
                const BasicJet<R> c = t * half - C(R(a.index)) / t;
                const C s(R(a.kind == AtomKind::ShiftMinus ? 1 : -1));
                return r2 * (s * f1 + c * f0);
            }
            case AtomKind::LadderMinus:
            case AtomKind::LadderPlus: {
                const R s(a.kind == AtomKind::LadderMinus ? 1 : -1);
                const BasicJet<R> f2 = F.derivative().derivative();
                const R L(a.index * (a.index + 1.0));
                const BasicJet<R> c = t * t * C(R(1) / R(4)) - C(L) / (t * t) + C(s / R(2));
                return half * (f2 + C(s) * (t * f1) + c * f0);
            }
            case AtomKind::SusyMinus:
            case AtomKind::SusyPlus: {
                const BasicJet<R> w = partner_->superpotential_jet(x, n, a.step) + C(R(perturbation_));
                const C s(R(a.kind == AtomKind::SusyMinus ? 1 : -1));
                return r2 * (s * f1 + w * f0);
            }
            case AtomKind::Hamiltonian: {
                const BasicJet<R> f2 = F.derivative().derivative();
                return C(R(-1) / R(2)) * f2 + (potential(a, x, n) - lift<R>(a.offset)) * f0;
            }
        }
        throw Error(ErrorKind::TypeMismatch, "unknown operator atom");
    }

    double l_;
    std::shared_ptr<const Partner> partner_;
    std::vector<Atom> atoms_;
    double perturbation_ = 0.0;
};

using OperatorChain = BasicOperatorChain<double>;

inline Complex apply_chain(const OperatorChain& chain, const JetFn& f, double x) { return chain.apply(f, x); }

struct CheckReport {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// Three fixed test functions: seeds of the l-oscillator at pseudo-random (eps, mixture).
inline std::vector<SchrodingerSolution> ladder_test_functions(double l, std::uint32_t seed = 20240611u) {
    std::mt19937 gen(seed);
    const auto unit = [&gen] { return static_cast<double>(gen()) / 4294967296.0; };
    std::vector<SchrodingerSolution> out;
    const double e0 = ground_energy(l);
    for (int i = 0; i < 3; ++i) {
        SeedSpec s;
        s.l = l;
        s.eps1 = e0 - 0.3 - 3.0 * unit();
        s.mixture = {1.0, 0.2 + 2.0 * unit()};
        if (is_half_odd(l)) s.mixture.mu1 = 0.0;  // one branch is a polynomial pole there
        out.push_back(make_seed(s));
    }
    return out;
}

inline std::vector<double> ladder_sample_points(int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(0.6 + 2.8 * static_cast<double>(i) / std::max(1, n - 1));
    return xs;
}

namespace detail {

// max_x |lhs - rhs| / scale, scale = max over samples of |f|, |f''|, |lhs|, |rhs|.
template <class Lhs, class Rhs>
double relative_gap(const JetFn& f, const std::vector<double>& xs, Lhs lhs, Rhs rhs) {
    double scale = 0.0, gap = 0.0;
    for (double x : xs) {
        const Jet j = f(x, 2);
        const Complex a = lhs(x), b = rhs(x);
        scale = std::max({scale, std::abs(j[0]), std::abs(j[2]), std::abs(a), std::abs(b)});
        gap = std::max(gap, std::abs(a - b));
    }
    return scale > 0.0 ? gap / scale : gap;
}

inline CheckReport finish(std::string name, double err, double tol, std::string detail = {}) {
    return {std::move(name), err, tol, err <= tol, std::move(detail)};
}

}  // namespace detail

/// max_j of |(H_j A_j^+ - A_j^+ H_{j-1}) f| / scale over the test functions.
inline CheckReport check_intertwining(const SeedSpec& spec, int n_samples = 12, double perturbation = 0.0) {
    auto partner = std::make_shared<const SusyPartner>(SusyPartner::from_spec(spec));
    const auto xs = ladder_sample_points(n_samples);
    double worst = 0.0;
    for (const auto& f : ladder_test_functions(spec.l)) {
        const JetFn fn = as_jet_fn(f);
        for (int j = 1; j <= partner->k(); ++j) {
            OperatorChain lhs(spec.l, partner), rhs(spec.l, partner);
            lhs.perturb(perturbation).H(j).A_plus(j);
            rhs.perturb(perturbation).A_plus(j).H(j - 1);
            worst = std::max(worst, detail::relative_gap(fn, xs, [&](double x) { return lhs.apply(fn, x); },
                                                         [&](double x) { return rhs.apply(fn, x); }));
        }
    }
    return detail::finish("intertwining", worst, 1e-7);
}

/// ([H, b^pm] -/+ b^pm) f = 0 on the oscillator.
inline CheckReport check_commutators(double l, int n_samples = 12, double perturbation = 0.0) {
    const auto xs = ladder_sample_points(n_samples);
    double worst = 0.0;
    for (const auto& f : ladder_test_functions(l)) {
        const JetFn fn = as_jet_fn(f);
        for (double s : {-1.0, 1.0}) {
            OperatorChain hb(l), bh(l);
            if (s < 0) {
                hb.H(0).b_minus();
                bh.b_minus().H(0, 1.0 + perturbation);  // b^-(H - 1)
            } else {
                hb.H(0).b_plus();
                bh.b_plus().H(0, -1.0 + perturbation);  // b^+(H + 1)
            }
            worst = std::max(worst, detail::relative_gap(fn, xs, [&](double x) { return hb.apply(fn, x); },
                                                         [&](double x) { return bh.apply(fn, x); }));
        }
    }
    return detail::finish("commutators", worst, 1e-7);
}

/// B_k^- B_k^+ f = prod_i (H_0 - eps_i) f.
inline CheckReport check_factorization(const SeedSpec& spec, int n_samples = 12, double perturbation = 0.0) {
    auto partner = std::make_shared<const SusyPartner>(SusyPartner::from_spec(spec));
    const auto xs = ladder_sample_points(n_samples);
    OperatorChain bb(spec.l, partner), poly(spec.l, partner);
    bb.B_minus().B_plus();
    for (const auto& u : partner->chain()) poly.H(0, u.energy() + perturbation);
    double worst = 0.0;
    for (const auto& f : ladder_test_functions(spec.l)) {
        const JetFn fn = as_jet_fn(f);
        worst = std::max(worst, detail::relative_gap(fn, xs, [&](double x) { return bb.apply(fn, x); },
                                                     [&](double x) { return poly.apply(fn, x); }));
    }
    return detail::finish("factorization", worst, 1e-6);
}

/// b^- = a^-_{-(l+1)} a^-_{l+1} = a^-_l a^-_{-l}, and the b^+ counterparts.
inline CheckReport check_shift_identities(double l, int n_samples = 12, double perturbation = 0.0) {
    const auto xs = ladder_sample_points(n_samples);
    double worst = 0.0;
    OperatorChain bm(l), bp(l), m1(l), m2(l), p1(l), p2(l);
    bm.b_minus();
    bp.b_plus();
    m1.a_minus(-(l + 1.0)).a_minus(l + 1.0);
    m2.a_minus(l).a_minus(-l);
    p1.a_plus(l + 1.0).a_plus(-(l + 1.0));
    p2.a_plus(-l).a_plus(l);
    for (const auto& f : ladder_test_functions(l)) {
        const JetFn fn = as_jet_fn(f);
        for (const auto* pair : {&m1, &m2}) {
            worst = std::max(worst, detail::relative_gap(fn, xs, [&](double x) { return bm.apply(fn, x); },
                                                         [&](double x) { return (1.0 + perturbation) * pair->apply(fn, x); }));
        }
        for (const auto* pair : {&p1, &p2}) {
            worst = std::max(worst, detail::relative_gap(fn, xs, [&](double x) { return bp.apply(fn, x); },
                                                         [&](double x) { return (1.0 + perturbation) * pair->apply(fn, x); }));
        }
    }
    return detail::finish("shift identities", worst, 1e-9);
}

/// n(n + 2E0 - 1) prod_i (n + E0 - eps_i)(n + E0 - eps_i - 1).
inline Complex number_operator_eigenvalue(const SeedSpec& spec, int n) {
    const double e0 = ground_energy(spec.l);
    Complex v = static_cast<double>(n) * (n + 2.0 * e0 - 1.0);
    for (int i = 0; i < spec.k; ++i) {
        const Complex eps = spec.eps1 - static_cast<double>(i);
        v *= (n + e0 - eps) * (n + e0 - eps - 1.0);
    }
    return v;
}

/// n(n + 2E0 - 1)(n + E0 - eps_1 - 1)(n + E0 - eps_k).
inline Complex number_operator_quartic(const SeedSpec& spec, int n) {
    const double e0 = ground_energy(spec.l);
    const Complex epsk = spec.eps1 - static_cast<double>(spec.k - 1);
    return static_cast<double>(n) * (n + 2.0 * e0 - 1.0) * (n + e0 - spec.eps1 - 1.0) * (n + e0 - epsk);
}

/// P_{k-1}(E) = prod_{i<k} (E - eps_i).
inline Complex reduction_polynomial(const SeedSpec& spec, Complex energy) {
    Complex p = 1.0;
    for (int i = 0; i + 1 < spec.k; ++i) p *= energy - (spec.eps1 - static_cast<double>(i));
    return p;
}

/// L_k^+ L_k^- = B_k^+ b^+ B_k^- B_k^+ b^- B_k^-.
template <class R>
BasicOperatorChain<R> number_operator_chain(std::shared_ptr<const BasicSusyPartner<R>> partner, double perturbation = 0.0) {
    BasicOperatorChain<R> c(partner->l(), partner);
    c.perturb(perturbation).B_plus().b_plus().B_minus().B_plus().b_minus().B_minus();
    return c;
}

struct NumberOperatorReport {
    CheckReport check;
    Complex expected{};
    Complex measured{};
    /// measured / P_{k-1}(E)^2 against the quartic, relative.
    double reduction_error = 0.0;
    bool annihilated = false;
};

/// Applies L_k^+ L_k^- to the eigenstate psi_n^(k) = B_k^+ psi_n^(0) and compares with the polynomial
/// eigenvalue. The chain has order 4k+4, so it runs in quad precision.
inline NumberOperatorReport check_number_operator(const SeedSpec& spec, int n, const std::vector<double>& xs,
                                                  double perturbation = 0.0) {
    using R = Quad;
    if (n < 0) throw Error(ErrorKind::Domain, "eigenstate index must be non-negative");
    auto partner = std::make_shared<const BasicSusyPartner<R>>(BasicSusyPartner<R>::from_spec(spec));
    const BasicJetFn<R> psi = partner->transform(as_jet_fn(physical_eigenfunction<R>(1, n, spec.l)));
    const auto chain = number_operator_chain<R>(partner, perturbation);
    NumberOperatorReport r;
    r.expected = number_operator_eigenvalue(spec, n);
    r.annihilated = std::abs(r.expected) == 0.0;
    Complex num{}, den{};
    double scale = 0.0, gap = 0.0;
    for (double xd : xs) {
        const BasicJet<R> j = psi(R(xd), 2);
        const Complex f = lower<R>(j[0]);
        const Complex applied = lower<R>(chain.apply(psi, R(xd)));
        num += std::conj(f) * applied;
        den += std::norm(f);
        scale = std::max({scale, std::abs(f), magnitude<R>(j[2]), std::abs(applied), std::abs(r.expected * f)});
        gap = std::max(gap, std::abs(applied - r.expected * f));
    }
    r.measured = num / den;
    const double err = gap / scale;
    const Complex energy = ground_energy(spec.l) + static_cast<double>(n);
    const Complex p = reduction_polynomial(spec, energy);
    const Complex quartic = number_operator_quartic(spec, n);
    const Complex reduced = r.measured / (p * p);
    r.reduction_error = std::abs(reduced - quartic) / std::max(1.0, std::abs(quartic));
    r.check = detail::finish("number operator n=" + std::to_string(n), std::max(err, r.reduction_error), 1e-6,
                             r.annihilated ? "annihilated state" : "");
    return r;
}

/// State of H_k at the new level eps_j: W(u_1..u_k without u_j)/W(u_1..u_k).
template <class R>
BasicJetFn<R> missing_level_state(const BasicSusyPartner<R>& partner, int j) {
    if (j < 1 || j > partner.k()) throw Error(ErrorKind::Domain, "level index outside the chain");
    std::vector<BasicJetFn<R>> all, rest;
    for (int i = 1; i <= partner.k(); ++i) {
        all.push_back(as_jet_fn(partner.chain()[static_cast<std::size_t>(i - 1)]));
        if (i != j) rest.push_back(all.back());
    }
    return [all, rest](const R& x, int order) {
        const auto den = wronskian_of<R>(all, x, order);
        if (den.singular) throw Error(ErrorKind::SingularEvaluation, "state at a Wronskian zero");
        return wronskian_of<R>(rest, x, order).w / den.w;
    };
}

/// L_k^+ L_k^- annihilates every new-level state of H_k. The gap is measured
/// against |psi| times the n = 1 eigenvalue, the operator's natural size.
inline CheckReport check_new_level_annihilation(const SeedSpec& spec, const std::vector<double>& xs,
                                                double perturbation = 0.0) {
    using R = Quad;
    auto partner = std::make_shared<const BasicSusyPartner<R>>(BasicSusyPartner<R>::from_spec(spec));
    const auto chain = number_operator_chain<R>(partner, perturbation);
    const auto eig = number_operator_eigenvalue(spec, 1);
    double worst = 0.0;
    for (int j = 1; j <= partner->k(); ++j) {
        const BasicJetFn<R> psi = missing_level_state(*partner, j);
        double scale = 0.0, gap = 0.0;
        for (double xd : xs) {
            const BasicJet<R> s = psi(R(xd), 2);
            gap = std::max(gap, magnitude<R>(chain.apply(psi, R(xd))));
            scale = std::max({scale, magnitude<R>(s[0]), magnitude<R>(s[2])});
        }
        worst = std::max(worst, gap / (scale * std::max(1.0, std::abs(eig))));
    }
    return detail::finish("new-level annihilation", worst, 1e-6);
}

}  // namespace pvsusy

#endif  // PVSUSY_LADDER_ALGEBRA_HPP
