#ifndef PVSUSY_JET_HPP
#define PVSUSY_JET_HPP

// Truncated derivative jets: (f, f', ..., f^(N)) at a fixed point.
// Products and quotients follow the Leibniz rule exactly.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/numeric.hpp"

namespace pvsusy {

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

template <class R>
class BasicJet {
public:
    using C = ComplexT<R>;
    using Jet = BasicJet<R>;

    BasicJet() = default;
    explicit BasicJet(std::vector<C> derivs) : d_(std::move(derivs)) {}
    BasicJet(std::initializer_list<C> derivs) : d_(derivs) {}

    static Jet constant(C c, int order) {
        std::vector<C> d(static_cast<std::size_t>(order) + 1, C{});
        d[0] = c;
        return Jet(std::move(d));
    }

    /// The identity function t -> t evaluated at t = x.
    static Jet variable(R x, int order) {
        Jet j = constant(C(x), order);
        if (order >= 1) j.d_[1] = C(R(1));
        return j;
    }

    int order() const noexcept { return static_cast<int>(d_.size()) - 1; }
    bool empty() const noexcept { return d_.empty(); }
    C operator[](int n) const { return d_.at(static_cast<std::size_t>(n)); }
    C& operator[](int n) { return d_.at(static_cast<std::size_t>(n)); }
    const std::vector<C>& values() const noexcept { return d_; }

    Jet truncated(int order) const {
        if (order > this->order()) {
            throw Error(ErrorKind::JetOrderExceeded, "jet truncation beyond available order");
        }
        return Jet(std::vector<C>(d_.begin(), d_.begin() + order + 1));
    }

    /// Jet of f' (one order shorter).
    Jet derivative() const {
        if (d_.size() < 2) throw Error(ErrorKind::JetOrderExceeded, "derivative of an order-0 jet");
        return Jet(std::vector<C>(d_.begin() + 1, d_.end()));
    }

    Jet& operator+=(const Jet& o) {
        resize_to(o);
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        resize_to(o);
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
        return *this;
    }
    Jet& operator*=(C s) {
        for (auto& v : d_) v *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= C(R(-1)); }
    friend Jet operator*(Jet a, C s) { return a *= s; }
    friend Jet operator*(C s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, C s) {
        a.d_.at(0) += s;
        return a;
    }
    friend Jet operator-(Jet a, C s) {
        a.d_.at(0) -= s;
        return a;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const int n = std::min(a.order(), b.order());
        std::vector<C> out(static_cast<std::size_t>(n) + 1, C{});
        for (int k = 0; k <= n; ++k) {
            C s{};
            for (int j = 0; j <= k; ++j) s += R(binomial(k, j)) * a[j] * b[k - j];
            out[static_cast<std::size_t>(k)] = s;
        }
        return Jet(std::move(out));
    }

    friend Jet operator/(const Jet& f, const Jet& g) {
        if (g[0] == C{}) {
            throw Error(ErrorKind::SingularEvaluation, "jet division by a vanishing value");
        }
        const int n = std::min(f.order(), g.order());
        std::vector<C> h(static_cast<std::size_t>(n) + 1, C{});
        for (int k = 0; k <= n; ++k) {
            C s = f[k];
            for (int j = 0; j < k; ++j) s -= R(binomial(k, j)) * h[static_cast<std::size_t>(j)] * g[k - j];
            h[static_cast<std::size_t>(k)] = s / g[0];
        }
        return Jet(std::move(h));
    }

    friend Jet operator/(C s, const Jet& g) { return constant(s, g.order()) / g; }

private:
    void resize_to(const Jet& o) {
        const std::size_t n = std::min(d_.size(), o.d_.size());
        d_.resize(n);
    }

    std::vector<C> d_;
};

using Jet = BasicJet<double>;
using QuadJet = BasicJet<Quad>;

/// Jet of f'/f.
template <class R>
BasicJet<R> log_derivative(const BasicJet<R>& f) {
    return f.derivative() / f.truncated(f.order() - 1);
}

}  // namespace pvsusy

#endif  // PVSUSY_JET_HPP
