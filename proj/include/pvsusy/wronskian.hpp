#ifndef PVSUSY_WRONSKIAN_HPP
#define PVSUSY_WRONSKIAN_HPP

// Wronskian determinants and their x-derivatives from column jets.
// d/dx det(rows r_0 < ... < r_{m-1}) = sum_i det(r with r_i -> r_i + 1); a
// multi-index that collides with its neighbour gives a zero determinant.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "pvsusy/error.hpp"
#include "pvsusy/jet.hpp"

namespace pvsusy {

/// A function of x > 0 that can produce its derivative jet up to any order.
template <class R>
using BasicJetFn = std::function<BasicJet<R>(const R& x, int order)>;
using JetFn = BasicJetFn<double>;

/// Determinant by LU decomposition with partial pivoting (matrix is consumed).
template <class C>
C determinant(std::vector<std::vector<C>> a) {
    using std::abs;
    const std::size_t n = a.size();
    C det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        }
        if (a[piv][c] == C{}) return C{};
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const C f = a[r][c] / a[c][c];
            if (f == C{}) continue;
            for (std::size_t j = c + 1; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

template <class R>
struct BasicWronskianValue {
    BasicJet<R> w;                // W, W', ..., W^(n)
    bool singular = false;  // |W| below the scale-aware zero threshold
    double relative = 1.0;  // |W| divided by the Hadamard bound of the jet matrix
};

using WronskianValue = BasicWronskianValue<double>;

inline constexpr double kWronskianZero = 1e-13;

/// Wronskian of the given column jets with n derivatives; each jet needs order >= m-1+n.
template <class R>
BasicWronskianValue<R> wronskian_jet(const std::vector<BasicJet<R>>& cols, int n) {
    using C = ComplexT<R>;
    const int m = static_cast<int>(cols.size());
    if (m == 0) return {BasicJet<R>::constant(C(R(1)), n), false, 1.0};
    for (const auto& c : cols) {
        if (c.order() < m - 1 + n) {
            throw Error(ErrorKind::JetOrderExceeded, "column jet too short for the Wronskian order");
        }
    }
    const auto det_rows = [&](const std::vector<int>& rows) {
        std::vector<std::vector<C>> a(static_cast<std::size_t>(m), std::vector<C>(static_cast<std::size_t>(m)));
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(c)][rows[static_cast<std::size_t>(r)]];
        }
        return determinant(std::move(a));
    };

    std::vector<int> base(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) base[static_cast<std::size_t>(r)] = r;
    std::map<std::vector<int>, double> level{{base, 1.0}};
    std::vector<C> out(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
        C s{};
        for (const auto& [rows, coeff] : level) s += R(coeff) * det_rows(rows);
        out[static_cast<std::size_t>(d)] = s;
        if (d == n) break;
        std::map<std::vector<int>, double> next;
        for (const auto& [rows, coeff] : level) {
            for (int i = 0; i < m; ++i) {
                std::vector<int> r = rows;
                ++r[static_cast<std::size_t>(i)];
                if (i + 1 < m && r[static_cast<std::size_t>(i)] == r[static_cast<std::size_t>(i) + 1]) continue;
                next[r] += coeff;
            }
        }
        level = std::move(next);
    }

    double hadamard = 1.0;
    for (int r = 0; r < m; ++r) {
        double norm = 0.0;
        for (int c = 0; c < m; ++c) {
            const double v = magnitude<R>(cols[static_cast<std::size_t>(c)][r]);
            norm += v * v;
        }
        hadamard *= std::sqrt(norm);
    }
    const double relative = hadamard > 0.0 ? magnitude<R>(out[0]) / hadamard : 0.0;
    return {BasicJet<R>(std::move(out)), relative < kWronskianZero, relative};
}

/// Wronskian (with n derivatives) of functions evaluated at x.
template <class R>
BasicWronskianValue<R> wronskian_of(const std::vector<BasicJetFn<R>>& fns, const R& x, int n) {
    std::vector<BasicJet<R>> cols;
    cols.reserve(fns.size());
    const int order = static_cast<int>(fns.size()) - 1 + n;
    for (const auto& f : fns) cols.push_back(f(x, std::max(order, 0)));
    return wronskian_jet(cols, n);
}

}  // namespace pvsusy

#endif  // PVSUSY_WRONSKIAN_HPP
