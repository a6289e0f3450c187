#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfh/mpoly.hpp"
#include "dfh/rational.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

// B_j(x) = x(x-1)...(x-j+1), B_0 = 1.
inline Rat falling_factorial(unsigned j, const Rat& x) {
    Rat r(1);
    for (unsigned k = 0; k < j; ++k) r *= x - Rat(static_cast<long>(k));
    return r;
}

// One linear ODE per variable: equation i is
//   sum_j P_{i,j}(x) (d/dx_i)^j  applied to f, with P_{i,d_i} != 0.
template <typename K>
struct DFiniteSystem {
    unsigned m = 1;
    std::vector<std::vector<MPoly<K>>> equations;  // equations[i][j] = P_{i,j}

    void validate() const {
        if (equations.size() != m) throw std::invalid_argument("need one equation per variable");
        for (const auto& eq : equations) {
            if (eq.empty()) throw std::invalid_argument("equation with no coefficients");
            if (eq.back().is_zero())
                throw std::invalid_argument("leading coefficient P_{i,d_i} must be nonzero");
            for (const auto& p : eq)
                if (p.vars() != m) throw std::invalid_argument("variable count mismatch");
        }
    }

    unsigned order(unsigned i) const { return static_cast<unsigned>(equations[i].size() - 1); }
    long coeff_degree(unsigned i) const {
        long d = 0;
        for (const auto& p : equations[i]) d = std::max(d, p.degree());
        return d;
    }
};

// Applies each equation to f. Residual i is truncated at the largest total
// degree where every contributing coefficient of f lies within f's
// truncation: T - d_i - max_j deg P_{i,j}.
template <typename K>
std::vector<TruncatedSeries<K>> apply_system(const DFiniteSystem<K>& sys,
                                             const TruncatedSeries<K>& f) {
    sys.validate();
    if (sys.m != f.m) throw std::invalid_argument("variable count mismatch");
    std::vector<TruncatedSeries<K>> out;
    for (unsigned i = 0; i < sys.m; ++i) {
        long det = static_cast<long>(f.T) - static_cast<long>(sys.order(i)) - sys.coeff_degree(i);
        if (det < 0)
            throw std::invalid_argument("truncation too small to determine any residual coefficient");
        MPoly<K> acc(sys.m);
        MPoly<K> deriv = f.coeffs;
        for (unsigned j = 0; j < sys.equations[i].size(); ++j) {
            acc = acc + sys.equations[i][j] * deriv;
            deriv = deriv.derivative(i);
        }
        TruncatedSeries<K> res(sys.m, static_cast<unsigned>(det));
        for (const auto& [idx, c] : acc.terms())
            if (total_degree(idx) <= res.T) res.set(idx, c);
        out.push_back(std::move(res));
    }
    return out;
}

// The coefficient of x^r in equation i, as an exact linear relation
//   sum p_{i,j,n} B_j(r_i + j - n_i) a_{r + j e_i - n} = 0
// over the series coefficients; indices outside N_0^m are dropped.
template <typename K>
std::vector<std::pair<MultiIndex, K>> coefficient_relation(const DFiniteSystem<K>& sys,
                                                           unsigned i, const MultiIndex& r) {
    sys.validate();
    if (i >= sys.m || r.size() != sys.m) throw std::invalid_argument("bad equation index or shift");
    std::map<MultiIndex, K> rel;
    for (unsigned j = 0; j < sys.equations[i].size(); ++j) {
        for (const auto& [n, p] : sys.equations[i][j].terms()) {
            // u = r + j e_i - n must be componentwise nonnegative
            bool ok = true;
            MultiIndex u(sys.m);
            for (unsigned v = 0; v < sys.m; ++v) {
                long e = static_cast<long>(r[v]) - static_cast<long>(n[v]) +
                         (v == i ? static_cast<long>(j) : 0);
                if (e < 0) {
                    ok = false;
                    break;
                }
                u[v] = static_cast<unsigned>(e);
            }
            if (!ok) continue;
            Rat arg(static_cast<long>(r[i]) + static_cast<long>(j) - static_cast<long>(n[i]));
            K term = p * K(falling_factorial(j, arg));
            auto it = rel.find(u);
            if (it == rel.end()) {
                if (term != K(0)) rel.emplace(std::move(u), std::move(term));
            } else {
                it->second = it->second + term;
                if (it->second == K(0)) rel.erase(it);
            }
        }
    }
    return {rel.begin(), rel.end()};
}

// f(t^{u_1}, ..., t^{u_m}); collisions sum. Since every u_i >= 1, the
// substituted coefficient tau_n only draws on ||n'|| <= n, so the output
// keeps the input's truncation level.
template <typename K>
TruncatedSeries<K> substitute_monomials(const TruncatedSeries<K>& f,
                                        const std::vector<unsigned>& u) {
    if (u.size() != f.m) throw std::invalid_argument("substitution vector length mismatch");
    for (unsigned e : u)
        if (e < 1) throw std::invalid_argument("substitution exponents must be >= 1");
    TruncatedSeries<K> out(1, f.T);
    for (const auto& [idx, c] : f.coeffs.terms()) {
        unsigned long n = 0;
        for (unsigned v = 0; v < f.m; ++v) n += static_cast<unsigned long>(idx[v]) * u[v];
        if (n > f.T) continue;
        out.coeffs.add_term(MultiIndex{static_cast<unsigned>(n)}, c);
    }
    return out;
}

template <typename K>
UPoly<K> substitute_monomials_poly(const MPoly<K>& p, const std::vector<unsigned>& u) {
    if (u.size() != p.vars()) throw std::invalid_argument("substitution vector length mismatch");
    for (unsigned e : u)
        if (e < 1) throw std::invalid_argument("substitution exponents must be >= 1");
    std::vector<K> coeffs;
    for (const auto& [idx, c] : p.terms()) {
        std::size_t n = 0;
        for (unsigned v = 0; v < p.vars(); ++v) n += static_cast<std::size_t>(idx[v]) * u[v];
        if (coeffs.size() <= n) coeffs.resize(n + 1, K(0));
        coeffs[n] = coeffs[n] + c;
    }
    return UPoly<K>(std::move(coeffs));
}

template <typename K>
std::pair<UPoly<K>, UPoly<K>> substitute_monomials(const MPoly<K>& num, const MPoly<K>& den,
                                                   const std::vector<unsigned>& u) {
    return {substitute_monomials_poly(num, u), substitute_monomials_poly(den, u)};
}

template <typename K>
bool nonzero_substitution_check(const MPoly<K>& p, const std::vector<unsigned>& u) {
    if (p.is_zero()) throw std::invalid_argument("substitution check needs a nonzero polynomial");
    return !substitute_monomials_poly(p, u).is_zero();
}

// Series expansion of num/den to total degree T, coefficient by coefficient:
//   a_r = (num_r - sum_{0 < s <= r} den_s a_{r-s}) / den_0.
template <typename K>
TruncatedSeries<K> expand_ratfun(const MPoly<K>& num, const MPoly<K>& den, unsigned T) {
    if (num.vars() != den.vars()) throw std::invalid_argument("variable count mismatch");
    K d0 = den.constant_term();
    if (d0 == K(0)) throw std::domain_error("not a power series: denominator vanishes at 0");
    unsigned m = num.vars();
    TruncatedSeries<K> f(m, T);
    for (unsigned d = 0; d <= T; ++d) {
        for_each_index_of_degree(m, d, [&](const MultiIndex& r) {
            K acc = num.coeff(r);
            for (const auto& [s, ds] : den.terms()) {
                if (total_degree(s) == 0) continue;
                bool ok = true;
                MultiIndex q(m);
                for (unsigned v = 0; v < m; ++v) {
                    if (s[v] > r[v]) {
                        ok = false;
                        break;
                    }
                    q[v] = r[v] - s[v];
                }
                if (!ok) continue;
                acc = acc - ds * f.coeffs.coeff(q);
            }
            if (acc != K(0)) f.coeffs.set(r, acc / d0);
        });
    }
    return f;
}

// g_N in f = sum_N g_N(x_1..x_{m-1}) x_m^N, truncated at total degree T.
template <typename K>
TruncatedSeries<K> section(const MPoly<K>& num, const MPoly<K>& den, unsigned N, unsigned T) {
    unsigned m = num.vars();
    if (m < 2) throw std::invalid_argument("section needs at least two variables");
    TruncatedSeries<K> f = expand_ratfun(num, den, N + T);
    TruncatedSeries<K> g(m - 1, T);
    for (const auto& [idx, c] : f.coeffs.terms()) {
        if (idx[m - 1] != static_cast<unsigned>(N)) continue;
        MultiIndex sub(idx.begin(), idx.end() - 1);
        if (total_degree(sub) <= T) g.set(sub, c);
    }
    return g;
}

}  // namespace dfh
