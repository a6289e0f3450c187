#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfh/numtheory.hpp"
#include "dfh/rational.hpp"

namespace dfh {

// Dense univariate polynomial over a field K. Invariant: no trailing zero
// coefficient (the zero polynomial has an empty coefficient vector).
template <typename K>
class UPoly {
   public:
    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(K v) { return UPoly(std::vector<K>{std::move(v)}); }
    // c * x^n
    static UPoly monomial(K c, std::size_t n) {
        std::vector<K> v(n + 1, K(0));
        v[n] = std::move(c);
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    const K& lead() const {
        if (c_.empty()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator-() const {
        std::vector<K> r(c_);
        for (auto& x : r) x = -x;
        return UPoly(std::move(r));
    }
    UPoly operator+(const UPoly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return UPoly(std::move(r));
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<K> r(c_.size() + o.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return UPoly(std::move(r));
    }
    UPoly operator*(const K& s) const {
        std::vector<K> r(c_);
        for (auto& x : r) x = x * s;
        return UPoly(std::move(r));
    }

    K eval(const K& x) const {
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
        return UPoly(std::move(r));
    }

    // quotient/remainder; divisor must be nonzero
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UPoly rem = *this;
        if (degree() < d.degree()) return {UPoly{}, rem};
        std::vector<K> q(static_cast<std::size_t>(degree() - d.degree()) + 1, K(0));
        K invlead = K(1) / d.lead();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            K f = rem.lead() * invlead;
            q[shift] = f;
            rem = rem - d * UPoly::monomial(f, shift);
        }
        return {UPoly(std::move(q)), rem};
    }
    UPoly operator/(const UPoly& d) const { return divmod(d).first; }
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }
    bool divides(const UPoly& dividend) const { return dividend.divmod(*this).second.is_zero(); }

    UPoly monic() const {
        if (is_zero()) return {};
        return *this * (K(1) / lead());
    }

    // coefficients reversed: x^deg * p(1/x)
    UPoly reversed() const {
        std::vector<K> r(c_.rbegin(), c_.rend());
        return UPoly(std::move(r));
    }

    // p(s * x)
    UPoly scale_arg(const K& s) const {
        std::vector<K> r(c_);
        K p(1);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = r[i] * p;
            p = p * s;
        }
        return UPoly(std::move(r));
    }

    // p(x + a)
    UPoly shift_arg(const K& a) const {
        UPoly res;
        UPoly lin(std::vector<K>{a, K(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            res = res * lin + UPoly::constant(*it);
        return res;
    }

    UPoly pow(unsigned long e) const {
        UPoly acc = UPoly::constant(K(1));
        UPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

template <typename K>
UPoly<K> poly_gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero()) {
        UPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// g = gcd(a, b) monic, with u*a + v*b = g
template <typename K>
struct ExtGcd {
    UPoly<K> g, u, v;
};

template <typename K>
ExtGcd<K> poly_ext_gcd(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r0 = a, r1 = b;
    UPoly<K> u0 = UPoly<K>::constant(K(1)), u1;
    UPoly<K> v0, v1 = UPoly<K>::constant(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        UPoly<K> u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    K inv = K(1) / r0.lead();
    return {r0 * inv, u0 * inv, v0 * inv};
}

// Res(a, b) over the fraction field, by the Euclidean recurrence
//   res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r).
template <typename K>
K resultant(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero() || b.is_zero()) return K(0);
    K sign(1), scale(1);
    while (b.degree() > 0) {
        UPoly<K> r = a % b;
        if (r.is_zero()) return K(0);  // common factor
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        long drop = a.degree() - r.degree();
        K lb = b.lead(), p(1);
        for (long i = 0; i < drop; ++i) p = p * lb;
        scale = scale * p;
        a = std::move(b);
        b = std::move(r);
    }
    // b constant: res = b^{deg a}
    K p(1);
    for (long i = 0; i < a.degree(); ++i) p = p * b.coeff(0);
    return sign * scale * p;
}

// Unique polynomial of degree < points.size() through the given points.
template <typename K>
UPoly<K> lagrange_interpolate(const std::vector<std::pair<K, K>>& points) {
    UPoly<K> acc;
    for (std::size_t i = 0; i < points.size(); ++i) {
        UPoly<K> basis = UPoly<K>::constant(K(1));
        K denom(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = basis * UPoly<K>(std::vector<K>{-points[j].first, K(1)});
            denom = denom * (points[i].first - points[j].first);
        }
        acc = acc + basis * (points[i].second / denom);
    }
    return acc;
}

using QPoly = UPoly<Rat>;

// Squarefree decomposition (Yun): returns {factor, multiplicity}, factors
// monic, pairwise coprime, product over factor^mult == monic(p).
inline std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, unsigned>> out;
    QPoly f = p.monic();
    if (f.degree() <= 0) return out;
    QPoly df = f.derivative();
    QPoly a = poly_gcd(f, df);
    QPoly b = f / a;
    QPoly c = df / a;
    QPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        QPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// N-th cyclotomic polynomial over Q (integer coefficients), cached.
inline const QPoly& cyclotomic_polynomial(unsigned long n) {
    static std::map<unsigned long, QPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    QPoly phi;
    if (n == 1) {
        phi = QPoly(std::vector<Rat>{Rat(-1), Rat(1)});
    } else {
        std::vector<Rat> xn(n + 1, Rat(0));
        xn[0] = -1;
        xn[n] = 1;
        phi = QPoly(std::move(xn));
        for (unsigned long d : divisors(n))
            if (d < n) phi = phi / cyclotomic_polynomial(d);
    }
    return cache.emplace(n, std::move(phi)).first->second;
}

// Primitive integer polynomial: clear denominators, divide by content, make
// the leading coefficient positive.
inline QPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return p;
    Int l(1);
    for (const auto& c : p.coeffs()) l = lcm(l, c.get_den());
    Int g(0);
    std::vector<Rat> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Int v = c.get_num() * (l / c.get_den());
        g = gcd(g, v);
        out.emplace_back(v);
    }
    if (g == 0) g = 1;
    if (out.back() < 0) g = -g;
    for (auto& c : out) c /= Rat(g);
    return QPoly(std::move(out));
}

}  // namespace dfh
