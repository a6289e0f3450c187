#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dfh/numtheory.hpp"
#include "dfh/rational.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1}
// reduced modulo the N-th cyclotomic polynomial. The stored order is
// whatever the element was built in; canonicalize() moves it to the
// smallest cyclotomic field containing it.
class Cyclo {
   public:
    Cyclo() : order_(1), coords_(1, Rat(0)) {}
    Cyclo(long v) : order_(1), coords_(1, Rat(v)) {}
    explicit Cyclo(const Rat& v) : order_(1), coords_(1, v) {}
    Cyclo(unsigned long order, std::vector<Rat> coords)
        : order_(order), coords_(std::move(coords)) {
        if (coords_.size() != euler_phi(order_))
            throw std::invalid_argument("cyclotomic coordinate count must be phi(order)");
    }

    // zeta_N^k
    static Cyclo root_of_unity(unsigned long n, unsigned long k) {
        if (n == 0) throw std::invalid_argument("root of unity order must be positive");
        k %= n;
        return from_power_poly(n, QPoly::monomial(Rat(1), k));
    }

    unsigned long order() const { return order_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }
    // valid only when is_rational()
    Rat rational_value() const {
        if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
        return coords_[0];
    }

    Cyclo operator-() const {
        std::vector<Rat> r(coords_);
        for (auto& x : r) x = -x;
        return Cyclo(order_, std::move(r));
    }
    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        auto [x, y, n] = to_common(a, b);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        return Cyclo(n, std::move(x));
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y, n] = to_common(a, b);
        return from_power_poly(n, QPoly(std::move(x)) * QPoly(std::move(y)));
    }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        auto [x, y, n] = to_common(a, b);
        return x == y;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    Cyclo inverse() const {
        if (is_zero()) throw std::domain_error("cyclotomic division by zero");
        if (is_rational()) return Cyclo(Rat(1) / coords_[0]);
        auto eg = poly_ext_gcd(QPoly(coords_), cyclotomic_polynomial(order_));
        // gcd is 1 since Phi_N is irreducible and the element is nonzero
        return from_power_poly(order_, eg.u);
    }

    Cyclo pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo acc(1), base = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // Galois automorphism zeta_N -> zeta_N^a, gcd(a, N) = 1
    Cyclo automorphism(unsigned long a) const {
        QPoly img;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] != 0)
                img = img + QPoly::monomial(coords_[i], (i * a) % order_);
        return from_power_poly(order_, img);
    }

    // Re-express in Q(zeta_M) for order_ | M.
    Cyclo embed(unsigned long m) const {
        if (m % order_ != 0) throw std::invalid_argument("embed target must be a multiple of the order");
        if (m == order_) return *this;
        unsigned long step = m / order_;
        QPoly img;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] != 0) img = img + QPoly::monomial(coords_[i], i * step);
        return from_power_poly(m, img);
    }

    // Smallest cyclotomic field containing the element. Idempotent.
    Cyclo canonicalize() const;

    // Multiplicative order if the element is a root of unity.
    std::optional<unsigned long> root_of_unity_order() const;

   private:
    static Cyclo from_power_poly(unsigned long n, const QPoly& p) {
        QPoly r = p % cyclotomic_polynomial(n);
        std::vector<Rat> c(euler_phi(n), Rat(0));
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
        return Cyclo(n, std::move(c));
    }

    static std::tuple<std::vector<Rat>, std::vector<Rat>, unsigned long> to_common(
        const Cyclo& a, const Cyclo& b) {
        unsigned long n = ulong_lcm(a.order_, b.order_);
        Cyclo x = a.embed(n), y = b.embed(n);
        return {std::move(x.coords_), std::move(y.coords_), n};
    }

    unsigned long order_;
    std::vector<Rat> coords_;
};

namespace detail {

// Solve A c = rhs exactly, A given by columns; returns nullopt if inconsistent.
inline std::optional<std::vector<Rat>> solve_columns(
    const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& rhs) {
    std::size_t rows = rhs.size(), ncols = cols.size();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(ncols + 1, Rat(0)));
    for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t i = 0; i < rows; ++i) a[i][j] = cols[j][i];
    for (std::size_t i = 0; i < rows; ++i) a[i][ncols] = rhs[i];

    std::vector<long> pivot_col(rows, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = Rat(1) / a[r][c];
        for (std::size_t j = c; j <= ncols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j <= ncols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][ncols] != 0) return std::nullopt;
    std::vector<Rat> sol(ncols, Rat(0));
    for (std::size_t i = 0; i < r; ++i) sol[static_cast<std::size_t>(pivot_col[i])] = a[i][ncols];
    return sol;
}

}  // namespace detail

inline Cyclo Cyclo::canonicalize() const {
    for (unsigned long d : divisors(order_)) {
        if (d == order_) return *this;
        // fixed by Gal(Q(zeta_N)/Q(zeta_d)) = { sigma_a : a = 1 mod d }?
        bool fixed = true;
        for (unsigned long a = 1; a < order_ && fixed; ++a) {
            if (std::gcd(a, order_) != 1 || a % d != 1) continue;
            if (automorphism(a) != *this) fixed = false;
        }
        if (!fixed) continue;
        // coordinates w.r.t. the power basis of zeta_d inside Q(zeta_N)
        std::vector<std::vector<Rat>> cols;
        for (unsigned long j = 0; j < euler_phi(d); ++j)
            cols.push_back(Cyclo::root_of_unity(d, j).embed(order_).coords());
        auto sol = detail::solve_columns(cols, coords_);
        if (sol) return Cyclo(d, std::move(*sol));
    }
    return *this;
}

inline std::optional<unsigned long> Cyclo::root_of_unity_order() const {
    if (is_zero()) throw std::domain_error("zero is not a root of unity");
    Cyclo e = canonicalize();
    // torsion units of Q(zeta_n) are exactly the lcm(2, n)-th roots of unity
    unsigned long l = ulong_lcm(2, e.order());
    if (e.pow(static_cast<long>(l)) != Cyclo(1)) return std::nullopt;
    for (unsigned long t : divisors(l))
        if (e.pow(static_cast<long>(t)) == Cyclo(1)) return t;
    return std::nullopt;  // unreachable
}

enum class CycOp { Add, Sub, Mul };

inline Cyclo cyclotomic_arith(const Cyclo& a, const Cyclo& b, CycOp op) {
    switch (op) {
        case CycOp::Add: return a + b;
        case CycOp::Sub: return a - b;
        case CycOp::Mul: return a * b;
    }
    throw std::logic_error("unreachable");
}

}  // namespace dfh
