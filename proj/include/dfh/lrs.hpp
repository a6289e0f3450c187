#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dfh/algebraic.hpp"
#include "dfh/cyclotomic.hpp"
#include "dfh/linalg.hpp"
#include "dfh/numtheory.hpp"
#include "dfh/rational.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

// b_{n+D} determined by sum_k c_k b_{n+k} = 0 (c = char_poly coefficients),
// valid for n >= offset; initial holds b_offset .. b_{offset+D-1}.
template <typename K>
struct ConstRecurrence {
    UPoly<K> char_poly;
    std::vector<K> initial;
    long offset = 0;

    unsigned order() const { return static_cast<unsigned>(char_poly.degree()); }
    void validate() const {
        if (char_poly.degree() < 1) throw std::invalid_argument("recurrence order must be >= 1");
        if (char_poly.coeff(0) == K(0))
            throw std::invalid_argument("characteristic polynomial needs nonzero constant term");
        if (initial.size() != static_cast<std::size_t>(char_poly.degree()))
            throw std::invalid_argument("initial terms must match the order");
    }
};

// b_offset .. b_{offset+count-1}
template <typename K>
std::vector<K> generate_terms(const ConstRecurrence<K>& rec, std::size_t count) {
    rec.validate();
    unsigned D = rec.order();
    std::vector<K> out = rec.initial;
    out.resize(std::max<std::size_t>(count, D), K(0));
    K invlead = K(1) / rec.char_poly.lead();
    for (std::size_t n = D; n < out.size(); ++n) {
        K acc(0);
        for (unsigned k = 0; k < D; ++k) acc = acc + rec.char_poly.coeff(k) * out[n - D + k];
        out[n] = -acc * invlead;
    }
    out.resize(count);
    return out;
}

// Series coefficients of num/G up to index n_max inclusive.
template <typename K>
std::vector<K> ratfun_series(const UPoly<K>& num, const UPoly<K>& G, std::size_t n_max) {
    if (G.coeff(0) == K(0)) throw std::domain_error("denominator vanishes at 0");
    std::vector<K> a(n_max + 1, K(0));
    K inv = K(1) / G.coeff(0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        K acc = num.coeff(n);
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, static_cast<std::size_t>(G.degree()));
             ++k)
            acc = acc - G.coeff(k) * a[n - k];
        a[n] = acc * inv;
    }
    return a;
}

// The recurrence satisfied by the coefficients of num/G from index
// N1 = max(0, deg num - deg G + 1) on; characteristic polynomial x^D G(1/x).
template <typename K>
ConstRecurrence<K> recurrence_from_denominator(const UPoly<K>& G, const UPoly<K>& num) {
    if (G.coeff(0) == K(0)) throw std::domain_error("denominator vanishes at 0");
    if (G.degree() < 1) throw std::invalid_argument("denominator must be nonconstant");
    unsigned D = static_cast<unsigned>(G.degree());
    long N1 = std::max<long>(0, num.degree() - G.degree() + 1);
    auto a = ratfun_series(num, G, static_cast<std::size_t>(N1) + D - 1);
    std::vector<K> init(a.begin() + N1, a.end());
    return ConstRecurrence<K>{G.reversed(), std::move(init), N1};
}

// ---------------------------------------------------------------------------
// all roots of unity: exact, via cyclotomic trial division of the
// squarefree factors (phi(N) = deg bounds the candidate orders)
// ---------------------------------------------------------------------------

struct RootOfUnityCertificate {
    bool all = false;
    // (order N, multiplicity in char_poly)
    std::vector<std::pair<unsigned long, unsigned>> orders;
    std::optional<QPoly> witness;  // a non-cyclotomic factor when !all
};

inline RootOfUnityCertificate all_roots_of_unity(const ConstRecurrence<Rat>& rec) {
    rec.validate();
    RootOfUnityCertificate cert;
    for (const auto& [factor, mult] : squarefree_decomposition(rec.char_poly)) {
        QPoly f = factor;
        unsigned long dmax = static_cast<unsigned long>(f.degree());
        for (unsigned long d = 1; d <= dmax && f.degree() > 0; ++d)
            for (unsigned long n : orders_with_phi(d)) {
                const QPoly& phi = cyclotomic_polynomial(n);
                if (phi.degree() <= f.degree() && phi.divides(f)) {
                    f = f / phi;
                    cert.orders.emplace_back(n, mult);
                }
            }
        if (f.degree() > 0) {
            cert.all = false;
            cert.witness = primitive_part(f);
            return cert;
        }
    }
    cert.all = true;
    std::sort(cert.orders.begin(), cert.orders.end());
    return cert;
}

// ---------------------------------------------------------------------------
// closed forms over the exact field (rational) x (root of unity)
// ---------------------------------------------------------------------------

struct ClosedFormTerm {
    Cyclo root;
    UPoly<Cyclo> poly;  // polynomial in n
};
struct ClosedForm {
    std::vector<ClosedFormTerm> terms;
};

inline Cyclo evaluate_closed_form(const ClosedForm& cf, long n) {
    Cyclo acc(0);
    for (const auto& t : cf.terms) acc = acc + t.poly.eval(Cyclo(n)) * t.root.pow(n);
    return acc;
}

namespace detail {

// All positive divisors; needs the full factorization, so this refuses
// inputs whose cofactor after small trial division is composite.
inline std::vector<Int> int_divisors(Int n) {
    n = abs(n);
    if (n == 0) throw std::domain_error("divisors of zero");
    std::vector<std::pair<Int, unsigned>> fac;
    for (Int p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fac.emplace_back(p, e);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw std::domain_error("coefficient too hard to factor for rational root search");
        fac.emplace_back(n, 1);
    }
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        Int pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Rational roots with multiplicities (rational root theorem on the
// primitive integer form).
inline std::vector<std::pair<Rat, unsigned>> rational_roots(const QPoly& p) {
    if (p.degree() < 1) return {};
    QPoly prim = primitive_part(p);
    std::vector<std::pair<Rat, unsigned>> out;
    if (prim.coeff(0) == 0) {
        unsigned v = 0;
        std::vector<Rat> c = prim.coeffs();
        while (v < c.size() && c[v] == 0) ++v;
        out.emplace_back(Rat(0), v);
        prim = QPoly(std::vector<Rat>(c.begin() + v, c.end()));
        if (prim.degree() < 1) return out;
    }
    for (const Int& pn : int_divisors(prim.coeff(0).get_num()))
        for (const Int& qn : int_divisors(prim.lead().get_num()))
            for (int s : {1, -1}) {
                Rat cand = make_rat(s * pn, qn);
                if (prim.eval(cand) != 0) continue;
                unsigned mult = 0;
                QPoly lin(std::vector<Rat>{-cand, Rat(1)});
                while (lin.divides(prim)) {
                    prim = prim / lin;
                    ++mult;
                }
                out.emplace_back(cand, mult);
            }
    return out;
}

// Roots of C of the form q * zeta_N^k (q rational nonzero, gcd(k,N)=1),
// detected from common rational roots of the power-basis coordinate
// polynomials of C(zeta_N y). Returns roots with multiplicities.
inline std::vector<std::pair<Cyclo, unsigned>> cyclotomic_scaled_roots(const QPoly& C) {
    std::vector<std::pair<Cyclo, unsigned>> out;
    UPoly<Cyclo> rem(std::vector<Cyclo>(C.coeffs().begin(), C.coeffs().end()));
    // rational roots first
    for (const auto& [q, mult] : rational_roots(C)) {
        out.emplace_back(Cyclo(q), mult);
        UPoly<Cyclo> lin(std::vector<Cyclo>{Cyclo(-q), Cyclo(1)});
        for (unsigned t = 0; t < mult; ++t) rem = rem / lin;
    }
    unsigned long dmax = static_cast<unsigned long>(std::max<long>(C.degree(), 0));
    for (unsigned long d = 1; d <= dmax; ++d)
        for (unsigned long N : orders_with_phi(d)) {
            if (N < 2) continue;
            Cyclo zeta = Cyclo::root_of_unity(N, 1);
            // coordinate polynomials of C(zeta y)
            std::size_t phiN = euler_phi(N);
            std::vector<std::vector<Rat>> coords(phiN,
                                                 std::vector<Rat>(C.coeffs().size(), Rat(0)));
            Cyclo zj(1);
            for (std::size_t j = 0; j < C.coeffs().size(); ++j) {
                Cyclo c = (zj * Cyclo(C.coeff(j))).embed(N);
                for (std::size_t t = 0; t < phiN; ++t) coords[t][j] = c.coords()[t];
                zj = zj * zeta;
            }
            QPoly g;
            for (auto& cv : coords) g = poly_gcd(g, QPoly(std::move(cv)));
            if (g.degree() < 1) continue;
            for (const auto& [q, mult_unused] : rational_roots(g)) {
                if (q == 0) continue;
                for (unsigned long k = 1; k < N; ++k) {
                    if (std::gcd(k, N) != 1) continue;
                    Cyclo alpha = Cyclo::root_of_unity(N, k) * Cyclo(q);
                    UPoly<Cyclo> lin(std::vector<Cyclo>{-alpha, Cyclo(1)});
                    unsigned mult = 0;
                    while (!rem.is_zero() && rem.degree() > 0 && (rem % lin).is_zero()) {
                        rem = rem / lin;
                        ++mult;
                    }
                    if (mult) out.emplace_back(alpha, mult);
                }
            }
        }
    if (rem.degree() > 0)
        throw std::domain_error(
            "characteristic roots outside (rational) x (root of unity); "
            "use the root classification instead");
    return out;
}

}  // namespace detail

// Exact closed form g_n = sum_i P_i(n) alpha_i^n for recurrences whose
// characteristic roots are (rational) x (root of unity). Repeated roots are
// handled by a polynomial ansatz solved against 2D generated terms and
// verified on 3D more.
inline ClosedForm closed_form_cyclotomic(const ConstRecurrence<Rat>& rec) {
    rec.validate();
    unsigned D = rec.order();
    auto roots = detail::cyclotomic_scaled_roots(rec.char_poly);
    // unknowns: c_{i,t}, t < mult_i
    std::size_t nun = 0;
    for (const auto& [a, e] : roots) nun += e;
    if (nun != D) throw std::logic_error("root multiplicities do not sum to the order");

    auto terms = generate_terms(rec, 5 * D);
    std::vector<std::vector<Cyclo>> A(2 * D);
    std::vector<Cyclo> b(2 * D);
    for (std::size_t row = 0; row < 2 * D; ++row) {
        long n = rec.offset + static_cast<long>(row);
        for (const auto& [alpha, e] : roots) {
            Cyclo an = alpha.pow(n);
            Cyclo nt(1);
            for (unsigned t = 0; t < e; ++t) {
                A[row].push_back(nt * an);
                nt = nt * Cyclo(n);
            }
        }
        b[row] = Cyclo(terms[row]);
    }
    auto sol = solve_linear(A, b);
    if (!sol) throw std::logic_error("closed-form ansatz is inconsistent");

    ClosedForm cf;
    std::size_t at = 0;
    for (const auto& [alpha, e] : roots) {
        std::vector<Cyclo> pc((*sol).begin() + at, (*sol).begin() + at + e);
        at += e;
        UPoly<Cyclo> poly(std::move(pc));
        if (!poly.is_zero()) cf.terms.push_back(ClosedFormTerm{alpha, std::move(poly)});
    }
    for (std::size_t row = 2 * D; row < 5 * D; ++row) {
        long n = rec.offset + static_cast<long>(row);
        if (evaluate_closed_form(cf, n) != Cyclo(terms[row]))
            throw std::logic_error("closed form fails re-expansion check");
    }
    return cf;
}

// Smallest (preperiod, period) visible at this truncation; requires at
// least two full period repetitions of evidence. A truncation-level
// verdict, not a proof.
template <typename K>
std::optional<std::pair<std::size_t, std::size_t>> detect_periodicity(
    const std::vector<K>& terms) {
    std::size_t len = terms.size();
    if (len < 4) throw std::invalid_argument("need at least 4 terms");
    for (std::size_t q = 1; 2 * q <= len; ++q)
        for (std::size_t p = 0; p + 2 * q <= len; ++p) {
            bool ok = true;
            for (std::size_t n = p; n + q < len && ok; ++n)
                if (!(terms[n + q] == terms[n])) ok = false;
            if (ok) return std::make_pair(p, q);
        }
    return std::nullopt;
}

// deg P_i + 1 <= L + 1 for every term; the checkable restatement of the
// denominator multiplicity bound.
inline bool multiplicity_bound_check(const ClosedForm& cf, double L) {
    long maxdeg = 0;
    for (const auto& t : cf.terms) {
        if (!t.root.root_of_unity_order())
            throw std::domain_error("multiplicity bound requires root-of-unity roots");
        maxdeg = std::max(maxdeg, t.poly.degree());
    }
    return static_cast<double>(maxdeg + 1) <= L + 1.0;
}

// ---------------------------------------------------------------------------
// root equivalence classes: i ~ j iff alpha_i / alpha_j is a root of unity
// ---------------------------------------------------------------------------

using RootRep = std::variant<Cyclo, AlgebraicByMinPoly>;

namespace detail {

inline QPoly minpoly_of_cyclo(const Cyclo& c) {
    Cyclo e = c.canonicalize();
    UPoly<Cyclo> prod = UPoly<Cyclo>::constant(Cyclo(1));
    for (unsigned long a = 1; a <= e.order(); ++a) {
        if (std::gcd(a, e.order()) != 1) continue;
        Cyclo conj = e.automorphism(a);
        prod = prod * UPoly<Cyclo>(std::vector<Cyclo>{-conj, Cyclo(1)});
    }
    std::vector<Rat> q;
    for (const auto& coef : prod.coeffs()) {
        Cyclo canon = coef.canonicalize();
        if (!canon.is_rational()) throw std::logic_error("Galois orbit product not rational");
        q.push_back(canon.coords()[0]);
    }
    QPoly full(std::move(q));
    return full / poly_gcd(full, full.derivative());  // squarefree part
}

// Polynomial in x whose roots are the pairwise quotients alpha_i / beta_j:
// Res_y(B(y), A(x y)), computed by evaluation and interpolation.
inline QPoly quotient_poly(const QPoly& A, const QPoly& B) {
    long n = A.degree() * B.degree();
    std::vector<std::pair<Rat, Rat>> pts;
    long x = 1;
    while (static_cast<long>(pts.size()) <= n) {
        Rat xv(x);
        Rat r = resultant(B, A.scale_arg(xv));
        pts.emplace_back(xv, r);
        ++x;
    }
    return lagrange_interpolate(pts);
}

// true iff some conjugate quotient is a root of unity; exact for the
// designated roots when the minimal polynomials are irreducible and the
// quotient class is Galois-stable (the paper's setting).
inline bool quotient_has_root_of_unity(const QPoly& A, const QPoly& B) {
    QPoly R = primitive_part(quotient_poly(A, B));
    if (R.degree() < 1) return false;
    unsigned long dmax = static_cast<unsigned long>(R.degree());
    for (unsigned long d = 1; d <= dmax; ++d)
        for (unsigned long N : orders_with_phi(d))
            if (cyclotomic_polynomial(N).divides(R)) return true;
    return false;
}

inline bool roots_equivalent(const RootRep& a, const RootRep& b) {
    const Cyclo* ca = std::get_if<Cyclo>(&a);
    const Cyclo* cb = std::get_if<Cyclo>(&b);
    if (ca && cb) {
        if (ca->is_zero() || cb->is_zero()) throw std::invalid_argument("roots must be nonzero");
        return (*ca / *cb).root_of_unity_order().has_value();
    }
    QPoly A = ca ? minpoly_of_cyclo(*ca) : std::get<AlgebraicByMinPoly>(a).minpoly;
    QPoly B = cb ? minpoly_of_cyclo(*cb) : std::get<AlgebraicByMinPoly>(b).minpoly;
    if (A.coeff(0) == 0 || B.coeff(0) == 0) throw std::invalid_argument("roots must be nonzero");
    return quotient_has_root_of_unity(A, B);
}

}  // namespace detail

inline std::vector<std::vector<std::size_t>> root_equivalence_classes(
    const std::vector<RootRep>& roots) {
    std::vector<std::size_t> rep(roots.size());
    std::iota(rep.begin(), rep.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return rep[i] == i ? i : rep[i] = find(rep[i]);
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (find(i) == find(j)) continue;
            if (detail::roots_equivalent(roots[i], roots[j])) rep[find(j)] = find(i);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < roots.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    return out;
}

// ---------------------------------------------------------------------------
// arithmetic progression sections b_N = a_{N N2 + tau}
// ---------------------------------------------------------------------------

template <typename K>
ConstRecurrence<K> arithmetic_progression_section(const ConstRecurrence<K>& rec,
                                                  unsigned long N2, unsigned long tau) {
    rec.validate();
    if (N2 < 1 || tau >= N2) throw std::invalid_argument("need 0 <= tau < N2");
    unsigned D = rec.order();
    // char poly of the section: prod (x - gamma^{N2}) = Res_y(C(y), x - y^{N2})
    // up to a constant; evaluated pointwise and interpolated
    std::vector<std::pair<K, K>> pts;
    long x = 0;
    while (pts.size() <= D) {
        K xv(x);
        std::vector<K> py(N2 + 1, K(0));
        py[0] = xv;
        py[N2] = K(-1);
        pts.emplace_back(xv, resultant(rec.char_poly, UPoly<K>(std::move(py))));
        ++x;
    }
    UPoly<K> Q = lagrange_interpolate(pts).monic();
    if (Q.degree() != static_cast<long>(D)) throw std::logic_error("section char poly degenerate");

    long off_b = 0;
    if (rec.offset > static_cast<long>(tau))
        off_b = (rec.offset - static_cast<long>(tau) + static_cast<long>(N2) - 1) /
                static_cast<long>(N2);
    std::size_t need = static_cast<std::size_t>((off_b + 4L * D - 1) * static_cast<long>(N2) +
                                                static_cast<long>(tau) - rec.offset) +
                       1;
    auto a = generate_terms(rec, need);
    auto a_at = [&](long n) { return a[static_cast<std::size_t>(n - rec.offset)]; };
    std::vector<K> init;
    for (long N = off_b; N < off_b + static_cast<long>(D); ++N)
        init.push_back(a_at(N * static_cast<long>(N2) + static_cast<long>(tau)));
    ConstRecurrence<K> out{Q, std::move(init), off_b};
    auto regen = generate_terms(out, 4 * D);
    for (std::size_t i = 0; i < regen.size(); ++i) {
        long N = off_b + static_cast<long>(i);
        if (!(regen[i] == a_at(N * static_cast<long>(N2) + static_cast<long>(tau))))
            throw std::logic_error("section recurrence fails re-expansion check");
    }
    return out;
}

}  // namespace dfh
