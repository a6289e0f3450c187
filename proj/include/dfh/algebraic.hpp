#pragma once

#include <optional>
#include <stdexcept>

#include "dfh/mahler.hpp"
#include "dfh/numtheory.hpp"
#include "dfh/rootcount.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

// Algebraic number given by a primitive irreducible integer polynomial and
// an isolating rectangle selecting one of its complex roots.
struct AlgebraicByMinPoly {
    QPoly minpoly;  // primitive, positive leading coefficient
    Box box;

    // Checks the representation invariants that are decidable here:
    // squarefree, primitive with positive lead, and the box isolates
    // exactly one root (certified by exact winding-number root counting).
    // Irreducibility over Q is the caller's contract.
    void validate() const {
        if (minpoly.degree() < 1)
            throw std::invalid_argument("minimal polynomial must be nonconstant");
        if (primitive_part(minpoly) != minpoly)
            throw std::invalid_argument("minimal polynomial must be primitive with positive lead");
        if (poly_gcd(minpoly, minpoly.derivative()).degree() > 0)
            throw std::invalid_argument("minimal polynomial must be squarefree");
        if (count_roots_in_box(minpoly, box) != 1)
            throw std::invalid_argument("isolating box must contain exactly one root");
    }
};

// Exact root-of-unity test: the minimal polynomial of a primitive N-th root
// of unity is the N-th cyclotomic polynomial, and phi(N) = deg pins down the
// finitely many candidate orders.
inline std::optional<unsigned long> root_of_unity_order(const QPoly& minpoly) {
    QPoly p = primitive_part(minpoly);
    if (p.degree() < 1) throw std::invalid_argument("minimal polynomial must be nonconstant");
    unsigned long d = static_cast<unsigned long>(p.degree());
    for (unsigned long n : orders_with_phi(d))
        if (cyclotomic_polynomial(n) == p) return n;
    return std::nullopt;
}

inline std::optional<unsigned long> root_of_unity_order(const AlgebraicByMinPoly& a) {
    return root_of_unity_order(a.minpoly);
}

// Certified enclosure of the Weil height h(alpha) from the minimal
// polynomial (independent of which root the box selects).
inline Enclosure mahler_height(const AlgebraicByMinPoly& a, double tol = 1e-9) {
    return algebraic_height(primitive_part(a.minpoly), tol);
}

}  // namespace dfh
