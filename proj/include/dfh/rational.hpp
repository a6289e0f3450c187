#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace dfh {

using Int = mpz_class;
using Rat = mpq_class;

// "p" or "p/q"; q must be positive after canonicalization.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

// mpq_class's two-argument constructor does not reduce to lowest terms;
// all Rat values in this library are kept canonical, so build them here.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

enum class RatOp { Add, Sub, Mul, Div };

inline Rat rational_arith(const Rat& a, const Rat& b, RatOp op) {
    switch (op) {
        case RatOp::Add: return a + b;
        case RatOp::Sub: return a - b;
        case RatOp::Mul: return a * b;
        case RatOp::Div:
            if (b == 0) throw std::domain_error("rational division by zero");
            return a / b;
    }
    throw std::logic_error("unreachable");
}

inline RatOp parse_rat_op(const std::string& s) {
    if (s == "+") return RatOp::Add;
    if (s == "-") return RatOp::Sub;
    if (s == "*" || s == "x") return RatOp::Mul;
    if (s == "/") return RatOp::Div;
    throw std::invalid_argument("unknown operator: " + s);
}

// 1, -1 -> order 1, 2; everything else has infinite multiplicative order.
inline std::optional<unsigned> rational_root_of_unity_order(const Rat& a) {
    if (a == 0) throw std::domain_error("zero has no multiplicative order");
    if (a == 1) return 1;
    if (a == -1) return 2;
    return std::nullopt;
}

}  // namespace dfh
