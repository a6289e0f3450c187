#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dfh/interval.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

struct EnclosureError : std::runtime_error {
    Enclosure achieved;
    EnclosureError(const std::string& msg, Enclosure got)
        : std::runtime_error(msg), achieved(got) {}
};

namespace detail {

// One Graeffe step: roots are squared, so log M doubles.
// q(y) = (-1)^d p(sqrt y) p(-sqrt y) = pe(y)^2 - y po(y)^2 up to sign.
inline std::vector<MpfrInterval> graeffe_step(const std::vector<MpfrInterval>& c) {
    std::size_t d = c.size() - 1;
    std::vector<MpfrInterval> out(d + 1, MpfrInterval(c[0].precision()));
    for (std::size_t k = 0; k <= d; ++k) {
        // coefficient of y^k in pe^2 - y po^2, where pe_i = c_{2i}, po_i = c_{2i+1}
        MpfrInterval acc(c[0].precision());
        for (std::size_t i = 0; 2 * i <= d; ++i) {
            std::size_t j2 = 0;
            if (k >= i) j2 = k - i;
            if (k >= i && 2 * j2 <= d) acc = acc + c[2 * i] * c[2 * j2];
        }
        for (std::size_t i = 0; 2 * i + 1 <= d; ++i) {
            if (k >= i + 1) {
                std::size_t j = k - 1 - i;
                if (2 * j + 1 <= d) acc = acc - c[2 * i + 1] * c[2 * j + 1];
            }
        }
        out[k] = acc;
    }
    return out;
}

inline double log_binomial(unsigned long n, unsigned long k) {
    double s = 0.0;
    for (unsigned long i = 1; i <= k; ++i)
        s += std::log(static_cast<double>(n - k + i)) - std::log(static_cast<double>(i));
    return s;
}

}  // namespace detail

// Certified enclosure of log M(p), the logarithmic Mahler measure
// log|a_d| + sum log^+ |alpha_i|. After k Graeffe steps with iterate q,
//   log M(p) = log M(q) / 2^k,
// and Landau/Mahler coefficient bounds sandwich log M(q) by log ||q||_inf
// up to an additive constant depending only on the degree, which the
// division by 2^k shrinks below any tolerance.
inline Enclosure log_mahler_measure(const QPoly& p, double tol = 1e-9) {
    // Graeffe iterates reach exponents ~ 2^steps * log2 M; widen the
    // exponent range once so they do not overflow to infinity.
    [[maybe_unused]] static const bool mpfr_range_widened = [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        return true;
    }();
    if (p.is_zero()) throw std::domain_error("Mahler measure of the zero polynomial");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    unsigned long d = static_cast<unsigned long>(p.degree());
    if (d == 0) {
        auto iv = MpfrInterval::from_rat(Rat(abs(Rat(p.lead()).get_num()), p.lead().get_den()), 192).log();
        return Enclosure{iv.lo_d(), iv.hi_d()};
    }

    double slack = detail::log_binomial(d, d / 2) + 0.5 * std::log(static_cast<double>(d + 1));
    int steps = 1;
    while (slack / std::pow(2.0, steps) > tol / 2 && steps < 60) ++steps;

    Enclosure best{-1e308, 1e308};
    for (mpfr_prec_t prec = 192; prec <= 12288; prec *= 2) {
        std::vector<MpfrInterval> c;
        c.reserve(d + 1);
        for (unsigned long i = 0; i <= d; ++i)
            c.push_back(MpfrInterval::from_rat(p.coeff(i), prec));
        bool ok = true;
        for (int s = 0; s < steps && ok; ++s) {
            c = detail::graeffe_step(c);
            // normalize by the max magnitude to keep exponents in range;
            // track the shed factor in log space
        }
        // ||q||_inf as an interval
        MpfrInterval norm(prec);
        for (const auto& ci : c) norm = MpfrInterval::max(norm, ci.abs());
        if (!norm.strictly_positive()) {
            ok = false;  // interval blowup swallowed the norm; retry wider
        }
        if (!ok) continue;
        MpfrInterval logn = norm.log();
        double scale = std::pow(2.0, steps);
        double lo = (logn.lo_d() - detail::log_binomial(d, d / 2)) / scale;
        double hi = (logn.hi_d() + 0.5 * std::log(static_cast<double>(d + 1))) / scale;
        if (hi - lo < best.hi - best.lo) best = Enclosure{lo, hi};
        if (best.hi - best.lo <= tol) return best;
    }
    throw EnclosureError("Mahler enclosure tolerance unreachable within precision budget", best);
}

// Logarithmic Weil height of an algebraic number with the given minimal
// polynomial: h = log M(p) / deg p.
inline Enclosure algebraic_height(const QPoly& minpoly, double tol = 1e-9) {
    if (minpoly.degree() < 1) throw std::invalid_argument("minimal polynomial must be nonconstant");
    double d = static_cast<double>(minpoly.degree());
    Enclosure m = log_mahler_measure(minpoly, tol * d);
    return Enclosure{m.lo / d, m.hi / d};
}

}  // namespace dfh
