#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfh/rational.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

// ---------------------------------------------------------------------------
// Sturm chains and exact real root isolation for rational polynomials.
// ---------------------------------------------------------------------------

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    QPoly sf = p / poly_gcd(p, p.derivative());  // squarefree part
    chain.push_back(sf);
    chain.push_back(sf.derivative());
    while (!chain.back().is_zero()) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        chain.push_back(-(a % b));
    }
    chain.pop_back();
    return chain;
}

inline int sign_variations_at(const std::vector<QPoly>& chain, const Rat& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        Rat val = q.eval(x);
        int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
    }
    return v;
}

// number of distinct real roots in (a, b]
inline int count_real_roots(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

// Cauchy bound: all real roots lie in (-B, B).
inline Rat root_bound(const QPoly& p) {
    Rat b(0);
    for (const auto& c : p.coeffs()) {
        Rat a = abs(c / p.lead());
        if (a > b) b = a;
    }
    return b + 1;
}

// Disjoint open isolating intervals, one per distinct real root in (a, b).
// Roots exactly at a or b are excluded. Interval endpoints are never roots.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p, Rat a, Rat b) {
    std::vector<std::pair<Rat, Rat>> out;
    if (p.is_zero()) throw std::domain_error("cannot isolate roots of the zero polynomial");
    if (p.degree() == 0 || a >= b) return out;
    QPoly sf = p / poly_gcd(p, p.derivative());
    auto chain = sturm_chain(sf);
    // nudge endpoints off roots
    auto off_root = [&](Rat x, const Rat& toward) {
        Rat step = (toward - x) / 1024;
        while (sf.eval(x) == 0) x += step;
        return x;
    };
    a = off_root(a, b);
    b = off_root(b, a);
    if (a >= b) return out;

    std::vector<std::pair<Rat, Rat>> work{{a, b}};
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int n = count_real_roots(chain, lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            out.emplace_back(lo, hi);
            continue;
        }
        Rat mid = (lo + hi) / 2;
        mid = off_root(mid, hi);
        work.emplace_back(lo, mid);
        work.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Shrink an isolating interval below the requested width.
inline std::pair<Rat, Rat> refine_root(const QPoly& sf, const std::vector<QPoly>& chain,
                                       Rat lo, Rat hi, const Rat& width) {
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (sf.eval(mid) == 0) {
            Rat eps = (hi - lo) / 1024;
            return {mid - eps < lo ? lo : mid - eps, mid + eps > hi ? hi : mid + eps};
        }
        if (count_real_roots(chain, lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Exact root counting in an axis-parallel rectangle via the winding number
// of p along the boundary, computed from quadrant transitions at the roots
// of Re p and Im p on each edge. All arithmetic is rational, so the count
// is certified. Roots on the boundary raise.
// ---------------------------------------------------------------------------

struct Box {
    Rat re_lo, re_hi, im_lo, im_hi;
};

namespace detail {

struct EdgeCurve {
    QPoly u, v;   // real and imaginary part of p(z(t))
    Rat t0, t1;   // traversal range, increasing
};

// p(A + B t) for complex constants A, B given as (re, im)
inline EdgeCurve edge_curve(const QPoly& p, Rat a_re, Rat a_im, Rat b_re, Rat b_im,
                            Rat t0, Rat t1) {
    QPoly zre = QPoly(std::vector<Rat>{a_re, b_re});
    QPoly zim = QPoly(std::vector<Rat>{a_im, b_im});
    QPoly re, im;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        QPoly nre = re * zre - im * zim + QPoly::constant(*it);
        QPoly nim = re * zim + im * zre;
        re = std::move(nre);
        im = std::move(nim);
    }
    return EdgeCurve{std::move(re), std::move(im), std::move(t0), std::move(t1)};
}

inline int quadrant(const Rat& u, const Rat& v) {
    if (u > 0 && v >= 0) return 0;
    if (u <= 0 && v > 0) return 1;
    if (u < 0 && v <= 0) return 2;
    if (u >= 0 && v < 0) return 3;
    return -1;  // origin
}

}  // namespace detail

// Number of roots of p (with multiplicity) strictly inside the box.
inline int count_roots_in_box(const QPoly& p, const Box& box) {
    if (p.degree() < 1) return 0;
    if (box.re_lo >= box.re_hi || box.im_lo >= box.im_hi)
        throw std::invalid_argument("degenerate box");

    // counterclockwise: bottom, right, top, left
    std::vector<detail::EdgeCurve> edges;
    edges.push_back(detail::edge_curve(p, Rat(0), box.im_lo, Rat(1), Rat(0), box.re_lo, box.re_hi));
    edges.push_back(detail::edge_curve(p, box.re_hi, Rat(0), Rat(0), Rat(1), box.im_lo, box.im_hi));
    edges.push_back(detail::edge_curve(p, Rat(0), box.im_hi, Rat(-1), Rat(0), -box.re_hi, -box.re_lo));
    edges.push_back(detail::edge_curve(p, box.re_lo, Rat(0), Rat(0), Rat(-1), -box.im_hi, -box.im_lo));

    // quadrant samples along the whole boundary, separating every root of
    // (Re p)(Im p) on each edge; corners are never sampled
    std::vector<std::pair<Rat, Rat>> samples;  // (u, v) values
    for (const auto& e : edges) {
        if (e.u.is_zero() && e.v.is_zero())
            throw std::domain_error("polynomial vanishes on a boundary edge");
        QPoly common = e.u.is_zero() ? e.v : (e.v.is_zero() ? e.u : poly_gcd(e.u, e.v));
        if (common.degree() > 0) {
            if (!isolate_real_roots(common, e.t0, e.t1).empty() ||
                common.eval(e.t0) == 0 || common.eval(e.t1) == 0)
                throw std::domain_error("root of p on the boundary of the box");
        }
        struct Isolated {
            Rat lo, hi;
            QPoly sf;
            std::vector<QPoly> chain;
        };
        std::vector<Isolated> roots;
        for (const auto& q : {e.u, e.v}) {
            if (q.degree() < 1) continue;
            QPoly sf = q / poly_gcd(q, q.derivative());
            auto chain = sturm_chain(sf);
            for (auto& [lo, hi] : isolate_real_roots(q, e.t0, e.t1))
                roots.push_back(Isolated{lo, hi, sf, chain});
        }
        auto by_lo = [](const Isolated& a, const Isolated& b) { return a.lo < b.lo; };
        std::sort(roots.begin(), roots.end(), by_lo);
        // refine until intervals are pairwise disjoint (the underlying roots
        // are distinct: a common root of u and v would be a boundary zero)
        // and strictly interior to the edge, so cut points never land on a
        // corner where the other coordinate polynomial may vanish
        bool again = true;
        while (again) {
            again = false;
            auto shrink = [&](Isolated& r) {
                Rat w = (r.hi - r.lo) / 4;
                std::tie(r.lo, r.hi) = refine_root(r.sf, r.chain, r.lo, r.hi, w);
            };
            // pull endpoints strictly inside the edge; the root itself is
            // strictly interior, so repeatedly probing closer to the stuck
            // endpoint eventually separates it from the root
            for (auto& r : roots) {
                while (r.lo <= e.t0) {
                    again = true;
                    Rat c = r.lo + (r.hi - r.lo) / 16;
                    while (r.sf.eval(c) == 0) c = (r.lo + c) / 2;
                    if (count_real_roots(r.chain, c, r.hi) == 1)
                        r.lo = c;
                    else
                        r.hi = c;
                }
                while (r.hi >= e.t1) {
                    again = true;
                    Rat c = r.hi - (r.hi - r.lo) / 16;
                    while (r.sf.eval(c) == 0) c = (r.hi + c) / 2;
                    if (count_real_roots(r.chain, r.lo, c) == 1)
                        r.hi = c;
                    else
                        r.lo = c;
                }
            }
            for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
                if (roots[i].hi > roots[i + 1].lo) {
                    again = true;
                    shrink(roots[i]);
                    shrink(roots[i + 1]);
                }
            }
            std::sort(roots.begin(), roots.end(), by_lo);
        }
        std::vector<Rat> cuts;  // points strictly between consecutive roots
        Rat prev = e.t0;
        for (const auto& r : roots) {
            cuts.push_back((prev + r.lo) / 2);
            prev = r.hi;
        }
        cuts.push_back((prev + e.t1) / 2);
        for (const auto& t : cuts) samples.emplace_back(e.u.eval(t), e.v.eval(t));
    }

    long total = 0;
    std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        int q0 = detail::quadrant(samples[i].first, samples[i].second);
        int q1 = detail::quadrant(samples[(i + 1) % n].first, samples[(i + 1) % n].second);
        if (q0 < 0 || q1 < 0)
            throw std::domain_error("root of p on the boundary of the box");
        int d = (q1 - q0 + 4) % 4;
        if (d == 1)
            total += 1;
        else if (d == 3)
            total -= 1;
        else if (d == 2)
            throw std::logic_error("quadrant jump of 2: sample separation failed");
    }
    if (total % 4 != 0) throw std::logic_error("winding not an integer");
    return static_cast<int>(total / 4);
}

}  // namespace dfh
