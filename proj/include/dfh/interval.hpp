#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace dfh {

// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
// Only the operations the height/Mahler computations need.
class MpfrInterval {
   public:
    explicit MpfrInterval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    MpfrInterval(const MpfrInterval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    MpfrInterval(MpfrInterval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    MpfrInterval& operator=(MpfrInterval o) {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~MpfrInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static MpfrInterval from_int(const mpz_class& v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval from_rat(const mpq_class& v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static MpfrInterval from_double(double v, mpfr_prec_t prec) {
        MpfrInterval r(prec);
        mpfr_set_d(r.lo_, v, MPFR_RNDD);
        mpfr_set_d(r.hi_, v, MPFR_RNDU);
        return r;
    }

    mpfr_prec_t precision() const { return prec_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double width_d() const {
        MpfrInterval w(prec_);
        mpfr_sub(w.hi_, hi_, lo_, MPFR_RNDU);
        return mpfr_get_d(w.hi_, MPFR_RNDU);
    }
    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }

    friend MpfrInterval operator+(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec_);
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend MpfrInterval operator-(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec_);
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend MpfrInterval operator*(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        bool first = true;
        auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        };
        consider(a.lo_, b.lo_);
        consider(a.lo_, b.hi_);
        consider(a.hi_, b.lo_);
        consider(a.hi_, b.hi_);
        mpfr_clear(t);
        return r;
    }

    MpfrInterval abs() const {
        MpfrInterval r(prec_);
        if (contains_zero()) {
            mpfr_set_zero(r.lo_, 1);
            mpfr_abs(r.hi_, lo_, MPFR_RNDU);
            MpfrInterval t(prec_);
            mpfr_abs(t.hi_, hi_, MPFR_RNDU);
            if (mpfr_cmp(t.hi_, r.hi_) > 0) mpfr_set(r.hi_, t.hi_, MPFR_RNDU);
        } else if (mpfr_sgn(lo_) > 0) {
            r = *this;
        } else {
            mpfr_neg(r.lo_, hi_, MPFR_RNDD);
            mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        }
        return r;
    }

    // pointwise max of two intervals
    static MpfrInterval max(const MpfrInterval& a, const MpfrInterval& b) {
        MpfrInterval r(a.prec_);
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // natural log; requires lo > 0
    MpfrInterval log() const {
        if (!strictly_positive()) throw std::domain_error("log of non-positive interval");
        MpfrInterval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

   private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// Certified double enclosure of log of a positive rational.
inline std::pair<double, double> log_enclosure(const mpq_class& v) {
    if (v <= 0) throw std::domain_error("log of non-positive rational");
    if (v == 1) return {0.0, 0.0};
    auto iv = MpfrInterval::from_rat(v, 128).log();
    return {iv.lo_d(), iv.hi_d()};
}

}  // namespace dfh
