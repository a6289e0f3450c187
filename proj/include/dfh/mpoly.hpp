#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dfh/rational.hpp"

namespace dfh {

// Exponent vector; length is the ambient variable count.
using MultiIndex = std::vector<unsigned>;

inline unsigned total_degree(const MultiIndex& idx) {
    return std::accumulate(idx.begin(), idx.end(), 0u);
}

// Sparse multivariate polynomial over K; absent index means zero, and no
// explicitly stored zero coefficients.
template <typename K>
class MPoly {
   public:
    explicit MPoly(unsigned m = 1) : m_(m) {}

    unsigned vars() const { return m_; }
    const std::map<MultiIndex, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long degree() const {
        long d = -1;
        for (const auto& [idx, c] : terms_) d = std::max(d, static_cast<long>(total_degree(idx)));
        return d;
    }

    K coeff(const MultiIndex& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? K(0) : it->second;
    }

    void set(const MultiIndex& idx, K v) {
        if (idx.size() != m_) throw std::invalid_argument("index length mismatch");
        if (v == K(0))
            terms_.erase(idx);
        else
            terms_[idx] = std::move(v);
    }

    void add_term(const MultiIndex& idx, const K& v) {
        if (idx.size() != m_) throw std::invalid_argument("index length mismatch");
        auto it = terms_.find(idx);
        if (it == terms_.end()) {
            if (v != K(0)) terms_.emplace(idx, v);
        } else {
            it->second = it->second + v;
            if (it->second == K(0)) terms_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r(m_);
        for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
        return r;
    }
    MPoly operator+(const MPoly& o) const {
        check_vars(o);
        MPoly r = *this;
        for (const auto& [idx, c] : o.terms_) r.add_term(idx, c);
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        check_vars(o);
        MPoly r(m_);
        for (const auto& [i1, c1] : terms_)
            for (const auto& [i2, c2] : o.terms_) {
                MultiIndex idx(m_);
                for (unsigned v = 0; v < m_; ++v) idx[v] = i1[v] + i2[v];
                r.add_term(idx, c1 * c2);
            }
        return r;
    }
    MPoly operator*(const K& s) const {
        MPoly r(m_);
        if (s == K(0)) return r;
        for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, c * s);
        return r;
    }
    bool operator==(const MPoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    K constant_term() const { return coeff(MultiIndex(m_, 0)); }

    // d/dx_i
    MPoly derivative(unsigned i) const {
        MPoly r(m_);
        for (const auto& [idx, c] : terms_) {
            if (idx[i] == 0) continue;
            MultiIndex j = idx;
            --j[i];
            r.add_term(j, c * K(static_cast<long>(idx[i])));
        }
        return r;
    }

    template <typename F>
    MPoly<std::invoke_result_t<F, K>> map_coeffs(F f) const {
        MPoly<std::invoke_result_t<F, K>> r(m_);
        for (const auto& [idx, c] : terms_) r.set(idx, f(c));
        return r;
    }

   private:
    void check_vars(const MPoly& o) const {
        if (m_ != o.m_) throw std::invalid_argument("variable count mismatch");
    }
    unsigned m_;
    std::map<MultiIndex, K> terms_;
};

// Power series truncated by total degree: indices with ||idx|| <= T.
template <typename K>
struct TruncatedSeries {
    unsigned m = 1;
    unsigned T = 0;
    MPoly<K> coeffs{1};

    TruncatedSeries() = default;
    TruncatedSeries(unsigned m_, unsigned T_) : m(m_), T(T_), coeffs(m_) {}

    void set(const MultiIndex& idx, K v) {
        if (total_degree(idx) > T) throw std::invalid_argument("index beyond truncation");
        coeffs.set(idx, std::move(v));
    }
    K coeff(const MultiIndex& idx) const { return coeffs.coeff(idx); }
};

// Enumerate all indices of length m with total degree exactly d.
inline void for_each_index_of_degree(unsigned m, unsigned d,
                                     const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex idx(m, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
        if (pos + 1 == m) {
            idx[pos] = left;
            fn(idx);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            idx[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, d);
}

}  // namespace dfh
