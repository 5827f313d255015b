#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <vector>

namespace translator {

/// Laurent polynomial sum_k c_k r^(low + k) over a coefficient field
/// (Rational for exact work, double for evaluation).
template <typename Coeff>
class Polynomial {
public:
    Polynomial() = default;

    /// Coefficients of r^low, r^(low+1), ...
    Polynomial(std::vector<Coeff> coeffs, int low = 0) : low_(low), c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const Coeff& c) { return Polynomial({c}, 0); }
    static Polynomial monomial(const Coeff& c, int exponent) { return Polynomial({c}, exponent); }

    bool is_zero() const { return c_.empty(); }
    int low() const { return low_; }
    /// Highest exponent with a stored coefficient; undefined for zero.
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }

    Coeff coeff(int exponent) const {
        if (is_zero() || exponent < low_ || exponent > high()) return Coeff(0);
        return c_[static_cast<std::size_t>(exponent - low_)];
    }

    /// Lowest exponent with nonzero coefficient; INT_MAX for the zero polynomial.
    int order() const { return is_zero() ? INT_MAX : low_; }

    template <typename X>
    X evaluate(const X& r) const {
        if (is_zero()) return X(0);
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + X(*it);
        X shift(1);
        if (low_ >= 0) {
            for (int i = 0; i < low_; ++i) shift = shift * r;
        } else {
            for (int i = 0; i < -low_; ++i) shift = shift * r;
            return acc / shift;
        }
        return acc * shift;
    }

    Polynomial derivative() const {
        if (is_zero()) return {};
        std::vector<Coeff> d(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) d[k] = c_[k] * Coeff(low_ + static_cast<int>(k));
        return Polynomial(std::move(d), low_ - 1);
    }

    /// Multiplies by r^k.
    Polynomial shifted(int k) const {
        Polynomial p = *this;
        p.low_ += k;
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        const int lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
        std::vector<Coeff> sum(static_cast<std::size_t>(hi - lo + 1), Coeff(0));
        for (int e = low_; e <= high(); ++e) sum[static_cast<std::size_t>(e - lo)] += c_[static_cast<std::size_t>(e - low_)];
        for (int e = o.low_; e <= o.high(); ++e)
            sum[static_cast<std::size_t>(e - lo)] += o.c_[static_cast<std::size_t>(e - o.low_)];
        low_ = lo;
        c_ = std::move(sum);
        trim();
        return *this;
    }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& c : p.c_) c = -c;
        return p;
    }

    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> prod(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == Coeff(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(prod), a.low_ + b.low_);
    }

    friend Polynomial operator*(const Coeff& s, const Polynomial& p) { return Polynomial::constant(s) * p; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.low_ == b.low_ && a.c_ == b.c_;
    }

private:
    // Drops zero coefficients at both ends so that low_ is the true order.
    void trim() {
        std::size_t first = 0;
        while (first < c_.size() && c_[first] == Coeff(0)) ++first;
        if (first == c_.size()) {
            c_.clear();
            low_ = 0;
            return;
        }
        std::size_t last = c_.size();
        while (last > first && c_[last - 1] == Coeff(0)) --last;
        c_ = std::vector<Coeff>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                c_.begin() + static_cast<std::ptrdiff_t>(last));
        low_ += static_cast<int>(first);
    }

    int low_ = 0;
    std::vector<Coeff> c_;
};

}  // namespace translator
