#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hadamard {

// Dense bivariate polynomial sum_{i,j} c[i][j] u^i v^j.
//
// T is double for the numeric paths and Rational for the exact oracle; all
// operations below are exact when T is exact.
template <typename T>
class Poly2 {
public:
    // Largest per-variable degree accepted for user-facing surfaces.
    static constexpr int kMaxSurfaceDegree = 8;

    Poly2() : Poly2(0, 0) {}
    Poly2(int degree_u, int degree_v)
        : du_(degree_u), dv_(degree_v), c_(static_cast<std::size_t>((degree_u + 1) * (degree_v + 1)), T(0)) {
        if (degree_u < 0 || degree_v < 0) throw std::invalid_argument("negative polynomial degree");
    }

    static Poly2 constant(T value) {
        Poly2 p(0, 0);
        p.at(0, 0) = value;
        return p;
    }
    static Poly2 monomial(int i, int j, T coeff) {
        Poly2 p(i, j);
        p.at(i, j) = coeff;
        return p;
    }

    int degree_u() const noexcept { return du_; }
    int degree_v() const noexcept { return dv_; }

    T& at(int i, int j) { return c_[index(i, j)]; }
    const T& at(int i, int j) const { return c_[index(i, j)]; }
    // Zero outside the stored grid.
    T coeff(int i, int j) const {
        if (i < 0 || j < 0 || i > du_ || j > dv_) return T(0);
        return c_[index(i, j)];
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const T& x) { return x == T(0); });
    }

    // Shrinks the grid to the highest nonzero row/column.
    Poly2 trimmed() const {
        int nu = 0, nv = 0;
        for (int i = 0; i <= du_; ++i)
            for (int j = 0; j <= dv_; ++j)
                if (at(i, j) != T(0)) {
                    nu = std::max(nu, i);
                    nv = std::max(nv, j);
                }
        Poly2 out(nu, nv);
        for (int i = 0; i <= nu; ++i)
            for (int j = 0; j <= nv; ++j) out.at(i, j) = at(i, j);
        return out;
    }

    template <typename U>
    U eval(const U& u, const U& v) const {
        U acc(0);
        for (int i = du_; i >= 0; --i) {
            U row(0);
            for (int j = dv_; j >= 0; --j) row = row * v + U(at(i, j));
            acc = acc * u + row;
        }
        return acc;
    }

    // d^2/du dv; c'[i][j] = (i+1)(j+1) c[i+1][j+1].
    Poly2 mixed_partial() const {
        if (du_ == 0 || dv_ == 0) return Poly2(0, 0);
        Poly2 out(du_ - 1, dv_ - 1);
        for (int i = 0; i < du_; ++i)
            for (int j = 0; j < dv_; ++j) out.at(i, j) = T((i + 1) * (j + 1)) * at(i + 1, j + 1);
        return out;
    }

    // Coefficients of v -> p(u0, v).
    std::vector<T> restrict_u(const T& u0) const {
        std::vector<T> out(static_cast<std::size_t>(dv_ + 1), T(0));
        for (int j = 0; j <= dv_; ++j) {
            T acc(0);
            for (int i = du_; i >= 0; --i) acc = acc * u0 + at(i, j);
            out[static_cast<std::size_t>(j)] = acc;
        }
        return out;
    }

    // Coefficients of u -> p(u, v0).
    std::vector<T> restrict_v(const T& v0) const {
        std::vector<T> out(static_cast<std::size_t>(du_ + 1), T(0));
        for (int i = 0; i <= du_; ++i) {
            T acc(0);
            for (int j = dv_; j >= 0; --j) acc = acc * v0 + at(i, j);
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }

    // Exact integral over [ulo,uhi] x [vlo,vhi] through the antiderivative.
    T integrate_box(const T& ulo, const T& uhi, const T& vlo, const T& vhi) const {
        const std::vector<T> pu = power_differences(ulo, uhi, du_ + 1);
        const std::vector<T> pv = power_differences(vlo, vhi, dv_ + 1);
        T total(0);
        for (int i = 0; i <= du_; ++i) {
            T row(0);
            for (int j = 0; j <= dv_; ++j) {
                if (at(i, j) == T(0)) continue;
                row += at(i, j) * pv[static_cast<std::size_t>(j)] / T(j + 1);
            }
            total += row * pu[static_cast<std::size_t>(i)] / T(i + 1);
        }
        return total;
    }

    // Exact integral of p(u0, v) over v in [lo, hi].
    T integrate_v_at(const T& u0, const T& lo, const T& hi) const { return integrate_1d(restrict_u(u0), lo, hi); }
    // Exact integral of p(u, v0) over u in [lo, hi].
    T integrate_u_at(const T& v0, const T& lo, const T& hi) const { return integrate_1d(restrict_v(v0), lo, hi); }

    // q(t, l) = p(u0 + u1 t, v0 + v1 l).
    Poly2 compose_affine(const T& u0, const T& u1, const T& v0, const T& v1) const {
        const auto bu = affine_powers(u0, u1, du_);
        const auto bv = affine_powers(v0, v1, dv_);
        Poly2 out(du_, dv_);
        for (int i = 0; i <= du_; ++i)
            for (int j = 0; j <= dv_; ++j) {
                const T& cij = at(i, j);
                if (cij == T(0)) continue;
                const auto& ui = bu[static_cast<std::size_t>(i)];
                const auto& vj = bv[static_cast<std::size_t>(j)];
                for (int k = 0; k <= i; ++k) {
                    if (ui[static_cast<std::size_t>(k)] == T(0)) continue;
                    const T left = cij * ui[static_cast<std::size_t>(k)];
                    for (int l = 0; l <= j; ++l) out.at(k, l) += left * vj[static_cast<std::size_t>(l)];
                }
            }
        return out;
    }

    Poly2& operator+=(const Poly2& other) { return accumulate(other, T(1)); }
    Poly2& operator-=(const Poly2& other) { return accumulate(other, T(-1)); }
    Poly2& operator*=(const T& scalar) {
        for (auto& x : c_) x *= scalar;
        return *this;
    }

    friend Poly2 operator+(Poly2 lhs, const Poly2& rhs) { return lhs += rhs; }
    friend Poly2 operator-(Poly2 lhs, const Poly2& rhs) { return lhs -= rhs; }
    friend Poly2 operator*(Poly2 lhs, const T& scalar) { return lhs *= scalar; }
    friend Poly2 operator*(const Poly2& lhs, const Poly2& rhs) {
        Poly2 out(lhs.du_ + rhs.du_, lhs.dv_ + rhs.dv_);
        for (int i = 0; i <= lhs.du_; ++i)
            for (int j = 0; j <= lhs.dv_; ++j) {
                const T& x = lhs.at(i, j);
                if (x == T(0)) continue;
                for (int k = 0; k <= rhs.du_; ++k)
                    for (int l = 0; l <= rhs.dv_; ++l) out.at(i + k, j + l) += x * rhs.at(k, l);
            }
        return out;
    }

    friend bool operator==(const Poly2& x, const Poly2& y) {
        const int du = std::max(x.du_, y.du_), dv = std::max(x.dv_, y.dv_);
        for (int i = 0; i <= du; ++i)
            for (int j = 0; j <= dv; ++j)
                if (x.coeff(i, j) != y.coeff(i, j)) return false;
        return true;
    }

    template <typename U, typename Convert>
    Poly2<U> map(Convert convert) const {
        Poly2<U> out(du_, dv_);
        for (int i = 0; i <= du_; ++i)
            for (int j = 0; j <= dv_; ++j) out.at(i, j) = convert(at(i, j));
        return out;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i > du_ || j > dv_) throw std::out_of_range("polynomial coefficient index");
        return static_cast<std::size_t>(i * (dv_ + 1) + j);
    }

    Poly2& accumulate(const Poly2& other, const T& sign) {
        if (other.du_ > du_ || other.dv_ > dv_) {
            Poly2 grown(std::max(du_, other.du_), std::max(dv_, other.dv_));
            for (int i = 0; i <= du_; ++i)
                for (int j = 0; j <= dv_; ++j) grown.at(i, j) = at(i, j);
            *this = std::move(grown);
        }
        for (int i = 0; i <= other.du_; ++i)
            for (int j = 0; j <= other.dv_; ++j) at(i, j) += sign * other.at(i, j);
        return *this;
    }

    // hi^k - lo^k for k = 1..n (entry k-1).
    static std::vector<T> power_differences(const T& lo, const T& hi, int n) {
        std::vector<T> out(static_cast<std::size_t>(n), T(0));
        T ph = hi, pl = lo;
        for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>(k)] = ph - pl;
            ph *= hi;
            pl *= lo;
        }
        return out;
    }

    static T integrate_1d(const std::vector<T>& coeffs, const T& lo, const T& hi) {
        const std::vector<T> diffs = power_differences(lo, hi, static_cast<int>(coeffs.size()));
        T total(0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) total += coeffs[k] * diffs[k] / T(static_cast<int>(k) + 1);
        return total;
    }

    // Row n holds the coefficients of (x0 + x1 t)^n in powers of t.
    static std::vector<std::vector<T>> affine_powers(const T& x0, const T& x1, int n) {
        std::vector<std::vector<T>> rows(static_cast<std::size_t>(n + 1));
        rows[0] = {T(1)};
        for (int k = 1; k <= n; ++k) {
            const auto& prev = rows[static_cast<std::size_t>(k - 1)];
            std::vector<T> row(static_cast<std::size_t>(k + 1), T(0));
            for (int m = 0; m < k; ++m) {
                row[static_cast<std::size_t>(m)] += prev[static_cast<std::size_t>(m)] * x0;
                row[static_cast<std::size_t>(m + 1)] += prev[static_cast<std::size_t>(m)] * x1;
            }
            rows[static_cast<std::size_t>(k)] = std::move(row);
        }
        return rows;
    }

    int du_, dv_;
    std::vector<T> c_;
};

}  // namespace hadamard
