#ifndef SCHLICHT_SERIES_HPP
#define SCHLICHT_SERIES_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

namespace schlicht
{

using cplx = std::complex<double>;

inline constexpr int default_truncation_order = 96;

// Truncated power series c_0 + c_1 z + ... + c_N z^N on the unit disk.
//
// Binary operations on series of different orders truncate to the smaller
// order: coefficients beyond a series' order are unknown, not zero.
class TaylorSeries
{
public:
    // Zero series of the given order (order >= 1).
    explicit TaylorSeries(int order);
    // Order is coeffs.size() - 1; throws std::invalid_argument on fewer than
    // two coefficients or non-finite entries.
    explicit TaylorSeries(std::vector<cplx> coeffs);

    static TaylorSeries constant(cplx c, int order);
    static TaylorSeries identity(int order);
    // Coefficients of 1/(1 - z^k).
    static TaylorSeries geometric(int order, int k = 1);

    [[nodiscard]] int order() const noexcept
    {
        return static_cast<int>(m_coeffs.size()) - 1;
    }
    [[nodiscard]] std::span<const cplx> coeffs() const noexcept
    {
        return m_coeffs;
    }
    [[nodiscard]] cplx operator[](int k) const
    {
        return m_coeffs.at(static_cast<std::size_t>(k));
    }

    [[nodiscard]] TaylorSeries truncated(int order) const;
    // Drops the first `k` coefficients: s(z) = c_k + c_{k+1} z + ... (order N-k).
    [[nodiscard]] TaylorSeries shift_down(int k = 1) const;
    // Multiplies by z^k (order N+k).
    [[nodiscard]] TaylorSeries shift_up(int k = 1) const;

    // Horner partial sum without the |z| < 1 check.
    [[nodiscard]] cplx evaluate_unchecked(cplx z) const noexcept;

    friend bool operator==(const TaylorSeries &, const TaylorSeries &) = default;

private:
    std::vector<cplx> m_coeffs;
};

// Horner partial sum; throws std::domain_error for |z| >= 1.
cplx evaluate(const TaylorSeries &s, cplx z);

TaylorSeries add(const TaylorSeries &a, const TaylorSeries &b);
TaylorSeries sub(const TaylorSeries &a, const TaylorSeries &b);
TaylorSeries scale(const TaylorSeries &a, cplx c);
TaylorSeries add_constant(const TaylorSeries &a, cplx c);
// Cauchy product truncated at min(order(a), order(b)).
TaylorSeries mul(const TaylorSeries &a, const TaylorSeries &b);
// q with q*b = a; throws series_error when |b_0| < 1e-14.
TaylorSeries div(const TaylorSeries &a, const TaylorSeries &b);

// k c_k z^{k-1}; the result has order N-1.
TaylorSeries derivative(const TaylorSeries &s);
// Primitive with zero constant term; the result has order N+1.
TaylorSeries integrate0(const TaylorSeries &s);

// Principal logarithm of a series with c_0 = 1.
TaylorSeries log1(const TaylorSeries &s);
// exp of a series with c_0 = 0.
TaylorSeries exp0(const TaylorSeries &s);
// s^c on the principal branch, s with c_0 = 1.
TaylorSeries pow_real(const TaylorSeries &s, double c);

inline TaylorSeries operator+(const TaylorSeries &a, const TaylorSeries &b)
{
    return add(a, b);
}
inline TaylorSeries operator-(const TaylorSeries &a, const TaylorSeries &b)
{
    return sub(a, b);
}
inline TaylorSeries operator*(const TaylorSeries &a, const TaylorSeries &b)
{
    return mul(a, b);
}
inline TaylorSeries operator/(const TaylorSeries &a, const TaylorSeries &b)
{
    return div(a, b);
}
inline TaylorSeries operator*(cplx c, const TaylorSeries &a)
{
    return scale(a, c);
}

// Largest coefficient modulus of a - b over the common order.
double max_coeff_diff(const TaylorSeries &a, const TaylorSeries &b);

// Estimate of sum_{k>N} |c_k| r^k, assuming the tail coefficients are bounded
// by the largest modulus in the last quarter of the stored coefficients.
double tail_estimate(const TaylorSeries &s, double r);

// A series normalized as f(0) = 0, f'(0) = 1.
class NormalizedFunction
{
public:
    // Requires c_0 == 0 and c_1 == 1 exactly and order >= 2.
    explicit NormalizedFunction(TaylorSeries s);

    // Forces c_0 = 0 and c_1 = 1 after checking that neither drifted by more
    // than `drift_tol`.
    static NormalizedFunction normalize(TaylorSeries s, double drift_tol = 1e-10);

    [[nodiscard]] const TaylorSeries &series() const noexcept
    {
        return m_series;
    }
    [[nodiscard]] int order() const noexcept
    {
        return m_series.order();
    }
    [[nodiscard]] cplx a2() const
    {
        return m_series[2];
    }
    [[nodiscard]] cplx a3() const
    {
        return m_series.order() >= 3 ? m_series[3] : cplx{};
    }

private:
    TaylorSeries m_series;
};

void to_json(nlohmann::json &j, const TaylorSeries &s);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json &j);

} // namespace schlicht

namespace nlohmann
{

// TaylorSeries has no default constructor.
template <>
struct adl_serializer<schlicht::TaylorSeries> {
    static schlicht::TaylorSeries from_json(const json &j);
    static void to_json(json &j, const schlicht::TaylorSeries &s)
    {
        schlicht::to_json(j, s);
    }
};

} // namespace nlohmann

#endif
