#ifndef SCHLICHT_TEST_HELPERS_HPP
#define SCHLICHT_TEST_HELPERS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "schlicht/random.hpp"
#include "schlicht/series.hpp"

namespace testing
{

using schlicht::cplx;
using schlicht::TaylorSeries;

// Random series with |c_k| <= bound, c_0 overridden when given.
inline TaylorSeries random_series(schlicht::SplitMix64 &rng, int order, double bound = 1.0)
{
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (auto &x : c) {
        x = std::polar(bound * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    }
    return TaylorSeries(std::move(c));
}

inline TaylorSeries with_constant(const TaylorSeries &s, cplx c0)
{
    std::vector<cplx> c(s.coeffs().begin(), s.coeffs().end());
    c[0] = c0;
    return TaylorSeries(std::move(c));
}

inline TaylorSeries from_coeffs(std::vector<cplx> c)
{
    return TaylorSeries(std::move(c));
}

// Independent coefficient generator: c_k = coeff(k).
inline TaylorSeries tabulate(int order, const std::function<cplx(int)> &coeff)
{
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = coeff(k);
    }
    return TaylorSeries(std::move(c));
}

inline double max_abs_diff(const TaylorSeries &a, const std::vector<cplx> &b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < b.size() && k < a.coeffs().size(); ++k) {
        m = std::max(m, std::abs(a.coeffs()[k] - b[k]));
    }
    return m;
}

} // namespace testing

#endif
