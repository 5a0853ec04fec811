#include "schlicht/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "schlicht/errors.hpp"

namespace schlicht
{

namespace
{

bool is_finite(cplx c)
{
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

std::size_t usize(int n)
{
    return static_cast<std::size_t>(n);
}

} // namespace

TaylorSeries::TaylorSeries(int order)
{
    if (order < 1) {
        throw std::invalid_argument("TaylorSeries: truncation order must be >= 1, got " + std::to_string(order));
    }
    m_coeffs.assign(usize(order) + 1, cplx{});
}

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.size() < 2) {
        throw std::invalid_argument("TaylorSeries: at least two coefficients are required");
    }
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        if (!is_finite(m_coeffs[k])) {
            throw std::invalid_argument("TaylorSeries: non-finite coefficient at index " + std::to_string(k));
        }
    }
}

TaylorSeries TaylorSeries::constant(cplx c, int order)
{
    TaylorSeries s(order);
    s.m_coeffs[0] = c;
    return s;
}

TaylorSeries TaylorSeries::identity(int order)
{
    TaylorSeries s(order);
    s.m_coeffs[1] = 1.0;
    return s;
}

TaylorSeries TaylorSeries::geometric(int order, int k)
{
    if (k < 1) {
        throw std::invalid_argument("TaylorSeries::geometric: step must be >= 1");
    }
    TaylorSeries s(order);
    for (int n = 0; n <= order; n += k) {
        s.m_coeffs[usize(n)] = 1.0;
    }
    return s;
}

TaylorSeries TaylorSeries::truncated(int order) const
{
    if (order > this->order()) {
        throw std::invalid_argument("TaylorSeries::truncated: cannot raise the truncation order");
    }
    return TaylorSeries(std::vector<cplx>(m_coeffs.begin(), m_coeffs.begin() + order + 1));
}

TaylorSeries TaylorSeries::shift_down(int k) const
{
    if (k < 0 || order() - k < 1) {
        throw std::invalid_argument("TaylorSeries::shift_down: shift leaves fewer than two coefficients");
    }
    return TaylorSeries(std::vector<cplx>(m_coeffs.begin() + k, m_coeffs.end()));
}

TaylorSeries TaylorSeries::shift_up(int k) const
{
    if (k < 0) {
        throw std::invalid_argument("TaylorSeries::shift_up: negative shift");
    }
    std::vector<cplx> c(usize(k), cplx{});
    c.insert(c.end(), m_coeffs.begin(), m_coeffs.end());
    return TaylorSeries(std::move(c));
}

cplx TaylorSeries::evaluate_unchecked(cplx z) const noexcept
{
    cplx acc{};
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

cplx evaluate(const TaylorSeries &s, cplx z)
{
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("evaluate: point lies outside the open unit disk");
    }
    return s.evaluate_unchecked(z);
}

namespace
{

template <typename Op>
TaylorSeries zip(const TaylorSeries &a, const TaylorSeries &b, Op op)
{
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(usize(n) + 1);
    for (int k = 0; k <= n; ++k) {
        c[usize(k)] = op(a[k], b[k]);
    }
    return TaylorSeries(std::move(c));
}

} // namespace

TaylorSeries add(const TaylorSeries &a, const TaylorSeries &b)
{
    return zip(a, b, [](cplx x, cplx y) { return x + y; });
}

TaylorSeries sub(const TaylorSeries &a, const TaylorSeries &b)
{
    return zip(a, b, [](cplx x, cplx y) { return x - y; });
}

TaylorSeries scale(const TaylorSeries &a, cplx c)
{
    std::vector<cplx> out(a.coeffs().begin(), a.coeffs().end());
    for (auto &x : out) {
        x *= c;
    }
    return TaylorSeries(std::move(out));
}

TaylorSeries add_constant(const TaylorSeries &a, cplx c)
{
    std::vector<cplx> out(a.coeffs().begin(), a.coeffs().end());
    out[0] += c;
    return TaylorSeries(std::move(out));
}

TaylorSeries mul(const TaylorSeries &a, const TaylorSeries &b)
{
    const int n = std::min(a.order(), b.order());
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    std::vector<cplx> c(usize(n) + 1, cplx{});
    for (int i = 0; i <= n; ++i) {
        if (ac[usize(i)] == cplx{}) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            c[usize(i + j)] += ac[usize(i)] * bc[usize(j)];
        }
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries div(const TaylorSeries &a, const TaylorSeries &b)
{
    const auto bc = b.coeffs();
    if (std::abs(bc[0]) < 1e-14) {
        throw series_error("div: divisor has a vanishing constant term");
    }
    const int n = std::min(a.order(), b.order());
    const auto ac = a.coeffs();
    std::vector<cplx> q(usize(n) + 1);
    for (int k = 0; k <= n; ++k) {
        cplx acc = ac[usize(k)];
        for (int j = 1; j <= k; ++j) {
            acc -= bc[usize(j)] * q[usize(k - j)];
        }
        q[usize(k)] = acc / bc[0];
    }
    return TaylorSeries(std::move(q));
}

TaylorSeries derivative(const TaylorSeries &s)
{
    if (s.order() < 2) {
        throw std::invalid_argument("derivative: order must be >= 2 to leave a valid series");
    }
    const auto c = s.coeffs();
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * c[k];
    }
    return TaylorSeries(std::move(d));
}

TaylorSeries integrate0(const TaylorSeries &s)
{
    const auto c = s.coeffs();
    std::vector<cplx> p(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
        p[k + 1] = c[k] / static_cast<double>(k + 1);
    }
    return TaylorSeries(std::move(p));
}

namespace
{

void require_unit_constant(const TaylorSeries &s, const char *who)
{
    if (std::abs(s[0] - 1.0) > 1e-12) {
        throw series_error(std::string(who) + ": constant term must be 1");
    }
}

} // namespace

TaylorSeries log1(const TaylorSeries &s)
{
    require_unit_constant(s, "log1");
    // (log s)' = s'/s, all orders exact after integration.
    auto l = integrate0(div(derivative(s), s));
    std::vector<cplx> c(l.coeffs().begin(), l.coeffs().end());
    c[0] = std::log(s[0]);
    return TaylorSeries(std::move(c));
}

TaylorSeries exp0(const TaylorSeries &s)
{
    if (std::abs(s[0]) > 1e-12) {
        throw series_error("exp0: constant term must be 0");
    }
    const auto c = s.coeffs();
    const int n = s.order();
    std::vector<cplx> e(usize(n) + 1, cplx{});
    e[0] = std::exp(c[0]);
    // E' = s' E  =>  n E_n = sum_{k=1}^n k s_k E_{n-k}
    for (int m = 1; m <= n; ++m) {
        cplx acc{};
        for (int k = 1; k <= m; ++k) {
            acc += static_cast<double>(k) * c[usize(k)] * e[usize(m - k)];
        }
        e[usize(m)] = acc / static_cast<double>(m);
    }
    return TaylorSeries(std::move(e));
}

TaylorSeries pow_real(const TaylorSeries &s, double c)
{
    require_unit_constant(s, "pow_real");
    if (c == 1.0) {
        return s;
    }
    auto l = log1(s);
    return exp0(scale(l, c));
}

double max_coeff_diff(const TaylorSeries &a, const TaylorSeries &b)
{
    const int n = std::min(a.order(), b.order());
    double m = 0.0;
    for (int k = 0; k <= n; ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

double tail_estimate(const TaylorSeries &s, double r)
{
    const int n = s.order();
    const int from = std::max(1, (3 * n + 3) / 4);
    double bound = 0.0;
    for (int k = from; k <= n; ++k) {
        bound = std::max(bound, std::abs(s[k]));
    }
    if (bound == 0.0) {
        return 0.0;
    }
    return bound * std::pow(r, n + 1) / (1.0 - r);
}

NormalizedFunction::NormalizedFunction(TaylorSeries s) : m_series(std::move(s))
{
    if (m_series.order() < 2) {
        throw std::invalid_argument("NormalizedFunction: order must be >= 2");
    }
    if (m_series[0] != cplx{} || m_series[1] != cplx{1.0, 0.0}) {
        throw std::invalid_argument("NormalizedFunction: requires f(0) = 0 and f'(0) = 1");
    }
}

NormalizedFunction NormalizedFunction::normalize(TaylorSeries s, double drift_tol)
{
    const double drift = std::max(std::abs(s[0]), std::abs(s[1] - 1.0));
    if (drift > drift_tol) {
        throw std::invalid_argument("NormalizedFunction::normalize: normalization drift " + std::to_string(drift) +
                                    " exceeds tolerance");
    }
    std::vector<cplx> c(s.coeffs().begin(), s.coeffs().end());
    c[0] = 0.0;
    c[1] = 1.0;
    return NormalizedFunction(TaylorSeries(std::move(c)));
}

nlohmann::json complex_to_json(cplx z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

cplx complex_from_json(const nlohmann::json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex value must be [re, im]");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

void to_json(nlohmann::json &j, const TaylorSeries &s)
{
    auto coeffs = nlohmann::json::array();
    for (const auto &c : s.coeffs()) {
        coeffs.push_back(complex_to_json(c));
    }
    j = nlohmann::json{{"n", s.order()}, {"coeffs", std::move(coeffs)}};
}

} // namespace schlicht

schlicht::TaylorSeries nlohmann::adl_serializer<schlicht::TaylorSeries>::from_json(const json &j)
{
    const auto &arr = j.at("coeffs");
    std::vector<schlicht::cplx> c;
    c.reserve(arr.size());
    for (const auto &e : arr) {
        c.push_back(schlicht::complex_from_json(e));
    }
    if (j.contains("n") && j.at("n").get<int>() + 1 != static_cast<int>(c.size())) {
        throw std::invalid_argument("series JSON: 'n' does not match the number of coefficients");
    }
    return schlicht::TaylorSeries(std::move(c));
}
