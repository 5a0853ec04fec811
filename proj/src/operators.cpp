#include "schlicht/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schlicht/errors.hpp"

namespace schlicht
{

ClassParams::ClassParams(double alpha, double beta) : m_alpha(alpha), m_beta(beta)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("ClassParams: alpha and beta must be finite");
    }
    if (alpha + beta >= 2.0) {
        throw std::invalid_argument("alpha+beta must be < 2 (M_{alpha,beta} is empty otherwise)");
    }
}

double ClassParams::mu() const
{
    if (!has_mu()) {
        throw std::domain_error("5*alpha+4*beta must be < 6 for the Fekete-Szego constant mu");
    }
    return (2.0 - m_alpha - m_beta) / (6.0 - 5.0 * m_alpha - 4.0 * m_beta);
}

FSParams FSParams::from_lambda(const ClassParams &p, cplx lambda)
{
    const double mu = p.mu();
    return {lambda, mu, (lambda - 1.0) / mu};
}

FSParams FSParams::from_s(const ClassParams &p, cplx s)
{
    const double mu = p.mu();
    return {1.0 + s * mu, mu, s};
}

double FSParams::bound() const
{
    return std::max(mu, std::abs(1.0 - lambda));
}

TaylorSeries f_over_z(const NormalizedFunction &f)
{
    return f.series().shift_down(1);
}

TaylorSeries starlike_quotient(const NormalizedFunction &f)
{
    return div(derivative(f.series()), f_over_z(f));
}

TaylorSeries convex_quotient(const NormalizedFunction &f)
{
    const auto d1 = derivative(f.series());
    // z f'' has the same order as f'.
    const auto zd2 = derivative(d1).shift_up(1);
    return add_constant(div(zd2, d1), 1.0);
}

TaylorSeries g_operator(const NormalizedFunction &f, const ClassParams &p)
{
    if (f.order() < 4) {
        throw std::invalid_argument("g_operator: truncation order must be >= 4");
    }
    const double a = p.alpha();
    const double b = p.beta();
    return add(add(scale(f_over_z(f), a), scale(starlike_quotient(f), b)), scale(convex_quotient(f), 1.0 - a - b));
}

cplx fekete_szego(const NormalizedFunction &f, cplx lambda)
{
    if (f.order() < 3) {
        throw std::invalid_argument("fekete_szego: truncation order must be >= 3");
    }
    const cplx a2 = f.a2();
    return f.a3() - lambda * a2 * a2;
}

TaylorSeries omega_transform(const TaylorSeries &g, double gamma)
{
    const cplx g0 = g[0];
    if (std::abs(g0 - gamma) < 1e-14) {
        throw series_error("omega_transform: g(0) equals gamma");
    }
    auto num = add_constant(g, -g0);
    auto den = add_constant(g, g0 - 2.0 * gamma);
    return div(num, den);
}

namespace
{

void check_mocanu_beta(double beta)
{
    if (beta == 1.0 || beta >= 2.0 || !std::isfinite(beta)) {
        throw std::invalid_argument("Mocanu transform requires beta < 2 and beta != 1");
    }
}

} // namespace

TaylorSeries mocanu_g(const NormalizedFunction &f, double beta)
{
    check_mocanu_beta(beta);
    const auto d1 = derivative(f.series());
    const auto q = f_over_z(f);
    const auto w = mul(pow_real(d1, (2.0 - 2.0 * beta) / (2.0 - beta)), pow_real(q, 2.0 * beta / (2.0 - beta)));
    return w.shift_up(1);
}

NormalizedFunction mocanu_f(const TaylorSeries &g, double beta)
{
    check_mocanu_beta(beta);
    if (std::abs(g[0]) > 1e-12 || std::abs(g[1] - 1.0) > 1e-12) {
        throw std::invalid_argument("mocanu_f: g must satisfy g(0) = 0 and g'(0) = 1");
    }
    // With (g/w)^{(2-b)/(2-2b)} = sum d_k w^k, the bracket equals
    // z^{1/(1-b)} sum d_k z^k / (1 + (1-b) k), whose (1-b)-th power is
    // z [sum d_k z^k / (1 + (1-b) k)]^{1-b}.
    const auto d = pow_real(g.shift_down(1), (2.0 - beta) / (2.0 - 2.0 * beta));
    std::vector<cplx> c(d.coeffs().begin(), d.coeffs().end());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double den = 1.0 + (1.0 - beta) * static_cast<double>(k);
        if (std::abs(den) < 1e-12) {
            throw series_error("mocanu_f: resonant exponent, the primitive has a logarithmic term");
        }
        c[k] /= den;
    }
    const auto f = pow_real(TaylorSeries(std::move(c)), 1.0 - beta).shift_up(1);
    return NormalizedFunction::normalize(f, 1e-10);
}

NormalizedFunction named_function(std::string_view name, int order)
{
    if (order < 2) {
        throw std::invalid_argument("named_function: order must be >= 2");
    }
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{});
    for (int k = 1; k <= order; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (name == "id") {
            c[kk] = k == 1 ? 1.0 : 0.0;
        } else if (name == "koebe") {
            c[kk] = static_cast<double>(k);
        } else if (name == "halfplane") {
            c[kk] = 1.0;
        } else if (name == "neglog") {
            // -z + 2 sum z^k / k
            c[kk] = k == 1 ? 1.0 : 2.0 / static_cast<double>(k);
        } else {
            throw std::invalid_argument("unknown function '" + std::string(name) +
                                        "' (expected one of id, koebe, halfplane, neglog)");
        }
    }
    return NormalizedFunction(TaylorSeries(std::move(c)));
}

std::vector<std::string> named_function_list()
{
    return {"id", "koebe", "halfplane", "neglog"};
}

} // namespace schlicht
