#include "schlicht/briot_bouquet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "schlicht/errors.hpp"
#include "schlicht/operators.hpp"

namespace schlicht
{

BriotBouquetProblem::BriotBouquetProblem(TaylorSeries h, double B, double Gamma)
    : m_h(std::move(h)), m_B(B), m_Gamma(Gamma)
{
    if (!((B * m_h[0] + Gamma).real() > 0.0)) {
        throw std::invalid_argument("Briot-Bouquet problem requires Re(B h(0) + Gamma) > 0");
    }
}

TaylorSeries solve_bb(const BriotBouquetProblem &prob, int order)
{
    const auto &h = prob.h();
    if (order < 1 || order > h.order()) {
        throw std::invalid_argument("solve_bb: order must lie in [1, order(h)]");
    }
    const double B = prob.B();
    const double G = prob.Gamma();
    std::vector<cplx> q(static_cast<std::size_t>(order) + 1, cplx{});
    q[0] = h[0];
    for (int n = 1; n <= order; ++n) {
        const cplx den = static_cast<double>(n) + B * q[0] + G;
        if (std::abs(den) <= 1e-12) {
            throw solver_error("solve_bb: small denominator at n = " + std::to_string(n));
        }
        cplx hq{};
        for (int i = 1; i <= n; ++i) {
            hq += h[i] * q[static_cast<std::size_t>(n - i)];
        }
        cplx qq{};
        for (int i = 1; i < n; ++i) {
            qq += q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(n - i)];
        }
        q[static_cast<std::size_t>(n)] = (B * hq + G * h[n] - B * qq) / den;
    }
    return TaylorSeries(std::move(q));
}

double bb_residual(const BriotBouquetProblem &prob, const TaylorSeries &q)
{
    const auto zq = derivative(q).shift_up(1);
    const auto den = add_constant(scale(q, prob.B()), prob.Gamma());
    const auto lhs = add(q, div(zq, den));
    return max_coeff_diff(lhs, prob.h());
}

NormalizedFunction f_from_q(const TaylorSeries &q)
{
    if (std::abs(q[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("f_from_q: q(0) must be 1");
    }
    // (q - 1)/w has order N-1; its primitive and exponential have order N.
    const auto e = exp0(integrate0(add_constant(q, -q[0]).shift_down(1)));
    return NormalizedFunction::normalize(e.shift_up(1), 1e-10);
}

std::string to_string(ExtremalLine line)
{
    return line == ExtremalLine::beta ? "beta" : "alpha";
}

std::vector<cplx> default_lambda_grid()
{
    std::vector<cplx> grid;
    for (int y = -1; y <= 1; ++y) {
        for (int i = 0; i <= 40; ++i) {
            grid.emplace_back(-1.0 + i / 10.0, static_cast<double>(y));
        }
    }
    return grid;
}

namespace
{

void check_k(int k)
{
    if (k != 1 && k != 2) {
        throw std::invalid_argument("extremal: k must be 1 or 2");
    }
}

// (1 + z^k)/(1 - z^k) = 1 + 2 sum_{m>=1} z^{mk}
TaylorSeries halfplane_series(int order, int k)
{
    return add_constant(scale(TaylorSeries::geometric(order, k), 2.0), -1.0);
}

ExtremalResult finish(ExtremalLine line, double parameter, int k, NormalizedFunction f,
                      const std::vector<cplx> &lambdas)
{
    ExtremalResult r{line, parameter, k, f, f.a2(), f.a3(), {}};
    r.phi_at.reserve(lambdas.size());
    for (const auto &l : lambdas) {
        r.phi_at.emplace_back(l, fekete_szego(f, l));
    }
    return r;
}

} // namespace

ExtremalResult extremal_mocanu(double beta, int k, int order, const std::vector<cplx> &lambdas)
{
    check_k(k);
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("extremal_mocanu: beta must lie in [0, 1]");
    }
    const auto h = add_constant(scale(halfplane_series(order - 1, k), 1.0 - beta / 2.0), beta / 2.0);
    TaylorSeries q = beta == 1.0 ? h : solve_bb(BriotBouquetProblem(h, 1.0 / (1.0 - beta), 0.0), order - 1);
    return finish(ExtremalLine::beta, beta, k, f_from_q(q), lambdas);
}

ExtremalResult extremal_alpha(double alpha, int k, int order, const std::vector<cplx> &lambdas)
{
    check_k(k);
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("extremal_alpha: alpha must lie in (0, 1]");
    }
    const auto geo = TaylorSeries::geometric(order - 1, k);
    TaylorSeries q = geo;
    if (alpha != 1.0) {
        // 1 + z^k/(alpha (1 - z^k)) = 1 + (geo - 1)/alpha
        const auto h = add_constant(scale(add_constant(geo, -1.0), 1.0 / alpha), 1.0);
        q = solve_bb(BriotBouquetProblem(h, alpha / (1.0 - alpha), 0.0), order - 1);
    }
    auto f = NormalizedFunction(q.shift_up(1));
    return finish(ExtremalLine::alpha, alpha, k, std::move(f), lambdas);
}

void to_json(nlohmann::json &j, const ExtremalResult &r)
{
    auto phi = nlohmann::json::array();
    for (const auto &[l, v] : r.phi_at) {
        phi.push_back({{"lambda", complex_to_json(l)}, {"value", complex_to_json(v)}});
    }
    j = nlohmann::json{{to_string(r.line), r.parameter},
                       {"k", r.k},
                       {"a2", complex_to_json(r.a2)},
                       {"a3", complex_to_json(r.a3)},
                       {"phi", std::move(phi)},
                       {"series", r.f.series()}};
}

} // namespace schlicht
