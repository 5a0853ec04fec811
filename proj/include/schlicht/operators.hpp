#ifndef SCHLICHT_OPERATORS_HPP
#define SCHLICHT_OPERATORS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "schlicht/series.hpp"

namespace schlicht
{

// The real pair (alpha, beta) selecting the class M_{alpha,beta}:
// Re g_{alpha,beta} > (alpha + beta)/2. The class is empty for alpha + beta >= 2,
// so such pairs are rejected.
class ClassParams
{
public:
    ClassParams(double alpha, double beta);

    [[nodiscard]] double alpha() const noexcept
    {
        return m_alpha;
    }
    [[nodiscard]] double beta() const noexcept
    {
        return m_beta;
    }
    [[nodiscard]] double threshold() const noexcept
    {
        return 0.5 * (m_alpha + m_beta);
    }
    // Whether the sharp Fekete-Szego constant is defined (5 alpha + 4 beta < 6).
    [[nodiscard]] bool has_mu() const noexcept
    {
        return 5.0 * m_alpha + 4.0 * m_beta < 6.0;
    }
    // (2 - alpha - beta) / (6 - 5 alpha - 4 beta); throws std::domain_error
    // unless has_mu().
    [[nodiscard]] double mu() const;

private:
    double m_alpha;
    double m_beta;
};

// lambda = 1 + s mu, the reparameterization that turns the coefficient bound
// for Schwarz functions into the Fekete-Szego bound.
struct FSParams {
    cplx lambda;
    double mu;
    cplx s;

    static FSParams from_lambda(const ClassParams &p, cplx lambda);
    static FSParams from_s(const ClassParams &p, cplx s);

    // max(mu, |1 - lambda|)
    [[nodiscard]] double bound() const;
};

// f(z)/z, order N-1.
TaylorSeries f_over_z(const NormalizedFunction &f);
// z f'(z)/f(z), order N-1.
TaylorSeries starlike_quotient(const NormalizedFunction &f);
// 1 + z f''(z)/f'(z), order N-1.
TaylorSeries convex_quotient(const NormalizedFunction &f);

// g_{alpha,beta} = alpha f/z + beta z f'/f + (1 - alpha - beta)(1 + z f''/f').
// The result has order N-1 and constant term 1.
TaylorSeries g_operator(const NormalizedFunction &f, const ClassParams &p);

// a_3 - lambda a_2^2
cplx fekete_szego(const NormalizedFunction &f, cplx lambda);

// (g - g(0)) / (g - 2 gamma + g(0)); Re g > gamma on a set exactly where the
// result has modulus < 1. Throws series_error when g(0) == gamma.
TaylorSeries omega_transform(const TaylorSeries &g, double gamma);

// g = z (f')^{(2-2b)/(2-b)} (f/z)^{2b/(2-b)}; M_{0,b} members map to starlike g.
// Rejects b == 1 and b >= 2. The result has order N.
TaylorSeries mocanu_g(const NormalizedFunction &f, double beta);

// Inverse of mocanu_g: f = [ 1/(1-b) int_0^z w^{b/(1-b)} (g/w)^{(2-b)/(2-2b)} dw ]^{1-b}.
// `g` must satisfy g(0) = 0, g'(0) = 1.
NormalizedFunction mocanu_f(const TaylorSeries &g, double beta);

// Built-in named functions: "id" (z), "koebe" (z/(1-z)^2), "halfplane"
// (z/(1-z)), "neglog" (-z - 2 log(1-z)).
NormalizedFunction named_function(std::string_view name, int order);
std::vector<std::string> named_function_list();

} // namespace schlicht

#endif
