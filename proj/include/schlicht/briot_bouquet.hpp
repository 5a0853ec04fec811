#ifndef SCHLICHT_BRIOT_BOUQUET_HPP
#define SCHLICHT_BRIOT_BOUQUET_HPP

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "schlicht/series.hpp"

namespace schlicht
{

// q + z q' / (B q + Gamma) = h with q(0) = h(0).
class BriotBouquetProblem
{
public:
    // Throws std::invalid_argument unless Re(B h(0) + Gamma) > 0.
    BriotBouquetProblem(TaylorSeries h, double B, double Gamma);

    [[nodiscard]] const TaylorSeries &h() const noexcept
    {
        return m_h;
    }
    [[nodiscard]] double B() const noexcept
    {
        return m_B;
    }
    [[nodiscard]] double Gamma() const noexcept
    {
        return m_Gamma;
    }

private:
    TaylorSeries m_h;
    double m_B;
    double m_Gamma;
};

// Formal power-series solution up to `order` (at most the order of h).
// From q (B q + Gamma) + z q' = h (B q + Gamma), for n >= 1:
//   (n + B q_0 + Gamma) q_n = B sum_{i=1}^{n} h_i q_{n-i} + Gamma h_n
//                             - B sum_{i=1}^{n-1} q_i q_{n-i}.
// Throws solver_error when |n + B q_0 + Gamma| <= 1e-12.
TaylorSeries solve_bb(const BriotBouquetProblem &prob, int order);

// Largest coefficient modulus of q + z q'/(B q + Gamma) - h (order of q minus one).
double bb_residual(const BriotBouquetProblem &prob, const TaylorSeries &q);

// f = z exp(int_0^z (q(w) - 1)/w dw), so that z f'/f = q. Rejects q_0 != 1.
// The result has order N+1 for q of order N.
NormalizedFunction f_from_q(const TaylorSeries &q);

enum class ExtremalLine { beta, alpha };

std::string to_string(ExtremalLine line);

struct ExtremalResult {
    ExtremalLine line = ExtremalLine::beta;
    double parameter = 0.0;
    int k = 1;
    NormalizedFunction f;
    cplx a2;
    cplx a3;
    std::vector<std::pair<cplx, cplx>> phi_at;
};

// lambda = x + iy, x in [-1, 3] step 0.1, y in {-1, 0, 1}.
std::vector<cplx> default_lambda_grid();

// Extremal member of M_{0,beta}, beta in [0, 1]: z f'/f = q solves
// q + (1-beta) z q'/q = beta/2 + (1 - beta/2)(1 + z^k)/(1 - z^k).
// beta == 1 is solved algebraically (q = h).
ExtremalResult extremal_mocanu(double beta, int k, int order = default_truncation_order,
                               const std::vector<cplx> &lambdas = default_lambda_grid());

// Extremal member of M_{alpha,1-alpha}, alpha in (0, 1]: f/z = q solves
// q + ((1-alpha)/alpha) z q'/q = 1 + z^k / (alpha (1 - z^k)), so that
// g_{alpha,1-alpha} = 1/(1 - z^k). alpha == 1 gives f/z = 1/(1 - z^k) directly.
ExtremalResult extremal_alpha(double alpha, int k, int order = default_truncation_order,
                              const std::vector<cplx> &lambdas = default_lambda_grid());

void to_json(nlohmann::json &j, const ExtremalResult &r);

} // namespace schlicht

#endif
