#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "schlicht/briot_bouquet.hpp"
#include "schlicht/explore.hpp"
#include "schlicht/membership.hpp"
#include "schlicht/operators.hpp"

using namespace schlicht;
using testing::tabulate;

namespace
{

DiskGrid quick_grid()
{
    DiskGrid g;
    g.radii = {0.3, 0.6, 0.8, 0.9, 0.95};
    g.angles_per_ring = 256;
    g.refinement_depth = 2;
    return g;
}

} // namespace

TEST_CASE("SplitMix64 reference values")
{
    // Reference outputs of splitmix64 seeded with 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("HerglotzSampler")
{
    const HerglotzSampler one(std::vector<HerglotzAtom>{{1.0, 0.0}});
    CHECK(max_coeff_diff(one.series(30), tabulate(30, [](int k) { return k == 0 ? 1.0 : 2.0; })) < 1e-15);

    const HerglotzSampler two(std::vector<HerglotzAtom>{{0.5, 0.0}, {0.5, std::numbers::pi}});
    CHECK(max_coeff_diff(two.series(30), tabulate(30, [](int k) {
                             return k == 0 ? 1.0 : (k % 2 == 0 ? 2.0 : 0.0);
                         })) < 1e-13);

    CHECK_THROWS_AS(HerglotzSampler(std::vector<HerglotzAtom>{{0.7, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(HerglotzSampler(9, 1), std::invalid_argument);

    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto h = HerglotzSampler::random(s);
        CHECK(h.atoms().size() >= 1);
        CHECK(h.atoms().size() <= 8);
        const auto ser = h.series(96);
        CHECK(ser[0] == cplx(1.0));
        // Re h > 0 pointwise from the closed form of the atoms.
        // |z| <= 0.6 keeps the truncation tail 2 * 0.6^97 / 0.4 negligible.
        for (const cplx z : {cplx(0.55, 0.1), cplx(-0.3, -0.5), cplx(0.0, 0.6)}) {
            cplx v = 0.0;
            for (const auto &a : h.atoms()) {
                const cplx e = std::polar(1.0, -a.angle);
                v += a.weight * (1.0 + e * z) / (1.0 - e * z);
            }
            CHECK(v.real() > 0.0);
            CHECK(std::abs(evaluate(ser, z) - v) < 1e-12);
        }
        CHECK(HerglotzSampler::random(s).series(40) == h.series(40));
    }
}

TEST_CASE("SchwarzSampler")
{
    const SchwarzSampler id(std::vector<cplx>{}, 1.0);
    CHECK(max_coeff_diff(id.series(4), TaylorSeries::identity(4)) < 1e-15);

    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto w = SchwarzSampler::random(s);
        CHECK(w.degree() >= 1);
        CHECK(w.degree() <= 6);
        const auto ser = w.series(60);
        CHECK(ser[0] == cplx(0.0));
        for (const cplx z : {cplx(0.3, 0.1), cplx(-0.2, -0.4)}) {
            cplx v = w.rotation() * z;
            for (const auto a : w.zeros()) {
                CHECK(std::abs(a) < 0.98);
                v *= (a - z) / (1.0 - std::conj(a) * z);
            }
            CHECK(std::abs(v) < 1.0);
            CHECK(std::abs(evaluate(ser, z) - v) < 1e-10);
        }
    }
}

TEST_CASE("sample_m0beta reproduces the extremals")
{
    for (double beta : {0.0, 0.4, 1.0}) {
        const auto f1 = sample_m0beta(beta, HerglotzSampler(std::vector<HerglotzAtom>{{1.0, 0.0}}));
        CHECK(max_coeff_diff(f1.series(), extremal_mocanu(beta, 1).f.series()) < 1e-12);
        const auto f2 = sample_m0beta(
            beta, HerglotzSampler(std::vector<HerglotzAtom>{{0.5, 0.0}, {0.5, std::numbers::pi}}));
        CHECK(max_coeff_diff(f2.series(), extremal_mocanu(beta, 2).f.series()) < 1e-12);
    }
}

TEST_CASE("sample_malpha reproduces the extremals")
{
    for (double alpha : {0.5, 0.7, 1.0}) {
        const auto f1 = sample_malpha(alpha, HerglotzSampler(std::vector<HerglotzAtom>{{1.0, 0.0}}));
        CHECK(std::abs(f1.a2() - 1.0) < 1e-12);
        CHECK(std::abs(f1.a3() - 1.0) < 1e-12);
        const auto f2 = sample_malpha(
            alpha, HerglotzSampler(std::vector<HerglotzAtom>{{0.5, 0.0}, {0.5, std::numbers::pi}}));
        CHECK(std::abs(f2.a3() - 1.0 / (2.0 - alpha)) < 1e-12);
    }
    CHECK_THROWS_AS(sample_malpha(0.3, HerglotzSampler::random(1)), std::invalid_argument);
}

TEST_CASE("property: construction soundness")
{
    const auto grid = quick_grid();
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto sampler = HerglotzSampler::random(trial_seed(88, i));
        const auto h = sampler.series(95);

        const double beta = -1.0 + 2.0 * static_cast<double>(i) / 19.0;
        const auto f = sample_m0beta(beta, sampler);
        const auto target = add_constant(scale(h, 1.0 - beta / 2.0), beta / 2.0);
        CHECK(max_coeff_diff(g_operator(f, ClassParams(0.0, beta)), target) < 1e-8);
        CHECK(min_margin(f, ClassId::m_alpha_beta, ClassParams(0.0, beta), grid).verdict == Verdict::pass);

        const double alpha = 0.5 + 0.5 * static_cast<double>(i) / 19.0;
        const auto fa = sample_malpha(alpha, sampler);
        const auto ta = add_constant(scale(h, 0.5), 0.5);
        CHECK(max_coeff_diff(g_operator(fa, ClassParams(alpha, 1.0 - alpha)), ta) < 1e-8);
        CHECK(min_margin(fa, ClassId::m_alpha_beta, ClassParams(alpha, 1.0 - alpha), grid).verdict ==
              Verdict::pass);
        CHECK(min_margin(fa, ClassId::generator, grid).verdict == Verdict::pass);
    }
}

TEST_CASE("sample_members is deterministic and serial-equivalent")
{
    const ClassParams p(0.0, 0.5);
    const auto a = sample_members(p, 16, 1234, 48);
    const auto b = sample_members(p, 16, 1234, 48);
    REQUIRE(a.size() == 16);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].series() == b[i].series());
        const auto serial = sample_member(p, HerglotzSampler::random(trial_seed(1234, i)), 48);
        CHECK(serial.series() == a[i].series());
    }
    CHECK_FALSE(can_sample(ClassParams(0.3, 0.3)));
    CHECK_THROWS_AS(sample_member(ClassParams(0.3, 0.3), HerglotzSampler::random(1)), std::invalid_argument);
}

TEST_CASE("fs_bound_audit")
{
    const auto lambdas = default_lambda_grid();
    const ClassParams p(0.0, 0.5);
    const auto ext = fs_bound_audit({extremal_mocanu(0.5, 1).f, extremal_mocanu(0.5, 2).f}, p, lambdas);
    CHECK(ext.violations == 0);
    for (const auto &row : ext.rows) {
        CHECK(std::abs(row.attained - row.bound) < 1e-8);
    }

    const auto id = fs_bound_audit({named_function("id", 10)}, p, lambdas);
    CHECK(id.violations == 0);
    for (const auto &row : id.rows) {
        CHECK(row.attained == 0.0);
    }

    const auto rnd = fs_bound_audit(sample_members(p, 500, 7), p, lambdas);
    CHECK(rnd.violations == 0);
    CHECK(rnd.max_excess <= fs_bound_tol);

    // Koebe is outside M_{0,1/2}; the bound must catch it at lambda = 0 (a3 = 3 > mu).
    const auto k = fs_bound_audit({named_function("koebe", 10)}, p, {cplx(0.0)});
    CHECK(k.violations == 1);

    std::ostringstream os;
    write_fs_sweep_csv(os, id);
    CHECK(os.str().rfind("lambda_re,lambda_im,bound,attained,ratio\n", 0) == 0);
}

TEST_CASE("filtration audits")
{
    FiltrationOptions opts;
    opts.samples = 12;
    opts.probe_samples = 6;
    opts.grid = quick_grid();
    const auto b = filtration_audit_beta(0.0, {0.5, 1.0}, opts);
    CHECK(b.construction_failures == 0);
    CHECK(b.violations == 0);
    REQUIRE(b.targets.size() == 2);
    CHECK(b.targets[0].checked == 12);
    CHECK(b.targets[0].worst_margin > 0.0);
    CHECK(b.strictness[0].label == "conjecture-evidence");

    const auto a = filtration_audit_alpha(0.5, {0.75, 1.0}, opts);
    CHECK(a.violations == 0);
    CHECK(a.construction_failures == 0);

    // Targets above 1 are not contained; see the counterexample below.
    const auto over = filtration_audit_alpha(0.5, {1.5}, opts);
    CHECK(over.violations > 0);

    CHECK_THROWS_AS(filtration_audit_beta(0.5, {0.25}, opts), std::invalid_argument);
}

TEST_CASE("M_{1/2,1/2} is not contained in M_{3/2,-1/2}")
{
    // f^(2) of M_{1/2,1/2}: p = f/z solves p + z p'/p = (1+z^2)/(1-z^2). On the
    // real axis this is r p' = p((1+r^2)/(1-r^2) - p); classical RK4 from r = 0
    // (where p' = 0) gives p, and g_{a,1-a} = a p + (1-a)(1 + r p'/p).
    auto rhs = [](double r, double p) { return r == 0.0 ? 0.0 : p * ((1 + r * r) / (1 - r * r) - p) / r; };
    auto g_at = [&](double a, double r_end) {
        const int steps = 200000;
        const double h = r_end / steps;
        double p = 1.0, r = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double k1 = rhs(r, p);
            const double k2 = rhs(r + h / 2, p + h / 2 * k1);
            const double k3 = rhs(r + h / 2, p + h / 2 * k2);
            const double k4 = rhs(r + h, p + h * k3);
            p += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            r += h;
        }
        return a * p + (1 - a) * (1 + r * rhs(r, p) / p);
    };
    CHECK(g_at(0.5, 0.99) == doctest::Approx(1.0 / (1.0 - 0.99 * 0.99)).epsilon(1e-8));
    CHECK(g_at(1.5, 0.99) < 0.5 - 10.0);

    const auto e = extremal_alpha(0.5, 2);
    CHECK(min_margin(e.f, ClassId::m_alpha_beta, ClassParams(0.5, 0.5), DiskGrid::standard()).verdict ==
          Verdict::pass);
    const auto g = g_operator(e.f, ClassParams(1.5, -0.5));
    CHECK(evaluate(g, 0.9).real() == doctest::Approx(g_at(1.5, 0.9)).epsilon(1e-4));
    CHECK(min_margin(e.f, ClassId::m_alpha_beta, ClassParams(1.5, -0.5), DiskGrid::standard()).verdict ==
          Verdict::fail);
}

TEST_CASE("the f^(2) extremal of M_{0,1/2} lies in M_{0,3/4}")
{
    const auto e = extremal_mocanu(0.5, 2);
    const auto r = min_margin(e.f, ClassId::m_alpha_beta, ClassParams(0.0, 0.75), DiskGrid::standard());
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.margin > 0.0);
}

TEST_CASE("schwarz_lemma_audit")
{
    // Equality cases straight from the coefficient definitions.
    const SchwarzSampler z(std::vector<cplx>{}, 1.0);
    CHECK(z.series(4)[1] == cplx(1.0));
    CHECK(z.series(4)[2] == cplx(0.0));
    const SchwarzSampler z2(std::vector<cplx>{0.0}, -1.0);
    // rotation * z * (0 - z)/(1) = z^2 with rotation -1
    CHECK(std::abs(z2.series(4)[1]) < 1e-15);
    CHECK(std::abs(z2.series(4)[2] - 1.0) < 1e-15);

    const std::vector<cplx> s{0.0, 1.0, -1.0, 2.0, -2.0, {0.0, 1.0}};
    const auto rep = schwarz_lemma_audit(10000, 3, s);
    CHECK(rep.trials == 10000);
    CHECK(rep.violations == 0);
    CHECK(rep.max_excess_b2 <= schwarz_tol);
    CHECK(rep.max_excess_fs <= schwarz_tol);
}
