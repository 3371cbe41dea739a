// Acceptance suite: runs every acceptance criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pdtomo/anisotropy.hpp"
#include "pdtomo/det_coupled.hpp"
#include "pdtomo/det_theta.hpp"
#include "pdtomo/experiment.hpp"
#include "pdtomo/metrics.hpp"
#include "pdtomo/phantom.hpp"

using namespace pdt;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename... Args>
std::string fmt(const char* f, Args... xs) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, xs...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double interior_max_norm(const VectorField& v) {
    const Grid& g = v.grid();
    double worst = 0.0;
    for (int ix = 1; ix < g.n(); ++ix) {
        for (int iy = 1; iy < g.n(); ++iy) {
            const int k = g.index(ix, iy);
            worst = std::max(worst, std::hypot(v.x[k], v.y[k]));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// 1. Manufactured-solution convergence of the forward solver.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    auto l2_error = [](int n) {
        Grid g(n);
        DerivativeOps ops(g);
        auto s = [](double t) { return std::sin(M_PI * t); };
        auto c = [](double t) { return std::cos(M_PI * t); };
        TensorField gamma(
            ScalarField::sample(g, [&](double x, double y) { return 2 + 0.5 * s(x) * s(y); }),
            ScalarField::sample(g, [](double x, double y) { return 0.3 + 0.2 * x * y; }),
            ScalarField::sample(g, [&](double x, double y) { return 2 - 0.4 * s(x) * s(y); }));
        ScalarField truth =
            ScalarField::sample(g, [&](double x, double y) { return s(x) * c(y); });
        const double pi = M_PI;
        ScalarField rhs = ScalarField::sample(g, [&](double x, double y) {
            const double ux = pi * c(x) * c(y), uy = -pi * s(x) * s(y);
            const double uxx = -pi * pi * s(x) * c(y), uyy = -pi * pi * s(x) * c(y);
            const double uxy = -pi * pi * c(x) * s(y);
            const double g11 = 2 + 0.5 * s(x) * s(y), g22 = 2 - 0.4 * s(x) * s(y);
            const double g12 = 0.3 + 0.2 * x * y;
            const double dg11x = 0.5 * pi * c(x) * s(y);
            const double dg12x = 0.2 * y, dg12y = 0.2 * x;
            const double dg22y = -0.4 * pi * s(x) * c(y);
            return dg11x * ux + g11 * uxx + dg12x * uy + g12 * uxy + dg12y * ux + g12 * uxy +
                   dg22y * uy + g22 * uyy;
        });
        GeneralEllipticSolver elliptic(ops, gamma);
        return (elliptic.solve(truth, rhs).values() - truth.values()).norm() * g.h();
    };
    const double e32 = l2_error(32), e64 = l2_error(64), e128 = l2_error(128);
    const double o1 = std::log2(e32 / e64), o2 = std::log2(e64 / e128);
    const double secs = seconds_since(t0);
    report(1, o1 >= 1.9 && o2 >= 1.9 && secs < 30.0,
           "manufactured-solution convergence order >= 1.9, runtime < 30 s",
           fmt("orders %.2f, %.2f; L2 errors %.2e -> %.2e -> %.2e; %.1f s", o1, o2, e32, e64,
               e128, secs));
}

// ---------------------------------------------------------------------------
// 2. Algebraic identity Asq(true) X = Y under refinement.
void criterion2() {
    auto residual = [](int n) {
        Grid g(n);
        DerivativeOps ops(g);
        ConductivityField c = make_phantom("smooth", g);
        PowerDensitySet H =
            power_densities(c, solve_illuminations(c, triplet_harmonic(), ops), ops);
        TripletData td = triplet_data(H, ops);
        const VectorField ax = c.aniso.matrix().apply(td.D.X);
        return interior_max_norm(
            VectorField(ScalarField(g, (ax.x.array() - td.D.Y.x.array()).matrix()),
                        ScalarField(g, (ax.y.array() - td.D.Y.y.array()).matrix())));
    };
    const double r32 = residual(32), r64 = residual(64), r128 = residual(128);
    const double o1 = std::log2(r32 / r64), o2 = std::log2(r64 / r128);
    const double c_bound = 20.0;  // residual <= C h^2 with C pinned here
    const bool within = r32 <= c_bound * (2.0 / 32) * (2.0 / 32) &&
                        r64 <= c_bound * (2.0 / 64) * (2.0 / 64) &&
                        r128 <= c_bound * (2.0 / 128) * (2.0 / 128);
    report(2, o1 >= 1.0 && o2 >= 1.0 && within,
           "algebraic identity residual <= 20 h^2 at interior nodes, order >= 1",
           fmt("max residual %.2e -> %.2e -> %.2e; orders %.2f, %.2f", r32, r64, r128, o1, o2));
}

// ---------------------------------------------------------------------------
// 3/4. Pointwise anisotropy reconstruction, smooth and rough phantoms.
void criterion3_and_4() {
    auto run = [](const std::string& phantom) {
        Grid g(128);
        DerivativeOps ops(g);
        ConductivityField c = make_phantom(phantom, g);
        PowerDensitySet H =
            power_densities(c, solve_illuminations(c, triplet_standard(), ops), ops);
        TripletData td = triplet_data(H, ops);
        MaskedAnisotropy rec = reconstruct_pointwise(td.D);
        return std::pair{compute_errors(rec.fields.xi, c.aniso.xi, &rec.mask),
                         compute_errors(rec.fields.zeta, c.aniso.zeta, &rec.mask)};
    };
    const auto t0 = std::chrono::steady_clock::now();
    const auto [sx, sz] = run("smooth");
    const double secs = seconds_since(t0);
    report(3, sx.rel_l2 <= 0.01 && sz.rel_l2 <= 0.03 && secs < 60.0,
           "smooth noiseless anisotropy: xi L2 <= 1%, zeta L2 <= 3%, runtime < 1 min",
           fmt("xi %.3f%% (Linf %.1f%%), zeta %.3f%% (Linf %.1f%%); %.1f s", 100 * sx.rel_l2,
               100 * sx.rel_linf, 100 * sz.rel_l2, 100 * sz.rel_linf, secs));

    const auto [rx, rz] = run("rough");
    report(4,
           rx.rel_l2 >= 0.01 && rx.rel_l2 <= 0.20 && rz.rel_l2 >= 0.03 && rz.rel_l2 <= 0.40 &&
               rx.rel_linf > 0.50 && rz.rel_linf > 0.50,
           "rough noiseless anisotropy: xi L2 in [1,20]%, zeta L2 in [3,40]%, Linf > 50%",
           fmt("xi %.1f%% (Linf %.0f%%), zeta %.1f%% (Linf %.0f%%)", 100 * rx.rel_l2,
               100 * rx.rel_linf, 100 * rz.rel_l2, 100 * rz.rel_linf));
}

// ---------------------------------------------------------------------------
// 5. Least-squares robustness over the rotated family.
void criterion5() {
    Grid g(128);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    ForwardSolver solver(c, ops);
    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const double alpha = 0.1;

    std::vector<double> med_xi, med_zeta;
    for (int p : {10, 30, 100}) {
        std::vector<PowerDensitySet> base;  // noiseless data, reused across seeds
        base.reserve(p);
        for (const auto& trip : rotated_family(p)) {
            base.push_back(
                power_densities(c, solver.solve_all({trip[0], trip[1], trip[2]}), ops));
        }
        std::vector<double> exi, ezeta;
        for (std::uint64_t seed : seeds) {
            std::vector<DataVectorFields> Ds;
            Ds.reserve(p);
            for (int l = 0; l < p; ++l) {
                PowerDensitySet noisy =
                    add_noise(base[l], NoiseSpec{alpha, seed, static_cast<std::uint64_t>(l)});
                Ds.push_back(triplet_data(noisy, ops).D);
            }
            MaskedAnisotropy rec = reconstruct_least_squares(Ds);
            exi.push_back(compute_errors(rec.fields.xi, c.aniso.xi, &rec.mask).rel_l2);
            ezeta.push_back(compute_errors(rec.fields.zeta, c.aniso.zeta, &rec.mask).rel_l2);
        }
        med_xi.push_back(median(exi));
        med_zeta.push_back(median(ezeta));
    }
    const bool monotone = med_xi[0] >= med_xi[1] && med_xi[1] >= med_xi[2] &&
                          med_zeta[0] >= med_zeta[1] && med_zeta[1] >= med_zeta[2];
    report(5, med_xi[2] <= 0.40 && med_zeta[2] <= 0.40 && monotone,
           "least squares at alpha = 0.1%, p = 100: L2 <= 40%, medians nonincreasing in p",
           fmt("xi medians %.1f/%.1f/%.1f%%, zeta %.1f/%.1f/%.1f%% for p = 10/30/100",
               100 * med_xi[0], 100 * med_xi[1], 100 * med_xi[2], 100 * med_zeta[0],
               100 * med_zeta[1], 100 * med_zeta[2]));
}

// ---------------------------------------------------------------------------
// 6/7. Determinant via theta, true anisotropy, noiseless and at 30% noise.
void criterion6_and_7() {
    Grid g(128);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    std::vector<ScalarField> us = solve_illuminations(c, pair_xy(), ops);
    PowerDensitySet H = power_densities(c, us, ops);
    PoissonSolver poisson(g);
    const ScalarField theta_ref = true_theta(c.aniso, us[0], ops);
    const ScalarField log_ref(g, c.det_sqrt.array().log().matrix());
    const AnisotropySqrt sq = sqrt_of_anisotropy(c.aniso);

    auto run = [&](const PowerDensitySet& data) {
        FrameData frame = gram_schmidt_frame(data, 0, 1, ops);
        ScalarField theta = reconstruct_theta(c.aniso, frame, theta_ref, ops, poisson);
        DetThetaResult det = reconstruct_log_det(theta, sq, frame, log_ref, ops, poisson);
        return std::pair{compute_errors(theta, theta_ref).rel_l2,
                         compute_errors(det.det_sqrt, c.det_sqrt).rel_l2};
    };

    const auto [theta_err, det_err] = run(H);
    report(6, theta_err <= 0.005 && det_err <= 0.005,
           "theta/det pipeline, noiseless: L2 errors <= 0.5%",
           fmt("theta %.3f%%, det_sqrt %.3f%%", 100 * theta_err, 100 * det_err));

    std::vector<double> theta_errs, det_errs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto [te, de] = run(add_noise(H, NoiseSpec{30.0, seed}));
        theta_errs.push_back(te);
        det_errs.push_back(de);
    }
    const double theta_med = median(theta_errs), det_med = median(det_errs);
    report(7, det_med <= 0.10 && theta_med <= 0.30,
           "theta/det pipeline at alpha = 30%: median det <= 10%, theta <= 30%",
           fmt("median theta %.1f%%, det_sqrt %.1f%% over 10 seeds", 100 * theta_med,
               100 * det_med));
}

// ---------------------------------------------------------------------------
// 8/9. Coupled-system pipeline on the rough phantom.
void criterion8_and_9() {
    Grid g(128);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("rough", g);
    std::vector<ScalarField> us = solve_illuminations(c, pair_xy(), ops);
    PowerDensitySet H = power_densities(c, us, ops);
    const ScalarField g1 = ScalarField::sample(g, [](double x, double) { return x; });
    const ScalarField g2 = ScalarField::sample(g, [](double, double y) { return y; });
    PoissonSolver poisson(g);
    const ScalarField inv_ref(g, c.det_sqrt.array().inverse().matrix());

    auto run = [&](const PowerDensitySet& data) {
        CoupledSolution sol = solve_coupled(c.aniso, data, g1, g2, ops);
        DetCoupledResult det = reconstruct_inv_det(c.aniso, data, sol, inv_ref, ops, poisson);
        return std::tuple{compute_errors(sol.u1, us[0]).rel_l2,
                          compute_errors(sol.u2, us[1]).rel_l2,
                          compute_errors(det.det_sqrt, c.det_sqrt).rel_l2};
    };

    const auto [u1_err, u2_err, det0] = run(H);
    report(8, u1_err <= 1e-9 && u2_err <= 1e-9,
           "coupled solve reproduces forward solutions to L2 <= 1e-9",
           fmt("u1 %.2e, u2 %.2e", u1_err, u2_err));

    const auto [u1n, u2n, det30] = run(add_noise(H, NoiseSpec{30.0, 1}));
    (void)u1n;
    (void)u2n;
    report(9, det0 <= 0.30 && det30 <= 0.30 && det30 <= 2.0 * det0,
           "coupled determinant on rough phantom: L2 <= 30% in both regimes, noisy <= 2x",
           fmt("det_sqrt %.1f%% noiseless, %.1f%% at 30%% noise", 100 * det0, 100 * det30));
}

// ---------------------------------------------------------------------------
// 10. Invariant suites.
void criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string fail;

    // det Asq = 1 at 1e-14 on the phantom anisotropy at full size
    {
        Grid g(128);
        ConductivityField c = make_phantom("smooth", g);
        const double dev =
            (c.aniso.matrix().determinant().values().array() - 1.0).abs().maxCoeff();
        if (dev > 1e-14) {
            ok = false;
            fail += fmt(" detAsq=%.1e;", dev);
        }
    }

    Grid g(64);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    PowerDensitySet H = power_densities(c, solve_illuminations(c, triplet_standard(), ops), ops);
    TripletData td = triplet_data(H, ops);

    // T^T T = H^{-1} at 1e-10 on noiseless data
    {
        double worst = 0.0;
        for (const FrameData* f : {&td.f1, &td.f2}) {
            const Eigen::ArrayXd det = f->h11.array() * f->h22.array() - f->h12.array().square();
            worst = std::max(
                worst,
                (f->t11.array().square() + f->t21.array().square() - f->h22.array() / det)
                    .abs()
                    .maxCoeff());
            worst = std::max(
                worst,
                (f->t21.array() * f->t22.array() + f->h12.array() / det).abs().maxCoeff());
            worst = std::max(
                worst, (f->t22.array().square() - f->h11.array() / det).abs().maxCoeff());
        }
        if (worst > 1e-10) {
            ok = false;
            fail += fmt(" TtT=%.1e;", worst);
        }
    }

    // sqrt round trip at 1e-12
    {
        const AnisotropySqrt s = sqrt_of_anisotropy(c.aniso);
        const TensorField A = s.matrix();
        const TensorField A2 = c.aniso.matrix();
        const double dev = std::max(
            {(A.a11.array().square() + A.a12.array().square() - A2.a11.array()).abs().maxCoeff(),
             (A.a12.array() * (A.a11.array() + A.a22.array()) - A2.a12.array()).abs().maxCoeff(),
             (A.a12.array().square() + A.a22.array().square() - A2.a22.array())
                 .abs()
                 .maxCoeff()});
        if (dev > 1e-12) {
            ok = false;
            fail += fmt(" sqrt=%.1e;", dev);
        }
    }

    // V12 identically zero: stored antisymmetric part is exactly -V21/2
    {
        const double dev = std::max(
            (td.f1.v12a.x.values() + 0.5 * td.f1.v21.x.values()).cwiseAbs().maxCoeff(),
            (td.f1.v12a.y.values() + 0.5 * td.f1.v21.y.values()).cwiseAbs().maxCoeff());
        if (dev != 0.0) {
            ok = false;
            fail += fmt(" V12=%.1e;", dev);
        }
    }

    // p = 1 least squares equals pointwise bitwise
    {
        MaskedAnisotropy pw = reconstruct_pointwise(td.D);
        MaskedAnisotropy ls = reconstruct_least_squares({td.D});
        const double dev =
            std::max((pw.fields.xi.values() - ls.fields.xi.values()).cwiseAbs().maxCoeff(),
                     (pw.fields.zeta.values() - ls.fields.zeta.values()).cwiseAbs().maxCoeff());
        if (dev != 0.0 || pw.mask != ls.mask) {
            ok = false;
            fail += fmt(" p1=%.1e;", dev);
        }
    }

    // determinism of noisy data under a fixed seed
    {
        PowerDensitySet a = add_noise(H, NoiseSpec{5.0, 123});
        PowerDensitySet b = add_noise(H, NoiseSpec{5.0, 123});
        double dev = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                dev = std::max(
                    dev, (a.at(i, j).values() - b.at(i, j).values()).cwiseAbs().maxCoeff());
            }
        }
        if (dev != 0.0) {
            ok = false;
            fail += fmt(" determinism=%.1e;", dev);
        }
    }

    report(10, ok, "invariant suites (det, transfer, sqrt, V12, p=1, determinism)",
           ok ? fmt("all invariants hold; %.1f s", seconds_since(t0)) : fail);
}

}  // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    auto enabled = [&](std::initializer_list<int> ids) {
        if (wanted.empty()) return true;
        for (int id : ids) {
            if (std::find(wanted.begin(), wanted.end(), id) != wanted.end()) return true;
        }
        return false;
    };
    auto guarded = [](std::initializer_list<int> ids, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            for (int id : ids) {
                report(id, false, "criterion aborted", e.what());
            }
        }
    };

    if (enabled({1})) guarded({1}, criterion1);
    if (enabled({2})) guarded({2}, criterion2);
    if (enabled({3, 4})) guarded({3, 4}, criterion3_and_4);
    if (enabled({5})) guarded({5}, criterion5);
    if (enabled({6, 7})) guarded({6, 7}, criterion6_and_7);
    if (enabled({8, 9})) guarded({8, 9}, criterion8_and_9);
    if (enabled({10})) guarded({10}, criterion10);

    std::printf("acceptance total: %.1f s, %d failure(s)\n", seconds_since(t0), g_failures);
    return g_failures;
}
