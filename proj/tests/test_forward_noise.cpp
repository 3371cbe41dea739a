#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdtomo/forward.hpp"
#include "pdtomo/noise.hpp"
#include "pdtomo/phantom.hpp"
#include "test_util.hpp"

using namespace pdt;
using pdt_test::max_abs;
using pdt_test::max_abs_diff;
using pdt_test::max_abs_interior;

namespace {

ConductivityField constant_conductivity(const Grid& g, double w, double xi, double zeta) {
    return ConductivityField(ScalarField::constant(g, w),
                             AnisotropyXiZeta(ScalarField::constant(g, xi),
                                              ScalarField::constant(g, zeta)));
}

}  // namespace

TEST_CASE("identity conductivity, g = x gives u = x") {
    Grid g(16);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("identity", g);
    auto us = solve_illuminations(c, {{"x", [](double x, double) { return x; }}}, ops);
    CHECK(max_abs_diff(us[0], ScalarField::sample(g, [](double x, double) { return x; })) < 1e-12);
}

TEST_CASE("constant SPD conductivity, affine illumination solved exactly") {
    Grid g(16);
    DerivativeOps ops(g);
    ConductivityField c = constant_conductivity(g, 1.3, 1.5, 0.4);
    auto us = solve_illuminations(c, {{"x+y", [](double x, double y) { return x + y; }}}, ops);
    CHECK(max_abs_diff(us[0], ScalarField::sample(g, [](double x, double y) { return x + y; })) <
          1e-12);
}

TEST_CASE("smooth phantom: interior residual below 1e-9") {
    Grid g(48);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    auto us = solve_illuminations(c, {triplet_standard()[0]}, ops);
    TensorField gamma = assemble_tensor(c);
    ScalarField residual = ops.divergence(gamma.apply(ops.gradient(us[0])));
    CHECK(max_abs_interior(residual) < 1e-9);
}

TEST_CASE("power densities of identity gamma and u = (x, y)") {
    Grid g(12);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("identity", g);
    std::vector<ScalarField> us = {ScalarField::sample(g, [](double x, double) { return x; }),
                                   ScalarField::sample(g, [](double, double y) { return y; })};
    PowerDensitySet H = power_densities(c, us, ops);
    CHECK(max_abs_diff(H.at(0, 0), ScalarField::constant(g, 1.0)) < 1e-13);
    CHECK(max_abs(H.at(0, 1)) < 1e-13);
    CHECK(max_abs_diff(H.at(1, 1), ScalarField::constant(g, 1.0)) < 1e-13);
}

TEST_CASE("power densities of diag(2, 1/2): det H = det gamma = 1") {
    Grid g(12);
    DerivativeOps ops(g);
    ConductivityField c = constant_conductivity(g, 1.0, 2.0, 0.0);
    std::vector<ScalarField> us = {ScalarField::sample(g, [](double x, double) { return x; }),
                                   ScalarField::sample(g, [](double, double y) { return y; })};
    PowerDensitySet H = power_densities(c, us, ops);
    CHECK(max_abs_diff(H.at(0, 0), ScalarField::constant(g, 2.0)) < 1e-13);
    CHECK(max_abs_diff(H.at(1, 1), ScalarField::constant(g, 0.5)) < 1e-13);
    CHECK(max_abs(H.at(0, 1)) < 1e-13);
    ScalarField det(g,
                    (H.at(0, 0).array() * H.at(1, 1).array() - H.at(0, 1).array().square())
                        .matrix());
    CHECK(max_abs_diff(det, ScalarField::constant(g, 1.0)) < 1e-12);
}

TEST_CASE("smooth phantom with the standard triplet: pair determinants positive") {
    Grid g(48);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    PowerDensitySet H = power_densities(c, solve_illuminations(c, triplet_standard(), ops), ops);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}}) {
        ScalarField det(g, (H.at(i, i).array() * H.at(j, j).array() -
                            H.at(i, j).array().square())
                               .matrix());
        CHECK(det.values().minCoeff() > 0.0);
    }
}

TEST_CASE("det H = det gamma det(grad u1, grad u2)^2 stays nonnegative") {
    Grid g(32);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    PowerDensitySet H = power_densities(c, solve_illuminations(c, pair_xy(), ops), ops);
    ScalarField det(g, (H.at(0, 0).array() * H.at(1, 1).array() - H.at(0, 1).array().square())
                           .matrix());
    CHECK(det.values().minCoeff() > -1e-12);
}

TEST_CASE("constant gamma + affine illuminations: H spatially constant") {
    Grid g(16);
    DerivativeOps ops(g);
    ConductivityField c = constant_conductivity(g, 1.2, 1.4, -0.3);
    std::vector<Illumination> gs = {{"x+y", [](double x, double y) { return x + y; }},
                                    {"-x+y", [](double x, double y) { return -x + y; }}};
    PowerDensitySet H = power_densities(c, solve_illuminations(c, gs, ops), ops);
    for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        const double v0 = H.at(i, j)[0];
        CHECK(max_abs_diff(H.at(i, j), ScalarField::constant(g, v0)) < 1e-11);
    }
}

TEST_CASE("noise: alpha = 0 leaves the data untouched") {
    Grid g(16);
    DerivativeOps ops(g);
    ConductivityField c = make_phantom("smooth", g);
    PowerDensitySet H = power_densities(c, solve_illuminations(c, pair_xy(), ops), ops);
    PowerDensitySet H0 = add_noise(H, NoiseSpec{0.0, 99});
    CHECK((H0.at(0, 0).values() - H.at(0, 0).values()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((H0.at(0, 1).values() - H.at(0, 1).values()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("noise: deterministic for a fixed seed, different across streams") {
    Grid g(24);
    PowerDensitySet H(g, 2);
    for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        H.at(i, j) = ScalarField::constant(g, 1.0);
    }
    PowerDensitySet a = add_noise(H, NoiseSpec{10.0, 42});
    PowerDensitySet b = add_noise(H, NoiseSpec{10.0, 42});
    CHECK((a.at(0, 0).values() - b.at(0, 0).values()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.at(0, 1).values() - b.at(0, 1).values()).cwiseAbs().maxCoeff() == 0.0);

    PowerDensitySet d = add_noise(H, NoiseSpec{10.0, 43});
    CHECK((a.at(0, 0).values() - d.at(0, 0).values()).cwiseAbs().maxCoeff() > 0.0);
    // independent per functional
    CHECK((a.at(0, 0).values() - a.at(1, 1).values()).cwiseAbs().maxCoeff() > 0.0);
    // stream split gives a different realization
    PowerDensitySet e = add_noise(H, NoiseSpec{10.0, 42, 7});
    CHECK((a.at(0, 0).values() - e.at(0, 0).values()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("noise moments on a constant field at alpha = 30") {
    Grid g(128);
    PowerDensitySet H(g, 1);
    H.at(0, 0) = ScalarField::constant(g, 1.0);
    PowerDensitySet noisy = add_noise(H, NoiseSpec{30.0, 7});
    const ScalarField& f = noisy.at(0, 0);
    CHECK(max_abs_diff(f, ScalarField::constant(g, 1.0)) <= 0.3);

    // interior sample std of the 3x3-averaged uniform noise: 0.3 / (3 sqrt(3))
    double sum = 0.0, sum2 = 0.0;
    int count = 0;
    for (int ix = 1; ix < g.n(); ++ix) {
        for (int iy = 1; iy < g.n(); ++iy) {
            const double v = f(ix, iy) - 1.0;
            sum += v;
            sum2 += v * v;
            ++count;
        }
    }
    const double mean = sum / count;
    const double sd = std::sqrt(sum2 / count - mean * mean);
    const double expected = 0.3 / (3.0 * std::sqrt(3.0));
    CHECK(sd == doctest::Approx(expected).epsilon(0.15));
    CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("smooth_3x3 preserves constants and averages a spike to 1/9") {
    Grid g(8);
    CHECK(max_abs_diff(smooth_3x3(ScalarField::constant(g, 2.5)),
                       ScalarField::constant(g, 2.5)) < 1e-15);
    ScalarField spike = ScalarField::zero(g);
    spike(4, 4) = 9.0;
    ScalarField s = smooth_3x3(spike);
    CHECK(s(4, 4) == doctest::Approx(1.0));
    CHECK(s(3, 4) == doctest::Approx(1.0));
    CHECK(s(2, 4) == doctest::Approx(0.0));
}
