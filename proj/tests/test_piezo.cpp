#include <doctest.h>

#include <cmath>

#include "stepcim/device.hpp"
#include "stepcim/errors.hpp"
#include "stepcim/piezo.hpp"

using namespace stepcim;

TEST_CASE("kappa from default geometry") {
    CHECK(kappa_from_geometry(20e-9, 30e-9, 100e-9, 180e-9) == doctest::Approx(600.0 / 18000.0).epsilon(1e-14));
    CHECK(kappa_from_geometry(20e-9, 30e-9, 100e-9, 180e-9) == doctest::Approx(0.03).epsilon(0.12));
}

TEST_CASE("kappa rejects a nail as large as the hammer") {
    CHECK_THROWS_AS(kappa_from_geometry(100e-9, 180e-9, 100e-9, 180e-9), GeometryError);
    CHECK_THROWS_AS(kappa_from_geometry(0.0, 30e-9, 100e-9, 180e-9), GeometryError);
}

TEST_CASE("halving the hammer width doubles kappa") {
    const double k = kappa_from_geometry(20e-9, 30e-9, 100e-9, 180e-9);
    CHECK(kappa_from_geometry(20e-9, 30e-9, 100e-9, 90e-9) == doctest::Approx(2 * k).epsilon(1e-14));
}

TEST_CASE("hammer-and-nail amplification") {
    CHECK(hn_amplification(1.0 / 30.0) == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(hn_amplification(2.0 / 30.0) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(hn_amplification(0.2, 0.2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(hn_amplification(1.0), GeometryError);
    CHECK_THROWS_AS(hn_amplification(0.0), GeometryError);
    double prev = 1e300;
    for (double k = 0.01; k < 1.0; k += 0.01) {
        const double g = hn_amplification(k);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("transduction anchor at the sense bias") {
    const PiezoParams pp;
    const FerroParams fp;
    const StressResult r = transduce(+1, 0.4, pp, fp);
    CHECK(r.dE_G == doctest::Approx(0.0484).epsilon(1e-9));
    CHECK(r.sigma_TMD / r.sigma_PE == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(r.sigma_TMD == doctest::Approx(0.0484 / 0.8e-9).epsilon(1e-9));
    CHECK(r.sigma_TMD == doctest::Approx(60.5e6).epsilon(1e-9));
    CHECK(r.sigma_PE == doctest::Approx(5.5e6).epsilon(1e-9));
    CHECK(r.dE_G == doctest::Approx(pp.alpha_TMD * r.sigma_TMD).epsilon(1e-14));
}

TEST_CASE("transduction signs follow polarization times bias") {
    const PiezoParams pp;
    const FerroParams fp;
    CHECK(transduce(-1, 0.4, pp, fp).dE_G == doctest::Approx(-0.0484).epsilon(1e-9));
    CHECK(transduce(+1, -0.4, pp, fp).dE_G == doctest::Approx(-0.0484).epsilon(1e-9));
    CHECK(transduce(-1, -0.4, pp, fp).dE_G == doctest::Approx(0.0484).epsilon(1e-9));
    const StressResult z = transduce(+1, 0.0, pp, fp);
    CHECK(z.dE_G == 0.0);
    CHECK(z.S_PE == 0.0);
}

TEST_CASE("PiER antisymmetry and sign agreement") {
    const PiezoParams pp;
    const FerroParams fp;
    for (double v = -0.53; v <= 0.53; v += 0.01)
        for (int p : {-1, +1}) {
            const StressResult a = transduce(p, v, pp, fp);
            const StressResult b = transduce(-p, -v, pp, fp);
            CHECK(a.dE_G == b.dE_G);
            CHECK(a.sigma_TMD == b.sigma_TMD);
            CHECK(transduce(p, -v, pp, fp).dE_G == -a.dE_G);
            const int expect = p * ((v > 0) - (v < 0));
            CHECK(((a.dE_G > 0) - (a.dE_G < 0)) == expect);
            CHECK(((a.S_PE > 0) - (a.S_PE < 0)) == expect);
        }
}

TEST_CASE("bandgap change grows with bias and shrinks with kappa") {
    PiezoParams pp;
    const FerroParams fp;
    double prev = -1;
    for (double v = 0.0; v < 0.54; v += 0.005) {
        const double d = std::abs(transduce(+1, v, pp, fp).dE_G);
        CHECK(d >= prev);
        prev = d;
    }
    prev = 1e300;
    for (double k = 0.02; k < 0.9; k += 0.02) {
        pp.kappa = k;
        const double d = std::abs(transduce(+1, 0.4, pp, fp).dE_G);
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("sensing at or above the coercive voltage is refused") {
    const PiezoParams pp;
    const FerroParams fp;
    CHECK_THROWS_AS(transduce(+1, 0.54, pp, fp), PreconditionError);
    CHECK_THROWS_AS(transduce(+1, -0.6, pp, fp), PreconditionError);
    CHECK_THROWS_AS(transduce(0, 0.4, pp, fp), DomainError);
}

TEST_CASE("displacement is linear in field at fixed stress") {
    const PiezoParams pp;
    const FerroParams fp;
    const double s = 5.5e6;
    const double d0 = displacement(s, 0.0, pp, fp);
    CHECK(d0 == doctest::Approx(650e-12 * s).epsilon(1e-14));
    const double d1 = displacement(s, 1e5, pp, fp);
    const double d2 = displacement(s, 2e5, pp, fp);
    CHECK(d2 - d1 == doctest::Approx(d1 - d0).epsilon(1e-9));
    CHECK(d1 - d0 == doctest::Approx(kEps0 * 4000 * 1e5).epsilon(1e-12));
}

TEST_CASE("calibration gain reproduces the default and the chain fallback") {
    PiezoParams pp;
    const FerroParams fp;
    CHECK(solve_calib_gain(pp, fp, 0.4, 0.0484) == doctest::Approx(8.25).epsilon(1e-12));
    pp.calib_gain = 0.0;
    const StressResult r = transduce(+1, 0.4, pp, fp);
    const double E = 0.4 / 600e-9;
    CHECK(r.sigma_PE == doctest::Approx(0.25 * 650e-12 * E / 2e-11).epsilon(1e-12));
    CHECK(r.S_PE == doctest::Approx(650e-12 * E).epsilon(1e-12));
}

TEST_CASE("calibration is infeasible when the sense bias reaches the coercive voltage") {
    const PiezoParams pp;
    FerroParams fp;
    fp.t_PE = 300e-9;
    CHECK(fp.coercive_voltage() == doctest::Approx(0.27).epsilon(1e-12));
    CHECK_THROWS_AS(solve_calib_gain(pp, fp, 0.4, 0.0484), InfeasibleError);
}

TEST_CASE("device resolve pushes geometry into the records") {
    DeviceParams dp;
    dp.geom.W_PE = 90e-9;
    dp.resolve();
    CHECK(dp.piezo.kappa == doctest::Approx(600.0 / 9000.0).epsilon(1e-14));
    CHECK(dp.ferro.A_PE == doctest::Approx(100e-9 * 90e-9).epsilon(1e-14));
    dp.geom.L_TMD = 1e-6;
    CHECK_THROWS_AS(dp.resolve(), GeometryError);
}
