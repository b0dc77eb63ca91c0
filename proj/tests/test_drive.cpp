#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kerrchaos/drive.hpp"

using namespace kerrchaos;

TEST_CASE("constant drive evaluates to its amplitude") {
    DriveSpec spec = ConstantDrive{3.5};
    CHECK(evaluate(spec, 0.0) == Complex{3.5, 0.0});
    CHECK(evaluate(spec, 17.2) == Complex{3.5, 0.0});
    CHECK(!drive_period(spec).has_value());
}

TEST_CASE("bichromatic drive at phase zero adds the two tones") {
    DriveSpec spec = BichromaticDrive{10.2, 10.2, 5.0};
    const Complex f0 = evaluate(spec, 0.0);
    CHECK(f0.real() == doctest::Approx(20.4).epsilon(1e-12));
    CHECK(f0.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bichromatic period is 2 pi over the modulation frequency") {
    CHECK(*drive_period(DriveSpec{BichromaticDrive{1.0, 1.0, 5.0}}) ==
          doctest::Approx(2.0 * kPi / 5.0).epsilon(1e-12));
}

TEST_CASE("bichromatic modulus is periodic in the modulation period") {
    DriveSpec spec = BichromaticDrive{10.2, 10.2, 5.0};
    const double period = *drive_period(spec);
    for (double t : {0.3, 1.7, 4.0, 9.1}) {
        CHECK(std::abs(evaluate(spec, t)) ==
              doctest::Approx(std::abs(evaluate(spec, t + period))).epsilon(1e-12));
    }
}

TEST_CASE("gaussian train: isolated pulse peak and one-width decay") {
    DriveSpec spec = GaussianTrainDrive{1.0, 1.0, 1000.0, 0.0};
    CHECK(evaluate(spec, 0.0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(evaluate(spec, 1.0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("gaussian train period is the pulse spacing") {
    const double tau = 2.0 * kPi / 5.0;
    CHECK(*drive_period(DriveSpec{GaussianTrainDrive{1.0, 0.1, tau, 0.0}}) ==
          doctest::Approx(tau).epsilon(1e-12));
}

TEST_CASE("gaussian train window cutoff loses nothing above double precision") {
    // brute-force sum over a huge index range vs the windowed evaluation
    const GaussianTrainDrive d{2.0, 0.7, 1.3, 0.4};
    DriveSpec spec = d;
    for (double t : {0.0, 0.35, 1.0, 5.2, 17.9, 123.456}) {
        double brute = 0.0;
        for (long n = 0; n < 400; ++n) {
            const double x = (t - d.offset - n * d.period) / d.width;
            brute += std::exp(-x * x);
        }
        brute *= d.amp;
        CHECK(std::abs(evaluate(spec, t).real() - brute) < 1e-14 * d.amp);
    }
}

TEST_CASE("gaussian train sums only pulses with n >= 0") {
    // just left of the first pulse the value comes from that pulse alone
    DriveSpec spec = GaussianTrainDrive{1.0, 1.0, 3.0, 0.0};
    CHECK(evaluate(spec, -2.0).real() == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));
}

TEST_CASE("drive validation rejects nonpositive shape parameters") {
    CHECK_THROWS_AS(validate(DriveSpec{GaussianTrainDrive{1.0, 0.0, 1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(DriveSpec{GaussianTrainDrive{1.0, 1.0, -2.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(DriveSpec{BichromaticDrive{1.0, 1.0, 0.0}}), std::invalid_argument);
    CHECK_NOTHROW(validate(DriveSpec{ConstantDrive{-3.0}}));
}
