#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kerrchaos/fock.hpp"
#include "kerrchaos/ladder.hpp"
#include "kerrchaos/rng.hpp"

using namespace kerrchaos;

namespace {

// random normalized state for property checks
Vector random_state(const FockBasis& basis, std::uint64_t seed) {
    GaussianStream stream(seed, 0);
    Vector psi(basis.dim);
    for (int i = 0; i < basis.dim; ++i) psi(i) = Complex{stream.next_normal(), stream.next_normal()};
    psi.normalize();
    return psi;
}

Matrix random_hermitian(const FockBasis& basis, std::uint64_t seed) {
    GaussianStream stream(seed, 1);
    Matrix m(basis.dim, basis.dim);
    for (int i = 0; i < basis.dim; ++i)
        for (int j = 0; j < basis.dim; ++j) m(i, j) = Complex{stream.next_normal(), stream.next_normal()};
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace

TEST_CASE("basis requires at least two levels") {
    CHECK_THROWS_AS(FockBasis(1), std::invalid_argument);
    CHECK_NOTHROW(FockBasis(2));
}

TEST_CASE("annihilation operator matrix elements") {
    const FockBasis basis(3);
    const Matrix a = fock::annihilation(basis);
    CHECK(a(0, 1).real() == doctest::Approx(1.0));
    CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(a(1, 0)) == 0.0);
    CHECK(std::abs(a(2, 2)) == 0.0);

    SUBCASE("dim=2 is the single sqrt(1) element") {
        const Matrix a2 = fock::annihilation(FockBasis(2));
        CHECK(a2(0, 1).real() == doctest::Approx(1.0));
        CHECK(a2.cwiseAbs().sum() == doctest::Approx(1.0));
    }
}

TEST_CASE("number operator from composition equals the diagonal construction exactly") {
    const FockBasis basis(12);
    const Matrix a = fock::annihilation(basis);
    const Matrix composed = a.adjoint() * a;
    CHECK((composed - fock::number_operator(basis)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("commutator is the identity except the truncation corner") {
    const FockBasis basis(9);
    const Matrix a = fock::annihilation(basis);
    Matrix commutator = a * a.adjoint() - a.adjoint() * a;
    // the (dim-1, dim-1) element picks up -(dim-1) because a† maps the top
    // state out of the retained space
    CHECK(commutator(8, 8).real() == doctest::Approx(-8.0));
    commutator(8, 8) = 1.0;
    CHECK((commutator - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hamiltonian: pure detuning and pure Kerr diagonals") {
    const FockBasis basis(4);
    SystemParams p;
    p.drive = ConstantDrive{0.0};

    p.delta = 1.0;
    p.chi = 0.0;
    Matrix h = fock::hamiltonian(p, basis, 0.0);
    for (int n = 0; n < 4; ++n) CHECK(h(n, n).real() == doctest::Approx(n));

    p.delta = 0.0;
    p.chi = 1.0;
    h = fock::hamiltonian(p, basis, 0.0);
    for (int n = 0; n < 4; ++n) CHECK(h(n, n).real() == doctest::Approx(n * n));
}

TEST_CASE("hamiltonian matches the hand-evaluated 3x3 case") {
    const FockBasis basis(3);
    SystemParams p{-15.0, 2.0, 0.0, ConstantDrive{10.2}};
    const Matrix h = fock::hamiltonian(p, basis, 0.0);
    CHECK(h(0, 0).real() == doctest::Approx(0.0));
    CHECK(h(1, 1).real() == doctest::Approx(-13.0));
    CHECK(h(2, 2).real() == doctest::Approx(-22.0));
    CHECK(h(0, 1).real() == doctest::Approx(10.2));
    CHECK(h(1, 2).real() == doctest::Approx(10.2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hamiltonian is hermitian for every drive family and time") {
    const FockBasis basis(20);
    const std::vector<SystemParams> cases = {
        {-15.0, 2.0, 0.0, BichromaticDrive{10.2, 10.2, 5.0}},
        {-15.0, 0.7, 0.0, GaussianTrainDrive{15.0, 0.1, 2.0 * kPi / 5.0, 0.0}},
        {3.0, 0.0, 0.5, ConstantDrive{1.0}},
    };
    for (const auto& p : cases)
        for (double t : {0.0, 0.37, 1.26, 8.0})
            CHECK(fock::hermiticity_defect(fock::hamiltonian(p, basis, t)) < 1e-12);
}

TEST_CASE("lindblad operators at zero and finite temperature") {
    const FockBasis basis(2);
    SystemParams p;

    p.nbar = 0.0;
    auto [l1, l2] = fock::lindblad_ops(p, basis);
    CHECK((l1 - fock::annihilation(basis)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(l2.cwiseAbs().maxCoeff() == 0.0);

    p.nbar = 1.0;
    std::tie(l1, l2) = fock::lindblad_ops(p, basis);
    CHECK((l1 - std::sqrt(2.0) * fock::annihilation(basis)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((l2 - fock::annihilation(basis).adjoint()).cwiseAbs().maxCoeff() < 1e-15);

    p.nbar = 0.5;
    std::tie(l1, l2) = fock::lindblad_ops(p, basis);
    CHECK(l1(0, 1).real() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("truncation adequacy") {
    CHECK(fock::truncation_adequate(fock::vacuum_density(FockBasis(10)), 2, 1e-6));
    CHECK_FALSE(fock::truncation_adequate(fock::maximally_mixed(FockBasis(10)), 2, 0.1));

    // thermal nbar=1 at dim=40: the top 4 levels hold a ~2^-37 tail
    const Matrix thermal = fock::thermal_density(FockBasis(40), 1.0);
    CHECK(fock::truncation_adequate(thermal, 4, 1e-6));
    CHECK_THROWS_AS(fock::truncation_adequate(thermal, 40, 1e-6), std::invalid_argument);
}

TEST_CASE("thermal density has the geometric mean occupation") {
    const Matrix thermal = fock::thermal_density(FockBasis(60), 1.0);
    double n = 0.0;
    for (int k = 0; k < 60; ++k) n += k * thermal(k, k).real();
    CHECK(n == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(thermal.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ladder kernels match the dense operators") {
    const FockBasis basis(17);
    const ladder::Workspace w(basis);
    const Matrix a = fock::annihilation(basis);
    const SystemParams params{-2.3, 0.8, 0.0, BichromaticDrive{1.1, 0.6, 5.0}};
    const double t = 0.77;
    const Complex f = evaluate(params.drive, t);
    const Matrix h = fock::hamiltonian(params, basis, t);

    const Vector psi = random_state(basis, 7);
    Vector out;
    ladder::apply_lowering(w, psi, out);
    CHECK((out - a * psi).cwiseAbs().maxCoeff() < 1e-13);
    ladder::apply_raising(w, psi, out);
    CHECK((out - a.adjoint() * psi).cwiseAbs().maxCoeff() < 1e-13);
    ladder::apply_hamiltonian(w, params, f, psi, out);
    CHECK((out - h * psi).cwiseAbs().maxCoeff() < 1e-12);

    const Matrix rho = random_hermitian(basis, 13);
    Matrix mout;
    ladder::lower_left(w, rho, mout);
    CHECK((mout - a * rho).cwiseAbs().maxCoeff() < 1e-12);
    ladder::raise_right(w, rho, mout);
    CHECK((mout - rho * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    ladder::sandwich_lowering(w, rho, mout);
    CHECK((mout - a * rho * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    ladder::sandwich_raising(w, rho, mout);
    CHECK((mout - a.adjoint() * rho * a).cwiseAbs().maxCoeff() < 1e-12);
    ladder::hamiltonian_left(w, params, f, rho, mout);
    CHECK((mout - h * rho).cwiseAbs().maxCoeff() < 1e-11);
    ladder::hamiltonian_right(w, params, f, rho, mout);
    CHECK((mout - rho * h).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("coherent state has poissonian amplitudes") {
    const FockBasis basis(40);
    const Complex alpha{1.2, -0.4};
    const Vector psi = fock::coherent_state(basis, alpha);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    // <n> = |alpha|^2
    double n = 0.0;
    for (int k = 0; k < 40; ++k) n += k * std::norm(psi(k));
    CHECK(n == doctest::Approx(std::norm(alpha)).epsilon(1e-9));
}
