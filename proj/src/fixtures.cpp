#include "kerrchaos/fixtures.hpp"

#include "kerrchaos/errors.hpp"

namespace kerrchaos {

namespace {

constexpr double kTau = 2.0 * kPi / 5.0;   // pulse spacing 2π/5 shared by figs 4-6

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> f;

    {
        Fixture fx;
        fx.name = "fig1";
        fx.description = "bichromatic drive, chaotic regime";
        fx.params = {-15.0, 2.0, 0.0, BichromaticDrive{10.2, 10.2, 5.0}};
        fx.fock_dim = 72;
        fx.dt = 2e-4;   // chi*n^2 reaches ~1e4 at the top of the basis; RK4 stability
        fx.mean_purity = ExpectedValue{0.11, 0.07};
        f.push_back(fx);
    }
    {
        Fixture fx;
        fx.name = "fig2";
        fx.description = "bichromatic drive, deep chaotic regime";
        fx.params = {-14.25, 0.175, 0.0, BichromaticDrive{20.4, 20.4, 5.0}};
        fx.fock_dim = 140;   // transient excitation spike needs the headroom
        fx.dt = 5e-4;
        fx.mean_purity = ExpectedValue{0.045, 0.035};
        f.push_back(fx);
    }
    {
        Fixture fx;
        fx.name = "fig3";
        fx.description = "bichromatic drive, regular regime";
        fx.params = {-15.0, 0.7, 0.0, BichromaticDrive{32.2, 10.2, 5.0}};
        fx.fock_dim = 64;
        fx.mean_purity = ExpectedValue{0.70, 0.15};
        f.push_back(fx);
    }
    {
        Fixture fx;
        fx.name = "fig4";
        fx.description = "Gaussian pulse train, chaotic regime "
                         "(pulse width 0.1; the printed caption's 10.2 merges the pulses "
                         "into a constant drive and contradicts every reported diagnostic)";
        fx.params = {-15.0, 0.7, 0.0, GaussianTrainDrive{15.0, 0.1, kTau, 0.0}};
        fx.fock_dim = 48;
        fx.mean_excitation = ExpectedValue{2.5, 0.5};
        fx.mean_purity = ExpectedValue{0.305, 0.08};
        fx.lyapunov = ExpectedValue{0.187, 0.05};
        f.push_back(fx);
    }
    {
        Fixture fx;
        fx.name = "fig5";
        fx.description = "Gaussian pulse train, deep chaotic regime";
        fx.params = {-15.0, 0.7, 0.0, GaussianTrainDrive{20.4, 0.1, kTau, 0.0}};
        fx.fock_dim = 56;
        fx.mean_excitation = ExpectedValue{3.0, 0.6};
        fx.mean_purity = ExpectedValue{0.22, 0.06};
        fx.lyapunov = ExpectedValue{0.4197, 0.08};
        f.push_back(fx);
    }
    {
        Fixture fx;
        fx.name = "fig6";
        fx.description = "Gaussian pulse train, regular regime";
        fx.params = {-15.0, 0.1, 0.0, GaussianTrainDrive{12.0, 0.1, kTau, 0.0}};
        fx.fock_dim = 48;
        fx.mean_excitation = ExpectedValue{2.0, 0.5};
        fx.mean_purity = ExpectedValue{0.922, 0.05};
        fx.lyapunov = ExpectedValue{-0.1693, 0.05};
        f.push_back(fx);
    }
    return f;
}

} // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> table = build_fixtures();
    return table;
}

const Fixture& fixture_by_name(const std::string& name) {
    for (const auto& fx : fixtures())
        if (fx.name == name) return fx;
    throw ConfigError("unknown fixture '" + name + "'");
}

} // namespace kerrchaos
