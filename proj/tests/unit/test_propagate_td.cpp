#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "slowlight/analysis.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/propagate_fd.hpp"
#include "slowlight/propagate_td.hpp"

using namespace slowlight;

namespace {

const TimeGrid kGrid = TimeGrid::centered(0.02, 1 << 14);

ComplexEnvelope signal_1p8() {
  return synthesize_pulse({PulseShape::flat_top_spectrum, Bandwidth{1.8}}, kGrid);
}

ComplexEnvelope fd_reference(const RamanMedium& m, const ComplexEnvelope& in) {
  return propagate(in, transfer_function(sample_chi(m, in.grid().conjugate()), m.k0(), m.length_mm()));
}

}  // namespace

TEST(TdSolver, ZeroControlLeavesSignalUntouched) {
  const auto in = signal_1p8();
  const auto m = from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0).with_control_intensity(0.0);
  const auto r = solve(m, ControlField::constant(), in);
  EXPECT_EQ(r.output.samples(), in.samples());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(TdSolver, MatchesFrequencyDomainForConstantControl) {
  const auto in = signal_1p8();
  for (double d0 : {0.5, 1.0, 2.5}) {
    const auto m = from_target_depth(d0, 1.0, 6.8, 1.0, 1.0);
    const auto td = solve(m, ControlField::constant(), in, {256});
    const auto fd = fd_reference(m, in);
    EXPECT_LT(oracle::relative_l2(td.output.samples(), fd.samples()), 1e-3) << "d0=" << d0;
    const double fd_delay = centroid_delay(in, fd);
    EXPECT_NEAR(centroid_delay(in, td.output) / fd_delay, 1.0, 0.01) << "d0=" << d0;
  }
}

TEST(TdSolver, PhysicalWavevectorScalesOut) {
  const auto in = signal_1p8();
  const auto m = from_target_depth(1.5, 1.0, 6.8, wavevector_from_wavelength(765.0), 2.0);
  const auto td = solve(m, ControlField::constant(), in);
  EXPECT_LT(oracle::relative_l2(td.output.samples(), fd_reference(m, in).samples()), 1e-3);
}

TEST(TdSolver, SecondOrderInPropagationStep) {
  const auto in = signal_1p8();
  const auto m = from_target_depth(1.0, 1.0, 6.8, 1.0, 1.0);
  const auto fd = fd_reference(m, in);
  const double coarse = oracle::relative_l2(solve(m, ControlField::constant(), in, {16}).output.samples(), fd.samples());
  const double fine = oracle::relative_l2(solve(m, ControlField::constant(), in, {32}).output.samples(), fd.samples());
  EXPECT_NEAR(coarse / fine, 4.0, 4.0 * 0.3);
}

TEST(TdSolver, SingleLineBeerLambert) {
  // Narrowband Gaussian tuned onto the upper line at +Δ/2.
  const double d0 = 2.0;
  const RamanMedium m(6.8, {0, 1.0, 0.0}, {0, 1.0, d0 / 1.0}, 1.0, 1.0, 1.0);
  const auto grid = TimeGrid::centered(0.05, 1 << 14);
  auto in = synthesize_pulse({PulseShape::gaussian, Duration{40.0}}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) in.samples()[i] *= std::polar(1.0, -3.4 * grid.time(i));
  const auto out = solve(m, ControlField::constant(), in).output;
  EXPECT_NEAR(out.energy() / in.energy() / std::exp(-d0), 1.0, 0.02);
}

TEST(TdSolver, CausalOutput) {
  // Input exactly zero before t = −5 ps.
  std::vector<Complex> e(kGrid.size());
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    const double t = kGrid.time(i) + 5.0;
    if (t > 0.0 && t < 2.0) e[i] = std::pow(std::sin(oracle::kPi * t / 2.0), 4);
  }
  const ComplexEnvelope in(kGrid, e);
  const auto out = solve(from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0), ControlField::constant(), in).output;
  double peak = 0.0;
  for (const auto& z : out.samples()) peak = std::max(peak, std::abs(z));
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    if (kGrid.time(i) < -5.0 - kGrid.dt()) {
      EXPECT_LT(std::abs(out.samples()[i]), 1e-8 * peak);
    }
  }
}

TEST(TdSolver, PassiveForAnyNonnegativeStrengths) {
  const auto in = signal_1p8();
  const RamanMedium m(6.0, {0, 0.6, 0.8}, {0, 1.3, 0.2}, 1.0, 1.0, 1.0);
  const auto gaussian = ControlField::gaussian(3.0, kGrid);
  for (const auto& control : {ControlField::constant(), gaussian}) {
    EXPECT_LE(solve(m, control, in).output.energy(), in.energy());
  }
}

TEST(TdSolver, ThinMediumMatchesFirstOrderResponseForPulsedControl) {
  // To first order in d₀: δE(t) = −L·Σ_ν (k₀c_ν/2)·u(t)·∫ e^{−(Γ_ν+iω_ν)(t−t')}·u*(t')·E(t') dt'.
  // The integral is evaluated on an 8× finer axis from the analytic pulses.
  auto signal = [](double t) { return Complex(std::exp(-0.5 * t * t / (0.25 * 0.25)), 0.0); };
  auto control = [](double t) {
    const double x = t - 0.3;
    return std::exp(-0.5 * x * x / (0.8 * 0.8)) * std::polar(1.0, 0.7 * t);
  };
  std::vector<Complex> e(kGrid.size()), u(kGrid.size());
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    e[i] = signal(kGrid.time(i));
    u[i] = control(kGrid.time(i));
  }
  const ComplexEnvelope in(kGrid, e);
  const auto m = from_target_depth(1e-4, 1.0, 6.8, 1.0, 1.0);
  const auto r = solve(m, ControlField::from_envelope(ComplexEnvelope(kGrid, u)), in);

  const int refine = 8;
  const double h = kGrid.dt() / refine;
  std::vector<Complex> expected(kGrid.size());
  for (std::size_t line = 0; line < m.lines().size(); ++line) {
    const auto& l = m.lines()[line];
    const Complex a(l.linewidth, l.center_detuning);
    const Complex decay = std::exp(-a * h);
    const double gain = -m.length_mm() * m.k0() * m.coupling(line) / 2.0;
    Complex p = 0.0;
    double t = kGrid.t_start();
    Complex f_prev = std::conj(control(t)) * signal(t);
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
      if (i > 0) {
        for (int k = 0; k < refine; ++k) {
          t += h;
          const Complex f = std::conj(control(t)) * signal(t);
          p = decay * p + 0.5 * h * (decay * f_prev + f);
          f_prev = f;
        }
      }
      expected[i] += gain * control(kGrid.time(i)) * p;
    }
  }
  std::vector<Complex> got(kGrid.size());
  for (std::size_t i = 0; i < kGrid.size(); ++i) got[i] = r.output.samples()[i] - e[i];
  EXPECT_LT(oracle::relative_l2(got, expected), 1e-3);
}

TEST(TdSolver, LongFlatTopControlApproachesConstantControl) {
  // 0.65-ps transform-limited signal inside a 4-ps control.
  const auto in = synthesize_pulse({PulseShape::gaussian, Duration{0.65}}, kGrid);

  const auto m = from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0);
  const auto constant = solve(m, ControlField::constant(), in);
  const auto pulsed = solve(m, ControlField::flat_top(4.0, kGrid), in);
  const double d_const = centroid_delay(in, constant.output);
  const double d_pulsed = centroid_delay(in, pulsed.output);
  EXPECT_NEAR(d_pulsed / d_const, 1.0, 0.02);
  EXPECT_NEAR(energy_loss_db(in, pulsed.output) / energy_loss_db(in, constant.output), 1.0, 0.02);
}

TEST(TdSolver, ShortControlTriggersWarning) {
  const auto in = signal_1p8();
  const auto m = from_target_depth(1.0, 1.0, 6.8, 1.0, 1.0);
  const auto r = solve(m, ControlField::gaussian(0.5, kGrid), in);
  bool found = false;
  for (const auto& w : r.warnings) found = found || w.find("control duration") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(TdSolver, CoherencesStartAtZeroAndWarnAboveThreshold) {
  const auto in = signal_1p8();
  const auto r = solve(from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0), ControlField::constant(), in);
  ASSERT_EQ(r.final_coherences.lines.size(), 2u);
  EXPECT_EQ(r.final_coherences.q31().front(), Complex{});
  EXPECT_EQ(r.final_coherences.q21().front(), Complex{});
  EXPECT_GT(r.max_coherence, 0.0);
  EXPECT_EQ(r.warnings.empty(), r.max_coherence <= 0.1);

  // Scaling the signal down keeps the coherences below the threshold.
  auto weak = in;
  for (auto& z : weak.samples()) z *= 1e-3;
  const auto rw = solve(from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0), ControlField::constant(), weak);
  EXPECT_TRUE(rw.warnings.empty());
  EXPECT_NEAR(rw.max_coherence, 1e-3 * r.max_coherence, 1e-9);
}

TEST(TdSolver, CoherenceDecaysFreelyAfterThePulse) {
  // Once the signal has passed, Q₃₁ only decays at Γ with a stationary phase.
  // The coherences are reported at the exit, where the medium's own ringing
  // still drives them in proportion to d₀, so the medium is kept thin.
  const auto in = synthesize_pulse({PulseShape::gaussian, Duration{0.5}}, kGrid);
  const auto r = solve(from_target_depth(1e-3, 1.0, 6.8, 1.0, 1.0), ControlField::constant(), in);
  const auto& q = r.final_coherences.q31();
  const std::size_t i = kGrid.size() / 2 + 200;  // t = 4 ps, pulse gone
  const Complex ratio = q[i + 1] / q[i];
  EXPECT_NEAR(std::abs(ratio), std::exp(-1.0 * kGrid.dt()), 1e-3);
  EXPECT_NEAR(std::arg(ratio), 0.0, 1e-3);
}

TEST(TdSolver, RefusesUnderResolvedSettings) {
  const auto in = signal_1p8();
  const auto m = from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0);
  try {
    solve(m, ControlField::constant(), in, {8});
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_GE(e.required_nz(), 26u);
  }
  EXPECT_THROW(solve(m.with_control_intensity(10.0), ControlField::constant(), in, {64}), ResolutionError);
  const auto coarse = TimeGrid::centered(0.2, 1 << 12);
  const auto slow = synthesize_pulse({PulseShape::gaussian, Duration{5.0}}, coarse);
  try {
    solve(m, ControlField::constant(), slow);
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_NEAR(e.max_dt_ps(), 2.0 * oracle::kPi / (8.0 * 6.8), 1e-12);
  }
}

TEST(TdSolver, RejectsControlOnAnotherGrid) {
  const auto in = signal_1p8();
  const auto other = TimeGrid::centered(0.01, 1 << 14);
  EXPECT_THROW(solve(from_target_depth(1.0, 1.0, 6.8, 1.0, 1.0), ControlField::gaussian(4.0, other), in), GridError);
}

TEST(ControlFieldShapes, PeakNormalisedWithRequestedWidth) {
  const auto g = ControlField::gaussian(4.0, kGrid);
  EXPECT_NEAR(g.duration_ps(), 4.0, 1e-3);
  EXPECT_NEAR(std::abs(g.amplitude(kGrid.size() / 2)), 1.0, 1e-12);
  const auto f = ControlField::flat_top(4.0, kGrid, 0.2);
  EXPECT_NEAR(f.duration_ps(), 4.0, kGrid.dt());
  EXPECT_TRUE(std::isinf(ControlField::constant().duration_ps()));
  auto env = ComplexEnvelope::zeros(kGrid);
  env.samples()[5] = Complex(0.0, 3.0);
  EXPECT_NEAR(std::abs(ControlField::from_envelope(env).amplitude(5)), 1.0, 1e-15);
  EXPECT_THROW(ControlField::from_envelope(ComplexEnvelope::zeros(kGrid)), DomainError);
}

TEST(TdScan, EmptyListAndLinearDelays) {
  const auto in = synthesize_pulse({PulseShape::flat_top_spectrum, Bandwidth{1.8 / (2.0 * oracle::kPi)}}, kGrid);
  const auto m = from_target_depth(1.0, 1.0, 6.8, 1.0, 1.0);
  EXPECT_TRUE(delay_vs_control_scan(m, ControlField::constant(), {}, in).empty());
  const std::vector<double> levels{0.0, 1.0, 2.0};
  const auto r = delay_vs_control_scan(m, ControlField::constant(), levels, in);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0].delay_ps, 0.0, 1e-15);
  EXPECT_NEAR(r[2].delay_ps / (2.0 * r[1].delay_ps), 1.0, 0.02);
  EXPECT_GT(r[1].delay_ps, 0.0);
}

TEST(TdScan, MonotoneForSymmetricLorentzianMedia) {
  const auto in = synthesize_pulse({PulseShape::gaussian, Duration{2.0}}, kGrid);
  const auto m = from_target_depth(1.0, 1.0, 6.8, 1.0, 1.0);
  const std::vector<double> levels{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  const auto r = delay_vs_control_scan(m, ControlField::constant(), levels, in);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_GE(r[i].delay_ps, r[i - 1].delay_ps);
}
