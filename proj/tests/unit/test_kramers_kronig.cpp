#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/kramers_kronig.hpp"
#include "slowlight/medium.hpp"

using namespace slowlight;

namespace {

constexpr double kC = 2.99792458e5;  // nm/ps

OpticalDepthSpectrum doublet_depth(double d0, double gamma, double delta, const FrequencyGrid& grid) {
  // d(ω) = k₀L·Im χ with k₀L = 1 and c = d₀Γ.
  std::vector<double> d(grid.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = oracle::doublet(grid.detuning(k), gamma, delta, d0 * gamma).imag();
  return OpticalDepthSpectrum(grid, std::move(d), 765.0);
}

double max_abs_real(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(Ingest, ZeroAbsorptionGivesZeroDepth) {
  const std::vector<SpectralRecord> rec{{760, 0}, {765, 0}, {770, 0}};
  const auto d = ingest_absorption(rec, 765.0, FrequencyGrid(0.1, 256));
  for (double v : d.depth()) EXPECT_EQ(v, 0.0);
}

TEST(Ingest, ConvertsAbsorptionToOpticalDepth) {
  // Constant A = 0.35 across the measured range.
  std::vector<SpectralRecord> rec;
  for (double l = 760.0; l <= 770.0; l += 0.5) rec.push_back({l, 0.35});
  const auto d = ingest_absorption(rec, 765.0, FrequencyGrid(0.1, 256));
  EXPECT_NEAR(d.depth()[128], -std::log(0.65), 1e-12);
  EXPECT_NEAR(d.depth()[128], 0.4308, 1e-4);
  EXPECT_EQ(d.depth().front(), 0.0);
  EXPECT_EQ(d.depth().back(), 0.0);
}

TEST(Ingest, PlacesRamanLinesAtTheirFrequencyOffsets) {
  // Narrow bumps at 759.4 and 772.4 nm on a fine wavelength axis; the depth
  // peaks must land at c/λ − c/λ_center.
  std::vector<SpectralRecord> rec;
  for (double l = 750.0; l <= 782.0 + 1e-9; l += 0.01) {
    const double a = std::exp(-std::pow((l - 759.4) / 0.05, 2)) + std::exp(-std::pow((l - 772.4) / 0.05, 2));
    rec.push_back({l, 0.5 * a});
  }
  const FrequencyGrid grid(0.001, 16384);
  const auto d = ingest_absorption(rec, 765.85, grid);
  const auto& v = d.depth();
  const auto half = v.begin() + static_cast<std::ptrdiff_t>(grid.zero_index());
  const auto upper = std::max_element(half, v.end());
  const auto lower = std::max_element(v.begin(), half);
  const double nu_c = kC / 765.85;
  EXPECT_NEAR(grid.detuning(static_cast<std::size_t>(upper - v.begin())), kC / 759.4 - nu_c, 2e-3);
  EXPECT_NEAR(grid.detuning(static_cast<std::size_t>(lower - v.begin())), kC / 772.4 - nu_c, 2e-3);
  EXPECT_NEAR(kC / 759.4 - nu_c, 3.32, 0.01);
  EXPECT_NEAR(kC / 772.4 - nu_c, -3.32, 0.01);
}

TEST(Ingest, AcceptsDecreasingWavelengthsAndDirectDepth) {
  std::vector<SpectralRecord> up, down;
  for (int i = 0; i <= 40; ++i) {
    const double l = 760.0 + 0.25 * i;
    up.push_back({l, 0.1 + 0.01 * i});
  }
  down.assign(up.rbegin(), up.rend());
  const FrequencyGrid grid(0.05, 512);
  const auto a = ingest_absorption(up, 765.0, grid, SpectrumQuantity::optical_depth);
  const auto b = ingest_absorption(down, 765.0, grid, SpectrumQuantity::optical_depth);
  EXPECT_EQ(a.depth(), b.depth());
  EXPECT_EQ(a.support_begin(), b.support_begin());
}

TEST(Ingest, RejectsInvalidRecords) {
  const FrequencyGrid grid(0.1, 64);
  EXPECT_THROW(ingest_absorption(std::vector<SpectralRecord>{{760, 0.1}, {765, 1.0}}, 765.0, grid), DomainError);
  EXPECT_THROW(ingest_absorption(std::vector<SpectralRecord>{{760, 0.1}, {765, -0.1}}, 765.0, grid), DomainError);
  EXPECT_THROW(ingest_absorption(std::vector<SpectralRecord>{{760, 0.1}, {765, 0.1}, {764, 0.1}}, 765.0, grid),
               DomainError);
  EXPECT_THROW(ingest_absorption(std::vector<SpectralRecord>{{760, 0.1}, {760, 0.1}}, 765.0, grid), DomainError);
  EXPECT_THROW(ingest_absorption(std::vector<SpectralRecord>{{760, -1.0}, {765, 0.2}}, 765.0, grid,
                                 SpectrumQuantity::optical_depth),
               DomainError);
}

TEST(PrincipalValue, MatchesDirectOddPointSum) {
  const FrequencyGrid grid(0.05, 2048);
  const auto depth = doublet_depth(2.5, 1.0, 6.8, grid);
  const auto fast = principal_value_transform(depth.depth());
  const auto slow = oracle::pv_hilbert(depth.depth(), grid.d_omega());
  double err = 0.0;
  for (std::size_t k = 0; k < fast.size(); ++k) err = std::max(err, std::abs(fast[k] - slow[k]));
  EXPECT_LT(err / max_abs_real(slow), 1e-12);
}

TEST(KramersKronig, ZeroDepthGivesZeroSusceptibility) {
  const FrequencyGrid grid(0.1, 128);
  const auto chi = kk_real_from_imag(OpticalDepthSpectrum(grid, std::vector<double>(128), 765.0), 1.0, 1.0);
  for (const auto& z : chi.values()) EXPECT_EQ(z, Complex{});
}

TEST(KramersKronig, SingleLorentzianIsDispersionlessAtItsCentre) {
  const FrequencyGrid grid(0.02, 1 << 14);
  std::vector<double> d(grid.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = oracle::lorentzian(grid.detuning(k), 0.0, 1.0, 1.0).imag();
  const auto chi = kk_real_from_imag(OpticalDepthSpectrum(grid, d, 765.0), 1.0, 1.0);
  EXPECT_NEAR(chi.values()[grid.zero_index()].real(), 0.0, 1e-12);
}

TEST(KramersKronig, DoubletOnWideGridMatchesClosedForm) {
  const double delta = 6.8;
  const auto grid = FrequencyGrid::spanning(20.0 * delta, 1 << 14);
  const auto depth = doublet_depth(2.5, 1.0, delta, grid);
  const auto chi = kk_real_from_imag(depth, 1.0, 1.0);
  double err = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double ref = oracle::doublet(grid.detuning(k), 1.0, delta, 2.5).real();
    err = std::max(err, std::abs(chi.values()[k].real() - ref));
    peak = std::max(peak, std::abs(ref));
  }
  EXPECT_LT(err / peak, 0.01);
}

TEST(KramersKronig, RoundTripOverRandomMedia) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> gamma(0.2, 2.0), delta(3.0, 10.0), depth(0.1, 5.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double g = gamma(rng), d = delta(rng), d0 = depth(rng);
    const auto grid = FrequencyGrid::spanning(20.0 * d, 1 << 14);
    const auto chi = kk_real_from_imag(doublet_depth(d0, g, d, grid), 1.0, 1.0);
    double err = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double ref = oracle::doublet(grid.detuning(k), g, d, d0 * g).real();
      err = std::max(err, std::abs(chi.values()[k].real() - ref));
      peak = std::max(peak, std::abs(ref));
    }
    EXPECT_LT(err / peak, 0.01) << "Γ=" << g << " Δ=" << d << " d0=" << d0;
  }
}

TEST(KramersKronig, EvenInputGivesOddOutput) {
  const FrequencyGrid grid(0.03, 4096);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> d(grid.size());
  for (int b = 0; b < 5; ++b) {
    const double c = 10.0 * u(rng), w = 0.3 + u(rng), a = u(rng);
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double x = grid.detuning(k);
      d[k] += a * (std::exp(-std::pow((x - c) / w, 2)) + std::exp(-std::pow((x + c) / w, 2)));
    }
  }
  const auto chi = kk_real_from_imag(OpticalDepthSpectrum(grid, d, 765.0), 1.0, 1.0);
  const std::size_t z = grid.zero_index();
  for (std::size_t k = 1; k < z; ++k) {
    EXPECT_NEAR(chi.values()[z + k].real(), -chi.values()[z - k].real(), 1e-9);
  }
}

TEST(KramersKronig, IsLinear) {
  const FrequencyGrid grid(0.05, 4096);
  const auto d1 = doublet_depth(1.0, 1.0, 6.8, grid);
  std::vector<double> v2(grid.size()), mix(grid.size());
  for (std::size_t k = 0; k < v2.size(); ++k) {
    v2[k] = std::exp(-std::pow((grid.detuning(k) - 2.0) / 0.7, 2));
    mix[k] = 0.3 * d1.depth()[k] + 2.0 * v2[k];
  }
  const auto a = kk_real_from_imag(d1, 1.0, 1.0);
  const auto b = kk_real_from_imag(OpticalDepthSpectrum(grid, v2, 765.0), 1.0, 1.0);
  const auto m = kk_real_from_imag(OpticalDepthSpectrum(grid, mix, 765.0), 1.0, 1.0);
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double expected = 0.3 * a.values()[k].real() + 2.0 * b.values()[k].real();
    err = std::max(err, std::abs(m.values()[k].real() - expected));
    scale = std::max(scale, std::abs(expected));
  }
  EXPECT_LT(err / scale, 1e-10);
}

TEST(KramersKronig, ImaginaryPartIsDepthOverKL) {
  const FrequencyGrid grid(0.05, 1024);
  const auto depth = doublet_depth(2.0, 1.0, 6.8, grid);
  const auto chi = kk_real_from_imag(depth, 4.0, 0.5);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(chi.values()[k].imag(), depth.depth()[k] / 2.0, 1e-15);
}

TEST(KramersKronig, RefusesTruncatedSpectraUnlessTapered) {
  const FrequencyGrid grid(0.05, 1024);  // spans only ±25.6
  std::vector<double> d(grid.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = 1.0 / (1.0 + std::pow(grid.detuning(k) / 5.0, 2));
  const OpticalDepthSpectrum depth(grid, d, 765.0);
  EXPECT_THROW(kk_real_from_imag(depth, 1.0, 1.0), TruncationRiskError);
  KramersKronigOptions opts;
  opts.force_taper = true;
  const auto chi = kk_real_from_imag(depth, 1.0, 1.0, opts);
  EXPECT_NEAR(chi.values().front().imag(), 0.0, 1e-15);
  EXPECT_NEAR(chi.values().back().imag(), 0.0, 1e-15);
  EXPECT_NEAR(chi.values()[512].imag(), 1.0, 1e-15);
}

TEST(KramersKronig, DetectsTruncationInsideZeroFilledGrid) {
  // Measured range ends while the absorption is still large.
  std::vector<SpectralRecord> rec;
  for (double l = 762.0; l <= 768.0; l += 0.1) rec.push_back({l, 0.4});
  const auto depth = ingest_absorption(rec, 765.0, FrequencyGrid(0.02, 4096));
  EXPECT_THROW(kk_real_from_imag(depth, 1.0, 1.0), TruncationRiskError);
  KramersKronigOptions opts;
  opts.force_taper = true;
  EXPECT_NO_THROW(kk_real_from_imag(depth, 1.0, 1.0, opts));
}

TEST(GroupDelayFromChi, ZeroAndClosedFormDoublet) {
  const FrequencyGrid grid(0.005, 4096);
  EXPECT_EQ(group_delay_from_susceptibility(Susceptibility::zeros(grid), 1.0, 1.0, 0.0), 0.0);
  const auto m = from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0);
  const double tau = group_delay_from_susceptibility(sample_chi(m, grid), 1.0, 1.0, 0.0);
  EXPECT_NEAR(tau / oracle::tau_g(2.5, 1.0, 6.8), 1.0, 0.005);
  EXPECT_NEAR(tau, 0.1673, 0.005 * 0.1673);
  EXPECT_THROW(group_delay_from_susceptibility(sample_chi(m, grid), 1.0, 1.0, grid.max_detuning()), DomainError);
}

TEST(GroupDelayFromChi, ReconstructedDoubletWithinTwoPercent) {
  const auto grid = FrequencyGrid::spanning(20.0 * 6.8, 1 << 14);
  const auto chi = kk_real_from_imag(doublet_depth(2.5, 1.0, 6.8, grid), 1.0, 1.0);
  const double tau = group_delay_from_susceptibility(chi, 1.0, 1.0, 0.0);
  EXPECT_NEAR(tau / oracle::tau_g(2.5, 1.0, 6.8), 1.0, 0.02);
}
