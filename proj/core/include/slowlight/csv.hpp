#pragma once

// Plain numeric CSV tables: one header line, comma separated, LF endings,
// numbers written with 17 significant digits so they round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "slowlight/kramers_kronig.hpp"
#include "slowlight/spectral.hpp"
#include "slowlight/susceptibility.hpp"

namespace slowlight {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double value);

void write_table(std::ostream& out, const Table& table);
// Throws DomainError on ragged rows, non-numeric cells or an empty header.
Table read_table(std::istream& in);

// time_ps,re,im
Table envelope_table(const ComplexEnvelope& env);
// Requires a uniform, power-of-two time axis.
ComplexEnvelope envelope_from_table(const Table& table);

// detuning_invps,re,im
Table spectrum_table(const SpectralEnvelope& spectrum);
// detuning_invps,chi_re,chi_im
Table susceptibility_table(const Susceptibility& chi);
Susceptibility susceptibility_from_table(const Table& table);

// wavelength_nm,absorption or wavelength_nm,optical_depth (picked by header).
struct AbsorptionData {
  SpectrumQuantity quantity;
  std::vector<SpectralRecord> records;
};
AbsorptionData absorption_from_table(const Table& table);

}  // namespace slowlight
