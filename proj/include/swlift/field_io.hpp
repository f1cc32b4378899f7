#pragma once

#include <string>
#include <utility>

#include "swlift/fields.hpp"

namespace swlift::io {

// Binary field dumps. Layout, all integers and doubles little-endian:
//   bytes 0..11   magic "SWLIFT-FIELD"
//   bytes 12..15  format version (u32), currently 1
//   bytes 16..31  grid dims, four u32 (equal for the cubic torus)
//   byte  32      kind
//   payload       raw IEEE-754 doubles, sites in lexicographic order
//
// Kinds and payloads:
//   0x01/0x02/0x03  spinor (plus/minus/full): per site 2/2/4 complex values,
//                   each interleaved re,im
//   0x04            two-form: per site 6 complex values, pair order
//                   (12,13,14,23,24,34), interleaved re,im
//   0x05            gauge: 4 holonomy doubles, then per site 4 real values
//   0x11/0x12/0x13  sector spinor: i32 doubled charge (2q) after the kind
//                   byte, then the matching spinor payload
SpinorField read_spinor(const std::string& path);
void write_spinor(const std::string& path, const SpinorField& f);

TwoFormField read_two_form(const std::string& path);
void write_two_form(const std::string& path, const TwoFormField& f);

GaugeField read_gauge(const std::string& path);
void write_gauge(const std::string& path, const GaugeField& f);

std::pair<SpinorField, Charge> read_sector_spinor(const std::string& path);
void write_sector_spinor(const std::string& path, const SpinorField& f, Charge q);

}
