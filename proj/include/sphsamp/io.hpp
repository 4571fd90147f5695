#pragma once

// On-disk formats.
//
// Text signal file: one header line, then one sample per line in stored order
//   sphsamp-signal 1 <dh|mw> <L> <real|complex>
//   <re>            (real)
//   <re>,<im>       (complex)
//
// Text coefficient file: header, then L^2 lines in flat_index order
//   sphsamp-coeffs 1 <L>
//   <re>,<im>
//
// Numbers are written in shortest round-trip form, so write -> read -> write
// is byte-identical.
//
// Binary container: a 64-byte little-endian header followed by the payload as
// little-endian IEEE doubles (complex values interleaved re, im).
//   offset  size  field
//        0     8  magic "SPHSAMPB"
//        8     4  version (1)
//       12     4  content (1 signal, 2 coefficients)
//       16     4  grid kind (0 dh, 1 mw; 0 for coefficients)
//       20     4  L
//       24     4  value type (1 real, 2 complex)
//       28     4  reserved (0)
//       32     8  number of doubles in the payload
//       40    24  reserved (0)

#include "sphsamp/inpainting.hpp"
#include "sphsamp/sphere_core.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sphsamp {

/// Malformed input file or configuration.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { Real, Complex };

struct SignalFile {
  SphereSignal signal;
  ValueType value_type;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
/// Whole-string parse; throws ParseError.
double parse_double(std::string_view text);

void write_signal(std::ostream& out, const SphereSignal& signal, ValueType type);
SignalFile read_signal(std::istream& in);
void write_coeffs(std::ostream& out, const HarmonicCoeffs& coeffs);
HarmonicCoeffs read_coeffs(std::istream& in);

void write_signal_binary(std::ostream& out, const SphereSignal& signal, ValueType type);
SignalFile read_signal_binary(std::istream& in);
void write_coeffs_binary(std::ostream& out, const HarmonicCoeffs& coeffs);
HarmonicCoeffs read_coeffs_binary(std::istream& in);

/// File helpers: the binary container is detected by its magic on load and
/// chosen on save when the path ends in ".bin".
SignalFile load_signal(const std::filesystem::path& path);
void save_signal(const std::filesystem::path& path, const SphereSignal& signal, ValueType type);
HarmonicCoeffs load_coeffs(const std::filesystem::path& path);
void save_coeffs(const std::filesystem::path& path, const HarmonicCoeffs& coeffs);

/// CSV with header "t,theta,weight".
std::string weights_csv(GridKind kind, BandLimit L);

/// Flat key=value configuration ('#' starts a comment). Keys:
///   L, kinds, domains, ratios, trials, sigma_rel, seed, max_iter,
///   objective_tol, feasibility_tol, output, signal_coeffs
/// Lists are comma separated. Throws ParseError on unknown keys, bad values
/// or an invalid resulting configuration.
struct ExperimentFile {
  ExperimentConfig config;
  std::string output;         // result CSV path ("" = stdout)
  std::string signal_coeffs;  // optional coefficient file for the test signal
};
ExperimentFile parse_experiment_config(std::istream& in);

/// CSV with header "kind,domain,ratio,mean_snr_db,std_snr_db,trials".
std::string results_csv(const std::vector<ExperimentCell>& cells);

nlohmann::json experiment_manifest(const ExperimentFile& file, const std::vector<ExperimentCell>& cells,
                                   double wall_seconds);

}  // namespace sphsamp
