#include "sphsamp/io.hpp"

#include "sphsamp/dh_transform.hpp"
#include "sphsamp/mw_transform.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace sphsamp {

namespace {

constexpr std::string_view kSignalTag = "sphsamp-signal";
constexpr std::string_view kCoeffTag = "sphsamp-coeffs";
constexpr int kVersion = 1;
constexpr std::array<char, 8> kMagic{'S', 'P', 'H', 'S', 'A', 'M', 'P', 'B'};
constexpr std::size_t kHeaderBytes = 64;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string("invalid ") + what + " '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> header_fields(std::istream& in, std::string_view tag) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file");
  std::istringstream fields(line);
  std::vector<std::string> out;
  for (std::string f; fields >> f;) out.push_back(f);
  if (out.empty() || out[0] != tag) throw ParseError("expected '" + std::string(tag) + "' header");
  if (out.size() < 2 || parse_int(out[1], "version") != kVersion) throw ParseError("unsupported format version");
  return out;
}

BandLimit parse_bandlimit(std::string_view text) {
  const int L = parse_int(text, "band-limit");
  if (L < 1) throw ParseError("band-limit must be >= 1");
  return BandLimit(L);
}

Complex parse_value(std::string_view line, ValueType type, int lineno) {
  const auto parts = split(trim(line), ',');
  const std::size_t expected = type == ValueType::Real ? 1 : 2;
  if (parts.size() != expected)
    throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) + " value(s)");
  try {
    return {parse_double(parts[0]), expected == 2 ? parse_double(parts[1]) : 0.0};
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
  }
}

VectorXc read_payload(std::istream& in, int count, ValueType type) {
  VectorXc values(count);
  std::string line;
  for (int i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw ParseError("truncated payload: expected " + std::to_string(count) + " values, got " + std::to_string(i));
    values(i) = parse_value(line, type, i + 2);
  }
  while (std::getline(in, line))
    if (!trim(line).empty()) throw ParseError("trailing data after " + std::to_string(count) + " values");
  return values;
}

void write_value(std::ostream& out, const Complex& v, ValueType type) {
  out << format_double(v.real());
  if (type == ValueType::Complex) out << ',' << format_double(v.imag());
  out << '\n';
}

template <typename T>
void put_le(std::array<unsigned char, kHeaderBytes>& buf, std::size_t offset, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[offset + i] = static_cast<unsigned char>(value >> (8 * i));
}

template <typename T>
T get_le(const std::array<unsigned char, kHeaderBytes>& buf, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(buf[offset + i]) << (8 * i);
  return value;
}

struct BinaryHeader {
  std::uint32_t content, kind, L, value_type;
  std::uint64_t count;
};

void write_binary(std::ostream& out, const BinaryHeader& h, const VectorXc& values, ValueType type) {
  std::array<unsigned char, kHeaderBytes> buf{};
  std::memcpy(buf.data(), kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(buf, 8, kVersion);
  put_le<std::uint32_t>(buf, 12, h.content);
  put_le<std::uint32_t>(buf, 16, h.kind);
  put_le<std::uint32_t>(buf, 20, h.L);
  put_le<std::uint32_t>(buf, 24, h.value_type);
  put_le<std::uint64_t>(buf, 32, h.count);
  out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  auto put = [&](double d) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
    std::array<char, 8> bytes;
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>(bits >> (8 * i));
    out.write(bytes.data(), 8);
  };
  for (const Complex& v : values) {
    put(v.real());
    if (type == ValueType::Complex) put(v.imag());
  }
}

BinaryHeader read_binary_header(std::istream& in, std::uint32_t content) {
  std::array<unsigned char, kHeaderBytes> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw ParseError("truncated binary header");
  if (std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) throw ParseError("bad binary magic");
  if (get_le<std::uint32_t>(buf, 8) != kVersion) throw ParseError("unsupported binary version");
  BinaryHeader h{get_le<std::uint32_t>(buf, 12), get_le<std::uint32_t>(buf, 16), get_le<std::uint32_t>(buf, 20),
                 get_le<std::uint32_t>(buf, 24), get_le<std::uint64_t>(buf, 32)};
  if (h.content != content) throw ParseError("binary file holds a different content type");
  if (h.value_type != 1 && h.value_type != 2) throw ParseError("bad binary value type");
  if (h.L < 1 || h.L > 1u << 15) throw ParseError("bad binary band-limit");
  return h;
}

VectorXc read_binary_payload(std::istream& in, std::uint64_t count, int n, ValueType type) {
  const std::uint64_t expected = static_cast<std::uint64_t>(n) * (type == ValueType::Complex ? 2 : 1);
  if (count != expected) throw ParseError("binary payload length does not match header");
  VectorXc values(n);
  auto get = [&]() {
    std::array<char, 8> bytes;
    in.read(bytes.data(), 8);
    if (in.gcount() != 8) throw ParseError("truncated binary payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    return std::bit_cast<double>(bits);
  };
  for (int i = 0; i < n; ++i) {
    const double re = get();
    values(i) = {re, type == ValueType::Complex ? get() : 0.0};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("trailing data after binary payload");
  return values;
}

bool has_magic(std::istream& in) {
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool magic = in.gcount() == 8 && head == kMagic;
  in.clear();
  in.seekg(0);
  return magic;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

bool binary_path(const std::filesystem::path& path) { return path.extension() == ".bin"; }

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("invalid number '" + std::string(text) + "'");
  return value;
}

void write_signal(std::ostream& out, const SphereSignal& signal, ValueType type) {
  const GridDescriptor& g = signal.grid();
  out << kSignalTag << ' ' << kVersion << ' ' << to_string(g.kind) << ' ' << g.L << ' '
      << (type == ValueType::Real ? "real" : "complex") << '\n';
  for (const Complex& v : signal.values()) write_value(out, v, type);
}

SignalFile read_signal(std::istream& in) {
  const auto h = header_fields(in, kSignalTag);
  if (h.size() != 5) throw ParseError("signal header needs: tag version kind L real|complex");
  GridKind kind;
  try {
    kind = parse_grid_kind(h[2]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const BandLimit L = parse_bandlimit(h[3]);
  ValueType type;
  if (h[4] == "real") type = ValueType::Real;
  else if (h[4] == "complex") type = ValueType::Complex;
  else throw ParseError("value type must be real or complex");
  const GridDescriptor grid = make_grid(kind, L);
  return {SphereSignal(grid, read_payload(in, grid.n_samples, type)), type};
}

void write_coeffs(std::ostream& out, const HarmonicCoeffs& coeffs) {
  out << kCoeffTag << ' ' << kVersion << ' ' << coeffs.L() << '\n';
  for (const Complex& v : coeffs.values()) write_value(out, v, ValueType::Complex);
}

HarmonicCoeffs read_coeffs(std::istream& in) {
  const auto h = header_fields(in, kCoeffTag);
  if (h.size() != 3) throw ParseError("coefficient header needs: tag version L");
  const BandLimit L = parse_bandlimit(h[2]);
  return HarmonicCoeffs(L, read_payload(in, L * L, ValueType::Complex));
}

void write_signal_binary(std::ostream& out, const SphereSignal& signal, ValueType type) {
  const GridDescriptor& g = signal.grid();
  const std::uint64_t per = type == ValueType::Complex ? 2 : 1;
  write_binary(out,
               {1, g.kind == GridKind::DH ? 0u : 1u, static_cast<std::uint32_t>(g.L),
                type == ValueType::Real ? 1u : 2u, per * static_cast<std::uint64_t>(g.n_samples)},
               signal.values(), type);
}

SignalFile read_signal_binary(std::istream& in) {
  const BinaryHeader h = read_binary_header(in, 1);
  if (h.kind > 1) throw ParseError("bad binary grid kind");
  const GridDescriptor grid = make_grid(h.kind == 0 ? GridKind::DH : GridKind::MW, BandLimit(static_cast<int>(h.L)));
  const ValueType type = h.value_type == 1 ? ValueType::Real : ValueType::Complex;
  return {SphereSignal(grid, read_binary_payload(in, h.count, grid.n_samples, type)), type};
}

void write_coeffs_binary(std::ostream& out, const HarmonicCoeffs& coeffs) {
  write_binary(out, {2, 0, static_cast<std::uint32_t>(coeffs.L()), 2, 2ull * coeffs.size()}, coeffs.values(),
               ValueType::Complex);
}

HarmonicCoeffs read_coeffs_binary(std::istream& in) {
  const BinaryHeader h = read_binary_header(in, 2);
  if (h.value_type != 2) throw ParseError("coefficients must be complex");
  const BandLimit L(static_cast<int>(h.L));
  return HarmonicCoeffs(L, read_binary_payload(in, h.count, L * L, ValueType::Complex));
}

SignalFile load_signal(const std::filesystem::path& path) {
  auto in = open_in(path);
  return has_magic(in) ? read_signal_binary(in) : read_signal(in);
}

void save_signal(const std::filesystem::path& path, const SphereSignal& signal, ValueType type) {
  auto out = open_out(path);
  if (binary_path(path)) write_signal_binary(out, signal, type);
  else write_signal(out, signal, type);
}

HarmonicCoeffs load_coeffs(const std::filesystem::path& path) {
  auto in = open_in(path);
  return has_magic(in) ? read_coeffs_binary(in) : read_coeffs(in);
}

void save_coeffs(const std::filesystem::path& path, const HarmonicCoeffs& coeffs) {
  auto out = open_out(path);
  if (binary_path(path)) write_coeffs_binary(out, coeffs);
  else write_coeffs(out, coeffs);
}

std::string weights_csv(GridKind kind, BandLimit L) {
  const GridDescriptor g = make_grid(kind, L);
  const VectorXr q = kind == GridKind::DH ? dh_weights(L).q : mw_weights(L).q;
  std::string out = "t,theta,weight\n";
  for (int t = 0; t < g.n_theta; ++t)
    out += std::to_string(t) + ',' + format_double(g.theta(t)) + ',' + format_double(q(t)) + '\n';
  return out;
}

namespace {

template <typename T, typename F>
std::vector<T> parse_list(const std::string& value, F&& parse_one) {
  std::vector<T> out;
  if (trim(value).empty()) return out;
  for (const std::string& item : split(value, ',')) out.push_back(parse_one(std::string(trim(item))));
  return out;
}

}  // namespace

ExperimentFile parse_experiment_config(std::istream& in) {
  ExperimentFile file;
  ExperimentConfig& c = file.config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    try {
      if (key == "L") c.L = parse_int(value, "L");
      else if (key == "kinds") c.kinds = parse_list<GridKind>(value, [](const std::string& s) { return parse_grid_kind(s); });
      else if (key == "domains") c.domains = parse_list<Domain>(value, [](const std::string& s) { return parse_domain(s); });
      else if (key == "ratios") c.ratios = parse_list<double>(value, [](const std::string& s) { return parse_double(s); });
      else if (key == "trials") c.trials = parse_int(value, "trials");
      else if (key == "sigma_rel") c.sigma_rel = parse_double(value);
      else if (key == "seed") {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
        if (ec != std::errc() || ptr != value.data() + value.size()) throw ParseError("invalid seed '" + value + "'");
        c.seed = seed;
      } else if (key == "max_iter") c.solver.max_iter = parse_int(value, "max_iter");
      else if (key == "objective_tol") c.solver.objective_tol = parse_double(value);
      else if (key == "feasibility_tol") c.solver.feasibility_tol = parse_double(value);
      else if (key == "output") file.output = value;
      else if (key == "signal_coeffs") file.signal_coeffs = value;
      else throw ParseError("unknown key '" + key + "'");
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid configuration: ") + e.what());
  }
  return file;
}

std::string results_csv(const std::vector<ExperimentCell>& cells) {
  std::string out = "kind,domain,ratio,mean_snr_db,std_snr_db,trials\n";
  for (const ExperimentCell& c : cells) {
    out += std::string(to_string(c.kind)) + ',' + std::string(to_string(c.domain)) + ',' + format_double(c.ratio) +
           ',' + format_double(c.mean_snr_db) + ',' + format_double(c.std_snr_db) + ',' + std::to_string(c.trials) +
           '\n';
  }
  return out;
}

nlohmann::json experiment_manifest(const ExperimentFile& file, const std::vector<ExperimentCell>& cells,
                                   double wall_seconds) {
  const ExperimentConfig& c = file.config;
  nlohmann::json j;
  j["L"] = c.L;
  j["trials"] = c.trials;
  j["sigma_rel"] = c.sigma_rel;
  j["base_seed"] = c.seed;
  j["ratios"] = c.ratios;
  j["signal"] = file.signal_coeffs.empty() ? "default-caps" : file.signal_coeffs;
  j["solver"] = {{"algorithm", "chambolle-pock"},
                 {"max_iter", c.solver.max_iter},
                 {"objective_tol", c.solver.objective_tol},
                 {"window", c.solver.window},
                 {"feasibility_tol", c.solver.feasibility_tol},
                 {"residual_floor", c.solver.residual_floor},
                 {"power_iter", c.solver.power_iter},
                 {"power_tol", c.solver.power_tol}};
  j["cells"] = nlohmann::json::array();
  for (const ExperimentCell& cell : cells) {
    nlohmann::json jc;
    jc["kind"] = to_string(cell.kind);
    jc["domain"] = to_string(cell.domain);
    jc["ratio"] = cell.ratio;
    jc["measurements"] = cell.measurements;
    jc["seeds"] = cell.seeds;
    jc["snr_db"] = cell.snr_db;
    jc["failures"] = cell.failures;
    j["cells"].push_back(std::move(jc));
  }
  j["wall_seconds"] = wall_seconds;
  return j;
}

}  // namespace sphsamp
