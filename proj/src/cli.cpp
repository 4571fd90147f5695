#include "sphsamp/cli.hpp"

#include "sphsamp/dh_transform.hpp"
#include "sphsamp/inpainting.hpp"
#include "sphsamp/io.hpp"
#include "sphsamp/mw_transform.hpp"
#include "sphsamp/random.hpp"
#include "sphsamp/signals.hpp"
#include "sphsamp/tv.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>

namespace sphsamp {

namespace {

const std::map<std::string, GridKind> kKinds{{"dh", GridKind::DH}, {"mw", GridKind::MW}};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

void check_header(const GridDescriptor& grid, const std::optional<GridKind>& kind, const std::optional<int>& L) {
  if (kind && *kind != grid.kind)
    throw ContractError("file holds a " + std::string(to_string(grid.kind)) + " signal, --kind asks for " +
                        std::string(to_string(*kind)));
  if (L && *L != grid.L)
    throw ContractError("file has band-limit " + std::to_string(grid.L) + ", --bandlimit asks for " +
                        std::to_string(*L));
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling theorems, harmonic transforms and TV inpainting on the sphere", "sphsamp"};
  app.require_subcommand(1);

  std::string input, output;
  std::optional<GridKind> kind;
  std::optional<int> bandlimit;
  std::optional<std::uint64_t> seed;
  bool real_output = false;
  std::string signal_type = "caps";
  std::optional<double> smoothing;
  std::string coeffs_out, manifest_path;

  auto add_kind = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--kind", kind, "Grid kind: dh or mw")->transform(CLI::CheckedTransformer(kKinds));
    if (required) opt->required();
  };
  auto add_bandlimit = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--bandlimit,-L", bandlimit, "Band-limit L")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };

  auto* forward = app.add_subcommand("forward", "Signal file -> coefficient file");
  forward->add_option("input", input, "Signal file")->required();
  forward->add_option("--out,-o", output, "Coefficient file")->required();
  add_kind(forward, false);
  add_bandlimit(forward, false);

  auto* inverse = app.add_subcommand("inverse", "Coefficient file -> signal file");
  inverse->add_option("input", input, "Coefficient file")->required();
  inverse->add_option("--out,-o", output, "Signal file")->required();
  add_kind(inverse, true);
  add_bandlimit(inverse, false);
  inverse->add_flag("--real", real_output, "Write the real part only");

  auto* weights = app.add_subcommand("weights", "Quadrature weights as CSV");
  add_kind(weights, true);
  add_bandlimit(weights, true);
  weights->add_option("--out,-o", output, "CSV file (default stdout)");

  auto* tvnorm = app.add_subcommand("tv-norm", "Discrete TV norm of a signal file");
  tvnorm->add_option("input", input, "Signal file")->required();
  tvnorm->add_option("--out,-o", output, "Output file (default stdout)");

  auto* integrate = app.add_subcommand("integrate", "Integral of a signal over the sphere");
  integrate->add_option("input", input, "Signal file")->required();
  integrate->add_option("--out,-o", output, "Output file (default stdout)");

  auto* make_signal = app.add_subcommand("make-signal", "Synthesize a test signal");
  add_kind(make_signal, true);
  add_bandlimit(make_signal, true);
  make_signal->add_option("--type", signal_type, "caps, two-caps or random")
      ->check(CLI::IsMember({"caps", "two-caps", "random"}));
  make_signal->add_option("--smoothing", smoothing, "Beam width in radians (default 3/L)")
      ->check(CLI::NonNegativeNumber);
  make_signal->add_option("--seed", seed, "Seed for --type random");
  make_signal->add_option("--out,-o", output, "Signal file")->required();
  make_signal->add_option("--coeffs-out", coeffs_out, "Also write the coefficients");

  auto* experiment = app.add_subcommand("experiment", "Run the inpainting experiment from a key=value config");
  experiment->add_option("config", input, "Configuration file")->required();
  experiment->add_option("--out,-o", output, "Result CSV (overrides the config's output)");
  experiment->add_option("--seed", seed, "Base seed (overrides the config)");
  experiment->add_option("--manifest", manifest_path, "Manifest JSON (default <out>.manifest.json)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sphsamp: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (forward->parsed()) {
      const SignalFile file = load_signal(input);
      check_header(file.signal.grid(), kind, bandlimit);
      const HarmonicCoeffs coeffs =
          file.signal.grid().kind == GridKind::DH ? dh_forward(file.signal) : mw_forward(file.signal);
      save_coeffs(output, coeffs);
    } else if (inverse->parsed()) {
      const HarmonicCoeffs coeffs = load_coeffs(input);
      if (bandlimit && *bandlimit != coeffs.L())
        throw ContractError("file has band-limit " + std::to_string(coeffs.L()) + ", --bandlimit asks for " +
                            std::to_string(*bandlimit));
      SphereSignal signal = *kind == GridKind::DH ? dh_inverse(coeffs, BandLimit(coeffs.L()))
                                                  : mw_inverse(coeffs, BandLimit(coeffs.L()));
      if (real_output) signal.values() = signal.values().real().cast<Complex>();
      save_signal(output, signal, real_output ? ValueType::Real : ValueType::Complex);
    } else if (weights->parsed()) {
      write_text(output, weights_csv(*kind, BandLimit(*bandlimit)), out);
    } else if (tvnorm->parsed()) {
      const SignalFile file = load_signal(input);
      write_text(output, format_double(tv_norm(file.signal)) + "\n", out);
    } else if (integrate->parsed()) {
      const SignalFile file = load_signal(input);
      const Complex value = file.signal.grid().kind == GridKind::DH ? dh_integrate(file.signal)
                                                                    : mw_integrate(file.signal);
      std::string text = format_double(value.real());
      if (file.value_type == ValueType::Complex) text += "," + format_double(value.imag());
      write_text(output, text + "\n", out);
    } else if (make_signal->parsed()) {
      const BandLimit L(*bandlimit);
      const GridDescriptor grid = make_grid(*kind, L);
      TestSignal sig{SphereSignal(grid), HarmonicCoeffs(L)};
      if (signal_type == "random") {
        Rng rng(seed.value_or(1));
        VectorXr z(L * L);
        for (auto& v : z) v = rng.normal();
        sig.coeffs = real_to_coeffs(L, z);
        sig.signal = synthesize(sig.coeffs, grid);
        sig.signal.values() = sig.signal.values().real().cast<Complex>();
      } else {
        const auto caps = signal_type == "caps" ? default_caps() : two_caps();
        sig = make_cap_signal(grid, caps, smoothing.value_or(default_smoothing(L)));
      }
      save_signal(output, sig.signal, ValueType::Real);
      if (!coeffs_out.empty()) save_coeffs(coeffs_out, sig.coeffs);
    } else if (experiment->parsed()) {
      std::ifstream in(input);
      if (!in) throw ParseError("cannot open '" + input + "'");
      ExperimentFile file = parse_experiment_config(in);
      if (!output.empty()) file.output = output;
      if (seed) file.config.seed = *seed;
      if (!file.signal_coeffs.empty()) {
        file.config.signal = load_coeffs(file.signal_coeffs);
        if (file.config.signal->L() != file.config.L)
          throw ContractError("signal_coeffs band-limit " + std::to_string(file.config.signal->L()) +
                              " differs from L = " + std::to_string(file.config.L));
      }
      const auto start = std::chrono::steady_clock::now();
      const std::vector<ExperimentCell> cells = run_experiment(file.config);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_text(file.output, results_csv(cells), out);

      std::string manifest = manifest_path;
      if (manifest.empty() && !file.output.empty() && file.output != "-") manifest = file.output + ".manifest.json";
      nlohmann::json j = experiment_manifest(file, cells, wall);
      j["started_utc"] = timestamp_utc();
      j["config_file"] = input;
      if (!manifest.empty()) write_text(manifest, j.dump(2) + "\n", out);

      int failed = 0;
      for (const ExperimentCell& c : cells) {
        if (!c.failures.empty())
          err << "sphsamp: " << to_string(c.kind) << "/" << to_string(c.domain) << " ratio " << c.ratio << ": "
              << c.failures.size() << " failed trial(s)\n";
        failed += c.trials == 0;
      }
      if (failed == static_cast<int>(cells.size())) {
        err << "sphsamp: every cell failed\n";
        return kExitAllFailed;
      }
    }
  } catch (const ParseError& e) {
    err << "sphsamp: " << e.what() << "\n";
    return kExitParse;
  } catch (const ContractError& e) {
    err << "sphsamp: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::domain_error& e) {
    err << "sphsamp: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    err << "sphsamp: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace sphsamp
