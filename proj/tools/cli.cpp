#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "condest/errors.hpp"
#include "condest/estimator.hpp"
#include "condest/experiments.hpp"
#include "condest/matgen.hpp"
#include "condest/matrix_market.hpp"
#include "condest/svd_oracle.hpp"

namespace condest::cli {

namespace {

using json = nlohmann::ordered_json;

// Sub-seeds of --seed used outside the estimator.
constexpr std::uint64_t kMatrixStream = 50;
constexpr std::uint64_t kPinvStream = 60;

constexpr std::size_t kOracleMaxColumns = 200;

// Bad arguments or unreadable input; maps to kExitInput.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string mtx;
  std::string preset;
  std::string sign_matrix;
  std::string spectrum;
  std::size_t rows = 0;
  std::size_t scale = 1;
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("--mtx", in.mtx, "Matrix Market file");
  cmd.add_option("--preset", in.preset, "named test spectrum (fig1, fig1_deep, ...)");
  cmd.add_option("--sign-matrix", in.sign_matrix, "random +-1 sparse matrix, given as m,n");
  cmd.add_option("--spectrum", in.spectrum,
                 "custom spectrum, e.g. const:90:1,log:300:1e-3:1e-2");
  cmd.add_option("--rows", in.rows, "row count for --spectrum (default: square)");
  cmd.add_option("--scale", in.scale, "shrink a preset by this integer factor")
      ->check(CLI::PositiveNumber);
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& text) {
  std::size_t m = 0;
  std::size_t n = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> m >> comma >> n) || comma != ',' || !(in >> std::ws).eof() || m == 0 || n == 0) {
    throw InputError("expected a shape m,n with positive integers, got '" + text + "'");
  }
  return {m, n};
}

struct Input {
  json descriptor;
  std::optional<GeneratedMatrix> generated;
  std::unique_ptr<LinearOperator> owned;

  const LinearOperator& op() const {
    if (generated) {
      return generated->matrix;
    }
    return *owned;
  }
};

Input load_input(const InputOptions& o, std::uint64_t seed) {
  const int sources = !o.mtx.empty() + !o.preset.empty() + !o.sign_matrix.empty() +
                      !o.spectrum.empty();
  if (sources != 1) {
    throw InputError("exactly one of --mtx, --preset, --sign-matrix, --spectrum is required");
  }
  if (o.scale != 1 && o.preset.empty()) {
    throw InputError("--scale applies to --preset only");
  }
  if (o.rows != 0 && o.spectrum.empty()) {
    throw InputError("--rows applies to --spectrum only");
  }

  Input in;
  Rng matrix_rng = Rng(seed).derive(kMatrixStream);
  if (!o.mtx.empty()) {
    in.owned = to_operator(read_matrix_market_file(o.mtx));
    in.descriptor = {{"kind", "mtx"}, {"path", o.mtx}};
  } else if (!o.preset.empty()) {
    Preset p = preset(o.preset);
    if (o.scale != 1) {
      p = scaled(p, o.scale);
    }
    in.generated = matrix_with_spectrum(p.m, p.n, p.spectrum, matrix_rng);
    in.descriptor = {{"kind", "preset"}, {"name", p.name}, {"seed", seed}};
  } else if (!o.sign_matrix.empty()) {
    const auto [m, n] = parse_shape(o.sign_matrix);
    in.owned = std::make_unique<SparseMatrixCsr>(random_sign_matrix(m, n, matrix_rng));
    in.descriptor = {{"kind", "sign-matrix"}, {"shape", o.sign_matrix}, {"seed", seed}};
  } else {
    const SpectrumSpec spec = parse_spectrum(o.spectrum);
    const std::size_t n = spec.size();
    const std::size_t m = o.rows == 0 ? n : o.rows;
    in.generated = matrix_with_spectrum(m, n, spec, matrix_rng);
    in.descriptor = {{"kind", "spectrum"}, {"spectrum", o.spectrum}, {"seed", seed}};
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) {
    throw InputError("cannot open '" + path + "' for writing");
  }
  f << std::setprecision(std::numeric_limits<double>::max_digits10);
  return f;
}

json config_json(const EstimatorConfig& c) {
  return {{"c1", c.c1},
          {"c1_prime", c.c1_prime},
          {"c2", c.c2},
          {"c3", c.c3},
          {"c4_kappa", c.c4_kappa},
          {"epsilon_power", c.epsilon_power},
          {"delta_power", c.delta_power},
          {"max_iterations", c.max_iterations},
          {"extra_fraction", c.extra_fraction},
          {"repeats", c.repeats},
          {"seed", c.seed}};
}

void add_config_options(CLI::App& cmd, EstimatorConfig& c, bool& no_extra) {
  cmd.add_option("--c1", c.c1, "residual threshold")->capture_default_str();
  cmd.add_option("--c1-prime", c.c1_prime, "tightened residual threshold")
      ->capture_default_str();
  cmd.add_option("--c2", c.c2, "error-test failure probability")->capture_default_str();
  cmd.add_option("--c3", c.c3, "rank-deficiency condition threshold")->capture_default_str();
  cmd.add_option("--c4-kappa", c.c4_kappa, "condition estimate that tightens c1")
      ->capture_default_str();
  cmd.add_option("--max-iter", c.max_iterations, "LSQR iteration cap")->capture_default_str();
  cmd.add_option("--extra-fraction", c.extra_fraction,
                 "extra iterations after detection, as a fraction")
      ->capture_default_str();
  cmd.add_flag("--no-extra", no_extra, "no extra iterations after detection");
  cmd.add_option("--repeats", c.repeats, "independent runs; the smallest estimate wins")
      ->capture_default_str();
  cmd.add_option("--seed", c.seed, "random seed")->capture_default_str();
}

void write_trace(const std::string& path, const ConvergenceTrace& trace) {
  auto f = open_output(path);
  f << "t,residual_norm,error_norm,rayleigh,best_sigma_min,phi_bar\n";
  for (const auto& e : trace) {
    f << e.t << ',' << e.residual_norm << ',' << e.error_norm << ',' << e.rayleigh << ','
      << e.best_sigma_min << ',' << e.phi_bar << '\n';
  }
}

void write_vector_line(std::ostream& f, const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    f << (i == 0 ? "" : " ") << v[i];
  }
  f << '\n';
}

// ---------------------------------------------------------------------------

struct EstimateCommand {
  InputOptions input;
  EstimatorConfig config;
  bool no_extra = false;
  std::string trace_path;
  std::string certificates_path;

  int run(std::ostream& out) {
    if (no_extra) {
      config.extra_fraction = 0.0;
    }
    config.validate();
    const Input in = load_input(input, config.seed);
    CountingOperator counted(in.op());

    const auto start = std::chrono::steady_clock::now();
    const EstimateResult r = estimate_condition(counted, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!trace_path.empty()) {
      write_trace(trace_path, r.trace);
    }
    if (!certificates_path.empty()) {
      auto f = open_output(certificates_path);
      write_vector_line(f, r.v_max_hat);
      write_vector_line(f, r.v_min_hat);
    }

    json report = {{"input", in.descriptor},
                   {"m", in.op().rows()},
                   {"n", in.op().cols()},
                   {"config", config_json(config)},
                   {"sigma_max_hat", r.sigma_max_hat},
                   {"sigma_min_hat", r.sigma_min_hat},
                   {"sigma_min_tilde", r.sigma_min_tilde},
                   {"kappa_hat", r.kappa_hat},
                   {"kappa_tilde", r.kappa_tilde},
                   {"iterations", r.iterations},
                   {"stop_reason", std::string(to_string(r.stop_reason))},
                   {"run_index", r.run_index},
                   {"seconds", seconds},
                   {"operator_applications", counted.applications()}};
    out << report.dump(2) << '\n';
    return r.stop_reason == StopReason::MaxIterations ? kExitMaxIterations : kExitOk;
  }
};

struct ProjectionTraceCommand {
  InputOptions input;
  EstimatorConfig config;
  bool no_extra = false;
  std::string output_path;

  int run(std::ostream& out) {
    if (!input.mtx.empty() || !input.sign_matrix.empty()) {
      throw InputError(
          "projection-trace needs the right singular vectors of a generated matrix; use "
          "--preset or --spectrum");
    }
    if (no_extra) {
      config.extra_fraction = 0.0;
    }
    config.validate();
    const Input in = load_input(input, config.seed);

    std::optional<std::ofstream> file;
    if (!output_path.empty()) {
      file = open_output(output_path);
    }
    std::ostream& sink = file ? *file : out;
    const auto precision = sink.precision(std::numeric_limits<double>::max_digits10);

    // Column k is the projection on the k-th right singular vector, largest
    // singular value first.
    const std::size_t n = in.op().cols();
    for (std::size_t k = 0; k < n; ++k) {
      sink << (k == 0 ? "" : ",") << 'v' << k + 1;
    }
    sink << '\n';
    const EstimateResult r =
        projection_trace(*in.generated, config, [&](std::size_t, std::span<const double> p) {
          for (std::size_t k = 0; k < p.size(); ++k) {
            sink << (k == 0 ? "" : ",") << p[k];
          }
          sink << '\n';
        });
    sink.precision(precision);
    return r.stop_reason == StopReason::MaxIterations ? kExitMaxIterations : kExitOk;
  }
};

struct InconsistentCommand {
  InputOptions input;
  InconsistentOptions options;
  std::string output_path;

  int run(std::ostream& out) {
    if (input.mtx.empty() && input.preset.empty() && input.sign_matrix.empty() &&
        input.spectrum.empty()) {
      input.preset = "fig4_inconsistent";
    }
    const Input in = load_input(input, options.seed);

    std::optional<std::ofstream> file;
    if (!output_path.empty()) {
      file = open_output(output_path);
    }
    std::ostream& sink = file ? *file : out;
    const auto precision = sink.precision(std::numeric_limits<double>::max_digits10);
    sink << "t,atr_over_sr,norm_ratio_estimate,lanczos_sigma_min\n";
    inconsistent_baseline(in.op(), options, [&](const InconsistentRow& row) {
      sink << row.t << ',' << row.atr_over_sr << ',' << row.norm_ratio_estimate << ',';
      if (row.lanczos_sigma_min) {
        sink << *row.lanczos_sigma_min;
      }
      sink << '\n';
    });
    sink.precision(precision);
    return kExitOk;
  }
};

struct PinvCommand {
  InputOptions input;
  std::size_t draws = 10;
  std::uint64_t seed = 0;

  int run(std::ostream& out) {
    const Input in = load_input(input, seed);
    if (in.op().cols() > kOracleMaxColumns) {
      throw InputError("baseline-pinv uses a dense SVD and accepts at most " +
                       std::to_string(kOracleMaxColumns) + " columns; use --scale");
    }
    DenseMatrix dense;
    if (in.generated) {
      dense = in.generated->matrix;
    } else if (const auto* d = dynamic_cast<const DenseMatrix*>(in.owned.get())) {
      dense = *d;
    } else {
      dense = dynamic_cast<const SparseMatrixCsr&>(*in.owned).to_dense();
    }
    if (dense.rows() < dense.cols()) {
      throw InputError("baseline-pinv requires rows >= cols");
    }

    Rng rng = Rng(seed).derive(kPinvStream);
    const auto results = pinv_baseline(dense, draws, rng);
    json list = json::array();
    for (const auto& d : results) {
      list.push_back({{"estimate", d.estimate},
                      {"oracle_sigma_min", d.oracle_sigma_min},
                      {"relative_error", d.relative_error}});
    }
    json report = {{"input", in.descriptor},
                   {"m", dense.rows()},
                   {"n", dense.cols()},
                   {"draws", std::move(list)}};
    out << report.dump(2) << '\n';
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Condition-number estimation for dense and sparse matrices", "condest"};
  app.require_subcommand(1);

  EstimateCommand estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "estimate sigma_max, sigma_min and kappa");
  add_input_options(*estimate_cmd, estimate.input);
  add_config_options(*estimate_cmd, estimate.config, estimate.no_extra);
  estimate_cmd->add_option("--trace", estimate.trace_path, "write the per-iteration trace (CSV)");
  estimate_cmd->add_option("--certificates", estimate.certificates_path,
                           "write v_max_hat and v_min_hat, one per line");

  ProjectionTraceCommand projection;
  auto* projection_cmd = app.add_subcommand(
      "projection-trace", "per-iteration |V^T d| for a generated matrix (CSV)");
  add_input_options(*projection_cmd, projection.input);
  add_config_options(*projection_cmd, projection.config, projection.no_extra);
  projection_cmd->add_option("--output", projection.output_path, "CSV file (default: stdout)");

  InconsistentCommand inconsistent;
  auto* inconsistent_cmd = app.add_subcommand(
      "inconsistent-baseline", "plain LSQR on a random right-hand side (CSV)");
  add_input_options(*inconsistent_cmd, inconsistent.input);
  inconsistent_cmd->add_option("--iterations", inconsistent.options.iterations)
      ->capture_default_str();
  inconsistent_cmd->add_option("--lanczos-every", inconsistent.options.lanczos_every,
                               "sigma_min(R) every k iterations (0: never)")
      ->capture_default_str();
  inconsistent_cmd->add_flag("--consistent", inconsistent.options.consistent,
                             "use b = A x* instead (contrast run)");
  inconsistent_cmd->add_option("--seed", inconsistent.options.seed)->capture_default_str();
  inconsistent_cmd->add_option("--output", inconsistent.output_path,
                               "CSV file (default: stdout)");

  PinvCommand pinv;
  auto* pinv_cmd = app.add_subcommand("baseline-pinv", "sigma_min estimated as 1/||A^+ b|| (JSON)");
  add_input_options(*pinv_cmd, pinv.input);
  pinv_cmd->add_option("--draws", pinv.draws)->capture_default_str();
  pinv_cmd->add_option("--seed", pinv.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*estimate_cmd) return estimate.run(out);
    if (*projection_cmd) return projection.run(out);
    if (*inconsistent_cmd) return inconsistent.run(out);
    return pinv.run(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace condest::cli
