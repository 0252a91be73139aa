#include "hullfacets/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hullfacets/complexity.hpp"
#include "hullfacets/csvio.hpp"
#include "hullfacets/errors.hpp"
#include "hullfacets/expectation.hpp"
#include "hullfacets/kernels.hpp"
#include "hullfacets/montecarlo.hpp"
#include "hullfacets/radial_model.hpp"

namespace hullfacets::cli {
namespace {

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "hullfacets";
  for (const std::string& a : args) {
    s += ' ';
    s += a;
  }
  return s;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

void emit_error(std::ostream& err, const char* kind, const std::string& msg) {
  err << "{\"error\":\"" << kind << "\",\"message\":\"" << json_escape(msg)
      << "\"}\n";
}

// Model labels carry commas; cells must not.
std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

struct ModelArgs {
  std::string model;
  int d = 0;
  double k = 0.0;
  double q = 0.0;
  bool has_d = false, has_k = false, has_q = false;

  void attach(CLI::App* sub, bool model_required = true) {
    auto* m = sub->add_option("--model", model,
                              "builtin family name or model spec file");
    if (model_required) m->required();
    sub->add_option("--d", d, "dimension (required with builtin names)")
        ->check(CLI::Range(2, 1000))
        ->each([this](const std::string&) { has_d = true; });
    sub->add_option("--k", k, "tail exponent for t / exponential families")
        ->each([this](const std::string&) { has_k = true; });
    sub->add_option("--q", q, "beta-type shape")->each(
        [this](const std::string&) { has_q = true; });
  }

  RadialModel resolve() const {
    if (std::filesystem::exists(model)) {
      RadialModel m = model_from_spec_file(model);
      if (has_d && m.dim != d)
        throw InvalidArgs("--d conflicts with the model file's dimension");
      return m;
    }
    for (const BuiltinModelInfo& info : builtin_models()) {
      if (info.family != model) continue;
      if (!has_d)
        throw InvalidArgs("builtin model '" + model + "' needs --d");
      if (info.needs_k && !has_k)
        throw InvalidArgs("builtin model '" + model + "' needs --k");
      if (info.needs_q && !has_q)
        throw InvalidArgs("builtin model '" + model + "' needs --q");
      return info.make(d, k, q);
    }
    throw InvalidArgs("unknown model '" + model +
                      "' (not a file, not a builtin family)");
  }
};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  const auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidArgs("bad number in grid spec: '" + s + "'");
    }
    if (used != s.size())
      throw InvalidArgs("bad number in grid spec: '" + s + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string piece;
    while (std::getline(ss, piece, ':')) parts.push_back(piece);
    if (parts.size() != 3)
      throw InvalidArgs("grid spec must be start:stop:step or a comma list");
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || stop < start)
      throw InvalidArgs("grid spec needs step > 0 and stop >= start");
    const long long count =
        static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1000000) throw InvalidArgs("grid spec too large");
    for (long long i = 0; i < count; ++i) grid.push_back(start + i * step);
    return grid;
  }
  std::stringstream ss(spec);
  std::string piece;
  while (std::getline(ss, piece, ',')) grid.push_back(to_double(piece));
  if (grid.empty()) throw InvalidArgs("empty grid spec");
  return grid;
}

std::vector<long long> parse_count_list(const std::string& spec) {
  std::vector<long long> out;
  std::stringstream ss(spec);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(piece, &used);
    } catch (const std::exception&) {
      throw InvalidArgs("bad count in list: '" + piece + "'");
    }
    if (used != piece.size() || v <= 0)
      throw InvalidArgs("bad count in list: '" + piece + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgs("empty count list");
  return out;
}

std::vector<int> parse_dim_list(const std::string& spec) {
  std::vector<int> out;
  for (long long v : parse_count_list(spec)) {
    if (v < 2 || v > 1000) throw InvalidArgs("dimension out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::uint64_t env_or_default_seed() {
  if (const char* env = std::getenv("HULLFACETS_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw InvalidArgs("HULLFACETS_SEED is not an unsigned integer");
  }
  return 0;
}

RunManifest make_manifest(const std::vector<std::string>& args,
                          const RadialModel* model, const std::uint64_t* seed) {
  RunManifest m;
  m.command_line = join_args(args);
  char buf[24];
  if (model) {
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(model_spec_hash(*model)));
    m.model_hash = buf;
  } else {
    m.model_hash = "-";
  }
  if (seed) {
    m.seed = *seed;
    m.has_seed = true;
  }
  m.version = tool_version();
  m.timestamp = utc_timestamp();
  return m;
}

void write_table(const CsvTable& table, const std::string& path,
                 std::ostream& out) {
  if (path.empty()) {
    emit_csv(table, out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgs("cannot open output file: " + path);
  emit_csv(table, f);
}

std::string json_number(double v, int precision) {
  if (!std::isfinite(v)) return "null";
  return format_cell(v, precision);
}

// ---- kernels ----------------------------------------------------------

struct KernelsCmd {
  ModelArgs model_args;
  std::string kernel;
  std::string x_spec;
  std::string out_format = "csv";
  std::string out_path;
  int precision = 17;

  int execute(const std::vector<std::string>& args, std::ostream& out) const {
    const RadialModel model = model_args.resolve();
    const std::vector<double> grid = parse_grid(x_spec);
    CsvTable table;
    table.comments = make_manifest(args, &model, nullptr).comment_lines();
    table.header = {"x", "value", "abs_error"};
    const KernelEvaluator eval(model);
    for (double x : grid) {
      KernelValue kv{};
      if (kernel == "G") {
        kv = eval.G(x);
      } else if (kernel == "K") {
        kv = eval.K(x);
      } else if (kernel == "H") {
        kv = eval.H(x);
      } else if (kernel == "F0") {
        kv = eval.F0(x);
      } else if (kernel == "kappa") {
        kv = {kappa(model.dim, x), 0.0, 0};
      } else {
        kv = {lambda_d(model.dim, x), 0.0, 0};
      }
      table.rows.push_back({format_cell(x, precision),
                            format_cell(kv.value, precision),
                            format_cell(kv.abs_error_estimate, precision)});
    }
    write_table(table, out_path, out);
    return 0;
  }
};

// ---- expect ------------------------------------------------------------

AsymptoticValue asymptotic_for(const RadialModel& model, double N,
                               Regime regime) {
  switch (model.tail.variant) {
    case TailVariant::Polynomial:
      return asymptotic_poly(model.tail.k, model.dim, regime);
    case TailVariant::Exponential:
      return asymptotic_exp(model, N, model.dim, regime);
    case TailVariant::Truncated:
      return asymptotic_trunc(model.tail.k, model.tail.L, N, model.dim,
                              regime);
  }
  throw InvalidArgs("model has no tail classification");
}

struct ExpectCmd {
  ModelArgs model_args;
  std::string n_spec;
  std::string method = "both";
  std::string regime = "fixed-d";
  std::string out_format = "csv";
  std::string out_path;
  int precision = 17;

  int execute(const std::vector<std::string>& args, std::ostream& out) const {
    const RadialModel model = model_args.resolve();
    const std::vector<long long> counts = parse_count_list(n_spec);
    const Regime reg = regime == "high-dim" ? Regime::HighDim_NoverD2toInf
                                            : Regime::FixedD_NtoInf;
    const bool want_exact = method != "asymptotic";
    const bool want_asym = method != "exact";

    const RunManifest manifest = make_manifest(args, &model, nullptr);
    CsvTable table;
    table.comments = manifest.comment_lines();
    table.header = {"model", "d", "N"};
    if (want_exact) {
      table.header.insert(table.header.end(),
                          {"exact", "exact_abs_error", "simplified"});
    }
    if (want_asym) table.header.insert(table.header.end(), {"asymptotic"});
    if (want_asym) table.header.push_back("regime");
    if (want_exact && want_asym) table.header.push_back("ratio");

    ExpectationEvaluator evaluator(model);
    struct Row {
      long long N;
      ExactExpectation exact{};
      AsymptoticValue asym{};
    };
    std::vector<Row> rows;
    for (long long N : counts) {
      Row row;
      row.N = N;
      if (want_exact) row.exact = evaluator.exact(N);
      if (want_asym)
        row.asym = asymptotic_for(model, static_cast<double>(N), reg);
      rows.push_back(std::move(row));
    }

    for (const Row& row : rows) {
      std::vector<std::string> cells = {csv_safe(model.label),
                                        std::to_string(model.dim),
                                        std::to_string(row.N)};
      if (want_exact) {
        cells.push_back(format_cell(row.exact.value, precision));
        cells.push_back(format_cell(row.exact.quadrature_error, precision));
        cells.push_back(row.exact.used_simplified_form ? "1" : "0");
      }
      if (want_asym) {
        cells.push_back(format_cell(row.asym.value, precision));
        cells.push_back(regime);
      }
      if (want_exact && want_asym)
        cells.push_back(
            format_cell(row.exact.value / row.asym.value, precision));
      table.rows.push_back(std::move(cells));
    }

    if (out_format == "json") {
      std::ostringstream js;
      js << "{\"manifest\":" << manifest.json_object() << ",\"rows\":[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        js << (i ? "," : "") << "{\"model\":\"" << json_escape(model.label)
           << "\",\"d\":" << model.dim << ",\"N\":" << row.N;
        if (want_exact) {
          js << ",\"exact\":" << json_number(row.exact.value, precision)
             << ",\"exact_abs_error\":"
             << json_number(row.exact.quadrature_error, precision)
             << ",\"simplified\":"
             << (row.exact.used_simplified_form ? "true" : "false");
        }
        if (want_asym) {
          js << ",\"asymptotic\":" << json_number(row.asym.value, precision)
             << ",\"regime\":\"" << regime << "\"";
        }
        if (want_exact && want_asym)
          js << ",\"ratio\":"
             << json_number(row.exact.value / row.asym.value, precision);
        js << "}";
      }
      js << "]}";
      if (out_path.empty()) {
        out << js.str() << "\n";
      } else {
        std::ofstream f(out_path);
        if (!f) throw InvalidArgs("cannot open output file: " + out_path);
        f << js.str() << "\n";
      }
      return 0;
    }
    write_table(table, out_path, out);
    return 0;
  }
};

// ---- mc ----------------------------------------------------------------

struct McCmd {
  ModelArgs model_args;
  long long N = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool p_outside = false;
  bool per_replicate = false;
  long long trials = 10000;
  long long samples = 100000;
  std::string kernel;
  std::string x_spec;
  int threads = 1;
  std::string out_format = "csv";
  std::string out_path;
  int precision = 17;

  int execute(const std::vector<std::string>& args, std::ostream& out) const {
    const RadialModel model = model_args.resolve();
    const std::uint64_t use_seed = has_seed ? seed : env_or_default_seed();
    const RunManifest manifest = make_manifest(args, &model, &use_seed);
    CsvTable table;
    table.comments = manifest.comment_lines();

    if (!kernel.empty()) {
      if (x_spec.empty()) throw InvalidArgs("--kernel needs --x");
      const KernelTag tag = kernel == "G"    ? KernelTag::G
                            : kernel == "K"  ? KernelTag::K
                            : kernel == "H"  ? KernelTag::H
                                             : KernelTag::F0;
      const KernelEstimate est = empirical_kernel(
          model, model.dim, tag, parse_grid(x_spec), samples, use_seed);
      table.header = {"x", "survival", "std_error"};
      for (std::size_t i = 0; i < est.x.size(); ++i)
        table.rows.push_back({format_cell(est.x[i], precision),
                              format_cell(est.survival[i], precision),
                              format_cell(est.std_error[i], precision)});
      write_table(table, out_path, out);
      return 0;
    }

    if (p_outside) {
      const MembershipEstimate est = estimate_outside_probability(
          model, static_cast<int>(N), model.dim, trials, use_seed);
      table.header = {"model",       "d",        "N",
                      "trials",      "seed",     "p_hat",
                      "std_error",   "vertex_rate",
                      "diff_mean",   "diff_std_error"};
      table.rows.push_back(
          {csv_safe(model.label), std::to_string(model.dim),
           std::to_string(N), std::to_string(trials), std::to_string(use_seed),
           format_cell(est.p_hat, precision),
           format_cell(est.std_error, precision),
           format_cell(est.vertex_rate, precision),
           format_cell(est.diff_mean, precision),
           format_cell(est.diff_std_error, precision)});
      write_table(table, out_path, out);
      return 0;
    }

    if (reps < 2) throw InvalidArgs("mc needs --reps >= 2");
    const FacetEstimate est = estimate_expected_facets(
        model, static_cast<int>(N), model.dim, reps, use_seed, threads);
    if (per_replicate) {
      table.header = {"replicate", "facets", "vertices"};
      for (int r = 0; r < est.replicates; ++r)
        table.rows.push_back({std::to_string(r),
                              std::to_string(est.per_replicate_counts[r]),
                              std::to_string(est.per_replicate_vertices[r])});
    } else {
      table.header = {"model", "d",    "N",        "replicates",
                      "seed",  "mean", "std_error"};
      table.rows.push_back({csv_safe(model.label), std::to_string(model.dim),
                            std::to_string(N), std::to_string(reps),
                            std::to_string(use_seed),
                            format_cell(est.mean, precision),
                            format_cell(est.std_error, precision)});
    }
    write_table(table, out_path, out);
    return 0;
  }
};

// ---- compare -----------------------------------------------------------

struct CompareCmd {
  ModelArgs model_args;
  long long N = 0;
  int reps = 2000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool strict = false;
  std::string regime = "fixed-d";
  std::string out_path;
  int precision = 17;

  int execute(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) const {
    const RadialModel model = model_args.resolve();
    const std::uint64_t use_seed = has_seed ? seed : env_or_default_seed();
    const Regime reg = regime == "high-dim" ? Regime::HighDim_NoverD2toInf
                                            : Regime::FixedD_NtoInf;

    const ExactExpectation exact =
        expected_facets_exact(model, N, model.dim);
    std::string asym_cell, asym_ratio_cell;
    try {
      const AsymptoticValue asym =
          asymptotic_for(model, static_cast<double>(N), reg);
      asym_cell = format_cell(asym.value, precision);
      asym_ratio_cell = format_cell(exact.value / asym.value, precision);
    } catch (const std::exception&) {
      asym_cell = asym_ratio_cell = "";  // no asymptotic at these arguments
    }
    const FacetEstimate mc = estimate_expected_facets(
        model, static_cast<int>(N), model.dim, reps, use_seed, 1);

    const double half_width = 2.5758293035489004 * mc.std_error;
    const double diff = std::fabs(mc.mean - exact.value);
    const bool agree = diff <= half_width + exact.quadrature_error;
    const double z =
        mc.std_error > 0.0 ? (mc.mean - exact.value) / mc.std_error : 0.0;

    CsvTable table;
    table.comments =
        make_manifest(args, &model, &use_seed).comment_lines();
    table.header = {"model",     "d",         "N",         "exact",
                    "exact_abs_error",        "asymptotic",
                    "exact_to_asymptotic",    "mc_mean",   "mc_std_error",
                    "mc_ci99_lo", "mc_ci99_hi", "z_score",  "agree"};
    table.rows.push_back(
        {csv_safe(model.label), std::to_string(model.dim), std::to_string(N),
         format_cell(exact.value, precision),
         format_cell(exact.quadrature_error, precision), asym_cell,
         asym_ratio_cell, format_cell(mc.mean, precision),
         format_cell(mc.std_error, precision),
         format_cell(mc.mean - half_width, precision),
         format_cell(mc.mean + half_width, precision),
         format_cell(z, precision), agree ? "yes" : "no"});
    write_table(table, out_path, out);
    if (strict && !agree) {
      emit_error(err, "disagreement",
                 "Monte Carlo mean and exact value differ beyond the 99% "
                 "interval");
      return 3;
    }
    return 0;
  }
};

// ---- table -------------------------------------------------------------

struct TableCmd {
  std::string family;
  double k = 0.0;
  bool has_k = false;
  double q = 0.0;
  bool has_q = false;
  std::string d_spec;
  double margin = 10.0;
  int threads = 1;
  std::string out_format = "csv";
  std::string out_path;
  int precision = 17;

  FamilySpec resolve_family() const {
    if (family == "poly") {
      if (!has_k) throw InvalidArgs("table --family poly needs --k");
      return algebraic_family(k);
    }
    if (family == "exp") {
      if (!has_k) throw InvalidArgs("table --family exp needs --k");
      return exponential_family(k);
    }
    if (family == "trunc") {
      if (!has_k) throw InvalidArgs("table --family trunc needs --k");
      return truncated_family(k);
    }
    if (family == "gaussian") return gaussian_family();
    if (family == "uniform-ball") return uniform_ball_family();
    if (family == "beta-type") {
      if (!has_q) throw InvalidArgs("table --family beta-type needs --q");
      return beta_type_family(q);
    }
    throw InvalidArgs("unknown threshold family '" + family + "'");
  }

  int execute(const std::vector<std::string>& args, std::ostream& out) const {
    const FamilySpec spec = resolve_family();
    const std::vector<int> dims = parse_dim_list(d_spec);

    std::vector<ComplexityReport> reports(dims.size());
    std::exception_ptr failure;
    std::mutex failure_mu;
    const int pool_size =
        std::max(1, std::min<int>(threads, static_cast<int>(dims.size())));
    auto worker = [&](int first) {
      for (std::size_t i = first; i < dims.size(); i += pool_size) {
        try {
          reports[i] = sample_complexity_threshold(spec, dims[i], margin);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    if (pool_size == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    CsvTable table;
    table.comments = make_manifest(args, nullptr, nullptr).comment_lines();
    table.header = {"family", "d", "log10_min_N", "lhs", "rhs", "ratio"};
    for (const ComplexityReport& rep : reports)
      table.rows.push_back({rep.family, std::to_string(rep.d),
                            format_cell(rep.log_N / M_LN10, precision),
                            format_cell(rep.lhs, precision),
                            format_cell(rep.rhs, precision),
                            format_cell(rep.ratio, precision)});
    write_table(table, out_path, out);
    return 0;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"expected facet counts of random convex hulls"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  KernelsCmd kernels_cmd;
  auto* kernels_sub =
      app.add_subcommand("kernels", "tabulate survival kernels on a grid");
  kernels_cmd.model_args.attach(kernels_sub);
  kernels_sub
      ->add_option("--kernel", kernels_cmd.kernel, "G|K|H|F0|kappa|lambda")
      ->required()
      ->check(CLI::IsMember({"G", "K", "H", "F0", "kappa", "lambda"}));
  kernels_sub->add_option("--x", kernels_cmd.x_spec, "grid: a:b:step or list")
      ->required();
  kernels_sub->add_option("--out", kernels_cmd.out_format)
      ->check(CLI::IsMember({"csv"}));
  kernels_sub->add_option("--output", kernels_cmd.out_path, "write to file");
  kernels_sub->add_option("--precision", kernels_cmd.precision)
      ->check(CLI::Range(1, 17));

  ExpectCmd expect_cmd;
  auto* expect_sub =
      app.add_subcommand("expect", "expected facet count of the hull");
  expect_cmd.model_args.attach(expect_sub);
  expect_sub->add_option("--N", expect_cmd.n_spec, "sample count or list")
      ->required();
  expect_sub->add_option("--method", expect_cmd.method)
      ->check(CLI::IsMember({"exact", "asymptotic", "both"}));
  expect_sub->add_option("--regime", expect_cmd.regime)
      ->check(CLI::IsMember({"fixed-d", "high-dim"}));
  expect_sub->add_option("--out", expect_cmd.out_format)
      ->check(CLI::IsMember({"csv", "json"}));
  expect_sub->add_option("--output", expect_cmd.out_path, "write to file");
  expect_sub->add_option("--precision", expect_cmd.precision)
      ->check(CLI::Range(1, 17));

  McCmd mc_cmd;
  auto* mc_sub = app.add_subcommand(
      "mc", "Monte Carlo hull census: facet counts and empirical kernels");
  mc_cmd.model_args.attach(mc_sub);
  mc_sub->add_option("--N", mc_cmd.N, "points per cloud")->required();
  mc_sub->add_option("--reps", mc_cmd.reps, "replicates");
  mc_sub->add_option("--seed", mc_cmd.seed)->each(
      [&mc_cmd](const std::string&) { mc_cmd.has_seed = true; });
  mc_sub->add_flag("--p-outside", mc_cmd.p_outside,
                   "estimate the outside probability instead");
  mc_sub->add_flag("--per-replicate", mc_cmd.per_replicate,
                   "emit one row per replicate");
  mc_sub->add_option("--trials", mc_cmd.trials, "trials for --p-outside");
  mc_sub->add_option("--kernel", mc_cmd.kernel, "empirical kernel statistic")
      ->check(CLI::IsMember({"G", "K", "H", "F0"}));
  mc_sub->add_option("--x", mc_cmd.x_spec, "grid for --kernel");
  mc_sub->add_option("--samples", mc_cmd.samples, "samples for --kernel");
  mc_sub->add_option("--threads", mc_cmd.threads)->check(CLI::Range(1, 64));
  mc_sub->add_option("--out", mc_cmd.out_format)
      ->check(CLI::IsMember({"csv"}));
  mc_sub->add_option("--output", mc_cmd.out_path, "write to file");
  mc_sub->add_option("--precision", mc_cmd.precision)->check(CLI::Range(1, 17));

  CompareCmd compare_cmd;
  auto* compare_sub = app.add_subcommand(
      "compare", "one-row agreement check: exact vs asymptotic vs sampled");
  compare_cmd.model_args.attach(compare_sub);
  compare_sub->add_option("--N", compare_cmd.N, "sample count")->required();
  compare_sub->add_option("--reps", compare_cmd.reps, "replicates");
  compare_sub->add_option("--seed", compare_cmd.seed)
      ->each([&compare_cmd](const std::string&) {
        compare_cmd.has_seed = true;
      });
  compare_sub->add_flag("--strict", compare_cmd.strict,
                        "exit 3 when the verdict is disagreement");
  compare_sub->add_option("--regime", compare_cmd.regime)
      ->check(CLI::IsMember({"fixed-d", "high-dim"}));
  compare_sub->add_option("--output", compare_cmd.out_path, "write to file");
  compare_sub->add_option("--precision", compare_cmd.precision)
      ->check(CLI::Range(1, 17));

  TableCmd table_cmd;
  auto* table_sub = app.add_subcommand(
      "table", "minimal sample sizes for vanishing outside probability");
  table_sub
      ->add_option("--family", table_cmd.family,
                   "poly|exp|trunc|gaussian|uniform-ball|beta-type")
      ->required()
      ->check(CLI::IsMember(
          {"poly", "exp", "trunc", "gaussian", "uniform-ball", "beta-type"}));
  table_sub->add_option("--k", table_cmd.k)->each(
      [&table_cmd](const std::string&) { table_cmd.has_k = true; });
  table_sub->add_option("--q", table_cmd.q)->each(
      [&table_cmd](const std::string&) { table_cmd.has_q = true; });
  table_sub->add_option("--d", table_cmd.d_spec, "dimension list")->required();
  table_sub->add_option("--margin", table_cmd.margin)
      ->check(CLI::PositiveNumber);
  table_sub->add_option("--threads", table_cmd.threads)
      ->check(CLI::Range(1, 64));
  table_sub->add_option("--out", table_cmd.out_format)
      ->check(CLI::IsMember({"csv"}));
  table_sub->add_option("--output", table_cmd.out_path, "write to file");
  table_sub->add_option("--precision", table_cmd.precision)
      ->check(CLI::Range(1, 17));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return 1;
  }

  try {
    if (kernels_sub->parsed()) return kernels_cmd.execute(args, out);
    if (expect_sub->parsed()) return expect_cmd.execute(args, out);
    if (mc_sub->parsed()) return mc_cmd.execute(args, out);
    if (compare_sub->parsed()) return compare_cmd.execute(args, out, err);
    if (table_sub->parsed()) return table_cmd.execute(args, out);
    emit_error(err, "usage", "no subcommand given");
    return 1;
  } catch (const std::invalid_argument& e) {
    emit_error(err, "usage", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    emit_error(err, "usage", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "numeric", e.what());
    return 2;
  }
}

}  // namespace hullfacets::cli
