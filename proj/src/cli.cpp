#include "rangeeer/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "rangeeer/eer.hpp"
#include "rangeeer/error.hpp"
#include "rangeeer/io.hpp"
#include "rangeeer/overlap_table.hpp"
#include "rangeeer/report.hpp"
#include "rangeeer/resample.hpp"
#include "rangeeer/synth.hpp"

namespace rangeeer::cli {

namespace {

struct EvalOptions {
  std::string ref_path;
  std::string score_path;
  std::string mode = "range";
  double resolution = 0.0;
  std::string label_rule = "any-spoof";
  double prec = 1e-5;
  int max_iter = 200;
  std::string quantile = "real";
  bool oracle = false;
  std::size_t points = 101;
  int threads = 0;
};

struct ResampleOptions {
  std::string score_path;
  double from = 0.0;
  double to = 0.0;
};

struct SynthOptions {
  SynthSpec spec;
  std::string out_ref;
  std::string out_scores;
};

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const io::TrialMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kTrialMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::EmptyClass: return kEmptyClass;
      case ErrorKind::NonIntegerRatio: return kNonIntegerRatio;
      default: return kParseError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

Dataset load(const EvalOptions& opt) {
  return io::assemble(io::read_reference_file(opt.ref_path),
                      io::read_scores_file(opt.score_path));
}

LabelRule label_rule(const EvalOptions& opt) {
  return parse_label_rule(opt.label_rule).value_or(LabelRule::AnySpoof);
}

// Brings uniform hypotheses to the measurement resolution.
PointSet point_set(Dataset trials, const EvalOptions& opt) {
  if (!(opt.resolution > 0.0))
    throw std::invalid_argument("--mode point requires --resolution > 0");
  for (auto& trial : trials) {
    if (!trial.hypothesis.is_uniform())
      throw Error(ErrorKind::DomainError,
                  "trial '" + trial.trial_id + "': point mode needs uniform scores");
    const auto& u = trial.hypothesis.uniform();
    if (u.resolution == opt.resolution) continue;
    trial.hypothesis = ScoreTrack(resample(u, {u.resolution, opt.resolution}));
  }
  return segment_dataset(trials, opt.resolution, label_rule(opt));
}

void warn_outside(const OverlapTable& table, std::ostream& err) {
  if (table.dropped_ranges() > 0)
    err << "warning: " << table.dropped_ranges()
        << " hypothesis range(s) outside the reference span were ignored\n";
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  set_threads(opt.threads);
  const Dataset trials = load(opt);
  require_valid(trials);
  const auto totals = duration_totals(trials);

  ResultReport report;
  if (opt.mode == "point") {
    const auto points = point_set(trials, opt);
    report = make_report(Measure::Point, point_eer(points), totals, trials.size());
    report.config = {{"resolution", opt.resolution}, {"label_rule", opt.label_rule}};
  } else {
    SearchConfig config;
    config.prec = opt.prec;
    config.max_iterations = opt.max_iter;
    config.quantile_mode =
        opt.quantile == "integer-floor" ? QuantileMode::IntegerFloor : QuantileMode::RealValued;
    const auto table = OverlapTable::build(trials);
    warn_outside(table, err);
    const auto result = range_eer_binary_search(table, config);
    report = make_report(Measure::Range, result, totals, trials.size());
    report.config = {{"prec", config.prec},
                     {"max_iter", config.max_iterations},
                     {"quantile_mode", to_string(config.quantile_mode)},
                     {"oracle", opt.oracle}};
    if (opt.oracle) {
      const auto exact = brute_force_range_eer(table);
      report.oracle = OracleCheck{exact.eer, exact.threshold, std::abs(exact.eer - result.eer)};
    }
  }
  out << render(report);
  return kOk;
}

int cmd_det(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  set_threads(opt.threads);
  const Dataset trials = load(opt);
  require_valid(trials);
  duration_totals(trials);

  std::vector<RatePair> curve;
  if (opt.mode == "point") {
    curve = det_sweep(point_set(trials, opt), opt.points);
  } else {
    const auto table = OverlapTable::build(trials);
    warn_outside(table, err);
    curve = det_sweep(table, opt.points);
  }
  out << "tau\tp_fp\tp_fn\n";
  for (const auto& r : curve)
    out << io::format_number(r.tau) << '\t' << io::format_number(r.p_fp) << '\t'
        << io::format_number(r.p_fn) << '\n';
  return kOk;
}

int cmd_resample(const ResampleOptions& opt, std::ostream& out) {
  // Reject a bad ratio before touching the file.
  if (opt.to < opt.from) {
    integer_ratio(opt.from, opt.to);
  } else {
    integer_ratio(opt.to, opt.from);
  }
  auto entries = io::read_scores_file(opt.score_path);
  for (auto& e : entries) {
    if (!e.track.is_uniform())
      throw Error(ErrorKind::DomainError, "resample needs a uniform score file");
    const auto& u = e.track.uniform();
    if (u.resolution != opt.from)
      throw Error(ErrorKind::DomainError, "trial '" + e.trial_id + "' has resolution " +
                                              io::format_number(u.resolution) +
                                              ", expected " + io::format_number(opt.from));
    e.track = ScoreTrack(resample(u, {opt.from, opt.to}));
  }
  io::write_scores(out, entries);
  return kOk;
}

int cmd_synth(const SynthOptions& opt, std::ostream& out) {
  const Dataset trials = generate(opt.spec);
  const auto header = describe(opt.spec);
  {
    std::ofstream ref(opt.out_ref);
    if (!ref) throw std::runtime_error("cannot write " + opt.out_ref);
    ref << header;
    io::write_reference(ref, trials);
  }
  {
    std::ofstream scores(opt.out_scores);
    if (!scores) throw std::runtime_error("cannot write " + opt.out_scores);
    scores << header;
    io::write_scores(scores, trials);
  }
  DurationTotals totals;
  for (const auto& t : trials)
    for (const auto& r : t.reference)
      (is_positive(r.label) ? totals.d_positive : totals.d_negative) += r.duration();
  out << "trials\t" << trials.size() << '\n'
      << "d_negative\t" << io::format_number(totals.d_negative) << '\n'
      << "d_positive\t" << io::format_number(totals.d_positive) << '\n'
      << "spoof_fraction\t"
      << io::format_number(totals.d_positive / (totals.d_negative + totals.d_positive)) << '\n';
  return kOk;
}

void add_eval_options(CLI::App* cmd, EvalOptions& opt) {
  cmd->add_option("ref", opt.ref_path, "Reference TSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("scores", opt.score_path, "Score TSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", opt.mode, "Measurement")
      ->check(CLI::IsMember({"point", "range"}))
      ->capture_default_str();
  cmd->add_option("--resolution", opt.resolution, "Point-mode segment length in seconds");
  cmd->add_option("--label-rule", opt.label_rule, "Mixed-segment labeling")
      ->check(CLI::IsMember({"any-spoof", "majority"}))
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = runtime default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point- and range-based EER for spoof localization", "rangeeer"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Compute EER and print a JSON report");
  add_eval_options(eval, eval_opt);
  eval->add_option("--prec", eval_opt.prec, "Bisection precision")->capture_default_str();
  eval->add_option("--max-iter", eval_opt.max_iter, "Bisection iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--quantile", eval_opt.quantile, "Midpoint quantile rule")
      ->check(CLI::IsMember({"real", "integer-floor"}))
      ->capture_default_str();
  eval->add_flag("--oracle", eval_opt.oracle, "Cross-check against the exhaustive sweep");

  EvalOptions det_opt;
  auto* det = app.add_subcommand("det", "Print (tau, p_fp, p_fn) rows");
  add_eval_options(det, det_opt);
  det->add_option("--points", det_opt.points, "Number of thresholds (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();

  ResampleOptions resample_opt;
  auto* resample_cmd = app.add_subcommand("resample", "Change the resolution of uniform scores");
  resample_cmd->add_option("scores", resample_opt.score_path, "Uniform score TSV")
      ->required()
      ->check(CLI::ExistingFile);
  resample_cmd->add_option("--from", resample_opt.from, "Source resolution")->required();
  resample_cmd->add_option("--to", resample_opt.to, "Target resolution")->required();

  SynthOptions synth_opt;
  auto& spec = synth_opt.spec;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--seed", spec.seed)->capture_default_str();
  synth->add_option("--n-trials", spec.n_trials)->capture_default_str();
  synth->add_option("--min-seconds", spec.min_seconds)->capture_default_str();
  synth->add_option("--max-seconds", spec.max_seconds)->capture_default_str();
  synth->add_option("--mean-range", spec.mean_range_seconds)->capture_default_str();
  synth->add_option("--spoof-fraction", spec.spoof_fraction)->capture_default_str();
  synth->add_option("--separation", spec.score_model.separation)->capture_default_str();
  synth->add_option("--noise-sd", spec.score_model.noise_sd)->capture_default_str();
  synth->add_option("--boundary-seconds", spec.score_model.boundary_seconds)
      ->capture_default_str();
  synth->add_option("--boundary-noise-sd", spec.score_model.boundary_noise_sd)
      ->capture_default_str();
  synth->add_option("--resolution", spec.hypothesis_resolution)->capture_default_str();
  synth->add_option("--out-ref", synth_opt.out_ref)->required();
  synth->add_option("--out-scores", synth_opt.out_scores)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (eval->parsed()) return guarded(err, [&] { return cmd_eval(eval_opt, out, err); });
  if (det->parsed()) return guarded(err, [&] { return cmd_det(det_opt, out, err); });
  if (resample_cmd->parsed()) return guarded(err, [&] { return cmd_resample(resample_opt, out); });
  return guarded(err, [&] { return cmd_synth(synth_opt, out); });
}

}  // namespace rangeeer::cli
