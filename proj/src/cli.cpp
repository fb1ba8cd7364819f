#include "logsurf/cli.hpp"

#include "logsurf/io.hpp"

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <sstream>

namespace logsurf {

namespace {

struct Loaded {
  io::Scenario scenario;
  const CurveConfig& config() const { return scenario.config; }
};

void require_valid(const CurveConfig& c) {
  const auto violations = validate_config(c);
  if (violations.empty()) return;
  std::string msg = "invalid configuration";
  for (const auto& v : violations) msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.detail;
  throw Error(Errc::InvalidState, msg);
}

Loaded load(const std::string& path) {
  Loaded l{io::parse_scenario(io::read_file(path))};
  require_valid(l.config());
  return l;
}

CurveSet contracted_or_default(const Loaded& l, const std::optional<std::string>& ids) {
  if (ids) return io::parse_id_list(l.config(), *ids);
  return l.scenario.contracted.value_or(CurveSet{});
}

BaseDesignation base_or_default(const Loaded& l, const std::optional<std::string>& base) {
  if (base) return io::parse_base(l.config(), *base);
  return l.scenario.base.value_or(PointBase{});
}

std::string labels(const CurveConfig& c, const CurveSet& s) {
  std::string out;
  for (CurveId id : s) out += (out.empty() ? "" : ",") + c.label(id);
  return "{" + out + "}";
}

std::string discrepancy_line(const CurveConfig& c, const std::map<CurveId, Rat>& a) {
  std::string out;
  for (const auto& [id, v] : a) out += (out.empty() ? "" : ", ") + c.label(id) + "=" + to_display_string(v);
  return "a = (" + out + ")";
}

void print_trace(std::ostream& out, const CurveConfig& c, const DecompositionTrace& t) {
  out << "start " << labels(c, t.start) << "\n";
  for (std::size_t k = 0; k <= t.steps.size(); ++k) {
    if (k == t.fm_index) out << "-- fm --\n";
    if (k == t.steps.size()) break;
    const auto& s = t.steps[k];
    out << k + 1 << ". " << to_string(s.kind) << "(" << c.label(s.curve) << ")  "
        << discrepancy_line(c, s.discrepancies_after);
    // Over a point with no known Picard number the record counts contracted curves.
    if (s.picard_after < s.picard_before)
      out << "  rho " << s.picard_before << " -> " << s.picard_after;
    else
      out << "  |S| " << s.picard_before << " -> " << s.picard_after;
    if (s.epsilon) out << "  epsilon " << to_display_string(s.epsilon->chosen);
    out << "\n";
  }
  out << "end " << labels(c, t.end) << "\n";
}

void emit_trace(const std::optional<std::string>& path, const CurveConfig& c, const DecompositionTrace& t) {
  if (path) io::write_file(*path, io::dump_trace({io::scenario_digest(c), t}));
}

BlowUpTarget parse_at(const CurveConfig& c, const std::string& at) {
  if (at == "generic") return GenericPoint{};
  if (at.starts_with("point:")) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(at.substr(6), &used);
      if (used != at.size() - 6) throw std::invalid_argument(at);
    } catch (const std::logic_error&) {
      throw Error(Errc::UnknownTarget, "bad point id in '" + at + "'");
    }
    if (!c.has_point(id)) throw Error(Errc::UnknownTarget, "no point " + std::to_string(id));
    return AtPoint{id};
  }
  if (at.starts_with("free:")) return FreePointOn{c.resolve(at.substr(5))};
  throw Error(Errc::UnknownTarget, "--at expects point:ID, free:CURVE or generic");
}

/// validate FILE...: each file on its own line, in argument order.
int cmd_validate(const std::vector<std::string>& files, int jobs, std::ostream& out, std::ostream& err) {
  struct Outcome {
    bool ok = true;
    std::string diagnostics;
  };
  const auto check = [](const std::string& path) {
    Outcome o;
    try {
      const auto violations = validate_config(io::parse_scenario(io::read_file(path)).config);
      for (const auto& v : violations) o.diagnostics += "  " + std::string(to_string(v.kind)) + ": " + v.detail + "\n";
      o.ok = violations.empty();
    } catch (const Error& e) {
      o.ok = false;
      o.diagnostics = std::string("  ") + e.what() + "\n";
    }
    return o;
  };
  std::vector<Outcome> outcomes(files.size());
  const std::size_t width = static_cast<std::size_t>(std::max(jobs, 1));
  for (std::size_t begin = 0; begin < files.size(); begin += width) {
    std::vector<std::future<Outcome>> batch;
    for (std::size_t k = begin; k < std::min(files.size(), begin + width); ++k)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, check, files[k]));
    for (std::size_t k = 0; k < batch.size(); ++k) outcomes[begin + k] = batch[k].get();
  }
  int code = ExitOk;
  for (std::size_t k = 0; k < files.size(); ++k) {
    out << files[k] << ": " << (outcomes[k].ok ? "valid" : "invalid") << "\n";
    if (!outcomes[k].ok) {
      err << files[k] << ":\n" << outcomes[k].diagnostics;
      code = ExitBadInput;
    }
  }
  return code;
}

}  // namespace

int exit_code_for(Errc code) {
  return code == Errc::TheoremViolation || code == Errc::StuckInPhase2 ? ExitTheorem : ExitBadInput;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log crepant contractions of log terminal surfaces", "logsurf"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string file, trace_in, at, coeff, output;
  std::optional<std::string> contract, base, from, to, trace_out, dot_out;
  int jobs = 1;

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("files", files, "scenario files")->required();
  validate->add_option("--jobs", jobs, "files checked concurrently")->check(CLI::PositiveNumber);

  const auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "scenario file")->required(); };

  auto* classify_cmd = app.add_subcommand("classify", "singularity class of X(S)");
  with_file(classify_cmd);
  classify_cmd->add_option("--contract", contract, "contracted curves, e.g. E1,E2");
  classify_cmd->add_option("--base", base, "point | target:IDS");

  auto* discrep = app.add_subcommand("discrepancies", "discrepancies of the contracted curves");
  with_file(discrep);
  discrep->add_option("--contract", contract, "contracted curves");

  auto* flops = app.add_subcommand("flops", "log-flopping test for every open curve");
  with_file(flops);
  flops->add_option("--contract", contract, "contracted curves");
  flops->add_option("--base", base, "point | target:IDS");

  auto* decompose = app.add_subcommand("decompose", "factor X(FROM) -> X(TO)");
  with_file(decompose);
  decompose->add_option("--from", from, "source contracted set")->required();
  decompose->add_option("--to", to, "target contracted set")->required();
  decompose->add_option("--trace", trace_out, "write the trace file here");

  auto* minimize_cmd = app.add_subcommand("minimize", "run the minimization loop over a point");
  with_file(minimize_cmd);
  minimize_cmd->add_option("--contract", contract, "starting contracted set");
  minimize_cmd->add_option("--trace", trace_out, "write the trace file here");

  auto* blowup = app.add_subcommand("blowup", "blow up a point and write the new scenario");
  with_file(blowup);
  blowup->add_option("--at", at, "point:ID | free:CURVE | generic")->required();
  blowup->add_option("--coeff", coeff, "coefficient of the new curve, p/q")->required();
  blowup->add_option("-o,--output", output, "output scenario")->required();

  auto* verify = app.add_subcommand("verify", "replay a trace file");
  with_file(verify);
  verify->add_option("--trace", trace_in, "trace file")->required();

  auto* dot = app.add_subcommand("dot", "Graphviz dual graph");
  with_file(dot);
  dot->add_option("--contract", contract, "curves drawn as contracted");
  dot->add_option("-o,--output", dot_out, "output file (default: stdout)");

  std::vector<const char*> argv{"logsurf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitOk : ExitBadInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(files, jobs, out, err);

    const Loaded l = load(file);
    const CurveConfig& c = l.config();

    if (classify_cmd->parsed()) {
      const SurfaceState state{c, contracted_or_default(l, contract), base_or_default(l, base)};
      validate_state(state);
      const auto report = classify_report(state);
      out << to_string(report.kind) << "\n";
      for (const auto& note : report.notes) out << "  " << note << "\n";
    } else if (discrep->parsed()) {
      const SurfaceState state{c, contracted_or_default(l, contract), PointBase{}};
      const auto crepant = crepant_pullback(state);
      out << discrepancy_line(c, crepant.discrepancies()) << "\n";
      for (const auto& [id, e] : crepant.e)
        if (!state.contracted.count(id)) out << "  d(" << c.label(id) << ") = " << to_display_string(e) << "\n";
    } else if (flops->parsed()) {
      const SurfaceState state{c, contracted_or_default(l, contract), base_or_default(l, base)};
      validate_state(state);
      const auto analysis = classify_report(state);
      for (CurveId i : c.curve_ids()) {
        if (state.contracted.count(i)) continue;
        const auto check = is_log_flopping(state, analysis, i);
        out << c.label(i) << ": ";
        if (check) {
          const auto eps = epsilon_bound(state, i);
          out << "log-flopping, epsilon < "
              << (eps.supremum ? to_display_string(*eps.supremum) : std::string("inf")) << ", chosen "
              << to_display_string(eps.chosen) << "\n";
        } else {
          out << "no (" << to_string(check.failure) << "; degree " << to_display_string(check.degree) << ")\n";
        }
      }
    } else if (decompose->parsed()) {
      const auto trace = decompose_morphism({c, io::parse_id_list(c, *from), io::parse_id_list(c, *to)});
      print_trace(out, c, trace);
      emit_trace(trace_out, c, trace);
    } else if (minimize_cmd->parsed()) {
      const auto trace = minimize({c, contracted_or_default(l, contract), PointBase{}});
      print_trace(out, c, trace);
      emit_trace(trace_out, c, trace);
    } else if (blowup->parsed()) {
      io::Scenario next = l.scenario;
      const CurveId created = c.next_curve_id();
      next.config = blow_up(c, parse_at(c, at), parse_rat(coeff));
      io::write_file(output, io::dump_scenario(next));
      out << "created " << next.config.label(created) << " (id " << created << ")\n";
    } else if (verify->parsed()) {
      const auto t = io::parse_trace(io::read_file(trace_in));
      if (t.scenario_digest != io::scenario_digest(c)) {
        err << "trace was produced for a different scenario\n";
        return ExitBadInput;
      }
      const auto report = verify_trace(c, t.trace.start, t.trace);
      if (!report) {
        out << "rejected at step " << report.failed_step + 1 << "\n";
        err << report.failure << "\n";
        return ExitBadInput;
      }
      out << "ok: " << t.trace.steps.size() << " steps verified\n";
    } else if (dot->parsed()) {
      const auto text = io::to_dot(c, contracted_or_default(l, contract));
      if (dot_out)
        io::write_file(*dot_out, text);
      else
        out << text;
    }
    return ExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace logsurf
