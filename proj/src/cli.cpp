#include "esd/cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "esd/classify.hpp"
#include "esd/dynamics.hpp"
#include "esd/entanglement.hpp"
#include "esd/errors.hpp"
#include "esd/io.hpp"
#include "esd/sampling.hpp"
#include "esd/verify.hpp"

namespace esd::cli {

using nlohmann::json;

std::vector<double> time_grid(double t_max, std::size_t n, Spacing spacing) {
  if (n < 1) throw Error(ErrorCode::BadGrid, "need at least one time point");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw Error(ErrorCode::BadGrid, "t_max must be finite and >= 0");
  if (n == 1) return {0.0};
  if (t_max == 0.0) throw Error(ErrorCode::BadGrid, "t_max = 0 admits a single point only");

  std::vector<double> t(n);
  if (spacing == Spacing::Linear) {
    for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    t.back() = t_max;
    return t;
  }
  t[0] = 0.0;
  const double lo = std::log(1e-6 * t_max), hi = std::log(t_max);
  const std::size_t m = n - 1;
  for (std::size_t i = 0; i < m; ++i)
    t[i + 1] = m == 1 ? t_max : std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1));
  t.back() = t_max;
  return t;
}

namespace {

std::string_view outcome_name(EsdOutcome o) {
  switch (o) {
    case EsdOutcome::FiniteCrossing: return "finite";
    case EsdOutcome::NoCrossingWithinHorizon: return "no-crossing";
    case EsdOutcome::InitiallySeparable: return "initially-separable";
  }
  return "?";
}

json rates_json(const NoiseRates& r) {
  return {{"g1a", r.gamma1_a}, {"g1b", r.gamma1_b}, {"g2a", r.gamma2_a}, {"g2b", r.gamma2_b}};
}

json esd_json(const EsdTimeResult& r) {
  json j{{"outcome", outcome_name(r.outcome)},
         {"t_star", nullptr},
         {"horizon", r.horizon},
         {"lambda_at_horizon", r.lambda_at_horizon},
         {"evaluations", r.evaluations},
         {"underflow", r.underflow}};
  if (r.outcome == EsdOutcome::FiniteCrossing) j["t_star"] = r.t_star;
  return j;
}

}  // namespace

int cmd_evolve(const RunSpec& spec, std::ostream& out) {
  const auto rho0 = resolve_state(spec.state);
  const auto times = time_grid(spec.t_max, spec.n_points, spec.spacing);
  const auto traj = evolve(rho0, spec.kind, spec.rates, times);

  if (spec.format == Format::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& rho = traj.states[i];
      const auto d = rho.diagonal();
      const auto& c = traj.lambdas[i];
      rows.push_back({{"t", times[i]},
                      {"concurrence", c.concurrence},
                      {"Lambda", c.lambda_cap},
                      {"rho11", d[0]},
                      {"rho22", d[1]},
                      {"rho33", d[2]},
                      {"rho44", d[3]},
                      {"purity", rho.purity()}});
    }
    out << json{{"channel", to_string(spec.kind)}, {"rates", rates_json(spec.rates)}, {"trajectory", rows}}.dump(2)
        << '\n';
    return kExitOk;
  }

  out << "t,concurrence,Lambda,rho11,rho22,rho33,rho44,purity\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& rho = traj.states[i];
    const auto d = rho.diagonal();
    const auto& c = traj.lambdas[i];
    out << format_double(times[i]) << ',' << format_double(c.concurrence) << ',' << format_double(c.lambda_cap);
    for (double x : d) out << ',' << format_double(x);
    out << ',' << format_double(rho.purity()) << '\n';
  }
  return kExitOk;
}

int cmd_classify(const RunSpec& spec, std::ostream& out) {
  const auto rho = resolve_state(spec.state);
  const auto label = subspace(rho);
  json predictions = json::object();
  json reasons = json::object();
  for (auto kind : kAllChannelKinds) {
    const auto v = predict_esd(rho, kind, spec.rates);
    const std::string key = kind == ChannelKind::AmplitudeDamping ? "amplitude"
                            : kind == ChannelKind::PhaseDamping   ? "phase"
                                                                  : "composite";
    predictions[key] = to_string(v.verdict);
    reasons[key] = v.reason;
  }
  json j{{"subspace", {{"vanishing", label.vanishing}, {"canonical", to_string(label.canonical)}}},
         {"predictions", predictions},
         {"reasons", reasons},
         {"rates", rates_json(spec.rates)},
         {"concurrence_t0", concurrence(rho).concurrence}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_esd_time(const RunSpec& spec, std::ostream& out) {
  const auto rho = resolve_state(spec.state);
  const auto result = esd_time(rho, spec.kind, spec.rates);
  const auto verdict = predict_esd(rho, spec.kind, spec.rates);
  auto j = esd_json(result);
  j["channel"] = to_string(spec.kind);
  j["rates"] = rates_json(spec.rates);
  j["prediction"] = to_string(verdict.verdict);
  j["prediction_reason"] = verdict.reason;
  j["horizon_warning"] =
      result.outcome == EsdOutcome::NoCrossingWithinHorizon && result.lambda_at_horizon > kHorizonWarnLambda;
  out << j.dump(2) << '\n';
  return kExitOk;
}

namespace {

int verify_additivity(const RunSpec& spec, std::ostream& out) {
  const NoiseRates rates{1.0, 1.0, 1.0, 1.0};
  const auto w = find_additivity_violation(spec.seed, kAdditivitySearchSize, rates);
  if (spec.format == Format::Json) {
    json j{{"scenario", "additivity"}, {"seed", spec.seed}, {"searched", kAdditivitySearchSize}, {"found", w.has_value()}};
    if (w) {
      j["sample_index"] = w->sample_index;
      j["state"] = state_to_json(w->state);
      j["concurrence_t0"] = concurrence(w->state).concurrence;
      j["phase"] = esd_json(w->phase);
      j["amplitude"] = esd_json(w->amplitude);
      j["composite"] = esd_json(w->composite);
    }
    out << j.dump(2) << '\n';
  } else if (w) {
    out << "additivity violation at sample " << w->sample_index << " (seed " << spec.seed
        << ", rates 1 on every channel)\n"
        << "state " << state_to_json(w->state).dump() << '\n'
        << "concurrence_t0 " << format_double(concurrence(w->state).concurrence) << '\n'
        << "phase      " << outcome_name(w->phase.outcome) << '\n'
        << "amplitude  " << outcome_name(w->amplitude.outcome) << '\n'
        << "composite  " << outcome_name(w->composite.outcome) << " t_star=" << format_double(w->composite.t_star)
        << '\n';
  } else {
    out << "no additivity violation among " << kAdditivitySearchSize << " subspace-IV samples (seed " << spec.seed
        << ")\n";
  }
  return w ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int cmd_verify(const RunSpec& spec, std::ostream& out, const CompositeBuilder& composite) {
  if (spec.scenario) {
    if (*spec.scenario != "additivity") throw CLI::ValidationError("--scenario", "unknown scenario " + *spec.scenario);
    return verify_additivity(spec, out);
  }
  if (spec.n_samples < 1) throw CLI::ValidationError("--samples", "must be at least 1");

  VerifyOptions opt;
  opt.seed = spec.seed;
  opt.n_samples = spec.n_samples;
  opt.composite = composite;
  const auto report = run_verify(opt);

  if (spec.format == Format::Json) {
    json suites = json::array();
    for (const auto& s : report.suites)
      suites.push_back({{"name", s.name},
                        {"passed", s.passed},
                        {"cases", s.cases},
                        {"failures", s.failures},
                        {"max_deviation", s.max_deviation},
                        {"tolerance", s.tolerance},
                        {"counterexamples", s.counterexamples}});
    out << json{{"seed", spec.seed},
                {"samples", spec.n_samples},
                {"prng", kPrngId},
                {"passed", report.passed()},
                {"suites", suites}}
               .dump(2)
        << '\n';
  } else {
    out << "seed " << spec.seed << ", " << spec.n_samples << " samples, prng " << kPrngId << '\n';
    for (const auto& s : report.suites) {
      out << (s.passed ? "PASS " : "FAIL ") << s.name << "  cases=" << s.cases << "  max_dev="
          << format_double(s.max_deviation) << "  tol=" << format_double(s.tolerance);
      if (s.failures) out << "  failures=" << s.failures;
      out << '\n';
      for (const auto& c : s.counterexamples) out << "    " << c << '\n';
    }
    out << (report.passed() ? "all suites passed" : "verification FAILED") << '\n';
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const RunSpec& spec, std::ostream& out) {
  if (spec.gamma1_values.empty() || spec.gamma2_values.empty())
    throw Error(ErrorCode::EmptyGrid, "sweep needs at least one gamma1 and one gamma2 value");
  const auto rho = resolve_state(spec.state);

  struct Row {
    double g1, g2;
    std::string_view outcome;
    std::optional<double> t_star;
  };
  std::vector<Row> rows;
  for (double g1 : spec.gamma1_values)
    for (double g2 : spec.gamma2_values) {
      const NoiseRates rates{g1, g1, g2, g2};
      Row row{g1, g2, "", std::nullopt};
      try {
        const auto r = esd_time(rho, spec.kind, rates);
        row.outcome = r.outcome == EsdOutcome::InitiallySeparable ? "separable" : outcome_name(r.outcome);
        if (r.outcome == EsdOutcome::FiniteCrossing) row.t_star = r.t_star;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AllRatesZero) throw;
        // Noiseless grid point: the state never changes.
        row.outcome = concurrence(rho).lambda_cap > kTolRoot ? "no-crossing" : "separable";
      }
      rows.push_back(row);
    }

  if (spec.format == Format::Json) {
    json j = json::array();
    for (const auto& r : rows) {
      json t = r.t_star ? json(*r.t_star) : json(nullptr);
      j.push_back({{"gamma1", r.g1}, {"gamma2", r.g2}, {"outcome", r.outcome}, {"t_star", t}});
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "gamma1,gamma2,outcome,t_star\n";
  for (const auto& r : rows)
    out << format_double(r.g1) << ',' << format_double(r.g2) << ',' << r.outcome << ','
        << (r.t_star ? format_double(*r.t_star) : std::string()) << '\n';
  return kExitOk;
}

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadGrid:
    case ErrorCode::EmptyGrid:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  CLI::App app{"Two-qubit decoherence and entanglement sudden death simulator", "esdsim"};
  app.require_subcommand(1);

  const std::map<std::string, ChannelKind> kinds{{"am", ChannelKind::AmplitudeDamping},
                                                 {"ph", ChannelKind::PhaseDamping},
                                                 {"composite", ChannelKind::Composite}};
  const std::map<std::string, Spacing> spacings{{"linear", Spacing::Linear}, {"geometric", Spacing::Geometric}};
  std::string channel = "composite", spacing = "linear", format;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", spec.state, "Preset name or JSON state file")->capture_default_str();
    sub->add_option("--out", spec.out, "Write output to this file instead of stdout");
  };
  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--channel", channel, "am, ph or composite")
        ->check(CLI::IsMember(kinds, CLI::ignore_case))
        ->capture_default_str();
  };
  auto add_rates = [&](CLI::App* sub) {
    sub->add_option("--g1a", spec.rates.gamma1_a, "Relaxation rate, qubit A")->capture_default_str();
    sub->add_option("--g1b", spec.rates.gamma1_b, "Relaxation rate, qubit B")->capture_default_str();
    sub->add_option("--g2a", spec.rates.gamma2_a, "Dephasing rate, qubit A")->capture_default_str();
    sub->add_option("--g2b", spec.rates.gamma2_b, "Dephasing rate, qubit B")->capture_default_str();
  };

  auto* evolve_cmd = app.add_subcommand("evolve", "Trajectory of one state as CSV or JSON");
  add_state(evolve_cmd);
  add_channel(evolve_cmd);
  add_rates(evolve_cmd);
  evolve_cmd->add_option("--tmax", spec.t_max, "Final time")->capture_default_str();
  evolve_cmd->add_option("--points", spec.n_points, "Number of grid points")->capture_default_str();
  evolve_cmd->add_option("--spacing", spacing, "linear or geometric")
      ->check(CLI::IsMember(spacings, CLI::ignore_case))
      ->capture_default_str();
  evolve_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case))
      ->default_str("csv");

  auto* classify_cmd = app.add_subcommand("classify", "Subspace and analytic ESD predictions");
  add_state(classify_cmd);
  add_rates(classify_cmd);

  auto* esd_cmd = app.add_subcommand("esd-time", "Numerical disentanglement time");
  add_state(esd_cmd);
  add_channel(esd_cmd);
  add_rates(esd_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Seeded invariant and theorem checks");
  verify_cmd->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
  verify_cmd->add_option("--samples", spec.n_samples, "Samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--scenario", spec.scenario, "Run a single scenario instead (additivity)")
      ->check(CLI::IsMember({"additivity"}));
  verify_cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}, CLI::ignore_case))
      ->default_str("text");
  verify_cmd->add_option("--out", spec.out, "Write output to this file instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "ESD outcome over a grid of shared rates");
  add_state(sweep_cmd);
  add_channel(sweep_cmd);
  sweep_cmd->add_option("--g1-list", spec.gamma1_values, "Comma separated Gamma1 values")->delimiter(',');
  sweep_cmd->add_option("--g2-list", spec.gamma2_values, "Comma separated Gamma2 values")->delimiter(',');
  sweep_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case))
      ->default_str("csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  spec.kind = kinds.at(lower(channel));
  spec.spacing = spacings.at(lower(spacing));
  format = lower(format);
  spec.format = format == "json" ? Format::Json
                : format == "csv" ? Format::Csv
                : verify_cmd->parsed() ? Format::Text
                                       : Format::Csv;

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (evolve_cmd->parsed()) spec.command = "evolve", code = cmd_evolve(spec, buffer);
    else if (classify_cmd->parsed()) spec.command = "classify", code = cmd_classify(spec, buffer);
    else if (esd_cmd->parsed()) spec.command = "esd-time", code = cmd_esd_time(spec, buffer);
    else if (verify_cmd->parsed()) spec.command = "verify", code = cmd_verify(spec, buffer);
    else spec.command = "sweep", code = cmd_sweep(spec, buffer);
  } catch (const Error& e) {
    err << "esdsim: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const CLI::Error& e) {
    err << "esdsim: " << e.what() << '\n';
    return kExitUsage;
  }

  if (spec.out) {
    std::ofstream file(*spec.out);
    file << buffer.str();
    file.flush();
    if (!file) {
      err << "esdsim: " << to_string(ErrorCode::WriteError) << ": cannot write " << *spec.out << '\n';
      return kExitValidation;
    }
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace esd::cli
