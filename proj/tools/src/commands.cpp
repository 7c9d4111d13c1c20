// Copyright 2026 The qrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrep/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrep/cli/report.hpp"
#include "qrep/cli/scenario.hpp"
#include "qrep/error.hpp"
#include "qrep/memory.hpp"
#include "qrep/photonics.hpp"
#include "qrep/repeater.hpp"
#include "qrep/rng.hpp"
#include "qrep/sweep.hpp"

namespace qrep::cli {
namespace {

constexpr const char* kDefaultScenario =
    "[network]\n"
    "segments_km = [100]\n";

std::string format_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double parse_double(const std::string& token) {
  const std::string t = [&] {
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : token.substr(b, e - b + 1);
  }();
  if (t == "inf") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  require(!t.empty() && end == t.c_str() + t.size(), "not a number: '" + token + "'");
  return x;
}

Scenario load(const std::string& path) {
  if (path.empty()) return parse_scenario_text(kDefaultScenario, "<default scenario>");
  return parse_scenario(path);
}

// Output sink: a file when --out is given, otherwise the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      require(file_.good(), "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_rows(const std::vector<ResultRow>& rows, const std::string& format,
               const std::string& out_path, std::ostream& out) {
  Sink sink(out_path, out);
  if (format == "json") {
    write_json_lines(sink.stream(), rows);
  } else {
    write_csv(sink.stream(), rows);
  }
}

void emit_kv(const nlohmann::ordered_json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    out << k << " = ";
    if (v.is_number_float()) {
      out << format_sig9(v.get<double>());
    } else if (v.is_string()) {
      out << v.get<std::string>();
    } else {
      out << v.dump();
    }
    out << "\n";
  }
}

// Scenario copy with one axis moved; keeps the dump (and fingerprint) in
// step with the chain.
Scenario with_axis(const Scenario& base, engine::SweepAxis axis, double value) {
  Scenario s = base;
  if (axis == engine::SweepAxis::kEmissionProb) {
    require(value >= 0.0, "sweep: p must be non-negative");
    s.gt = std::sqrt(value);
    resolve(s);
    s.chain.validate();
  } else {
    s.chain = engine::apply_axis(base.chain, axis, value);
  }
  return s;
}

Scenario with_repeaters(const Scenario& base, int repeaters) {
  Scenario s = base;
  const double total = base.chain.total_length_km();
  s.chain.segment_lengths_km.assign(static_cast<std::size_t>(repeaters) + 1,
                                    total / static_cast<double>(repeaters + 1));
  s.chain.validate();
  return s;
}

ResultRow direct_row(const Scenario& s, double swept, const std::string& axis) {
  ResultRow row;
  row.swept_value = swept;
  row.axis = axis;
  row.repeaters = 0;
  row.direct = true;
  row.stats.rate = engine::direct_transmission_rate(s.chain.total_length_km(), s.source_rate_hz,
                                                    s.chain.link_hardware(0));
  row.fingerprint = fingerprint(s);
  return row;
}

ResultRow sim_row(const Scenario& s, double swept, const std::string& axis, std::uint64_t seed,
                  int trials, unsigned workers) {
  ResultRow row;
  row.swept_value = swept;
  row.axis = axis;
  row.repeaters = static_cast<int>(s.chain.num_links()) - 1;
  row.stats = engine::run_trials(s.chain, seed, trials, s.sim.stop(), workers);
  row.fingerprint = fingerprint(s);
  return row;
}

struct CalcInputs {
  int digits = 4;
  double q = 0.0;
  double v_over_lambda3 = 1.0;
  double t1 = 0.0;
  double t2star = photonics::kInf;
  double gamma_r = 0.0;
  double gamma_nr = 0.0;
  double purcell = 1.0;
  double spacing = 0.0;
  double km = 0.0;
  double alpha = 0.2;
};

void add_calc(CLI::App& app, std::ostream& out, CalcInputs& in) {
  auto* calc = app.add_subcommand("calc", "Evaluate a single photonics or memory formula");
  calc->require_subcommand(1);
  calc->add_option("--digits", in.digits, "Significant digits")->check(CLI::Range(1, 17));
  auto show = [&out, &in](double x) { out << format_sig(x, in.digits) << "\n"; };

  auto* pc = calc->add_subcommand("purcell", "F_P = 3/(4 pi^2) (lambda^3/V) Q");
  pc->add_option("--q", in.q, "Quality factor")->required();
  pc->add_option("--v-over-lambda3", in.v_over_lambda3, "Mode volume in units of lambda^3")
      ->required();
  pc->callback([&in, show] {
    photonics::CavityParams c;
    c.quality_factor = in.q;
    c.wavelength_in_medium = 1.0;
    c.mode_volume = in.v_over_lambda3;
    show(photonics::purcell_factor(c));
  });

  auto emitter_opts = [&in](CLI::App* sub) {
    sub->add_option("--t1", in.t1, "Excited-state lifetime (s)")->required();
    sub->add_option("--t2star", in.t2star, "Pure-dephasing time T2* (s), default inf");
  };
  auto emitter = [&in] { return photonics::EmitterParams::from_lifetime(in.t1, 1.0, in.t2star); };
  auto* ct = calc->add_subcommand("coherence-time", "Photon coherence time 1/T2 = 1/(2T1) + 1/T2*");
  emitter_opts(ct);
  ct->callback([show, emitter] { show(photonics::photon_coherence_time(emitter())); });
  auto* ind = calc->add_subcommand("indistinguishability", "I = gamma / (gamma + gamma*)");
  emitter_opts(ind);
  ind->callback([show, emitter] { show(photonics::indistinguishability(emitter())); });

  auto* er = calc->add_subcommand("enhanced-rate", "gamma' = F_P gamma_r + gamma_nr");
  er->add_option("--gamma-r", in.gamma_r, "Radiative rate (1/s)")->required();
  er->add_option("--gamma-nr", in.gamma_nr, "Non-radiative rate (1/s)");
  er->add_option("--purcell", in.purcell, "Purcell factor")->required();
  er->callback([&in, show] {
    show(photonics::enhanced_decay_rate(
        photonics::EmitterParams::from_rates(in.gamma_r, in.gamma_nr), in.purcell));
  });

  auto* rt = calc->add_subcommand("recall-time", "AFC echo time T = 2 pi / comb spacing");
  rt->add_option("--spacing-rad-per-s", in.spacing, "Comb tooth spacing (rad/s)")->required();
  rt->callback([&in, show] {
    memory::AfcParams a;
    a.comb_spacing = in.spacing;
    show(memory::recall_time(a));
  });

  auto* tr = calc->add_subcommand("transmission", "Fiber survival 10^(-alpha L / 10)");
  tr->add_option("--km", in.km, "Length (km)")->required();
  tr->add_option("--alpha", in.alpha, "Attenuation (dB/km)");
  tr->callback([&in, show] {
    photonics::FiberParams f;
    f.attenuation_db_per_km = in.alpha;
    show(photonics::fiber_transmission(in.km, f));
  });
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  std::vector<double> values;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const bool ellipsis = tokens[i].find("...") != std::string::npos;
    if (!ellipsis) {
      values.push_back(parse_double(tokens[i]));
      continue;
    }
    require(values.size() >= 2 && i + 1 < tokens.size(),
            "value list: '...' needs two values before it and one after");
    const double a = values[values.size() - 2];
    const double step = values.back() - a;
    const double last = parse_double(tokens[i + 1]);
    require(step != 0.0 && (last - values.back()) / step >= 0.0,
            "value list: '...' must continue an arithmetic progression towards the last value");
    const double n = std::round((last - a) / step);
    require(std::abs(a + n * step - last) <= 1e-9 * std::max(1.0, std::abs(last)),
            "value list: last value is not on the progression");
    for (double k = 2.0; k <= n; ++k) {
      values.push_back(a + k * step);
    }
    ++i;
  }
  return values;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qrep: quantum repeater chain calculator and simulator", "qrep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qrep 0.1.0");

  CalcInputs calc_inputs;
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  unsigned workers = 0;
  std::string axis;
  std::string values_text;
  std::string repeaters_text;
  int res_l = 2, res_m = 1, res_n = 0;

  add_calc(app, out, calc_inputs);

  auto config_opt = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
  };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto run_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Root seed (overrides sim.seed)");
    sub->add_option("--trials", trials, "Independent trials (overrides sim.trials)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", workers, "Worker threads, 0 = all cores");
    sub->add_option("--out", out_path, "Write results to this file");
  };

  auto* link = app.add_subcommand("link", "Herald probability, fidelity and rate of one link");
  config_opt(link);
  format_opt(link);
  auto* chain = app.add_subcommand("chain", "Simulate the configured chain");
  config_opt(chain);
  format_opt(chain);
  run_opts(chain);
  auto* analytic = app.add_subcommand("analytic", "Markov-chain delivery time of 1 or 2 links");
  config_opt(analytic);
  format_opt(analytic);
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter, optionally over repeater counts");
  config_opt(sweep);
  format_opt(sweep);
  run_opts(sweep);
  sweep->add_option("--axis", axis, "total_km, p, n_modes, t2, cutoff or links")->required();
  sweep->add_option("--values", values_text, "Comma list; 'a,b,...,z' expands")->required();
  sweep->add_option("--repeaters", repeaters_text,
                    "Comma list of repeater counts; 0 adds the direct-transmission baseline");
  auto* resources = app.add_subcommand("resources", "Nested purification resource count");
  resources->add_option("--l", res_l, "Links joined per level")->required();
  resources->add_option("--m", res_m, "Raw pairs distilled per level")->required();
  resources->add_option("--levels", res_n, "Nesting levels")->required();
  format_opt(resources);
  auto* dump = app.add_subcommand("dump", "Print the resolved scenario and its fingerprint");
  config_opt(dump);

  std::vector<const char*> argv{"qrep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "qrep: " << e.what() << "\n";
    return 1;
  }

  try {
    if (link->parsed()) {
      const Scenario s = load(config_path);
      const auto herald = s.chain.link_herald(0);
      const double tau = s.chain.link_attempt_interval(0);
      engine::RepeaterChainConfig one = s.chain;
      one.segment_lengths_km.resize(1);
      one.purification.reset();
      const auto model = engine::analytic_model(one);
      nlohmann::ordered_json j;
      j["length_km"] = s.chain.segment_lengths_km[0];
      j["attempt_interval_s"] = tau;
      j["success_prob_per_mode"] = herald.success_prob;
      j["success_prob_per_round"] = model.round_success_prob();
      j["rate_hz"] = model.round_success_prob() / tau;
      j["w_ent"] = herald.heralded.w_ent;
      j["coherence"] = herald.heralded.coherence;
      j["fidelity"] = fidelity(herald.heralded);
      j["fingerprint"] = fingerprint(s);
      emit_kv(j, format, out);
    } else if (chain->parsed()) {
      const Scenario s = load(config_path);
      const ResultRow row = sim_row(s, std::numeric_limits<double>::quiet_NaN(), "",
                                    seed.value_or(s.sim.seed), trials.value_or(s.sim.trials),
                                    workers);
      emit_rows({row}, format, out_path, out);
    } else if (analytic->parsed()) {
      const Scenario s = load(config_path);
      const auto model = engine::analytic_model(s.chain);
      const int k = static_cast<int>(s.chain.num_links());
      const double t = repeater::expected_chain_time(model, k);
      nlohmann::ordered_json j;
      j["links"] = k;
      j["success_prob_per_round"] = model.round_success_prob();
      j["swap_success_prob"] = model.swap_success_prob;
      j["attempt_interval_s"] = model.attempt_interval;
      j["expected_time_s"] = t;
      j["rate_hz"] = 1.0 / t;
      j["fingerprint"] = fingerprint(s);
      emit_kv(j, format, out);
    } else if (sweep->parsed()) {
      const Scenario base = load(config_path);
      const engine::SweepAxis ax = engine::parse_axis(axis);
      const std::vector<double> values = parse_value_list(values_text);
      const std::uint64_t root = seed.value_or(base.sim.seed);
      const int n_trials = trials.value_or(base.sim.trials);
      std::vector<int> repeaters;
      if (repeaters_text.empty()) {
        repeaters.push_back(static_cast<int>(base.chain.num_links()) - 1);
      } else {
        for (double r : parse_value_list(repeaters_text)) {
          require(r >= 0.0 && std::floor(r) == r && r < 1e6,
                  "--repeaters: counts must be non-negative integers");
          repeaters.push_back(static_cast<int>(r));
        }
      }
      std::vector<ResultRow> rows;
      for (int r : repeaters) {
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (r == 0) {
            Scenario s = with_axis(with_repeaters(base, 0), ax, values[i]);
            rows.push_back(direct_row(s, values[i], axis));
            continue;
          }
          Scenario s = repeaters_text.empty() ? base : with_repeaters(base, r);
          s = with_axis(s, ax, values[i]);
          rows.push_back(sim_row(s, values[i], axis,
                                 derive_seed(root, static_cast<std::uint64_t>(r) * 1000003u + i),
                                 n_trials, workers));
        }
      }
      emit_rows(rows, format, out_path, out);
    } else if (resources->parsed()) {
      const auto plan = repeater::PurificationPlan::make(res_l, res_m, res_n);
      nlohmann::ordered_json j;
      j["links"] = plan.total_links;
      j["resources"] = repeater::resource_count(plan);
      j["resources_polynomial"] = repeater::resource_count_polynomial(plan);
      emit_kv(j, format, out);
    } else if (dump->parsed()) {
      const Scenario s = load(config_path);
      out << dump_scenario(s) << "# fingerprint " << fingerprint(s) << "\n";
    }
  } catch (const std::exception& e) {
    err << "qrep: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qrep::cli
