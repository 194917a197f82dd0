// Copyright 2026 The fiberjac Authors
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

#include "fiberjac/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fiberjac/error.hpp"
#include "fiberjac/ingest.hpp"
#include "fiberjac/jacobian.hpp"
#include "fiberjac/serialize.hpp"
#include "fiberjac/stability.hpp"

namespace fiberjac::cli {

namespace {

using io::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string fiber;
  std::string polarization;
  std::string degrees;
  std::string sheaf = "line";
  std::string format = "json";
  std::string backend = "auto";
  std::string file;
  std::string out_path;
  std::string action;
  int bound = 1;
  int q_component = 0;
  int samples = 5;
  int polarizations = 100;
  std::uint64_t cap = 10'000'000;
  std::uint64_t seed = 1;
  bool disconnected = false;
  bool derive = false;
  bool pretty = false;
};

struct Fiber {
  FiberGraph graph;
  Polarization polarization;
};

Fiber load_fiber(const Options& o) {
  if (o.fiber.empty()) throw InvalidInput("--fiber is required");
  io::FiberSpec spec;
  if (std::filesystem::is_regular_file(o.fiber)) spec = io::parse_fiber(read_file(o.fiber));
  else spec.kodaira = KodairaType::parse(o.fiber);
  auto graph = build_fiber(spec.kodaira);
  Polarization pol = spec.polarization.value_or(Polarization::uniform(graph.component_count()));
  if (!o.polarization.empty()) {
    std::vector<std::int64_t> w;
    for (int v : MultiDegree::parse(o.polarization).values) w.push_back(v);
    pol = Polarization(std::move(w));
  }
  if (pol.size() != graph.component_count())
    throw InvalidInput("polarization needs " + std::to_string(graph.component_count()) + " weights");
  return {std::move(graph), std::move(pol)};
}

SheafClass load_sheaf(const Options& o, const FiberGraph& g) {
  if (o.degrees.empty()) throw InvalidInput("--degrees is required");
  MultiDegree d = MultiDegree::parse(o.degrees);
  SheafClass cls;
  if (o.sheaf == "line") cls = SheafClass::line_bundle(std::move(d));
  else if (o.sheaf.rfind("node:", 0) == 0) cls = SheafClass::nodal(std::stoi(o.sheaf.substr(5)), std::move(d));
  else if (o.sheaf == "cusp") cls = SheafClass::singular_dual(PointTag::Cusp, std::move(d));
  else if (o.sheaf == "tacnode") cls = SheafClass::singular_dual(PointTag::Tacnode, std::move(d));
  else if (o.sheaf == "triple") cls = SheafClass::singular_dual(PointTag::Triple, std::move(d));
  else throw InvalidInput("--sheaf must be line, node:<k>, cusp, tacnode or triple");
  validate(g, cls);
  return cls;
}

void emit(std::ostream& out, const Options& o, const Json& j) { out << (o.pretty ? j.dump(2) : j.dump()) << "\n"; }

int classify_fiber(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  if (o.format == "table") out << io::table(f.graph);
  else emit(out, o, io::to_json(f.graph));
  return kExitOk;
}

int check_stability(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  const auto cls = load_sheaf(o, f.graph);
  const auto oracle = oracle_classify(f.graph, f.polarization, cls, {o.disconnected});
  Json j;
  j["fiber"] = f.graph.kodaira().name();
  j["class"] = cls.describe();
  j["verdict"] = std::string(to_string(oracle.verdict));
  j["oracle"] = io::to_json(oracle);
  if (cls.locally_free()) {
    const auto rule = classify_by_rule(f.graph, cls.degrees());
    j["rule"] = std::string(to_string(rule.verdict));
    j["agree"] = rule.verdict == oracle.verdict;
  } else {
    j["rule"] = nullptr;
  }
  emit(out, o, j);
  return kExitOk;
}

int enumerate(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  StratificationOptions so;
  so.bound = o.bound;
  so.polarization = f.polarization;
  so.include_disconnected = o.disconnected;
  so.cap = o.cap;
  so.backend = kernels::parse_backend(o.backend);
  const auto report = enumerate_stratification(f.graph, so);
  if (o.format == "table") out << io::table(report);
  else emit(out, o, io::to_json(report));
  return kExitOk;
}

int graded(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  emit(out, o, io::to_json(graded_object(f.graph, load_sheaf(o, f.graph))));
  return kExitOk;
}

int jacobian(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  const auto c = o.derive ? derive_classification(f.graph, o.q_component) : jacobian_type(f.graph.kodaira());
  if (o.format == "table")
    out << f.graph.kodaira().name() << ": " << to_string(c.kind) << ", stable locus " << to_string(c.stable_locus)
        << ", " << c.extra_points << " extra point(s)\n";
  else
    emit(out, o, io::to_json(c));
  return kExitOk;
}

int phi(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  const SmoothPoint q{o.q_component, Rational(1)};
  const auto map = phi_fibers(f.graph, q, default_samples(f.graph, q, o.samples));
  emit(out, o, io::to_json(f.graph, map));
  return kExitOk;
}

int report(const Options& o, std::ostream& out) {
  const auto r = relative_report(io::parse_fibration(read_file(o.file)));
  if (o.format == "table") out << io::table(r);
  else emit(out, o, io::to_json(r));
  const bool any_error = std::any_of(r.entries.begin(), r.entries.end(),
                                     [](const ReportEntry& e) { return !e.classification; });
  return any_error ? kExitUnsupported : kExitOk;
}

int ingest_scan(const Options& o, std::ostream& out) {
  const auto result = scan_discriminant(io::parse_model(read_file(o.file)));
  const Json j = io::to_json(result);
  if (!o.out_path.empty()) {
    std::ofstream file(o.out_path);
    if (!file) throw InvalidInput("cannot write '" + o.out_path + "'");
    file << j.dump(2) << "\n";
  }
  emit(out, o, j);
  const bool any_error = std::any_of(result.points.begin(), result.points.end(),
                                     [](const DiscriminantPoint& p) { return !p.type; });
  return any_error ? kExitUnsupported : kExitOk;
}

int oracle_audit(const Options& o, std::ostream& out) {
  const auto f = load_fiber(o);
  const auto backend = kernels::parse_backend(o.backend);
  const int n = f.graph.component_count();
  if (!f.graph.reducible()) throw InvalidInput("oracle-audit needs a reducible fiber");
  if (o.bound < 1) throw InvalidInput("bound must be >= 1");
  const std::uint64_t space = search_space(n, o.bound);
  if (space > o.cap) throw CapExceeded(space, o.cap);

  std::vector<MultiDegree> box;
  for_each_balanced_vector(n, o.bound, [&](const MultiDegree& d) { box.push_back(d); });

  const auto connected = oracle_classify_batch(f.graph, f.polarization, box, {false}, backend);
  const auto all = oracle_classify_batch(f.graph, f.polarization, box, {true}, backend);
  std::size_t rule_mismatch = 0, disconnected_mismatch = 0, polarization_mismatch = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (classify_by_rule(f.graph, box[i]).verdict != connected[i]) ++rule_mismatch;
    if (all[i] != connected[i]) ++disconnected_mismatch;
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::int64_t> weight(1, 10);
  for (int k = 0; k < o.polarizations; ++k) {
    std::vector<std::int64_t> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = weight(rng);
    const auto verdicts = oracle_classify_batch(f.graph, Polarization(w), box, {false}, backend);
    for (std::size_t i = 0; i < box.size(); ++i)
      if (verdicts[i] != connected[i]) ++polarization_mismatch;
  }

  Json j;
  j["disagreements"] = rule_mismatch + disconnected_mismatch + polarization_mismatch;
  j["fiber"] = f.graph.kodaira().name();
  j["bound"] = o.bound;
  j["examined"] = box.size();
  j["backend"] = std::string(kernels::to_string(backend));
  j["rule_vs_oracle"] = rule_mismatch;
  j["connected_vs_disconnected"] = disconnected_mismatch;
  j["polarizations_tested"] = o.polarizations;
  j["seed"] = o.seed;
  j["polarization_mismatches"] = polarization_mismatch;
  emit(out, o, j);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability and Jacobians of sheaves on Kodaira fibers", "fiberjac"};
  app.require_subcommand(1);
  Options o;

  auto add_fiber = [&](CLI::App* sub) {
    sub->add_option("--fiber", o.fiber, "I4, III, IV, II, I1, smooth, or a fiber JSON file")->required();
    sub->add_option("--polarization", o.polarization, "component weights, e.g. 1,2,1");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "auto, scalar, avx2 or neon");
  };

  auto* classify = app.add_subcommand("classify-fiber", "dual graph and subcurve data of a fiber");
  add_fiber(classify);
  add_format(classify);

  auto* check = app.add_subcommand("check-stability", "classify one sheaf by the rule and the oracle");
  add_fiber(check);
  check->add_option("--degrees", o.degrees, "multidegree, e.g. 1,-1,0,0")->required();
  check->add_option("--sheaf", o.sheaf, "line, node:<k>, cusp, tacnode or triple");
  check->add_flag("--disconnected", o.disconnected, "also test disconnected subcurves");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "stratify every balanced multidegree in a box");
  add_fiber(enumerate_cmd);
  add_format(enumerate_cmd);
  add_backend(enumerate_cmd);
  enumerate_cmd->add_option("--bound", o.bound, "max |d_i|");
  enumerate_cmd->add_option("--cap", o.cap, "max number of candidate vectors");
  enumerate_cmd->add_flag("--disconnected", o.disconnected, "also test disconnected subcurves");

  auto* graded_cmd = app.add_subcommand("graded", "Jordan-Holder graded object of a semistable sheaf");
  add_fiber(graded_cmd);
  graded_cmd->add_option("--degrees", o.degrees, "multidegree")->required();
  graded_cmd->add_option("--sheaf", o.sheaf, "line, node:<k>, cusp, tacnode or triple");

  auto* jacobian_cmd = app.add_subcommand("jacobian", "type of the Jacobian of a fiber");
  add_fiber(jacobian_cmd);
  add_format(jacobian_cmd);
  jacobian_cmd->add_flag("--derive", o.derive, "compute from the stability engine instead of the table");
  jacobian_cmd->add_option("--q-component", o.q_component, "component carrying q");

  auto* phi_cmd = app.add_subcommand("phi", "images of points of C_0 in the Jacobian");
  add_fiber(phi_cmd);
  phi_cmd->add_option("--q-component", o.q_component, "component carrying q");
  phi_cmd->add_option("--samples", o.samples, "number of smooth sample points besides q");

  auto* report_cmd = app.add_subcommand("report", "relative Jacobian report for a fibration file");
  report_cmd->add_option("fibration", o.file, "fibration JSON")->required();
  add_format(report_cmd);

  auto* scan_cmd = app.add_subcommand("ingest-scan", "classify the discriminant of a Weierstrass model");
  scan_cmd->add_option("model", o.file, "model JSON")->required();
  scan_cmd->add_option("--out", o.out_path, "also write the fibration file here");

  auto* ingest_cmd = app.add_subcommand("ingest", "same as ingest-scan: ingest scan <model>");
  ingest_cmd->add_option("action", o.action, "scan")->required()->check(CLI::IsMember({"scan"}));
  ingest_cmd->add_option("model", o.file, "model JSON")->required();
  ingest_cmd->add_option("--out", o.out_path, "also write the fibration file here");

  auto* audit = app.add_subcommand("oracle-audit", "rule, connectivity and polarization agreement over a box");
  add_fiber(audit);
  add_backend(audit);
  audit->add_option("--bound", o.bound, "max |d_i|");
  audit->add_option("--cap", o.cap, "max number of candidate vectors");
  audit->add_option("--polarizations", o.polarizations, "random polarizations to compare");
  audit->add_option("--seed", o.seed, "seed for the random polarizations");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--pretty", o.pretty, "indent JSON output");

  std::vector<std::string> reversed;
  for (std::size_t i = args.size(); i-- > 1;) reversed.push_back(args[i]);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (classify->parsed()) return classify_fiber(o, out);
    if (check->parsed()) return check_stability(o, out);
    if (enumerate_cmd->parsed()) return enumerate(o, out);
    if (graded_cmd->parsed()) return graded(o, out);
    if (jacobian_cmd->parsed()) return jacobian(o, out);
    if (phi_cmd->parsed()) return phi(o, out);
    if (report_cmd->parsed()) return report(o, out);
    if (scan_cmd->parsed() || ingest_cmd->parsed()) return ingest_scan(o, out);
    if (audit->parsed()) return oracle_audit(o, out);
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NonMinimalModel& e) {
    err << "non-minimal model: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace fiberjac::cli
