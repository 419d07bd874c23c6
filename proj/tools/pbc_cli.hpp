// Copyright 2026 The PBC Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything lives in this header so the tests can
// drive `run` with in-memory streams.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbc/pbc.hpp"

namespace pbc::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kInput = 3, kCapacity = 4 };

/// Bad files or values that the argument parser cannot catch.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kWorkersEnv = "PBC_WORKERS";

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw InputError("cannot write '" + path + "'");
  }
  f << text;
}

/// Writes to `path`, or to `out` when the path is empty.
inline void emit_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

/// The environment variable wins over the flag; 0 means one per core.
inline std::size_t resolve_workers(std::size_t flag) {
  std::size_t w = flag;
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
      throw InputError(std::string(kWorkersEnv) + " must be a non-negative integer, got '" + env + "'");
    }
    w = v;
  }
  if (w == 0) {
    w = std::max(1u, std::thread::hardware_concurrency());
  }
  return w;
}

inline const std::map<std::string, int>& scheme_names() {
  static const std::map<std::string, int> kNames = {
      {"aux", 0}, {"cascade", 1}, {"cascade-elide", 2}, {"ghz", 3}, {"ghz-const", 4}};
  return kNames;
}

inline EmitScheme scheme_from_name(const std::string& name) {
  switch (scheme_names().at(name)) {
    case 1: return CnotCascade{false};
    case 2: return CnotCascade{true};
    case 3: return GhzFanout{GhzPrep::Tree};
    case 4: return GhzFanout{GhzPrep::ConstDepth};
    default: return AuxQubit{};
  }
}

inline BackendKind backend_from_name(const std::string& name) {
  return name == "dummy" ? BackendKind::Dummy : BackendKind::Statevector;
}

/// min / max / mean of a sample.
inline Json summary(const std::vector<double>& v) {
  if (v.empty()) {
    return Json{{"min", 0}, {"max", 0}, {"mean", 0}};
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  return Json{{"min", *std::min_element(v.begin(), v.end())},
              {"max", *std::max_element(v.begin(), v.end())},
              {"mean", sum / static_cast<double>(v.size())}};
}

inline Json metrics_json(const CircuitMetrics& m) {
  return Json{{"depth", m.depth},
              {"count_1q", m.count_1q},
              {"count_cnot", m.count_cnot},
              {"count_t", m.count_t},
              {"count_measure", m.count_measure},
              {"count_conditional", m.count_conditional},
              {"count_reset", m.count_reset}};
}

inline Json bounds_json(std::size_t t) {
  if (t == 0) {
    return nullptr;
  }
  ResourceBounds b = resource_bounds(t);
  return Json{{"n_hs_ub", b.n_hs_ub}, {"n_cnot_ub", b.n_cnot_ub}, {"depth_ub", b.depth_ub}};
}

inline std::string parity_expression(const MeasurementRecord& r) {
  std::string s;
  for (std::size_t c : r.cbits) {
    s += (s.empty() ? "c" : " ^ c") + std::to_string(c);
  }
  if (r.sign_flip) {
    s += s.empty() ? "1" : " ^ 1";
  }
  return s;
}

inline std::string csv_number(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// Subcommands

struct SampleArgs {
  std::string input;
  std::size_t shots = 1024;
  std::uint64_t seed = 0;
  std::string backend = "statevector";
  std::string scheme = "aux";
  std::size_t workers = 1;
  bool trace = false;
  bool timing = false;
  std::string format = "json";
  std::string output;
};

inline void cmd_sample(const SampleArgs& a, std::ostream& out) {
  Circuit c = parse_circuit(read_file(a.input));
  GadgetizedCircuit gc = gadgetize(c);
  SampleOptions opt;
  opt.shots = a.shots;
  opt.seed = a.seed;
  opt.workers = resolve_workers(a.workers);
  opt.keep_trace = a.trace;
  SampleResult res = sample(gc, opt, backend_factory(backend_from_name(a.backend)));

  const EmitScheme scheme = scheme_from_name(a.scheme);
  std::vector<CircuitMetrics> emitted(res.results.size());
  parallel_for(res.results.size(), opt.workers, [&](std::size_t i) {
    std::vector<PauliOperator> paulis;
    for (const RegisterMeasurement& m : res.results[i].quantum_measurements) {
      paulis.push_back(m.pauli);
    }
    emitted[i] = metrics(emit(paulis, scheme, gc.t).circuit);
  });

  if (a.format == "csv") {
    std::ostringstream s;
    s << "shot,outcome,quantum_measurements,coin_tosses,determined,depth,count_1q,count_cnot"
      << (a.timing ? ",ms" : "") << '\n';
    for (std::size_t i = 0; i < res.results.size(); ++i) {
      const ShotResult& r = res.results[i];
      s << i << ',' << bits_to_string(r.output_bits) << ',' << r.stats.num_quantum_measurements << ','
        << r.stats.num_coin_tosses << ',' << r.stats.num_determined << ',' << emitted[i].depth << ','
        << emitted[i].count_1q << ',' << emitted[i].count_cnot;
      if (a.timing) {
        s << ',' << csv_number(r.stats.wall_time_s * 1e3);
      }
      s << '\n';
    }
    emit_text(a.output, s.str(), out);
    return;
  }

  std::vector<double> quantum;
  std::vector<double> coins;
  std::vector<double> depth;
  std::vector<double> one_q;
  std::vector<double> cnot;
  std::vector<double> ms;
  Json shots = Json::array();
  for (std::size_t i = 0; i < res.results.size(); ++i) {
    const ShotResult& r = res.results[i];
    quantum.push_back(static_cast<double>(r.stats.num_quantum_measurements));
    coins.push_back(static_cast<double>(r.stats.num_coin_tosses));
    depth.push_back(static_cast<double>(emitted[i].depth));
    one_q.push_back(static_cast<double>(emitted[i].count_1q));
    cnot.push_back(static_cast<double>(emitted[i].count_cnot));
    ms.push_back(r.stats.wall_time_s * 1e3);
    Json shot{{"outcome", bits_to_string(r.output_bits)},
              {"quantum_measurements", r.stats.num_quantum_measurements},
              {"coin_tosses", r.stats.num_coin_tosses},
              {"determined", r.stats.num_determined},
              {"depth", emitted[i].depth},
              {"count_1q", emitted[i].count_1q},
              {"count_cnot", emitted[i].count_cnot}};
    if (a.timing) {
      shot["ms"] = ms.back();
    }
    shots.push_back(std::move(shot));
  }

  Json report;
  report["n"] = gc.n_main;
  report["t"] = gc.t;
  report["shots"] = a.shots;
  report["seed"] = a.seed;
  report["backend"] = a.backend;
  report["scheme"] = a.scheme;
  report["histogram"] = Json::object();
  for (const auto& [k, v] : res.histogram) {
    report["histogram"][k] = v;
  }
  report["quantum_measurements"] = summary(quantum);
  report["coin_tosses"] = summary(coins);
  report["emitted"] = Json{{"depth", summary(depth)}, {"count_1q", summary(one_q)}, {"count_cnot", summary(cnot)}};
  report["aux_bounds"] = bounds_json(gc.t);
  if (a.timing) {
    report["timing"] = Json{{"ms_per_shot", summary(ms)}};
  }
  report["per_shot"] = std::move(shots);
  if (a.trace) {
    Json traces = Json::array();
    for (const ShotResult& r : res.results) {
      Json t = Json::array();
      for (const TraceEntry& e : r.trace) {
        t.push_back(Json{{"cbit", e.cbit},
                         {"pauli", e.front_pauli.str()},
                         {"resolution", resolution_name(e.resolution)},
                         {"outcome", e.outcome ? 1 : 0}});
      }
      traces.push_back(std::move(t));
    }
    report["traces"] = std::move(traces);
  }
  emit_text(a.output, report.dump(2) + "\n", out);
}

struct HybridArgs {
  std::string input;
  std::size_t k = 1;
  double epsilon = 0.1;
  double p_fail = 0.01;
  long qubit = -1;
  std::uint64_t seed = 0;
  std::string backend = "statevector";
  std::size_t workers = 1;
  bool timing = false;
  std::string format = "json";
  std::string output;
};

inline void cmd_hybrid(const HybridArgs& a, std::ostream& out) {
  Circuit c = parse_circuit(read_file(a.input));
  GadgetizedCircuit gc = gadgetize(c);
  std::vector<std::size_t> measured_qubit;
  for (const Instruction& inst : c.instructions()) {
    if (const auto* m = std::get_if<Measure>(&inst)) {
      measured_qubit.push_back(m->qubit);
    }
  }
  if (a.k > gc.t) {
    throw InputError("k = " + std::to_string(a.k) + " exceeds the T-count " + std::to_string(gc.t));
  }
  std::vector<std::size_t> which;
  if (a.qubit >= 0) {
    for (std::size_t i = 0; i < measured_qubit.size(); ++i) {
      if (measured_qubit[i] == static_cast<std::size_t>(a.qubit)) {
        which.push_back(i);
      }
    }
    if (which.empty()) {
      throw InputError("qubit q" + std::to_string(a.qubit) + " is never measured");
    }
  } else {
    for (std::size_t i = 0; i < measured_qubit.size(); ++i) {
      which.push_back(i);
    }
  }

  SamplingPlan p = plan(a.k, a.epsilon, a.p_fail);
  const BackendFactory factory = backend_factory(backend_from_name(a.backend));
  const std::size_t workers = resolve_workers(a.workers);
  Json estimates = Json::array();
  std::ostringstream csv;
  csv << "qubit,output,p_hat,epsilon,n\n";
  double total_time = 0.0;
  for (std::size_t idx : which) {
    EstimateOptions opt;
    opt.k = a.k;
    opt.epsilon = a.epsilon;
    opt.p_fail = a.p_fail;
    opt.seed = substream(a.seed, idx)();  // independent budget per output
    opt.workers = workers;
    Estimate e = estimate(gc, idx, opt, factory);
    total_time += e.wall_time_s;
    Json row{{"qubit", measured_qubit[idx]},
             {"output", idx},
             {"p_hat", e.p_hat},
             {"epsilon", e.half_width},
             {"n", e.plan.n},
             {"max_quantum_measurements", e.max_quantum_measurements}};
    if (a.timing) {
      row["wall_time_s"] = e.wall_time_s;
    }
    estimates.push_back(std::move(row));
    csv << measured_qubit[idx] << ',' << idx << ',' << csv_number(e.p_hat) << ',' << csv_number(e.half_width) << ','
        << e.plan.n << '\n';
  }

  if (a.format == "csv") {
    emit_text(a.output, csv.str(), out);
    return;
  }
  Json report{{"k", a.k},
              {"t", gc.t},
              {"epsilon", a.epsilon},
              {"p_fail", a.p_fail},
              {"n", p.n},
              {"n_naive", p.n_naive},
              {"l1", p.l1},
              {"seed", a.seed},
              {"backend", a.backend},
              {"estimates", std::move(estimates)}};
  if (a.timing) {
    report["wall_time_s"] = total_time;
  }
  emit_text(a.output, report.dump(2) + "\n", out);
}

struct GenArgs {
  std::string output;
  std::uint64_t seed = 0;
  // hsc
  std::size_t n = 6;
  std::size_t n_ccz = 1;
  std::size_t n_zcz = 10;
  std::string hidden;
  // rqc
  std::size_t cols = 5;
  std::size_t rows = 5;
  std::size_t cycles = 40;
  std::size_t t = 7;
  std::size_t max_retries = 1000;
  // random
  std::size_t gates = 40;
};

inline void write_generated(const std::string& path, const Circuit& c, Json sidecar, std::ostream& out) {
  sidecar["achieved_T_count"] = c.t_count();
  write_file(path, serialize_circuit(c));
  write_file(path + ".json", sidecar.dump(2) + "\n");
  out << sidecar.dump(2) << '\n';
}

inline void cmd_gen_hsc(const GenArgs& a, std::ostream& out) {
  HscSpec spec;
  spec.n = a.n;
  spec.n_ccz = a.n_ccz;
  spec.n_zcz = a.n_zcz;
  spec.seed = a.seed;
  if (!a.hidden.empty()) {
    std::vector<std::uint8_t> bits;
    for (char ch : a.hidden) {
      if (ch != '0' && ch != '1') {
        throw InputError("hidden string must consist of 0 and 1");
      }
      bits.push_back(ch == '1' ? 1 : 0);
    }
    spec.hidden = std::move(bits);
  }
  HscCircuit h = gen_hsc(spec);
  Json sidecar{{"spec", Json{{"family", "hsc"}, {"n", a.n}, {"n_ccz", a.n_ccz}, {"n_zcz", a.n_zcz}, {"seed", a.seed}}},
               {"hidden_string", bits_to_string(h.hidden)}};
  write_generated(a.output, h.circuit, std::move(sidecar), out);
}

inline void cmd_gen_rqc(const GenArgs& a, std::ostream& out) {
  RqcSpec spec;
  spec.cols = a.cols;
  spec.rows = a.rows;
  spec.n_cycles = a.cycles;
  spec.t_target = a.t;
  spec.seed = a.seed;
  spec.max_retries = a.max_retries;
  RqcCircuit r = gen_rqc(spec);
  Json sidecar{{"spec", Json{{"family", "rqc"},
                             {"cols", a.cols},
                             {"rows", a.rows},
                             {"n_cycles", a.cycles},
                             {"t_target", a.t},
                             {"seed", a.seed}}},
               {"attempts", r.attempts}};
  write_generated(a.output, r.circuit, std::move(sidecar), out);
}

inline void cmd_gen_random(const GenArgs& a, std::ostream& out) {
  Circuit c = random_clifford_t(a.n, a.gates, a.t, a.seed);
  Json sidecar{
      {"spec", Json{{"family", "random"}, {"n", a.n}, {"gates", a.gates}, {"t", a.t}, {"seed", a.seed}}}};
  write_generated(a.output, c, std::move(sidecar), out);
}

struct EmitArgs {
  std::string paulis;
  std::string circuit;
  std::uint64_t seed = 0;
  std::string backend = "statevector";
  std::string scheme = "aux";
  std::string output;
};

/// One signed Pauli per line; '#' starts a comment.
inline std::vector<PauliOperator> parse_pauli_list(const std::string& text) {
  std::vector<PauliOperator> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream words(line);
    std::string word;
    if (!(words >> word)) {
      continue;
    }
    std::string extra;
    if (words >> extra) {
      throw InputError("line " + std::to_string(line_no) + ": one Pauli per line expected");
    }
    try {
      out.push_back(PauliOperator::from_string(word));
    } catch (const std::exception& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

inline void cmd_emit(const EmitArgs& a, std::ostream& out) {
  std::vector<PauliOperator> paulis;
  std::size_t width = 0;
  if (!a.paulis.empty()) {
    paulis = parse_pauli_list(read_file(a.paulis));
    if (paulis.empty()) {
      throw InputError("no Paulis in '" + a.paulis + "'");
    }
  } else {
    GadgetizedCircuit gc = gadgetize(parse_circuit(read_file(a.circuit)));
    Rng rng = substream(a.seed, 0);
    std::unique_ptr<MeasurementBackend> backend = make_backend(backend_from_name(a.backend), gc.t);
    ShotResult shot = run_shot(gc, {}, *backend, rng, false);
    for (const RegisterMeasurement& m : shot.quantum_measurements) {
      paulis.push_back(m.pauli);
    }
    width = gc.t;
  }
  EmittedProgram prog = emit(paulis, scheme_from_name(a.scheme), width);

  Json records = Json::array();
  for (const MeasurementRecord& r : prog.records) {
    records.push_back(Json{{"pauli", r.pauli.str()},
                           {"measured", r.measured.str()},
                           {"cbits", r.cbits},
                           {"sign_flip", r.sign_flip},
                           {"parity", parity_expression(r)}});
  }
  Json frame = Json::array();
  for (const Instruction& inst : prog.frame_correction) {
    frame.push_back(serialize_instruction(inst));
  }
  Json report{{"scheme", a.scheme},
              {"num_data", prog.num_data},
              {"num_qubits", prog.circuit.num_qubits()},
              {"num_cbits", prog.circuit.num_cbits()},
              {"metrics", metrics_json(metrics(prog.circuit))},
              {"aux_bounds", bounds_json(prog.num_data)},
              {"records", std::move(records)},
              {"frame_correction", std::move(frame)}};
  if (a.output.empty()) {
    report["circuit"] = serialize_circuit(prog.circuit);
  } else {
    write_file(a.output, serialize_circuit(prog.circuit));
    write_file(a.output + ".json", report.dump(2) + "\n");
  }
  out << report.dump(2) << '\n';
}

struct BoundsArgs {
  std::vector<std::size_t> t;
  std::vector<double> cycles;
  std::vector<std::size_t> k;
  double epsilon = 0.1;
  double p_fail = 0.01;
  std::string format = "csv";
  std::string output;
};

inline void cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.t.empty() && a.cycles.empty() && a.k.empty()) {
    throw CLI::ValidationError("bounds", "give at least one of --t, --cycles or --k");
  }
  Json report = Json::object();
  std::ostringstream csv;
  if (!a.t.empty()) {
    csv << "t,n_hs_ub,n_cnot_ub,depth_ub\n";
    Json rows = Json::array();
    for (std::size_t t : a.t) {
      ResourceBounds b = resource_bounds(t);
      csv << t << ',' << b.n_hs_ub << ',' << b.n_cnot_ub << ',' << b.depth_ub << '\n';
      rows.push_back(Json{{"t", t}, {"n_hs_ub", b.n_hs_ub}, {"n_cnot_ub", b.n_cnot_ub}, {"depth_ub", b.depth_ub}});
    }
    report["resources"] = std::move(rows);
  }
  if (!a.cycles.empty()) {
    csv << (csv.tellp() > 0 ? "\n" : "") << "n_cycles,t_lower_bound\n";
    Json rows = Json::array();
    for (double n : a.cycles) {
      double t = boundary_lower_bound(n);
      csv << n << ',' << std::fixed << std::setprecision(4) << t << std::defaultfloat << '\n';
      rows.push_back(Json{{"n_cycles", n}, {"t_lower_bound", t}});
    }
    report["boundary"] = std::move(rows);
  }
  if (!a.k.empty()) {
    csv << (csv.tellp() > 0 ? "\n" : "") << "k,epsilon,p_fail,n,n_naive,rate_upper,rate_lower,m_half\n";
    Json rows = Json::array();
    for (std::size_t k : a.k) {
      SamplingPlan p = plan(k, a.epsilon, a.p_fail);
      RateBounds r = bounds(k, a.epsilon);
      csv << k << ',' << a.epsilon << ',' << a.p_fail << ',' << p.n << ',' << p.n_naive << ',' << csv_number(r.upper)
          << ',' << csv_number(r.lower) << ',' << csv_number(r.m_half) << '\n';
      rows.push_back(Json{{"k", k},
                          {"epsilon", a.epsilon},
                          {"p_fail", a.p_fail},
                          {"n", p.n},
                          {"n_naive", p.n_naive},
                          {"rate_upper", r.upper},
                          {"rate_lower", r.lower},
                          {"m_half", r.m_half}});
    }
    report["sampling"] = std::move(rows);
  }
  emit_text(a.output, a.format == "csv" ? csv.str() : report.dump(2) + "\n", out);
}

struct MetricsArgs {
  std::string input;
  std::string format = "json";
};

inline void cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  Circuit c = parse_circuit(read_file(a.input));
  CircuitMetrics m = metrics(c);
  if (a.format == "csv") {
    out << "n,t,depth,count_1q,count_cnot\n"
        << c.num_qubits() << ',' << m.count_t << ',' << m.depth << ',' << m.count_1q << ',' << m.count_cnot << '\n';
    return;
  }
  Json j{{"n", c.num_qubits()}, {"t", m.count_t}};
  const Json all = metrics_json(m);
  for (const auto& [k, v] : all.items()) {
    if (k != "count_t") {
      j[k] = v;
    }
  }
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pauli-based computation compiler and simulator", "pbc"};
  app.require_subcommand(1);
  std::function<void()> action;

  const auto backends = CLI::IsMember({"statevector", "dummy"});
  std::vector<std::string> scheme_list;
  for (const auto& [name, id] : scheme_names()) {
    scheme_list.push_back(name);
  }
  const auto schemes = CLI::IsMember(scheme_list);
  const auto formats = CLI::IsMember({"json", "csv"});

  SampleArgs sa;
  CLI::App* s = app.add_subcommand("sample", "Weak simulation of a Clifford+T circuit by Pauli-based computation");
  s->add_option("circuit", sa.input, "Circuit file")->required();
  s->add_option("--shots", sa.shots, "Number of shots")->capture_default_str();
  s->add_option("--seed", sa.seed, "Random seed")->capture_default_str();
  s->add_option("--backend", sa.backend, "Measurement backend")->capture_default_str()->check(backends);
  s->add_option("--scheme", sa.scheme, "Emission scheme for the compiled-circuit stats")
      ->capture_default_str()
      ->check(schemes);
  s->add_option("--workers", sa.workers, std::string("Worker threads, 0 = all cores (env ") + kWorkersEnv + ")")
      ->capture_default_str();
  s->add_flag("--trace", sa.trace, "Include the per-shot measurement trace");
  s->add_flag("--timing", sa.timing, "Include wall-clock timings (output is then not reproducible)");
  s->add_option("--format", sa.format, "Output format")->capture_default_str()->check(formats);
  s->add_option("-o,--output", sa.output, "Output file (default stdout)");
  s->callback([&] {
    if (sa.shots == 0) {
      throw CLI::ValidationError("--shots", "must be positive");
    }
    action = [&] { cmd_sample(sa, out); };
  });

  HybridArgs ha;
  CLI::App* h = app.add_subcommand("hybrid", "Estimate output probabilities with k virtual magic qubits");
  h->add_option("circuit", ha.input, "Circuit file")->required();
  h->add_option("--k", ha.k, "Virtual qubits")->capture_default_str();
  h->add_option("--epsilon", ha.epsilon, "Additive error")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  h->add_option("--p-fail", ha.p_fail, "Failure probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  h->add_option("--qubit", ha.qubit, "Only estimate the output of this qubit");
  h->add_option("--seed", ha.seed, "Random seed")->capture_default_str();
  h->add_option("--backend", ha.backend, "Measurement backend")->capture_default_str()->check(backends);
  h->add_option("--workers", ha.workers, "Worker threads, 0 = all cores")->capture_default_str();
  h->add_flag("--timing", ha.timing, "Include wall-clock timings");
  h->add_option("--format", ha.format, "Output format")->capture_default_str()->check(formats);
  h->add_option("-o,--output", ha.output, "Output file (default stdout)");
  h->callback([&] { action = [&] { cmd_hybrid(ha, out); }; });

  GenArgs ga;
  CLI::App* g = app.add_subcommand("gen", "Generate benchmark circuits");
  g->require_subcommand(1);
  CLI::App* gh = g->add_subcommand("hsc", "Hidden-shift circuit");
  gh->add_option("--n", ga.n, "Qubits (even)")->capture_default_str();
  gh->add_option("--nccz", ga.n_ccz, "CCZ gates in the oracle")->capture_default_str();
  gh->add_option("--nzcz", ga.n_zcz, "Z/CZ gates per segment")->capture_default_str();
  gh->add_option("--hidden", ga.hidden, "Hidden bit string (random by default)");
  CLI::App* gr = g->add_subcommand("rqc", "Random grid circuit with an exact T-count");
  gr->add_option("--cols", ga.cols, "Grid columns")->capture_default_str();
  gr->add_option("--rows", ga.rows, "Grid rows")->capture_default_str();
  gr->add_option("--cycles", ga.cycles, "Entangling cycles")->capture_default_str();
  gr->add_option("--t", ga.t, "T-count after simplification")->capture_default_str();
  gr->add_option("--max-retries", ga.max_retries, "Attempts before giving up")->capture_default_str();
  CLI::App* gx = g->add_subcommand("random", "Unstructured random Clifford+T circuit");
  gx->add_option("--n", ga.n, "Qubits")->capture_default_str();
  gx->add_option("--gates", ga.gates, "Clifford gates")->capture_default_str();
  gx->add_option("--t", ga.t, "T gates")->capture_default_str();
  for (CLI::App* sub : {gh, gr, gx}) {
    sub->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
    sub->add_option("-o,--output", ga.output, "Circuit file; the sidecar goes to <file>.json")->required();
  }
  gh->callback([&] { action = [&] { cmd_gen_hsc(ga, out); }; });
  gr->callback([&] { action = [&] { cmd_gen_rqc(ga, out); }; });
  gx->callback([&] { action = [&] { cmd_gen_random(ga, out); }; });

  EmitArgs ea;
  CLI::App* e = app.add_subcommand("emit", "Emit the adaptive circuit for a sequence of Pauli measurements");
  auto* opt_paulis = e->add_option("--paulis", ea.paulis, "File with one signed Pauli per line");
  auto* opt_circuit = e->add_option("--circuit", ea.circuit, "Circuit file; emits the Paulis of one engine shot");
  opt_paulis->excludes(opt_circuit);
  e->add_option("--seed", ea.seed, "Seed of the engine shot")->capture_default_str();
  e->add_option("--backend", ea.backend, "Backend of the engine shot")->capture_default_str()->check(backends);
  e->add_option("--scheme", ea.scheme, "Emission scheme")->capture_default_str()->check(schemes);
  e->add_option("-o,--output", ea.output, "Circuit file; the sidecar goes to <file>.json");
  e->callback([&] {
    if (ea.paulis.empty() && ea.circuit.empty()) {
      throw CLI::RequiredError("--paulis or --circuit");
    }
    action = [&] { cmd_emit(ea, out); };
  });

  BoundsArgs ba;
  CLI::App* b = app.add_subcommand("bounds", "Resource bounds, advantage boundary and sampling budgets");
  b->add_option("--t", ba.t, "T-counts for the compiled-circuit bounds");
  b->add_option("--cycles", ba.cycles, "Cycle counts for the advantage boundary");
  b->add_option("--k", ba.k, "Virtual-qubit counts for the sampling budget");
  b->add_option("--epsilon", ba.epsilon, "Additive error for --k")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  b->add_option("--p-fail", ba.p_fail, "Failure probability for --k")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  b->add_option("--format", ba.format, "Output format")->capture_default_str()->check(formats);
  b->add_option("-o,--output", ba.output, "Output file (default stdout)");
  b->callback([&] { action = [&] { cmd_bounds(ba, out); }; });

  MetricsArgs ma;
  CLI::App* m = app.add_subcommand("metrics", "Gate counts and depth of a circuit file");
  m->add_option("circuit", ma.input, "Circuit file")->required();
  m->add_option("--format", ma.format, "Output format")->capture_default_str()->check(formats);
  m->callback([&] { action = [&] { cmd_metrics(ma, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    action();
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const CapacityError& ex) {
    err << "error: " << ex.what() << '\n';
    return kCapacity;
  } catch (const RetriesExhausted& ex) {
    err << "error: " << ex.what() << '\n';
    return kInput;
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& ex) {  // includes ParseError
    err << "error: " << ex.what() << '\n';
    return kInput;
  } catch (const std::out_of_range& ex) {
    err << "error: " << ex.what() << '\n';
    return kInput;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace pbc::cli
