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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracle/dense.hpp"
#include "pbc/pbc.hpp"

namespace {

constexpr std::size_t kHscShots = 1024;
constexpr std::size_t kOracleCircuits = 30;
constexpr std::size_t kOracleShots = 20000;
constexpr double kMaxTvd = 0.05;
constexpr double kResourceSlack = 0.20;
constexpr double kCnotReference = 57.0;
constexpr double kDepthReference = 113.0;
constexpr double kHybridEpsilon = 0.1;
constexpr double kHybridPFail = 0.01;
constexpr double kExactTol = 1e-10;
constexpr std::size_t kSchemeSequences = 20;
constexpr double kBranchTol = 1e-9;
constexpr double kBoundaryTol = 1e-4;
constexpr double kSecondsPerShot = 5.0;
constexpr std::size_t kSmokeShots = 5;

using Clock = std::chrono::steady_clock;

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d %s: %s (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Aux-emitted metrics of every shot, checked against the bounds as they are
// collected.
struct ResourceLog {
  std::size_t circuits = 0;
  std::size_t violations = 0;
  std::string first_violation;
  std::vector<double> hsc_cnot;
  std::vector<double> hsc_depth;

  void add(const pbc::ShotResult& shot, std::size_t t, bool hsc) {
    std::vector<pbc::PauliOperator> paulis;
    for (const auto& m : shot.quantum_measurements) {
      paulis.push_back(m.pauli);
    }
    pbc::EmittedProgram prog = pbc::emit(paulis, pbc::AuxQubit{}, t);
    pbc::CircuitMetrics m = pbc::metrics(prog.circuit);
    ++circuits;
    if (t > 0) {
      pbc::ResourceBounds b = pbc::resource_bounds(t);
      if (m.count_1q > b.n_hs_ub || m.count_cnot > b.n_cnot_ub || m.depth > b.depth_ub) {
        if (violations++ == 0) {
          first_violation = "t=" + std::to_string(t) + " 1q=" + std::to_string(m.count_1q) +
                            " cnot=" + std::to_string(m.count_cnot) + " depth=" + std::to_string(m.depth);
        }
      }
    }
    if (hsc) {
      hsc_cnot.push_back(static_cast<double>(m.count_cnot));
      hsc_depth.push_back(static_cast<double>(m.depth));
    }
  }
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) {
    s += x;
  }
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void hidden_shift_determinism(Report& rep, ResourceLog& log) {
  auto start = Clock::now();
  std::size_t bad = 0;
  std::size_t total = 0;
  std::string detail;
  for (std::size_t n : {6u, 8u, 10u}) {
    pbc::HscSpec spec;
    spec.n = n;
    spec.n_ccz = 1;
    spec.seed = 1000 + n;
    pbc::HscCircuit h = pbc::gen_hsc(spec);
    pbc::GadgetizedCircuit gc = pbc::gadgetize(h.circuit);
    pbc::SampleOptions opt;
    opt.shots = kHscShots;
    opt.seed = 77 + n;
    opt.workers = workers();
    opt.keep_trace = false;
    pbc::SampleResult r = pbc::sample(gc, opt, pbc::BackendKind::Statevector);
    for (const pbc::ShotResult& shot : r.results) {
      bad += shot.output_bits != h.hidden ? 1 : 0;
      ++total;
      log.add(shot, gc.t, true);
    }
    detail += "n=" + std::to_string(n) + " t=" + std::to_string(gc.t) + " s=" + pbc::bits_to_string(h.hidden) + "; ";
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  rep.line(1, bad == 0, "hidden-shift circuits return the hidden string on every shot",
           detail + std::to_string(total - bad) + "/" + std::to_string(total) + " shots correct, " +
               fmt("%.1f s", secs));
}

void oracle_equivalence(Report& rep, ResourceLog& log) {
  auto start = Clock::now();
  double worst = 0.0;
  std::size_t worst_index = 0;
  std::mt19937_64 shape(4242);
  for (std::size_t i = 0; i < kOracleCircuits; ++i) {
    const std::size_t n = 1 + shape() % 6;
    const std::size_t t = 1 + shape() % 6;
    pbc::Circuit c = pbc::random_clifford_t(n, 4 * n + 6, t, 9000 + i);
    pbc::GadgetizedCircuit gc = pbc::gadgetize(c);
    pbc::SampleOptions opt;
    opt.shots = kOracleShots;
    opt.seed = 31 + i;
    opt.workers = workers();
    opt.keep_trace = false;
    pbc::SampleResult r = pbc::sample(gc, opt, pbc::BackendKind::Statevector);
    std::map<std::string, double> empirical;
    for (const auto& [k, v] : r.histogram) {
      empirical[k] = static_cast<double>(v) / static_cast<double>(kOracleShots);
    }
    double d = oracle::tvd(empirical, oracle::born_distribution(c, gc.output_cbits));
    if (d > worst) {
      worst = d;
      worst_index = i;
    }
    for (const pbc::ShotResult& shot : r.results) {
      log.add(shot, gc.t, false);
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  rep.line(2, worst <= kMaxTvd, "engine histograms match dense Born distributions",
           std::to_string(kOracleCircuits) + " circuits, worst TVD " + fmt("%.4f", worst) + " (circuit " +
               std::to_string(worst_index) + "), limit " + fmt("%.2f", kMaxTvd) + ", " + fmt("%.1f s", secs));
}

void resource_bounds(Report& rep, const ResourceLog& log) {
  pbc::ResourceBounds b = pbc::resource_bounds(14);
  bool exact = b.n_hs_ub == 784 && b.n_cnot_ub == 196 && b.depth_ub == 265;
  std::string detail = std::to_string(log.circuits) + " emitted circuits, " + std::to_string(log.violations) +
                       " violations" + (log.violations ? " (first: " + log.first_violation + ")" : "") +
                       "; bounds(14) = (" + std::to_string(b.n_hs_ub) + ", " + std::to_string(b.n_cnot_ub) + ", " +
                       std::to_string(b.depth_ub) + ")";
  rep.line(3, exact && log.violations == 0 && log.circuits > 0, "aux-emitted circuits respect the resource bounds",
           detail);
}

void hsc_resources(Report& rep, const ResourceLog& log) {
  double cnot = mean(log.hsc_cnot);
  double depth = mean(log.hsc_depth);
  bool ok = !log.hsc_cnot.empty() && std::abs(cnot - kCnotReference) <= kResourceSlack * kCnotReference &&
            std::abs(depth - kDepthReference) <= kResourceSlack * kDepthReference;
  rep.line(4, ok, "t=14 hidden-shift compiled CNOT count and depth",
           "mean CNOT " + fmt("%.2f", cnot) + " vs 57, mean depth " + fmt("%.2f", depth) + " vs 113, slack " +
               fmt("%.0f%%", 100 * kResourceSlack) + ", " + std::to_string(log.hsc_cnot.size()) + " circuits");
}

void sample_budgets(Report& rep) {
  const std::size_t coarse[] = {530, 1060, 2120, 4239};
  const std::size_t fine[] = {52984, 105967, 211933, 423866};
  bool ok = true;
  std::string got;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::size_t a = pbc::plan(k, 0.1, 0.01).n;
    std::size_t b = pbc::plan(k, 0.01, 0.01).n;
    ok = ok && a == coarse[k - 1] && b == fine[k - 1];
    got += std::to_string(a) + "/" + std::to_string(b) + (k < 4 ? " " : "");
  }
  rep.line(5, ok, "sample budgets for k=1..4 at eps=0.1 and 0.01", got);
}

void hybrid_correctness(Report& rep) {
  auto start = Clock::now();
  pbc::HscSpec spec;
  spec.n = 10;
  spec.n_ccz = 1;
  spec.seed = 2010;
  pbc::HscCircuit h = pbc::gen_hsc(spec);
  pbc::GadgetizedCircuit gc = pbc::gadgetize(h.circuit);
  double worst = 0.0;
  std::size_t good = 0;
  std::size_t total = 0;
  std::string per_k;
  for (std::size_t k = 1; k <= 3; ++k) {
    double worst_k = 0.0;
    for (std::size_t q = 0; q < gc.output_cbits.size(); ++q) {
      pbc::EstimateOptions opt;
      opt.k = k;
      opt.epsilon = kHybridEpsilon;
      opt.p_fail = kHybridPFail;
      opt.seed = 500 * k + q;
      opt.workers = workers();
      pbc::Estimate e = pbc::estimate(gc, q, opt, pbc::BackendKind::Statevector);
      double err = std::abs(e.p_hat - static_cast<double>(h.hidden[q]));
      worst_k = std::max(worst_k, err);
      good += err <= kHybridEpsilon ? 1 : 0;
      ++total;
    }
    worst = std::max(worst, worst_k);
    per_k += "k=" + std::to_string(k) + " max err " + fmt("%.4f", worst_k) + "; ";
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  rep.line(6, good == total, "hybrid estimates of a 10-qubit hidden-shift circuit",
           per_k + std::to_string(good) + "/" + std::to_string(total) + " within " + fmt("%.1f", kHybridEpsilon) +
               ", t=" + std::to_string(gc.t) + ", " + fmt("%.1f s", secs));
}

double p_one(const pbc::GadgetizedCircuit& gc, std::size_t out, const std::vector<pbc::PauliOperator>& gens) {
  std::vector<std::array<oracle::cd, 2>> kets = oracle::input_kets(gc.circuit);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    kets[gc.n_main + j] = oracle::eigenket(gens[j].pauli_at(0), gens[j].is_negative());
  }
  double p = 0.0;
  for (const oracle::Branch& b : oracle::branches(gc.circuit, oracle::product_state(kets))) {
    if (b.cbits[gc.output_cbits[out]]) {
      p += b.prob;
    }
  }
  return p;
}

void unbiasedness(Report& rep) {
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    pbc::Circuit c = pbc::random_clifford_t(3, 18, 3, 7100 + seed);
    pbc::GadgetizedCircuit gc = pbc::gadgetize(c);
    std::map<std::string, double> born = oracle::born_distribution(c, gc.output_cbits);
    pbc::Decomposition d = pbc::tensor_terms(1);
    for (std::size_t out = 0; out < gc.output_cbits.size(); ++out) {
      double truth = 0.0;
      for (const auto& [key, p] : born) {
        truth += key[out] == '1' ? p : 0.0;
      }
      double expect = 0.0;
      for (const auto& term : d.terms) {
        double pi = std::abs(term.coefficient) / d.l1_norm;
        double p1 = p_one(gc, out, term.generators);
        bool neg = term.coefficient < 0;
        expect += pi * ((1 - p1) * pbc::eta(neg, false, d.l1_norm) + p1 * pbc::eta(neg, true, d.l1_norm));
      }
      worst = std::max(worst, std::abs(expect - truth));
      ++checks;
    }
  }
  rep.line(7, worst <= kExactTol, "closed-form estimator expectation equals the exact probability (k=1, t=3)",
           std::to_string(checks) + " outputs, max deviation " + fmt("%.2e", worst));
}

struct ProjectorBranch {
  double prob;
  oracle::State state;
};

std::map<std::string, double> projector_distribution(const std::vector<pbc::PauliOperator>& paulis, std::size_t t) {
  std::map<std::string, ProjectorBranch> live;
  live[""] = {1.0, oracle::product_state(std::vector<std::array<oracle::cd, 2>>(t, oracle::ket_magic()))};
  for (const pbc::PauliOperator& p : paulis) {
    oracle::Matrix m = oracle::pauli_matrix(p);
    std::map<std::string, ProjectorBranch> next;
    for (const auto& [key, b] : live) {
      oracle::State pb = oracle::apply_matrix(m, b.state);
      for (int outcome = 0; outcome < 2; ++outcome) {
        oracle::State s(b.state.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
          s[j] = 0.5 * (outcome ? b.state[j] - pb[j] : b.state[j] + pb[j]);
        }
        double pr = oracle::norm2(s);
        if (pr < 1e-14) {
          continue;
        }
        for (auto& a : s) {
          a /= std::sqrt(pr);
        }
        next[key + (outcome ? '1' : '0')] = {b.prob * pr, std::move(s)};
      }
    }
    live = std::move(next);
  }
  std::map<std::string, double> out;
  for (const auto& [k, b] : live) {
    out[k] = b.prob;
  }
  return out;
}

std::map<std::string, double> emitted_distribution(const pbc::EmittedProgram& prog) {
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& r : prog.records) {
    groups.push_back(r.cbits);
  }
  oracle::State init = oracle::product_state(oracle::input_kets(prog.circuit));
  std::map<std::string, double> out;
  for (const auto& [key, p] : oracle::parity_distribution(prog.circuit, init, groups)) {
    std::string k = key;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (prog.records[i].sign_flip) {
        k[i] = k[i] == '0' ? '1' : '0';
      }
    }
    out[k] += p;
  }
  return out;
}

pbc::PauliOperator random_hermitian(std::mt19937_64& rng, std::size_t n) {
  pbc::PauliOperator p(n);
  while (p.is_identity()) {
    for (std::size_t q = 0; q < n; ++q) {
      p.set_pauli(q, "IXYZ"[rng() % 4]);
    }
  }
  if (rng() & 1) {
    p.negate();
  }
  return p;
}

void scheme_equivalence(Report& rep) {
  const std::vector<pbc::EmitScheme> schemes = {
      pbc::AuxQubit{},
      pbc::CnotCascade{false},
      pbc::CnotCascade{true},
      pbc::GhzFanout{pbc::GhzPrep::Tree},
      pbc::GhzFanout{pbc::GhzPrep::ConstDepth},
  };
  std::mt19937_64 rng(8080);
  double worst = 0.0;
  std::string worst_at = "-";
  for (std::size_t seq = 0; seq < kSchemeSequences; ++seq) {
    const std::size_t t = 1 + seq % 5;
    const std::size_t count = 1 + rng() % t;
    std::vector<pbc::PauliOperator> paulis;
    while (paulis.size() < count) {
      pbc::PauliOperator p = random_hermitian(rng, t);
      bool ok = true;
      for (const pbc::PauliOperator& q : paulis) {
        ok = ok && pbc::commutes(p, q);
      }
      if (ok) {
        paulis.push_back(p);
      }
    }
    std::map<std::string, double> want = projector_distribution(paulis, t);
    for (const pbc::EmitScheme& scheme : schemes) {
      std::map<std::string, double> got = emitted_distribution(pbc::emit(paulis, scheme));
      std::map<std::string, double> keys = want;
      keys.insert(got.begin(), got.end());
      for (const auto& [key, unused] : keys) {
        double a = want.count(key) ? want.at(key) : 0.0;
        double b = got.count(key) ? got.at(key) : 0.0;
        if (std::abs(a - b) > worst) {
          worst = std::abs(a - b);
          worst_at = pbc::scheme_name(scheme) + " sequence " + std::to_string(seq);
        }
      }
    }
  }
  rep.line(8, worst <= kBranchTol, "all emission schemes reproduce the projector outcome distribution",
           std::to_string(kSchemeSequences) + " sequences x " + std::to_string(schemes.size()) +
               " schemes, max branch deviation " + fmt("%.2e", worst) + " at " + worst_at);
}

void boundary(Report& rep) {
  double a = pbc::boundary_lower_bound(22);
  double b = pbc::boundary_lower_bound(40);
  bool ok = std::abs(a - 3.0902) <= kBoundaryTol && std::abs(b - 4.5178) <= kBoundaryTol && a < 7 && b < 7;
  rep.line(9, ok, "advantage boundary lower bound", "22 cycles -> " + fmt("%.6f", a) + ", 40 cycles -> " +
                                                          fmt("%.6f", b) + ", both below the crossover at 7");
}

void scalability(Report& rep) {
  pbc::HscSpec spec;
  spec.n = 42;
  spec.n_ccz = 3;
  spec.seed = 4242;
  pbc::HscCircuit h = pbc::gen_hsc(spec);
  pbc::GadgetizedCircuit gc = pbc::gadgetize(h.circuit);
  pbc::ResourceBounds b = pbc::resource_bounds(gc.t);
  double slowest = 0.0;
  bool within = true;
  std::size_t max_cnot = 0;
  std::size_t max_depth = 0;
  std::size_t max_1q = 0;
  for (std::size_t i = 0; i < kSmokeShots; ++i) {
    auto start = Clock::now();
    pbc::Rng rng = pbc::substream(99, i);
    auto backend = pbc::make_backend(pbc::BackendKind::Dummy, gc.t);
    pbc::ShotResult shot = pbc::run_shot(gc, {}, *backend, rng, false);
    std::vector<pbc::PauliOperator> paulis;
    for (const auto& m : shot.quantum_measurements) {
      paulis.push_back(m.pauli);
    }
    pbc::CircuitMetrics m = pbc::metrics(pbc::emit(paulis, pbc::AuxQubit{}, gc.t).circuit);
    slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - start).count());
    within = within && m.count_1q <= b.n_hs_ub && m.count_cnot <= b.n_cnot_ub && m.depth <= b.depth_ub &&
             shot.stats.num_quantum_measurements <= gc.t;
    max_cnot = std::max(max_cnot, m.count_cnot);
    max_depth = std::max(max_depth, m.depth);
    max_1q = std::max(max_1q, m.count_1q);
  }
  bool ok = gc.n_main == 42 && gc.t == 42 && slowest < kSecondsPerShot && within;
  rep.line(10, ok, "n=t=42 hidden-shift compilation on the dummy backend",
           "n=" + std::to_string(gc.n_main) + " t=" + std::to_string(gc.t) + ", slowest shot " +
               fmt("%.3f s", slowest) + " (limit 5 s), max 1q/cnot/depth " + std::to_string(max_1q) + "/" +
               std::to_string(max_cnot) + "/" + std::to_string(max_depth) + " vs " + std::to_string(b.n_hs_ub) +
               "/" + std::to_string(b.n_cnot_ub) + "/" + std::to_string(b.depth_ub));
}

}  // namespace

int main() {
  Report rep;
  ResourceLog log;
  hidden_shift_determinism(rep, log);
  oracle_equivalence(rep, log);
  resource_bounds(rep, log);
  hsc_resources(rep, log);
  sample_budgets(rep);
  hybrid_correctness(rep);
  unbiasedness(rep);
  scheme_equivalence(rep);
  boundary(rep);
  scalability(rep);
  std::printf("%d of 10 criteria failed\n", rep.failures);
  return rep.failures == 0 ? 0 : 1;
}
