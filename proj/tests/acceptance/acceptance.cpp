// Copyright 2026 The qtrojan Authors
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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtrojan/cli.hpp"
#include "qtrojan/qtrojan.hpp"
#include "support/test_support.hpp"

using namespace qtrojan;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSeedsPerFixture = 20;

struct Fixture {
  std::string name;
  Circuit circuit;
  std::size_t gate_limit;
  bool bench;  // listed in the bench manifest
};

std::vector<Fixture> load_fixtures() {
  std::vector<Fixture> out;
  for (const BenchEntry& e : load_bench_inputs(qtrojan::testing::bench_dir(), 3)) {
    out.push_back({e.name(), read_qasm_file(e.file), e.gate_limit, true});
  }
  for (const auto& p : qtrojan::testing::all_fixture_files()) {
    if (p.parent_path() == qtrojan::testing::special_dir()) {
      out.push_back({p.stem().string(), read_qasm_file(p), 3, false});
    }
  }
  return out;
}

TrojanConfig config_for(const Fixture& f, std::size_t i) {
  TrojanConfig c;
  c.gate_limit = f.gate_limit;
  c.seed = derive_seed(stable_hash(f.name), i);
  return c;
}

// Insertion, or nothing when the fixture has no switch slot by design.
std::optional<std::pair<Circuit, TrojanReport>> try_insert(const Fixture& f, std::size_t i) {
  try {
    return insert_trojan(f.circuit, config_for(f, i));
  } catch (const TrojanError& e) {
    if (e.code() == TrojanError::Code::NoSwitchSlot) return std::nullopt;
    throw;
  }
}

double exact_tvd(const Circuit& a, const Circuit& b) {
  return tvd(ideal_distribution(a), ideal_distribution(b));
}

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

class Runner {
 public:
  void run(int id, const std::string& title, double time_limit_s,
           const std::function<Check()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = body();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && secs >= time_limit_s) {
      c.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(time_limit_s));
    }
    std::printf("%s %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    std::fflush(stdout);
    failures_ += c.ok ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OutcomeDistribution random_counts(std::mt19937_64& rng, std::size_t width,
                                  std::uint64_t shots) {
  std::map<std::string, std::uint64_t> counts;
  // Skewed draws so some pairs share little support.
  const std::uint64_t span = 1 + rng() % (std::uint64_t{1} << width);
  const std::uint64_t offset = rng() % (std::uint64_t{1} << width);
  for (std::uint64_t i = 0; i < shots; ++i) {
    const std::uint64_t k = (offset + rng() % span) % (std::uint64_t{1} << width);
    ++counts[outcome_key_from_bits(k, width)];
  }
  return OutcomeDistribution(std::move(counts), shots);
}

}  // namespace

int main() {
  const std::vector<Fixture> fixtures = load_fixtures();
  Runner runner;

  runner.run(1, "depth preserved over 20 seeded insertions per fixture", 5.0, [&] {
    Check c;
    std::size_t runs = 0;
    for (const auto& f : fixtures) {
      const std::size_t d = depth(f.circuit);
      for (std::size_t i = 0; i < kSeedsPerFixture; ++i) {
        const auto r = try_insert(f, i);
        if (!r) continue;
        ++runs;
        if (depth(r->first) != d) {
          c.fail(f.name + " seed " + std::to_string(i) + ": depth " + std::to_string(d) +
                 " -> " + std::to_string(depth(r->first)));
        }
        if (depth(set_activation(r->first, r->second, false)) != d) {
          c.fail(f.name + ": deactivated depth changed");
        }
      }
    }
    if (c.ok) c.detail = std::to_string(runs) + " insertions";
    return c;
  });

  runner.run(2, "gate overhead 2..6 per insertion, suite mean increase 10-30%", 5.0, [&] {
    Check c;
    double pct_sum = 0.0;
    std::size_t circuits = 0;
    for (const auto& f : fixtures) {
      if (!f.bench) continue;
      double added_sum = 0.0;
      for (std::size_t i = 0; i < kSeedsPerFixture; ++i) {
        const auto r = insert_trojan(f.circuit, config_for(f, i));
        const std::size_t added = r.second.gates_added;
        if (added < 2 || added > 6) {
          c.fail(f.name + " seed " + std::to_string(i) + " added " + std::to_string(added));
        }
        if (gate_count(r.first) != gate_count(f.circuit) + added) {
          c.fail(f.name + ": gates_added disagrees with the circuit");
        }
        added_sum += static_cast<double>(added);
      }
      pct_sum += added_sum / kSeedsPerFixture / static_cast<double>(gate_count(f.circuit)) * 100;
      ++circuits;
    }
    const double mean = circuits ? pct_sum / static_cast<double>(circuits) : 0.0;
    if (mean < 10.0 || mean > 30.0) c.fail("suite mean increase " + format_number(mean) + "%");
    if (c.ok) c.detail = "suite mean increase " + format_number(mean) + "%";
    return c;
  });

  runner.run(3, "deactivated circuit matches original (exact TVD <= 1e-10)", 10.0, [&] {
    Check c;
    for (const auto& f : fixtures) {
      for (std::size_t i = 0; i < kSeedsPerFixture; ++i) {
        const auto r = try_insert(f, i);
        if (!r) continue;
        const double d = exact_tvd(f.circuit, set_activation(r->first, r->second, false));
        if (d > 1e-10) c.fail(f.name + " seed " + std::to_string(i) + " tvd " + format_number(d));
      }
    }
    return c;
  });

  runner.run(4, "activated circuit disrupts output when a payload reaches a measurement",
             10.0, [&] {
    Check c;
    std::size_t checked = 0, strong = 0;
    for (const auto& f : fixtures) {
      const auto& measured = f.circuit.measured_qubits();
      for (std::size_t i = 0; i < kSeedsPerFixture; ++i) {
        const auto r = try_insert(f, i);
        if (!r) continue;
        const Circuit& act = r->first;
        bool reaches = false;
        for (std::size_t g = 0; g < act.gates().size(); ++g) {
          if (act.gates()[g].role() != GateRole::TrojanPayload) continue;
          const auto cone = causal_cone(act, act.gates()[g].target(), g + 1);
          for (Qubit m : measured) reaches |= cone.count(m) > 0;
        }
        if (!reaches) continue;
        ++checked;
        const double d = exact_tvd(f.circuit, act);
        const std::string where = f.name + " seed " + std::to_string(i);
        if (!(d > 0.0)) c.fail(where + ": tvd 0");
        if (measured.size() > 1 && r->second.payloads.size() >= 3) {
          ++strong;
          if (d < 0.5) c.fail(where + ": tvd " + format_number(d) + " < 0.5");
        }
      }
    }
    if (checked == 0) c.fail("no insertion reached a measured qubit");
    if (c.ok) {
      c.detail = std::to_string(checked) + " insertions, " + std::to_string(strong) +
                 " multi-bit with >=3 payloads";
    }
    return c;
  });

  runner.run(5, "tvd matches brute force; equal-shots rational identity", 0.0, [&] {
    Check c;
    std::mt19937_64 rng(2025);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t w = 1 + rng() % 6;
      const auto a = random_counts(rng, w, 1 + rng() % 2000);
      const auto b = random_counts(rng, w, 1 + rng() % 2000);
      const auto pa = a.probabilities(), pb = b.probabilities();
      double brute = 0.0;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << w); ++k) {
        const std::string key = outcome_key_from_bits(k, w);
        brute += std::abs((pa.count(key) ? pa.at(key) : 0.0) - (pb.count(key) ? pb.at(key) : 0.0));
      }
      brute /= 2.0;
      if (std::abs(tvd(a, b) - brute) > 1e-12) c.fail("pair " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
      const std::size_t w = 1 + rng() % 6;
      const std::uint64_t n = 1 + rng() % 5000;
      const auto a = random_counts(rng, w, n);
      const auto b = random_counts(rng, w, n);
      // sum |y_a - y_b| / (2N), reduced.
      std::uint64_t num = 0;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << w); ++k) {
        const std::string key = outcome_key_from_bits(k, w);
        const std::uint64_t ya = a.count(key), yb = b.count(key);
        num += ya > yb ? ya - yb : yb - ya;
      }
      std::uint64_t den = 2 * n;
      const std::uint64_t g = std::gcd(num, den);
      if (g) num /= g, den /= g;
      if (!(tvd_exact(a, b) == Rational{num, den})) c.fail("rational pair " + std::to_string(i));
    }
    return c;
  });

  runner.run(6, "ideal distribution matches dense-matrix oracle (<= 1e-10)", 30.0, [&] {
    Check c;
    auto compare = [&](const Circuit& circ, const std::string& what) {
      const auto got = ideal_distribution(circ);
      const auto want = qtrojan::testing::dense_distribution(circ);
      for (const auto& [k, p] : want) {
        const double g = got.count(k) ? got.at(k) : 0.0;
        if (std::abs(g - p) > 1e-10) c.fail(what + " outcome " + k);
      }
      for (const auto& [k, p] : got) {
        if (!want.count(k)) c.fail(what + " extra outcome " + k);
      }
    };
    std::size_t small = 0;
    for (const auto& f : fixtures) {
      if (f.circuit.num_qubits() > 4) continue;
      ++small;
      compare(f.circuit, f.name);
    }
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
      compare(qtrojan::testing::random_circuit(rng, 3, rng() % 25, true, true),
              "random #" + std::to_string(i));
    }
    if (c.ok) c.detail = std::to_string(small) + " fixtures, 100 random circuits";
    return c;
  });

  runner.run(7, "noiseless sampling within TVD 0.01 @1e5 and 0.05 @1000 shots", 0.0, [&] {
    Check c;
    double worst_big = 0.0, worst_small = 0.0;
    for (const auto& f : fixtures) {
      const auto ideal = ideal_distribution(f.circuit);
      const std::uint64_t seed = stable_hash(f.name);
      const double big = tvd(ideal, sample(f.circuit, 100000, seed));
      const double small = tvd(ideal, sample(f.circuit, 1000, seed + 1));
      worst_big = std::max(worst_big, big);
      worst_small = std::max(worst_small, small);
      if (big >= 0.01) c.fail(f.name + " @1e5: " + format_number(big));
      if (small >= 0.05) c.fail(f.name + " @1000: " + format_number(small));
    }
    if (c.ok) {
      c.detail = "worst " + format_number(worst_big) + " / " + format_number(worst_small);
    }
    return c;
  });

  runner.run(8, "parse(emit(c)) == c for fixtures and 200 random circuits", 5.0, [&] {
    Check c;
    for (const auto& f : fixtures) {
      if (!(parse_qasm(emit_qasm(f.circuit)) == f.circuit)) c.fail(f.name);
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
      const Circuit r =
          qtrojan::testing::random_circuit(rng, 1 + rng() % 8, rng() % 30, true, true);
      if (!(parse_qasm(emit_qasm(r)) == r)) c.fail("random #" + std::to_string(i));
    }
    return c;
  });

  runner.run(9, "two bench runs produce byte-identical reports", 0.0, [&] {
    Check c;
    const fs::path root = fs::temp_directory_path() / "qtrojan-acceptance";
    fs::remove_all(root);
    std::vector<std::string> reports;
    for (const char* run : {"a", "b"}) {
      for (auto format : {ReportFormat::Csv, ReportFormat::Json}) {
        cli::BenchOptions opt;
        opt.dir = qtrojan::testing::bench_dir();
        opt.out_dir = root / run;
        opt.seed = 7;
        opt.format = format;
        std::ostringstream out, err;
        if (cli::cmd_bench(opt, out, err) != kExitOk) c.fail("bench failed: " + err.str());
      }
      std::string all;
      for (const char* name : {"bench.csv", "tvd.csv", "bench.json"}) {
        all += slurp(root / run / name);
      }
      reports.push_back(all);
    }
    if (reports[0].empty() || reports[0] != reports[1]) c.fail("reports differ");
    fs::remove_all(root);
    return c;
  });

  return runner.failures() == 0 ? 0 : 1;
}
