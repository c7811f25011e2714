// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbs/cbs.h"

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(cbs_status st) {
  if (st != CBS_OK) {
    throw Failure{st == CBS_ERR_INTERNAL ? 3 : 2,
                  std::string(cbs_status_name(st)) + ": " + cbs_last_error()};
  }
}

template <typename Render>
std::string render(Render&& fn) {
  std::size_t needed = 0;
  check(fn(nullptr, 0, &needed));
  std::string out(needed + 1, '\0');
  check(fn(out.data(), out.size(), &needed));
  out.resize(needed);
  return out;
}

struct ScheduleDeleter {
  void operator()(cbs_schedule* s) const { cbs_schedule_destroy(s); }
};
struct TraceDeleter {
  void operator()(cbs_trace* t) const { cbs_trace_destroy(t); }
};
struct SweepDeleter {
  void operator()(cbs_sweep* s) const { cbs_sweep_destroy(s); }
};
using SchedulePtr = std::unique_ptr<cbs_schedule, ScheduleDeleter>;
using TracePtr = std::unique_ptr<cbs_trace, TraceDeleter>;
using SweepPtr = std::unique_ptr<cbs_sweep, SweepDeleter>;

SchedulePtr make_schedule(std::uint64_t n, std::uint64_t m, const std::string& kind,
                          const std::vector<std::uint64_t>& counts) {
  cbs_schedule* raw = nullptr;
  if (kind == "custom") {
    if (counts.empty()) {
      throw Failure{2, "--schedule custom needs --counts"};
    }
    check(cbs_schedule_create_custom(n, m, counts.data(), counts.size(), &raw));
    SchedulePtr sched(raw);
    if (const unsigned bits = cbs_schedule_violations(sched.get()); bits != 0) {
      std::string msg = "invalid custom schedule:";
      if (bits & CBS_VIOLATION_BAD_DIMENSION) msg += " bad-dimension";
      if (bits & CBS_VIOLATION_WRONG_LENGTH) msg += " wrong-length";
      if (bits & CBS_VIOLATION_ZERO_COUNT) msg += " zero-count";
      if (bits & CBS_VIOLATION_BUDGET_EXCEEDED) msg += " budget-exceeded";
      throw Failure{2, msg};
    }
    return sched;
  }
  if (!counts.empty()) {
    throw Failure{2, "--counts is only valid with --schedule custom"};
  }
  check(cbs_schedule_create(n, m, kind == "original" ? CBS_SCHEDULE_ORIGINAL : CBS_SCHEDULE_MODIFIED,
                            &raw));
  return SchedulePtr(raw);
}

cbs_format parse_format(const std::string& f) {
  if (f == "csv") return CBS_FORMAT_CSV;
  if (f == "json") return CBS_FORMAT_JSON;
  return CBS_FORMAT_TEXT;
}

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, p >= 1e-3 || p == 0.0 ? "%.6f" : "%.6e", p);
  return buf;
}

void write_plot_script(const std::string& path, const std::string& csv_path) {
  std::ofstream os(path);
  if (!os) {
    throw Failure{2, "cannot open " + path + " for writing"};
  }
  os << "# gnuplot script for a sweep CSV\n"
     << "set datafile separator ','\n"
     << "set key top right\n"
     << "set xlabel 'mu'\n"
     << "set ylabel 'probability of error'\n"
     << "set logscale y\n"
     << "data = '" << csv_path << "'\n"
     << "plot for [k in 'original modified custom'] \\\n"
     << "  data using (strcol(8) eq k ? $1 : NaN):4:5:6 with yerrorlines title k.' (empirical)', \\\n"
     << "  for [k in 'original modified custom'] \\\n"
     << "  data using (strcol(8) eq k ? $1 : NaN):7 with lines dashtype 2 title k.' (exact)'\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressive binary search laboratory (indices are 0-based)", "cbs"};
  app.require_subcommand(1);

  std::uint64_t n = 4096;
  std::uint64_t m = 256;
  std::string schedule = "modified";
  std::vector<std::uint64_t> counts;
  std::string format = "text";
  double delta = 0.1;
  double mu = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t spike = 0;
  bool noiseless = false;
  bool trace = false;
  std::uint64_t trials = 10000;
  double mu_min = 0.0;
  double mu_max = 25.0;
  std::size_t mu_steps = 26;
  std::vector<double> mu_values;
  unsigned threads = 0;
  std::string out_path;
  std::string plot_script;

  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("--n", n, "signal dimension, a power of two >= 2")->capture_default_str();
    sub->add_option("--m", m, "total measurement budget")->capture_default_str();
  };
  auto add_schedule = [&](CLI::App* sub, std::vector<std::string> kinds) {
    sub->add_option("--schedule", schedule, "measurement allocation")
        ->check(CLI::IsMember(kinds))
        ->capture_default_str();
    sub->add_option("--counts", counts, "per-step counts for --schedule custom")->delimiter(',');
  };

  auto* allocate = app.add_subcommand("allocate", "print a per-step measurement schedule");
  add_dims(allocate);
  add_schedule(allocate, {"original", "modified", "custom"});
  allocate->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));

  auto* bounds = app.add_subcommand("bounds", "mu thresholds for a target error delta");
  add_dims(bounds);
  bounds->add_option("--delta", delta, "target total error, in (0, 1/2]")->capture_default_str();
  bounds->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* run = app.add_subcommand("run", "execute CBS once");
  add_dims(run);
  add_schedule(run, {"original", "modified", "custom"});
  run->add_option("--mu", mu, "spike amplitude")->required();
  run->add_option("--seed", seed, "noise seed")->capture_default_str();
  auto* spike_opt = run->add_option("--spike", spike, "spike index (default: drawn from the seed)");
  run->add_flag("--noiseless", noiseless, "replace every noise sample by zero");
  run->add_flag("--trace", trace, "print the full JSON trace");

  auto* exact = app.add_subcommand("exact", "exact error probability of CBS");
  add_dims(exact);
  add_schedule(exact, {"original", "modified", "custom"});
  exact->add_option("--mu", mu, "spike amplitude")->required();
  exact->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo error curve over a mu grid");
  add_dims(sweep);
  add_schedule(sweep, {"original", "modified", "both", "custom"});
  sweep->add_option("--trials", trials, "trials per mu value")->capture_default_str();
  sweep->add_option("--mu-min", mu_min)->capture_default_str();
  sweep->add_option("--mu-max", mu_max)->capture_default_str();
  sweep->add_option("--mu-steps", mu_steps)->capture_default_str();
  sweep->add_option("--mu-values", mu_values, "explicit mu grid (overrides min/max/steps)")
      ->delimiter(',');
  sweep->add_option("--seed", seed, "master seed")->capture_default_str();
  auto* sweep_spike = sweep->add_option("--spike", spike, "fixed spike index (default: uniform per trial)");
  sweep->add_option("--threads", threads, "worker threads (default: $CBS_THREADS or all cores)");
  sweep->add_option("--out", out_path, "CSV destination (default: stdout)");
  sweep->add_option("--plot-script", plot_script, "also write a gnuplot script here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cbs: usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (allocate->parsed()) {
      auto sched = make_schedule(n, m, schedule, counts);
      std::cout << render([&](char* b, std::size_t c, std::size_t* nd) {
        return cbs_schedule_render(sched.get(), parse_format(format), b, c, nd);
      });
    } else if (bounds->parsed()) {
      cbs_bound_report report{};
      check(cbs_bounds(n, m, delta, &report));
      std::cout << render([&](char* b, std::size_t c, std::size_t* nd) {
        return cbs_bounds_render(&report, parse_format(format), b, c, nd);
      });
    } else if (run->parsed()) {
      auto sched = make_schedule(n, m, schedule, counts);
      if (!*spike_opt) {
        std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
        spike = gen() % n;
      }
      cbs_trace* raw = nullptr;
      check(cbs_run(n, spike, mu, sched.get(), seed, noiseless ? 1 : 0, &raw));
      TracePtr tr(raw);
      if (trace) {
        std::cout << render([&](char* b, std::size_t c, std::size_t* nd) {
          return cbs_trace_render_json(tr.get(), b, c, nd);
        });
      } else {
        std::cout << "spike_index=" << spike
                  << " estimated_index=" << cbs_trace_estimated_index(tr.get())
                  << " success=" << (cbs_trace_success(tr.get()) ? "true" : "false")
                  << " draws=" << cbs_trace_draws(tr.get()) << '\n';
      }
    } else if (exact->parsed()) {
      auto sched = make_schedule(n, m, schedule, counts);
      double p = 0.0;
      double bound = 0.0;
      check(cbs_exact_error_probability(n, mu, sched.get(), &p));
      check(cbs_union_bound_error(n, mu, sched.get(), &bound));
      if (format == "json") {
        std::printf("{\"n\": %llu, \"m\": %llu, \"mu\": %.17g, \"p_exact\": %.17g, \"union_bound\": %.17g}\n",
                    static_cast<unsigned long long>(n), static_cast<unsigned long long>(m), mu, p,
                    bound);
      } else {
        std::cout << format_probability(p) << '\n';
      }
    } else if (sweep->parsed()) {
      const std::vector<double> grid = [&] {
        if (!mu_values.empty()) return mu_values;
        if (mu_steps < 1 || !(mu_max >= mu_min)) {
          throw Failure{2, "need --mu-steps >= 1 and --mu-max >= --mu-min"};
        }
        std::vector<double> g(mu_steps);
        for (std::size_t i = 0; i < mu_steps; ++i) {
          g[i] = mu_steps == 1 ? mu_min
                               : mu_min + (mu_max - mu_min) * static_cast<double>(i) /
                                              static_cast<double>(mu_steps - 1);
        }
        return g;
      }();
      std::vector<std::string> kinds;
      if (schedule == "both") {
        kinds = {"original", "modified"};
      } else {
        kinds = {schedule};
      }
      std::vector<SchedulePtr> scheds;
      for (const auto& k : kinds) {
        scheds.push_back(make_schedule(n, m, k, counts));
      }

      std::string csv = std::string(cbs_sweep_csv_header()) + "\n";
      std::size_t rows = 0;
      std::size_t outside = 0;
      for (const auto& sched : scheds) {
        cbs_sweep_config cfg{};
        cfg.schedule = sched.get();
        cfg.mu_values = grid.data();
        cfg.mu_count = grid.size();
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.fixed_spike = *sweep_spike ? 1 : 0;
        cfg.spike_index = spike;
        cfg.threads = threads;
        cbs_sweep* raw = nullptr;
        check(cbs_sweep_run(&cfg, &raw));
        SweepPtr result(raw);
        csv += render([&](char* b, std::size_t c, std::size_t* nd) {
          return cbs_sweep_render_csv(result.get(), 0, b, c, nd);
        });
        for (std::size_t i = 0; i < cbs_sweep_point_count(result.get()); ++i) {
          cbs_curve_point pt{};
          check(cbs_sweep_point(result.get(), i, &pt));
          ++rows;
          if (!pt.within_envelope) ++outside;
        }
      }
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os || !(os << csv)) {
          throw Failure{2, "cannot write " + out_path};
        }
      }
      if (!plot_script.empty()) {
        write_plot_script(plot_script, out_path.empty() ? "sweep.csv" : out_path);
      }
      std::cerr << "sweep: " << rows << " rows, " << trials << " trials each, " << outside
                << " outside the 99.7% binomial envelope of the exact oracle\n";
    }
  } catch (const Failure& f) {
    std::cerr << "cbs: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
