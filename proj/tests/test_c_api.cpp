// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library strictly through cbs/cbs.h.

#include <cmath>
#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "cbs/cbs.h"

namespace {

std::string render_schedule(const cbs_schedule* s, cbs_format f) {
  size_t needed = 0;
  REQUIRE(cbs_schedule_render(s, f, nullptr, 0, &needed) == CBS_OK);
  std::string out(needed + 1, '\0');
  REQUIRE(cbs_schedule_render(s, f, out.data(), out.size(), &needed) == CBS_OK);
  out.resize(needed);
  return out;
}

}  // namespace

TEST_CASE("schedule handles") {
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create(4096, 256, CBS_SCHEDULE_MODIFIED, &s) == CBS_OK);
  CHECK(cbs_schedule_get_kind(s) == CBS_SCHEDULE_MODIFIED);
  CHECK(cbs_schedule_length(s) == 12);
  CHECK(cbs_schedule_total(s) == 251);
  CHECK(cbs_schedule_count(s, 3) == 46);
  CHECK(cbs_schedule_count(s, 0) == 0);
  CHECK(cbs_schedule_count(s, 13) == 0);
  CHECK(cbs_schedule_violations(s) == 0);
  CHECK(render_schedule(s, CBS_FORMAT_JSON) == "[62,62,46,31,20,12,7,4,3,2,1,1]\n");
  CHECK(render_schedule(s, CBS_FORMAT_CSV).rfind("s,m_s\n1,62\n2,62\n3,46\n", 0) == 0);
  cbs_schedule_destroy(s);
}

TEST_CASE("status codes and last error") {
  cbs_schedule* s = nullptr;
  CHECK(cbs_schedule_create(10, 50, CBS_SCHEDULE_ORIGINAL, &s) == CBS_ERR_ARGUMENT);
  CHECK(std::string(cbs_last_error()).find("power of two") != std::string::npos);
  CHECK(s == nullptr);
  CHECK(cbs_schedule_create(4096, 5, CBS_SCHEDULE_ORIGINAL, &s) == CBS_ERR_INFEASIBLE_BUDGET);
  CHECK(cbs_schedule_create(4096, 256, CBS_SCHEDULE_CUSTOM, &s) == CBS_ERR_ARGUMENT);
  CHECK(cbs_schedule_create(4096, 256, CBS_SCHEDULE_ORIGINAL, nullptr) == CBS_ERR_ARGUMENT);
  double x = 0;
  CHECK(cbs_mu_threshold_modified(4096, 256, 0.6, &x) == CBS_ERR_ARGUMENT);
  CHECK(cbs_mu_threshold_modified(4096, 256, 0.5, &x) == CBS_OK);
  CHECK(std::string(cbs_last_error()).empty());
  CHECK(std::string(cbs_status_name(CBS_ERR_BUFFER)) == "buffer too small");
}

TEST_CASE("custom schedules and violations") {
  const uint64_t counts[] = {1, 1};
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create_custom(4, 1, counts, 2, &s) == CBS_OK);
  CHECK(cbs_schedule_violations(s) == CBS_VIOLATION_BUDGET_EXCEEDED);
  double p = 0;
  CHECK(cbs_exact_error_probability(4, 1.0, s, &p) == CBS_ERR_ARGUMENT);
  cbs_schedule_destroy(s);

  REQUIRE(cbs_schedule_create_custom(4, 8, counts, 1, &s) == CBS_OK);
  CHECK(cbs_schedule_violations(s) == CBS_VIOLATION_WRONG_LENGTH);
  cbs_schedule_destroy(s);
  CHECK(cbs_theorem_hypothesis_met(4096, 16) == 0);
  CHECK(cbs_theorem_hypothesis_met(4096, 24) == 1);
  CHECK(cbs_theorem_hypothesis_met(12, 24) == -1);
}

TEST_CASE("buffer protocol") {
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create(4, 8, CBS_SCHEDULE_ORIGINAL, &s) == CBS_OK);
  size_t needed = 0;
  char small[4];
  CHECK(cbs_schedule_render(s, CBS_FORMAT_JSON, small, sizeof small, &needed) == CBS_ERR_BUFFER);
  CHECK(needed == 6);  // "[4,2]\n"
  char exact[7];
  CHECK(cbs_schedule_render(s, CBS_FORMAT_JSON, exact, sizeof exact, &needed) == CBS_OK);
  CHECK(std::strcmp(exact, "[4,2]\n") == 0);
  cbs_schedule_destroy(s);
}

TEST_CASE("analysis through the C API") {
  double v = 0;
  REQUIRE(cbs_sensing_weight(1, 12, &v) == CBS_OK);
  CHECK(v == 0.015625);
  REQUIRE(cbs_normal_sf(2.0, &v) == CBS_OK);
  CHECK(v == doctest::Approx(0.0227501319481792).epsilon(1e-13));
  REQUIRE(cbs_mu_lower_bound(4096, 256, &v) == CBS_OK);
  CHECK(v == 4.0);
  REQUIRE(cbs_per_step_error(4, 2.0, 1, 4, &v) == CBS_OK);
  CHECK(v == doctest::Approx(0.0227501319481792).epsilon(1e-13));

  const uint64_t counts[] = {4, 2};
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create_custom(4, 6, counts, 2, &s) == CBS_OK);
  REQUIRE(cbs_exact_error_probability(4, 2.0, s, &v) == CBS_OK);
  CHECK(v == doctest::Approx(0.044982695392699).epsilon(1e-12));
  REQUIRE(cbs_union_bound_error(4, 2.0, s, &v) == CBS_OK);
  CHECK(v == doctest::Approx(0.135335283236613).epsilon(1e-12));
  cbs_schedule_destroy(s);

  cbs_bound_report r{};
  REQUIRE(cbs_bounds(4096, 256, 0.5, &r) == CBS_OK);
  CHECK(r.mu_original == doctest::Approx(17.834).epsilon(1e-4));
  CHECK(r.mu_modified == doctest::Approx(13.3208).epsilon(1e-4));
  CHECK(r.mu_lower == 4.0);
  CHECK(r.theorem_hypothesis_met == 1);
  REQUIRE(cbs_bounds(2, 4, 0.5, &r) == CBS_OK);
  CHECK(std::isnan(r.mu_original));
  size_t needed = 0;
  REQUIRE(cbs_bounds_render(&r, CBS_FORMAT_JSON, nullptr, 0, &needed) == CBS_OK);
  std::string json(needed + 1, '\0');
  REQUIRE(cbs_bounds_render(&r, CBS_FORMAT_JSON, json.data(), json.size(), &needed) == CBS_OK);
  CHECK(json.find("\"mu_eq1\": null") != std::string::npos);
  CHECK(cbs_bounds_render(&r, CBS_FORMAT_CSV, nullptr, 0, &needed) == CBS_ERR_ARGUMENT);
}

TEST_CASE("traced runs") {
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create(8, 12, CBS_SCHEDULE_MODIFIED, &s) == CBS_OK);
  cbs_trace* t = nullptr;
  REQUIRE(cbs_run(8, 5, 0.001, s, 0, 1, &t) == CBS_OK);
  CHECK(cbs_trace_estimated_index(t) == 5);
  CHECK(cbs_trace_success(t) == 1);
  CHECK(cbs_trace_draws(t) == cbs_schedule_total(s));
  REQUIRE(cbs_trace_step_count(t) == 3);
  cbs_step_record rec{};
  REQUIRE(cbs_trace_step(t, 1, &rec) == CBS_OK);
  CHECK(rec.interval_start == 0);
  CHECK(rec.interval_length == 8);
  CHECK(rec.chose_left == 0);
  CHECK(rec.m_s == cbs_schedule_count(s, 1));
  CHECK(cbs_trace_step(t, 4, &rec) == CBS_ERR_ARGUMENT);
  size_t needed = 0;
  REQUIRE(cbs_trace_render_json(t, nullptr, 0, &needed) == CBS_OK);
  CHECK(needed > 100);
  cbs_trace_destroy(t);

  CHECK(cbs_run(8, 5, 0.0, s, 0, 1, &t) == CBS_ERR_ARGUMENT);
  CHECK(cbs_run(8, 9, 1.0, s, 0, 0, &t) == CBS_ERR_ARGUMENT);
  CHECK(cbs_run(16, 0, 1.0, s, 0, 0, &t) == CBS_ERR_ARGUMENT);

  cbs_trace *a = nullptr, *b = nullptr;
  REQUIRE(cbs_run(8, 2, 1.0, s, 31, 0, &a) == CBS_OK);
  REQUIRE(cbs_run(8, 2, 1.0, s, 31, 0, &b) == CBS_OK);
  cbs_step_record ra{}, rb{};
  for (size_t k = 1; k <= 3; ++k) {
    cbs_trace_step(a, k, &ra);
    cbs_trace_step(b, k, &rb);
    CHECK(ra.statistic == rb.statistic);
  }
  cbs_trace_destroy(a);
  cbs_trace_destroy(b);
  cbs_schedule_destroy(s);
}

TEST_CASE("sweeps through the C API") {
  cbs_schedule* s = nullptr;
  REQUIRE(cbs_schedule_create(4, 8, CBS_SCHEDULE_ORIGINAL, &s) == CBS_OK);
  const double mus[] = {0.0, 1.0, 2.0};
  cbs_sweep_config cfg{};
  cfg.schedule = s;
  cfg.mu_values = mus;
  cfg.mu_count = 3;
  cfg.trials = 500;
  cfg.master_seed = 8;
  cfg.threads = 2;
  cbs_sweep* w = nullptr;
  REQUIRE(cbs_sweep_run(&cfg, &w) == CBS_OK);
  REQUIRE(cbs_sweep_point_count(w) == 3);
  cbs_curve_point pt{};
  REQUIRE(cbs_sweep_point(w, 0, &pt) == CBS_OK);
  CHECK(pt.p_exact == doctest::Approx(0.75));
  CHECK(pt.trials == 500);
  CHECK(cbs_sweep_point(w, 3, &pt) == CBS_ERR_ARGUMENT);

  size_t needed = 0;
  REQUIRE(cbs_sweep_render_csv(w, 1, nullptr, 0, &needed) == CBS_OK);
  std::string csv(needed + 1, '\0');
  REQUIRE(cbs_sweep_render_csv(w, 1, csv.data(), csv.size(), &needed) == CBS_OK);
  csv.resize(needed);
  CHECK(csv.rfind(std::string(cbs_sweep_csv_header()) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  cfg.threads = 1;
  cbs_sweep* w1 = nullptr;
  REQUIRE(cbs_sweep_run(&cfg, &w1) == CBS_OK);
  std::string csv1(needed + 1, '\0');
  REQUIRE(cbs_sweep_render_csv(w1, 1, csv1.data(), csv1.size(), &needed) == CBS_OK);
  csv1.resize(needed);
  CHECK(csv1 == csv);
  cbs_sweep_destroy(w1);
  cbs_sweep_destroy(w);

  const double unsorted[] = {2.0, 1.0};
  cfg.mu_values = unsorted;
  cfg.mu_count = 2;
  CHECK(cbs_sweep_run(&cfg, &w) == CBS_ERR_CONFIG);
  cbs_schedule_destroy(s);

  double lo = 0, hi = 0;
  REQUIRE(cbs_wilson_interval(0, 10, 0.95, &lo, &hi) == CBS_OK);
  CHECK(lo == 0.0);
  CHECK(hi > 0.0);
  CHECK(cbs_default_thread_count() >= 1);
}
