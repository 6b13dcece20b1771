#include "qflab/qflab.h"

#include <cstring>
#include <new>
#include <string>

#include "core/archimedean.hpp"
#include "core/arith.hpp"
#include "core/correlate.hpp"
#include "core/dirichlet.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/localdens.hpp"
#include "core/qforms.hpp"
#include "core/sieve.hpp"

struct qflab_classes {
  qflab::qforms::ClassGroupTable table;
};

struct qflab_config {
  qflab::experiment::ExperimentConfig cfg;
  std::string scratch;
};

struct qflab_report {
  qflab::experiment::ExperimentReport report;
  std::string csv, json, svg, path;
};

namespace {

thread_local std::string g_last_error;

int status_of(qflab::Errc e) {
  switch (e) {
    case qflab::Errc::argument: return QFLAB_E_ARGUMENT;
    case qflab::Errc::range: return QFLAB_E_RANGE;
    case qflab::Errc::domain: return QFLAB_E_DOMAIN;
    case qflab::Errc::consistency: return QFLAB_E_CONSISTENCY;
    case qflab::Errc::numeric: return QFLAB_E_NUMERIC;
    case qflab::Errc::unsupported: return QFLAB_E_UNSUPPORTED;
    case qflab::Errc::degenerate: return QFLAB_E_DEGENERATE;
    case qflab::Errc::io: return QFLAB_E_IO;
  }
  return QFLAB_E_INTERNAL;
}

template <class F>
int guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QFLAB_OK;
  } catch (const qflab::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QFLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QFLAB_E_INTERNAL;
  }
}

int null_arg(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return QFLAB_E_NULL;
}

#define QFLAB_NONNULL(p) \
  if (!(p)) return null_arg(#p)

void copy_out(const std::string& s, char* buf, std::size_t size) {
  qflab::require(s.size() < size, qflab::Errc::range, "buffer too small: need " + std::to_string(s.size() + 1));
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

qflab::dirichlet::Convention convention_of(int c) {
  switch (c) {
    case QFLAB_CONV_SQUAREFREE_1MOD4: return qflab::dirichlet::Convention::squarefree_1mod4;
    case QFLAB_CONV_WITH_MINUS4: return qflab::dirichlet::Convention::with_minus4;
    case QFLAB_CONV_STANDARD: return qflab::dirichlet::Convention::standard;
  }
  qflab::fail(qflab::Errc::argument, "unknown convention " + std::to_string(c));
}

}  // namespace

extern "C" {

const char* qflab_version(void) { return "0.1.0"; }

const char* qflab_status_name(int status) {
  switch (status) {
    case QFLAB_OK: return "ok";
    case QFLAB_E_ARGUMENT: return "argument";
    case QFLAB_E_RANGE: return "range";
    case QFLAB_E_DOMAIN: return "domain";
    case QFLAB_E_CONSISTENCY: return "consistency";
    case QFLAB_E_NUMERIC: return "numeric";
    case QFLAB_E_UNSUPPORTED: return "unsupported";
    case QFLAB_E_DEGENERATE: return "degenerate";
    case QFLAB_E_IO: return "io";
    case QFLAB_E_NULL: return "null";
    case QFLAB_E_INTERNAL: return "internal";
    default: return "unknown";
  }
}

const char* qflab_last_error(void) { return g_last_error.c_str(); }

int qflab_kronecker(int64_t D, int64_t n, int* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::arith::kronecker(D, n); });
}

int qflab_is_fundamental(int64_t D, int convention, int* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::dirichlet::is_fundamental(D, convention_of(convention)) ? 1 : 0; });
}

int qflab_r_total(uint64_t n, int64_t D, uint64_t* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::dirichlet::r_total(n, D); });
}

int qflab_L1(int64_t D, double* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::dirichlet::L1_from_class_number(D); });
}

int qflab_L1_character_sum(int64_t D, uint64_t terms, double* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::dirichlet::L1_from_character_sum(D, terms); });
}

int qflab_classes_create(int64_t D, qflab_classes** out) {
  QFLAB_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qflab_classes{qflab::qforms::enumerate_classes(D)}; });
}

void qflab_classes_destroy(qflab_classes* t) { delete t; }

int qflab_classes_count(const qflab_classes* t, size_t* h) {
  QFLAB_NONNULL(t);
  QFLAB_NONNULL(h);
  *h = t->table.h();
  return QFLAB_OK;
}

int qflab_classes_form(const qflab_classes* t, size_t i, int64_t* A, int64_t* B, int64_t* C, int* aut_weight) {
  QFLAB_NONNULL(t);
  return guard([&] {
    qflab::require(i < t->table.h(), qflab::Errc::range, "class index out of range");
    const auto& c = t->table.classes[i];
    if (A) *A = c.A();
    if (B) *B = c.B();
    if (C) *C = c.C();
    if (aut_weight) *aut_weight = c.aut_weight;
  });
}

int qflab_least_prime(const qflab_classes* t, size_t i, uint64_t bound, uint64_t* prime, int64_t* x, int64_t* y) {
  QFLAB_NONNULL(t);
  QFLAB_NONNULL(prime);
  return guard([&] {
    qflab::require(i < t->table.h(), qflab::Errc::range, "class index out of range");
    const auto lp = qflab::qforms::least_prime_represented(t->table.classes[i], bound);
    *prime = lp ? lp->prime : 0;
    if (x) *x = lp ? lp->x : 0;
    if (y) *y = lp ? lp->y : 0;
  });
}

int qflab_sigma_p(uint64_t p, int alpha, int beta, int chi, char* buf, size_t size) {
  QFLAB_NONNULL(buf);
  return guard([&] { copy_out(qflab::localdens::sigma_p_closed(p, alpha, beta, chi).str(), buf, size); });
}

int qflab_sigma_p_bruteforce(uint64_t p, int t, int64_t m, int64_t k, char* buf, size_t size) {
  QFLAB_NONNULL(buf);
  return guard([&] { copy_out(qflab::localdens::sigma_p_bruteforce(p, t, m, k).str(), buf, size); });
}

int qflab_global_sigma_product(int64_t m, int64_t k, int64_t D, double* out) {
  QFLAB_NONNULL(out);
  return guard([&] { *out = qflab::localdens::global_sigma_product(m, k, D); });
}

int qflab_archimedean_I(double a, double sharpness, double* value, double* error_estimate) {
  QFLAB_NONNULL(value);
  return guard([&] {
    const qflab::archimedean::SmoothWeight w(sharpness);
    const auto r = qflab::archimedean::I_of(a, w);
    *value = r.value;
    if (error_estimate) *error_estimate = r.error_estimate;
  });
}

int qflab_count_A(int64_t m, int64_t X, int64_t d1, int64_t d2, qflab_count* out) {
  QFLAB_NONNULL(out);
  return guard([&] {
    const auto r = qflab::correlate::count_A(m, X, d1, d2);
    *out = qflab_count{r.D, r.v0, r.direct_count, r.sigma_inf, r.sigma_product,
                       r.main_term, r.relative_error, r.points};
  });
}

int qflab_sieve_bound(int64_t D, int64_t v0, uint64_t Y, int64_t X, qflab_sieve* out) {
  QFLAB_NONNULL(out);
  return guard([&] {
    const auto r = qflab::sieve::sieve_upper_bound(D, v0, Y, X);
    *out = qflab_sieve{r.sifted, r.sifted_separate, r.bound, r.bound_incex, r.bound_squares, r.A1};
  });
}

size_t qflab_command_count(void) { return qflab::experiment::command_names().size(); }

const char* qflab_command_name(size_t i) {
  if (i >= qflab_command_count()) return nullptr;
  return qflab::experiment::command_name(static_cast<qflab::experiment::Command>(i));
}

int qflab_config_create(qflab_config** out) {
  QFLAB_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qflab_config{}; });
}

void qflab_config_destroy(qflab_config* c) { delete c; }

int qflab_config_set(qflab_config* c, const char* key, const char* value) {
  QFLAB_NONNULL(c);
  QFLAB_NONNULL(key);
  QFLAB_NONNULL(value);
  return guard([&] { qflab::experiment::apply_setting(c->cfg, key, value); });
}

int qflab_config_load(qflab_config* c, const char* path) {
  QFLAB_NONNULL(c);
  QFLAB_NONNULL(path);
  return guard([&] { qflab::experiment::load_config_file(c->cfg, path); });
}

int qflab_config_validate(const qflab_config* c) {
  QFLAB_NONNULL(c);
  return guard([&] { qflab::experiment::validate(c->cfg); });
}

int qflab_config_get(qflab_config* c, const char* key, const char** value) {
  QFLAB_NONNULL(c);
  QFLAB_NONNULL(key);
  QFLAB_NONNULL(value);
  return guard([&] {
    std::string k = key;
    for (auto& ch : k) {
      if (ch == '-') ch = '_';
    }
    if (k == "output" || k == "output_dir") {
      c->scratch = c->cfg.output_dir;
      *value = c->scratch.c_str();
      return;
    }
    for (const auto& [name, v] : c->cfg.echo()) {
      if (name == k) {
        c->scratch = v;
        *value = c->scratch.c_str();
        return;
      }
    }
    qflab::fail(qflab::Errc::argument, "config: unknown key '" + std::string(key) + "'");
  });
}

int qflab_run(const qflab_config* c, qflab_report** out) {
  QFLAB_NONNULL(c);
  QFLAB_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qflab_report{qflab::experiment::run(c->cfg), {}, {}, {}, {}}; });
}

void qflab_report_destroy(qflab_report* r) { delete r; }

int qflab_report_passed(const qflab_report* r, int* passed) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(passed);
  *passed = r->report.passed() ? 1 : 0;
  return QFLAB_OK;
}

const char* qflab_report_error(const qflab_report* r) {
  if (!r || r->report.error.empty()) return nullptr;
  return r->report.error.c_str();
}

int qflab_report_rows(const qflab_report* r, size_t* rows, size_t* columns) {
  QFLAB_NONNULL(r);
  if (rows) *rows = r->report.rows.size();
  if (columns) *columns = r->report.columns.size();
  return QFLAB_OK;
}

int qflab_report_assertion_count(const qflab_report* r, size_t* n) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(n);
  *n = r->report.assertions.size();
  return QFLAB_OK;
}

int qflab_report_assertion(const qflab_report* r, size_t i, const char** name, int* passed, const char** detail) {
  QFLAB_NONNULL(r);
  return guard([&] {
    qflab::require(i < r->report.assertions.size(), qflab::Errc::range, "assertion index out of range");
    const auto& a = r->report.assertions[i];
    if (name) *name = a.name.c_str();
    if (passed) *passed = a.passed ? 1 : 0;
    if (detail) *detail = a.detail.c_str();
  });
}

int qflab_report_summary_count(const qflab_report* r, size_t* n) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(n);
  *n = r->report.summary.size();
  return QFLAB_OK;
}

int qflab_report_summary(const qflab_report* r, size_t i, const char** name, double* value) {
  QFLAB_NONNULL(r);
  return guard([&] {
    qflab::require(i < r->report.summary.size(), qflab::Errc::range, "summary index out of range");
    if (name) *name = r->report.summary[i].first.c_str();
    if (value) *value = r->report.summary[i].second;
  });
}

int qflab_report_wall_clock(const qflab_report* r, double* seconds) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(seconds);
  *seconds = r->report.wall_clock_seconds;
  return QFLAB_OK;
}

int qflab_report_csv(qflab_report* r, const char** text) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(text);
  return guard([&] {
    r->csv = qflab::experiment::to_csv(r->report);
    *text = r->csv.c_str();
  });
}

int qflab_report_json(qflab_report* r, int include_timing, const char** text) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(text);
  return guard([&] {
    r->json = qflab::experiment::to_json(r->report, include_timing != 0);
    *text = r->json.c_str();
  });
}

int qflab_report_svg(qflab_report* r, const char** text) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(text);
  return guard([&] {
    r->svg = qflab::experiment::to_svg(r->report);
    *text = r->svg.c_str();
  });
}

int qflab_report_write(qflab_report* r, const char* dir, const char** csv_path) {
  QFLAB_NONNULL(r);
  QFLAB_NONNULL(dir);
  return guard([&] {
    r->path = qflab::experiment::write_report(r->report, dir).csv;
    if (csv_path) *csv_path = r->path.c_str();
  });
}

}  // extern "C"
