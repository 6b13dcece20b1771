/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qflab/qflab.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

static void test_arith(void) {
  int k = 0;
  EXPECT(qflab_kronecker(-7, 2, &k) == QFLAB_OK && k == 1);
  EXPECT(qflab_kronecker(-4, 3, &k) == QFLAB_OK && k == -1);
  EXPECT(qflab_kronecker(-7, 2, NULL) == QFLAB_E_NULL);

  int f = 0;
  EXPECT(qflab_is_fundamental(-4, QFLAB_CONV_SQUAREFREE_1MOD4, &f) == QFLAB_OK && f == 0);
  EXPECT(qflab_is_fundamental(-4, QFLAB_CONV_WITH_MINUS4, &f) == QFLAB_OK && f == 1);
  EXPECT(qflab_is_fundamental(-4, 9, &f) == QFLAB_E_ARGUMENT);

  uint64_t r = 0;
  EXPECT(qflab_r_total(2, -23, &r) == QFLAB_OK && r == 4);
  EXPECT(qflab_r_total(0, -23, &r) == QFLAB_E_ARGUMENT);
  EXPECT(strlen(qflab_last_error()) > 0);
  EXPECT(qflab_r_total(3, 5, &r) == QFLAB_E_DOMAIN);

  double a = 0, b = 0;
  EXPECT(qflab_L1(-23, &a) == QFLAB_OK);
  EXPECT(qflab_L1_character_sum(-23, 100000, &b) == QFLAB_OK);
  EXPECT(fabs(a - b) < 1e-9);
}

static void test_classes(void) {
  qflab_classes* t = NULL;
  EXPECT(qflab_classes_create(-23, &t) == QFLAB_OK);
  size_t h = 0;
  EXPECT(qflab_classes_count(t, &h) == QFLAB_OK && h == 3);
  int64_t A = 0, B = 0, C = 0;
  int aut = 0;
  EXPECT(qflab_classes_form(t, 0, &A, &B, &C, &aut) == QFLAB_OK);
  EXPECT(A == 1 && B == 1 && C == 6 && aut == 2);
  EXPECT(qflab_classes_form(t, 3, &A, &B, &C, &aut) == QFLAB_E_RANGE);
  uint64_t p = 0;
  int64_t x = 0, y = 0;
  EXPECT(qflab_least_prime(t, 0, 100, &p, &x, &y) == QFLAB_OK && p == 23);
  EXPECT(x * x + x * y + 6 * y * y == 23);
  qflab_classes_destroy(t);
  qflab_classes_destroy(NULL);
}

static void test_densities(void) {
  char buf[64];
  EXPECT(qflab_sigma_p(5, 0, 0, 1, buf, sizeof buf) == QFLAB_OK && strcmp(buf, "6/5") == 0);
  EXPECT(qflab_sigma_p(3, 0, 1, 0, buf, sizeof buf) == QFLAB_OK && strcmp(buf, "8/9") == 0);
  EXPECT(qflab_sigma_p(3, 0, 1, 0, buf, 2) == QFLAB_E_RANGE);
  EXPECT(qflab_sigma_p(2, 0, 1, 0, buf, sizeof buf) != QFLAB_OK);
  EXPECT(qflab_sigma_p_bruteforce(5, 3, -3, 1, buf, sizeof buf) == QFLAB_OK && strcmp(buf, "4/5") == 0);

  double v = 0, e = 0;
  EXPECT(qflab_archimedean_I(-20.0, 1.0, &v, &e) == QFLAB_OK && v == 0.0);
  EXPECT(qflab_archimedean_I(0.0, 1.0, &v, &e) == QFLAB_OK && v >= 0.125 && v <= 0.25 && e < 1e-8);
  EXPECT(qflab_global_sigma_product(-23, 1, -23, &v) == QFLAB_OK && fabs(v - 2.3894) < 1e-3);

  qflab_count c;
  EXPECT(qflab_count_A(-23, 4000, 1, 1, &c) == QFLAB_OK);
  EXPECT(c.D == -23 && c.points > 0 && fabs(c.relative_error) < 0.1);
  EXPECT(qflab_count_A(-23, 4000, 4, 1, &c) == QFLAB_E_ARGUMENT);

  qflab_sieve s;
  EXPECT(qflab_sieve_bound(-23, 1, 10, 1000, &s) == QFLAB_OK);
  EXPECT(s.sifted <= s.bound + 1e-9);
}

static void test_experiment(void) {
  EXPECT(qflab_command_count() == 8);
  EXPECT(strcmp(qflab_command_name(2), "theorem1") == 0);
  EXPECT(qflab_command_name(99) == NULL);

  qflab_config* cfg = NULL;
  EXPECT(qflab_config_create(&cfg) == QFLAB_OK);
  EXPECT(qflab_config_set(cfg, "command", "theorem1") == QFLAB_OK);
  EXPECT(qflab_config_set(cfg, "d-min", "-300") == QFLAB_OK);
  EXPECT(qflab_config_set(cfg, "x", "hlogd") == QFLAB_OK);
  EXPECT(qflab_config_set(cfg, "bogus", "1") == QFLAB_E_ARGUMENT);
  EXPECT(qflab_config_validate(cfg) == QFLAB_OK);
  const char* val = NULL;
  EXPECT(qflab_config_get(cfg, "d_min", &val) == QFLAB_OK && strcmp(val, "-300") == 0);

  qflab_report* rep = NULL;
  EXPECT(qflab_run(cfg, &rep) == QFLAB_OK);
  int passed = 0;
  EXPECT(qflab_report_passed(rep, &passed) == QFLAB_OK && passed == 1);
  EXPECT(qflab_report_error(rep) == NULL);
  size_t rows = 0, cols = 0, n = 0;
  EXPECT(qflab_report_rows(rep, &rows, &cols) == QFLAB_OK && rows > 10 && cols == 10);
  EXPECT(qflab_report_assertion_count(rep, &n) == QFLAB_OK && n >= 2);
  const char* name = NULL;
  const char* detail = NULL;
  EXPECT(qflab_report_assertion(rep, 0, &name, &passed, &detail) == QFLAB_OK && passed == 1);
  EXPECT(qflab_report_assertion(rep, n, &name, &passed, &detail) == QFLAB_E_RANGE);
  const char* csv = NULL;
  EXPECT(qflab_report_csv(rep, &csv) == QFLAB_OK && strncmp(csv, "D,X,pi,", 7) == 0);
  const char* json = NULL;
  EXPECT(qflab_report_json(rep, 0, &json) == QFLAB_OK && strstr(json, "\"schema_version\": 1") != NULL);
  EXPECT(strstr(json, "wall_clock") == NULL);
  qflab_report_destroy(rep);

  EXPECT(qflab_config_set(cfg, "d-max", "-299") == QFLAB_OK);
  rep = NULL;
  EXPECT(qflab_run(cfg, &rep) == QFLAB_E_ARGUMENT);
  EXPECT(rep == NULL);
  qflab_config_destroy(cfg);
}

int main(void) {
  printf("qflab %s\n", qflab_version());
  test_arith();
  test_classes();
  test_densities();
  test_experiment();
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return EXIT_FAILURE;
  }
  printf("all C API checks passed\n");
  return EXIT_SUCCESS;
}
