/* C interface to the scheduling library. Every call returns a status; on
 * failure sos_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * sos_string_free. */
#ifndef SOS_SOS_H
#define SOS_SOS_H

#include <stddef.h>
#include <stdint.h>

#if defined(SOS_BUILDING_LIBRARY)
#define SOS_API __attribute__((visibility("default")))
#else
#define SOS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sos_status {
  SOS_OK = 0,
  SOS_INVALID_ARGUMENT = 1,
  SOS_PARSE_ERROR = 2,
  SOS_IO_ERROR = 3,
  SOS_NUMERICAL_ERROR = 4,
  SOS_CAP_EXCEEDED = 5,
  SOS_CONTRACT_VIOLATION = 6,
  SOS_INTERNAL_ERROR = 7
} sos_status;

typedef struct sos_instance sos_instance;

SOS_API const char* sos_version(void);
SOS_API const char* sos_last_error(void);
/* Slot count the last SOS_CAP_EXCEEDED failure would have needed. */
SOS_API long long sos_last_required_cap(void);
SOS_API void sos_string_free(char* s);
SOS_API sos_status sos_write_text_file(const char* path, const char* text);

/* ---- instances ---- */

SOS_API sos_status sos_instance_read_file(const char* path, sos_instance** out);
SOS_API sos_status sos_instance_from_json(const char* text, sos_instance** out);
SOS_API sos_status sos_instance_to_json(const sos_instance* inst, char** out);
SOS_API void sos_instance_free(sos_instance* inst);
SOS_API sos_status sos_instance_shape(const sos_instance* inst, size_t* machines, size_t* jobs,
                                      double* delta);

typedef struct sos_generator_spec {
  size_t jobs;
  size_t machines;
  double weight_lo, weight_hi;
  double release_lo, release_hi;
  double mean_lo, mean_hi;
  const char* family; /* deterministic, exponential, uniform, two_point, scaled_bernoulli, mixed */
  int has_delta_target;
  double delta_target;
  int even_integer;
} sos_generator_spec;

SOS_API void sos_generator_spec_init(sos_generator_spec* spec);
SOS_API sos_status sos_instance_generate(const sos_generator_spec* spec, uint64_t seed,
                                         sos_instance** out);

/* ---- policies ---- */

typedef struct sos_policy_spec {
  const char* name; /* rsos, dsos, sos, ga-rsos, ga-dsos, ga-sos */
  int has_alpha;
  double alpha;
  int has_delta;
  double delta;
  int has_nbue_delta;
  double nbue_delta;
  const char* density; /* NULL, "uniform" or "fdelta" */
} sos_policy_spec;

typedef struct sos_report {
  char policy[96];
  char comparator[16];
  size_t reps;
  uint64_t seed;
  double mean;
  double sd;
  double std_error;
  double ci99;
  double comparator_value;
  double ratio;
  double ratio_ci99;
  double guarantee;
  double nominal_guarantee;
  double instance_delta;
  double instance_nbue;
  int degenerate;
  int pass;
} sos_report;

/* comparator: "auto", "surrogate", "mean-busy" or "lp". threads 0 = default. */
SOS_API sos_status sos_evaluate(const sos_instance* inst, const sos_policy_spec* policy,
                                const char* comparator, size_t reps, uint64_t seed, long long lp_cap,
                                unsigned threads, sos_report* out);
SOS_API sos_status sos_policy_nominal_guarantee(const sos_policy_spec* policy, double* out);
SOS_API sos_status sos_results_csv(const char* instance_id, const sos_report* report, int header,
                                   char** out);
SOS_API sos_status sos_assignment_trace_csv(const sos_instance* inst, char** out);

/* ---- bounds ---- */

typedef struct sos_certificate_report {
  double sigma;
  long long horizon;
  double lp_value;
  double surrogate_total;
  double dual_value;
  double min_slack;
  size_t lp_iterations;
  int dual_feasible;
  int quarter_bound;
  int four_bound;
  int certified;
} sos_certificate_report;

SOS_API sos_status sos_certify(const sos_instance* inst, long long cap, sos_certificate_report* out);
SOS_API sos_status sos_lp_value(const sos_instance* inst, long long cap, double* out);
SOS_API sos_status sos_lp_export_mps(const sos_instance* inst, long long cap, char** out);

/* ---- guarantees ---- */

/* table: "unrelated", "single", "misspecified" or "nbue". */
SOS_API sos_status sos_curves_csv(const char* table, double lo, double hi, double step, char** out);
SOS_API double sos_g(double delta);
SOS_API sos_status sos_fdelta_params(double delta, double* D, double* gamma, double* theta, double* c);
SOS_API sos_status sos_alpha_star_delta(double delta, double* alpha, double* c);
SOS_API sos_status sos_alpha_star_nbue(double delta, double* alpha, double* c);
/* policy: "rsos-fdelta" or "sos-alpha"; delta may be INFINITY. */
SOS_API sos_status sos_misspecified_guarantee(double delta_bar, double delta, const char* policy,
                                              double* out);
SOS_API double sos_gmux_crossing(void);

#ifdef __cplusplus
}
#endif

#endif
