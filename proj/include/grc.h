#ifndef GRC_H
#define GRC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  GRC_OK means the command ran and its result is certified;
 * GRC_UNCERTIFIED means the command ran and produced a report, but the
 * result could not be certified (the JSON says which check failed).
 * Everything >= 2 is an error and no JSON is produced. */
#define GRC_OK 0
#define GRC_UNCERTIFIED 1
#define GRC_ERR_PARSE 2
#define GRC_ERR_VALIDATION 3
#define GRC_ERR_NON_SQUARE 4
#define GRC_ERR_AMBIGUOUS_LEADING_TERM 5
#define GRC_ERR_VANISHING_COEFFICIENT 6
#define GRC_ERR_RANK_DEFICIENT 7
#define GRC_ERR_NOT_VERTICAL 8
#define GRC_ERR_NOT_HORIZONTAL 9
#define GRC_ERR_REPRESENTATION_MISMATCH 10
#define GRC_ERR_GENERICITY_EXHAUSTED 11
#define GRC_ERR_NOT_FINITE 12
#define GRC_ERR_DIMENSION_MISMATCH 13
#define GRC_ERR_UNSUPPORTED 14
#define GRC_ERR_INTERNAL 15

typedef struct grc_system grc_system;
typedef struct grc_spec grc_spec;

/* Parses a system description.  On failure returns NULL and, if err is not
 * NULL, stores a message in *err (free with grc_string_free). */
grc_system* grc_system_parse(const char* text, char** err);
void grc_system_free(grc_system* sys);

/* A specialization assigns each parameter a rational value and a rational
 * weight, both given as strings like "3", "-1/2". */
grc_spec* grc_spec_new(void);
int grc_spec_set(grc_spec* spec, const char* name, const char* value,
                 const char* weight, char** err);
void grc_spec_free(grc_spec* spec);

/* Commands.  Each writes a JSON report into *json (free with
 * grc_string_free) and returns a status code.  spec may be NULL where a
 * random draw or no specialization is acceptable; grc_prevariety requires
 * one.  t_value is a rational string standing in for the deformation
 * variable in numeric work, or NULL for the default 1/1000. */
int grc_count(const grc_system* sys, const char* mode, uint64_t seed,
              const grc_spec* spec, int verify, char** json, char** err);
int grc_mv(const grc_system* sys, uint64_t seed, char** json, char** err);
int grc_oracle(const grc_system* sys, uint64_t seed, const grc_spec* spec,
               const char* t_value, char** json, char** err);
int grc_prevariety(const grc_system* sys, const grc_spec* spec, uint64_t seed,
                   char** json, char** err);
int grc_matroid(const grc_system* sys, uint64_t seed, char** json, char** err);
int grc_modify(const grc_system* sys, const char* mode, char** json, char** err);

void grc_string_free(char* s);
const char* grc_version(void);

#ifdef __cplusplus
}
#endif

#endif
