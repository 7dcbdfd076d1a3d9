#ifndef ABDUKIT_H
#define ABDUKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbkEncoding {
  ABK_ENCODING_NAF_PAIR = 0,
  ABK_ENCODING_DISJUNCTIVE_FACT = 1,
} AbkEncoding;

typedef enum AbkStatus {
  ABK_STATUS_OK = 0,
  ABK_STATUS_NULL_ARGUMENT = 1,
  ABK_STATUS_INVALID_UTF8 = 2,
  ABK_STATUS_SYNTAX = 3,
  // No constants, or too many ground rules.
  ABK_STATUS_GROUNDING = 4,
  // A search or oracle limit was hit.
  ABK_STATUS_BUDGET = 5,
  // The input violates a precondition of the operation.
  ABK_STATUS_INVALID_INPUT = 6,
  // The update program itself is inconsistent.
  ABK_STATUS_INCONSISTENT_UPDATE = 7,
  ABK_STATUS_INTERNAL = 8,
} AbkStatus;

typedef enum AbkObservation {
  ABK_OBSERVATION_POSITIVE = 0,
  ABK_OBSERVATION_NEGATIVE = 1,
  // Restore consistency; the literal argument is ignored.
  ABK_OBSERVATION_BOT = 2,
} AbkObservation;

typedef enum AbkMode {
  ABK_MODE_CREDULOUS = 0,
  ABK_MODE_SKEPTICAL = 1,
} AbkMode;

typedef enum AbkScope {
  ABK_SCOPE_ALL_RULES = 0,
  // The `#variable` rules of the program.
  ABK_SCOPE_VARIABLES = 1,
  ABK_SCOPE_FACT_UNIVERSE = 2,
} AbkScope;

// A parsed input: program, abducibles and `#variable` rules.
typedef struct AbkProgram AbkProgram;

typedef struct AbkConfig {
  size_t max_ground_rules;
  size_t max_universe;
  enum AbkEncoding encoding;
} AbkConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Defaults used when a null config is passed.
struct AbkConfig abk_config_default(void);

// Parses `source` into a new handle stored in `*out`.
//
// # Safety
// `source` must be a nul-terminated string and `out` a valid pointer.
enum AbkStatus abk_program_parse(const char *source, struct AbkProgram **out);

// # Safety
// `program` must come from `abk_program_parse` and not be freed yet.
void abk_program_free(struct AbkProgram *program);

// Canonical source text of the handle.
//
// # Safety
// `program` must be a live handle and `out` a valid pointer.
enum AbkStatus abk_program_render(const struct AbkProgram *program, char **out);

// Answer sets as `{"answer_sets": [...], "contradictory": bool}`.
//
// # Safety
// `program` must be a live handle, `config` null or valid, `out` valid.
enum AbkStatus abk_answer_sets(const struct AbkProgram *program,
                               const struct AbkConfig *config,
                               char **out);

// (Anti-)explanations of one observation against the `#abducible` rules.
//
// # Safety
// `program` must be a live handle; `literal` a nul-terminated string unless
// `kind` is `Bot`; `config` null or valid; `out` valid.
enum AbkStatus abk_explain(const struct AbkProgram *program,
                           enum AbkObservation kind,
                           const char *literal,
                           enum AbkMode mode,
                           bool minimal_only,
                           const struct AbkConfig *config,
                           char **out);

// Inserts (`insert` true) or deletes a ground literal through the
// `#variable` rules.
//
// # Safety
// `program` must be a live handle, `goal` nul-terminated, `config` null or
// valid, `out` valid.
enum AbkStatus abk_view_update(const struct AbkProgram *program,
                               const char *goal,
                               bool insert,
                               const struct AbkConfig *config,
                               char **out);

// Restores the constraints by changing `#variable` rules only.
//
// # Safety
// `program` must be a live handle, `config` null or valid, `out` valid.
enum AbkStatus abk_maintain_integrity(const struct AbkProgram *program,
                                      const struct AbkConfig *config,
                                      char **out);

// Updates `program` with `update`, keeping all of `update`.
//
// # Safety
// Both handles must be live, `config` null or valid, `out` valid.
enum AbkStatus abk_theory_update(const struct AbkProgram *program,
                                 const struct AbkProgram *update,
                                 const struct AbkConfig *config,
                                 char **out);

// Inserts (`insert` true) or deletes one rule given in source syntax.
//
// # Safety
// `program` must be a live handle, `rule` nul-terminated, `config` null or
// valid, `out` valid.
enum AbkStatus abk_rule_update(const struct AbkProgram *program,
                               const char *rule,
                               bool insert,
                               const struct AbkConfig *config,
                               char **out);

// Maximal consistent repairs within `scope`.
//
// # Safety
// `program` must be a live handle, `config` null or valid, `out` valid.
enum AbkStatus abk_repair(const struct AbkProgram *program,
                          enum AbkScope scope,
                          const struct AbkConfig *config,
                          char **out);

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next call on the same thread.
const char *abk_last_error(void);

// # Safety
// `s` must be null or a string returned through an `out` parameter of this
// library, not yet freed.
void abk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABDUKIT_H */
