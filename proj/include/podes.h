#ifndef PODES_H
#define PODES_H

/* C API for the porous-elastic delay simulation engine.
 *
 * All entry points return the shared exit-code convention:
 *   0 ok, 2 validation failure, 3 blow-up, 4 resource cap, 5 internal error.
 * Human-readable status text is copied (NUL-terminated, possibly truncated)
 * into the caller-provided message buffer when one is given.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct podes_scenario podes_scenario;

/* Scenario lifecycle ----------------------------------------------------- */

/* Built-in default scenario; never fails. */
podes_scenario* podes_scenario_default(void);

/* Parse an INI scenario file / in-memory text; NULL on error. */
podes_scenario* podes_scenario_load(const char* path, char* msg, size_t msglen);
podes_scenario* podes_scenario_parse(const char* text, char* msg, size_t msglen);

/* Apply a dotted-path override, e.g. "params.mu2=0.3" or "grid.N=40". */
int podes_scenario_override(podes_scenario* s, const char* key_equals_value,
                            char* msg, size_t msglen);

/* Convenience setters mirroring the CLI flags. */
int podes_scenario_set_out_dir(podes_scenario* s, const char* dir);
int podes_scenario_set_seed(podes_scenario* s, uint64_t seed);

/* Hex content hash of the canonical scenario serialization. */
int podes_scenario_hash(const podes_scenario* s, char* buf, size_t buflen);

void podes_scenario_free(podes_scenario* s);

/* Commands --------------------------------------------------------------- */

/* Structural hypothesis check only; 0 admissible, 2 otherwise. */
int podes_validate(const podes_scenario* s, char* msg, size_t msglen);

/* Integrate and emit diagnostics CSV / summary JSON / binary snapshot into
 * the scenario's output directory.  The optional interrupt poll is called
 * once per time step; returning nonzero stops the run with partial output. */
typedef int (*podes_interrupt_cb)(void* user);
int podes_run(const podes_scenario* s, podes_interrupt_cb interrupted, void* user,
              char* msg, size_t msglen);

/* Assemble the linear generator, emit eigenvalue CSV + abscissa JSON. */
int podes_spectrum(const podes_scenario* s, char* msg, size_t msglen);

/* Run the verification battery; each table line is passed to the sink. */
typedef void (*podes_line_cb)(const char* line, void* user);
int podes_verify(const podes_scenario* s, podes_line_cb sink, void* user,
                 char* msg, size_t msglen);

const char* podes_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PODES_H */
