/*
 * C interface to the wsnloc simulator.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns a wsnloc_status; on
 * failure wsnloc_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with wsnloc_string_free.
 */
#ifndef WSNLOC_H
#define WSNLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WSNLOC_BUILDING_LIBRARY)
#    define WSNLOC_API __declspec(dllexport)
#  else
#    define WSNLOC_API __declspec(dllimport)
#  endif
#else
#  define WSNLOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsnloc_status {
  WSNLOC_OK = 0,
  WSNLOC_ERROR_CONFIG = 1,        /* scenario syntax, unknown key, invalid value */
  WSNLOC_ERROR_IO = 2,            /* file could not be read or written */
  WSNLOC_ERROR_INVALID_ARG = 3,   /* null handle, bad index, steps < 1 */
  WSNLOC_ERROR_TRACE = 4,         /* malformed trace.csv */
  WSNLOC_ERROR_OUT_OF_RANGE = 5,  /* step not present in trace */
  WSNLOC_ERROR_INTERNAL = 6
} wsnloc_status;

typedef struct wsnloc_scenario wsnloc_scenario;
typedef struct wsnloc_trace wsnloc_trace;
typedef struct wsnloc_comparison wsnloc_comparison;

typedef struct wsnloc_render_style {
  double anchor_glyph_radius; /* px */
  double tag_glyph_scale;     /* px per meter of uncertainty */
  int show_links;
  int show_territories;
  double canvas_scale;        /* px per meter */
} wsnloc_render_style;

WSNLOC_API const char* wsnloc_version(void);

/* Message for the most recent failure on this thread; "" if none. */
WSNLOC_API const char* wsnloc_last_error(void);

WSNLOC_API void wsnloc_string_free(char* s);

/* --- scenarios ---------------------------------------------------------- */

WSNLOC_API wsnloc_status wsnloc_scenario_default(wsnloc_scenario** out);
WSNLOC_API wsnloc_status wsnloc_scenario_parse(const char* text, wsnloc_scenario** out);
/* path may be the literal "default". */
WSNLOC_API wsnloc_status wsnloc_scenario_load(const char* path, wsnloc_scenario** out);
WSNLOC_API void wsnloc_scenario_free(wsnloc_scenario* s);

/* Serialized config text; parses back to an identical scenario. */
WSNLOC_API wsnloc_status wsnloc_scenario_render(const wsnloc_scenario* s, char** text);

/* Number of invariant violations; *messages (optional) receives one
 * "path: reason" line per violation. */
WSNLOC_API wsnloc_status wsnloc_scenario_validate(const wsnloc_scenario* s, size_t* count,
                                                  char** messages);

WSNLOC_API wsnloc_status wsnloc_scenario_set_tag_links(wsnloc_scenario* s, int enabled);
WSNLOC_API wsnloc_status wsnloc_scenario_counts(const wsnloc_scenario* s, size_t* anchors,
                                                size_t* tags);

/* --- single runs -------------------------------------------------------- */

WSNLOC_API wsnloc_status wsnloc_run(const wsnloc_scenario* s, int64_t steps, uint64_t seed,
                                    wsnloc_trace** out);
WSNLOC_API void wsnloc_trace_free(wsnloc_trace* t);

WSNLOC_API wsnloc_status wsnloc_trace_step_count(const wsnloc_trace* t, int64_t* steps);
WSNLOC_API wsnloc_status wsnloc_trace_tag_count(const wsnloc_trace* t, size_t* tags);

/* Tag index follows the scenario's tag order. */
WSNLOC_API wsnloc_status wsnloc_trace_tag_uncertainty(const wsnloc_trace* t, size_t tag_index,
                                                      int64_t step, double* uncertainty);
WSNLOC_API wsnloc_status wsnloc_trace_tag_diverged(const wsnloc_trace* t, size_t tag_index,
                                                   int* diverged);

WSNLOC_API wsnloc_status wsnloc_trace_write_csv(const wsnloc_trace* t, const char* path);
WSNLOC_API wsnloc_status wsnloc_trace_write_summary(const wsnloc_trace* t, const char* path);
/* Summary text; ANSI colors when color != 0. */
WSNLOC_API wsnloc_status wsnloc_trace_summary(const wsnloc_trace* t, int color, char** text);

/* --- paired links-off / links-on runs ----------------------------------- */

WSNLOC_API wsnloc_status wsnloc_compare(const wsnloc_scenario* s, int64_t steps, uint64_t seed,
                                        wsnloc_comparison** out);
WSNLOC_API void wsnloc_comparison_free(wsnloc_comparison* c);

WSNLOC_API wsnloc_status wsnloc_comparison_diverged_counts(const wsnloc_comparison* c,
                                                           int* links_off, int* links_on);
WSNLOC_API wsnloc_status wsnloc_comparison_write_csv(const wsnloc_comparison* c, const char* path);
WSNLOC_API wsnloc_status wsnloc_comparison_write_report(const wsnloc_comparison* c,
                                                        const char* path);
WSNLOC_API wsnloc_status wsnloc_comparison_report(const wsnloc_comparison* c, int color,
                                                  char** text);

/* --- rendering ---------------------------------------------------------- */

WSNLOC_API void wsnloc_render_style_default(wsnloc_render_style* style);

/* Number of steps recorded in a trace.csv file. */
WSNLOC_API wsnloc_status wsnloc_trace_file_step_count(const char* trace_path, int64_t* steps);

/* Writes <out_dir>/step_<step>.svg from a trace.csv file. style may be NULL. */
WSNLOC_API wsnloc_status wsnloc_render_svg(const char* trace_path, int64_t step,
                                           const char* out_dir, const wsnloc_render_style* style);

/* Renders steps 0, every, 2*every, ... ; *written (optional) receives the count. */
WSNLOC_API wsnloc_status wsnloc_render_svg_every(const char* trace_path, int64_t every,
                                                 const char* out_dir,
                                                 const wsnloc_render_style* style,
                                                 int64_t* written);

#ifdef __cplusplus
}
#endif

#endif /* WSNLOC_H */
