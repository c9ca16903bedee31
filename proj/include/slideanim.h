/* C API for the slideanim core library.
 *
 * Conventions:
 *  - Functions returning sa_status put details for failures behind
 *    sa_last_error() (thread-local message, valid until the next failing
 *    call on the same thread).
 *  - char* results are allocated by the library and released with
 *    sa_string_free(); NULL signals an error.
 *  - Opaque handles are released with their matching *_free function.
 */
#ifndef SLIDEANIM_H
#define SLIDEANIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sa_status {
  SA_OK = 0,
  SA_ERROR_INVALID_ARGUMENT = 1,
  SA_ERROR_PARSE = 2,
  SA_ERROR_IO = 3,
  SA_ERROR_INTERNAL = 4
} sa_status;

enum {
  SA_RENDER_PLACEHOLDER_TEXT = 1u << 0,
  SA_RENDER_PLACEHOLDER_IMAGES = 1u << 1
};

enum { SA_STATS_SVG = 1u << 0 };

typedef struct sa_slide sa_slide;
typedef struct sa_plan sa_plan;

const char* sa_version(void);
const char* sa_last_error(void);
void sa_string_free(char* s);

/* ---- slides and plans (JSON documents) -------------------------------- */

sa_status sa_slide_from_json(const char* json_text, sa_slide** out);
sa_status sa_slide_load(const char* path, sa_slide** out);
char* sa_slide_to_json(const sa_slide* slide);
void sa_slide_free(sa_slide* slide);

sa_status sa_plan_from_json(const char* json_text, sa_plan** out);
sa_status sa_plan_load(const char* path, sa_plan** out);
char* sa_plan_to_json(const sa_plan* plan);
void sa_plan_free(sa_plan* plan);

/* Seconds under sequential scheduling; 0 for an empty plan. */
double sa_plan_duration(const sa_plan* plan);

/* Validation report as JSON {"ok": bool, "errors": [...], "warnings": [...]}.
 * A plan/slide slide_id mismatch is SA_ERROR_INVALID_ARGUMENT, not a report. */
sa_status sa_validate_plan(const sa_plan* plan, const sa_slide* slide, char** report_json);

/* ---- grammar ----------------------------------------------------------- */

char* sa_plan_action_list(const sa_plan* plan);
char* sa_plan_narrative(const sa_plan* plan);
/* JSON array of action units extracted from free text. */
char* sa_extract_action_units(const char* text);

/* ---- catalog ------------------------------------------------------------ */

/* JSON array: [{"family", "categories", "directional"}, ...]. */
char* sa_effect_catalog_json(void);

/* ---- rendering ----------------------------------------------------------- */

/* Writes frame_00000.png ... and render.manifest into out_dir.
 * flags: SA_RENDER_*; jobs <= 0 selects the available parallelism. */
sa_status sa_render_video(const sa_slide* slide, const sa_plan* plan, double fps,
                          const char* out_dir, uint32_t flags, int jobs);

/* ---- synthesis ----------------------------------------------------------- */

/* Named preset ("paper_default") as a config JSON document. */
char* sa_config_preset(const char* name);

/* Builds (or resumes) a dataset under out_root from a config JSON document;
 * reports the manifest path through *manifest_path_out when non-NULL. */
sa_status sa_synth_dataset(const char* config_json, const char* out_root,
                           char** manifest_path_out);

/* Deterministic single-slide / single-plan synthesis for the given seed. */
char* sa_synth_slide_json(uint64_t seed, const char* config_json);
char* sa_synth_scheme_json(uint64_t seed, const char* slide_json, const char* config_json);

/* ---- metrics -------------------------------------------------------------- */

/* Per-pair metric breakdown as a JSON object. */
char* sa_evaluate_pair(const char* prediction, const char* reference);

/* Line-aligned prediction/reference files; writes pairs.csv and summary.txt
 * into out_dir and reports the summary text via *summary_out when non-NULL. */
sa_status sa_evaluate_corpus_files(const char* predictions_path, const char* references_path,
                                   const char* out_dir, char** summary_out);

/* ---- dataset statistics ---------------------------------------------------- */

/* Aggregates a dataset manifest and writes the CSV/summary reports
 * (SA_STATS_SVG adds bar charts); reports the summary via *summary_out. */
sa_status sa_dataset_stats(const char* manifest_path, const char* out_dir, uint32_t flags,
                           char** summary_out);

#ifdef __cplusplus
}
#endif

#endif /* SLIDEANIM_H */
