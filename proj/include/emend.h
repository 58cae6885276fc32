/* emend - 17th-century English apostrophe analysis and modernization.
 *
 * C interface of the shared library. Engines are immutable once created and
 * safe to share across threads; annotated documents are independent objects.
 * Every function that can fail returns an emend_status and, when an error
 * buffer is supplied, a human-readable message.
 */
#ifndef EMEND_H
#define EMEND_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum emend_status {
  EMEND_OK = 0,
  EMEND_ERR_INVALID_ARG = 1,
  EMEND_ERR_IO = 2,
  EMEND_ERR_PARSE = 3,
  EMEND_ERR_EMPTY_INPUT = 4,
  EMEND_ERR_INTERNAL = 5
} emend_status;

typedef struct emend_engine emend_engine; /* opaque */
typedef struct emend_doc emend_doc;       /* opaque annotated document */

typedef struct emend_options {
  int paper_faithful;           /* 0/1: plural genitive as wives's instead of wives' */
  int keep_modern_contractions; /* 0/1: leave don't, can't, ... unexpanded */
  int variant_depth;            /* chained spelling-variant edits, 0..4 */
  int subcat_window;            /* right window for verb collocates, 1..10 */
  int hypothesis_cap;           /* per-token hypothesis bound */
} emend_options;

/* Fills in the defaults (0, 0, 2, 3, 64). */
void emend_options_init(emend_options* opts);

/* Loads the four resource files and builds an engine. On failure returns a
 * non-OK status and writes a message into errbuf (always NUL-terminated when
 * errbuf_len > 0). opts may be NULL for defaults. */
emend_status emend_engine_create(const char* lexicon_path, const char* contractions_path,
                                 const char* morph_rules_path, const char* syntax_rules_path,
                                 const emend_options* opts, emend_engine** out, char* errbuf,
                                 size_t errbuf_len);
void emend_engine_destroy(emend_engine* engine);

/* Runs the full pipeline over one UTF-8 document. author may be NULL, year < 0
 * means unknown. Thread-safe for concurrent calls on one engine. */
emend_status emend_engine_annotate(const emend_engine* engine, const char* doc_id,
                                   const char* author, int year, const char* utf8_text,
                                   emend_doc** out, char* errbuf, size_t errbuf_len);
void emend_doc_destroy(emend_doc* doc);

/* Accessors return pointers owned by the document, valid until destroy. */
const char* emend_doc_records(const emend_doc* doc);     /* annotation records, TSV lines */
const char* emend_doc_modern_text(const emend_doc* doc); /* modernized text */
const char* emend_doc_alignment(const emend_doc* doc);   /* span pairs, TSV lines */
const char* emend_doc_diagnostics(const emend_doc* doc); /* diagnostics, TSV lines */
size_t emend_doc_warning_count(const emend_doc* doc);

/* Statistics report over a set of annotated documents; *out is heap-allocated,
 * release it with emend_string_free. as_csv selects CSV over the text table. */
emend_status emend_stats_render(const emend_doc* const* docs, size_t ndocs, int as_csv,
                                char** out, char* errbuf, size_t errbuf_len);

/* Hypothesis/validation trace for the occurrence-th (1-based) case-insensitive
 * match of word in the text. */
emend_status emend_engine_explain(const emend_engine* engine, const char* utf8_text,
                                  const char* word, int occurrence, char** out, char* errbuf,
                                  size_t errbuf_len);

/* Same trace, addressed by a half-open codepoint span into the text. */
emend_status emend_engine_explain_span(const emend_engine* engine, const char* utf8_text,
                                       size_t begin, size_t end, char** out, char* errbuf,
                                       size_t errbuf_len);

/* Resource summary: lexicon size and entry counts per part of speech,
 * contraction and rule counts. Free with emend_string_free. */
emend_status emend_engine_info(const emend_engine* engine, char** out, char* errbuf,
                               size_t errbuf_len);

void emend_string_free(char* s);
const char* emend_version(void);
const char* emend_status_name(emend_status status);

#ifdef __cplusplus
}
#endif

#endif /* EMEND_H */
