#include "emend.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "emend/normalize.hpp"
#include "emend/stats.hpp"

using namespace emend;

struct emend_engine {
  Engine impl;
  emend_engine(Lexicon lex, MorphRuleSet morph, SyntaxRuleSet syntax, RunConfig config)
      : impl(std::move(lex), std::move(morph), std::move(syntax), config) {}
};

struct emend_doc {
  AnnotatedDocument annotated;
  std::string records;
  std::string modern_text;
  std::string alignment;
  std::string diagnostics;
  size_t warnings = 0;
};

namespace {

void put_error(char* errbuf, size_t errbuf_len, const std::string& message) {
  if (errbuf == nullptr || errbuf_len == 0) return;
  const size_t n = message.size() < errbuf_len - 1 ? message.size() : errbuf_len - 1;
  std::memcpy(errbuf, message.data(), n);
  errbuf[n] = '\0';
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

void emend_options_init(emend_options* opts) {
  if (opts == nullptr) return;
  opts->paper_faithful = 0;
  opts->keep_modern_contractions = 0;
  opts->variant_depth = 2;
  opts->subcat_window = 3;
  opts->hypothesis_cap = 64;
}

emend_status emend_engine_create(const char* lexicon_path, const char* contractions_path,
                                 const char* morph_rules_path, const char* syntax_rules_path,
                                 const emend_options* opts, emend_engine** out, char* errbuf,
                                 size_t errbuf_len) {
  if (out == nullptr || lexicon_path == nullptr || contractions_path == nullptr ||
      morph_rules_path == nullptr || syntax_rules_path == nullptr) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  *out = nullptr;
  RunConfig config;
  if (opts != nullptr) {
    config.paper_faithful = opts->paper_faithful != 0;
    config.keep_modern_contractions = opts->keep_modern_contractions != 0;
    config.variant_depth = opts->variant_depth;
    config.subcat_window = opts->subcat_window;
    config.hypothesis_cap = opts->hypothesis_cap;
  }
  try {
    config.validate();
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INVALID_ARG;
  }
  try {
    Lexicon lexicon = Lexicon::load(lexicon_path, contractions_path);
    MorphRuleSet morph = MorphRuleSet::load(morph_rules_path);
    SyntaxRuleSet syntax = SyntaxRuleSet::load(syntax_rules_path);
    *out = new emend_engine(std::move(lexicon), std::move(morph), std::move(syntax), config);
    return EMEND_OK;
  } catch (const LoadError& e) {
    put_error(errbuf, errbuf_len, e.what());
    const std::string what = e.what();
    return what.find("cannot open") != std::string::npos ? EMEND_ERR_IO : EMEND_ERR_PARSE;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

void emend_engine_destroy(emend_engine* engine) { delete engine; }

emend_status emend_engine_annotate(const emend_engine* engine, const char* doc_id,
                                   const char* author, int year, const char* utf8_text,
                                   emend_doc** out, char* errbuf, size_t errbuf_len) {
  if (engine == nullptr || doc_id == nullptr || utf8_text == nullptr || out == nullptr) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  *out = nullptr;
  if (*utf8_text == '\0') {
    put_error(errbuf, errbuf_len, std::string("document '") + doc_id + "' has empty text");
    return EMEND_ERR_EMPTY_INPUT;
  }
  try {
    SourceDocument source =
        make_document(doc_id, utf8_text, author != nullptr ? author : "",
                      year >= 0 ? std::optional<int>(year) : std::nullopt);
    auto doc = std::make_unique<emend_doc>();
    doc->annotated = engine->impl.annotate(source);
    const NormalizeResult normalized = engine->impl.normalize(doc->annotated);
    doc->records = render_records(doc->annotated);
    doc->modern_text = normalized.modern_text;
    doc->alignment = render_alignment(normalized);
    doc->diagnostics = render_diagnostics(doc->annotated);
    doc->warnings = doc->annotated.diagnostics.size();
    *out = doc.release();
    return EMEND_OK;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

void emend_doc_destroy(emend_doc* doc) { delete doc; }

const char* emend_doc_records(const emend_doc* doc) {
  return doc == nullptr ? "" : doc->records.c_str();
}
const char* emend_doc_modern_text(const emend_doc* doc) {
  return doc == nullptr ? "" : doc->modern_text.c_str();
}
const char* emend_doc_alignment(const emend_doc* doc) {
  return doc == nullptr ? "" : doc->alignment.c_str();
}
const char* emend_doc_diagnostics(const emend_doc* doc) {
  return doc == nullptr ? "" : doc->diagnostics.c_str();
}
size_t emend_doc_warning_count(const emend_doc* doc) {
  return doc == nullptr ? 0 : doc->warnings;
}

emend_status emend_stats_render(const emend_doc* const* docs, size_t ndocs, int as_csv,
                                char** out, char* errbuf, size_t errbuf_len) {
  if (out == nullptr || (docs == nullptr && ndocs > 0)) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  *out = nullptr;
  try {
    std::vector<AnnotatedDocument> annotated;
    annotated.reserve(ndocs);
    for (size_t i = 0; i < ndocs; ++i) {
      if (docs[i] == nullptr) {
        put_error(errbuf, errbuf_len, "null document");
        return EMEND_ERR_INVALID_ARG;
      }
      annotated.push_back(docs[i]->annotated);
    }
    const std::vector<StatsRecord> rows = compute_stats(annotated);
    const std::string text = as_csv != 0 ? render_stats_csv(rows) : render_stats_table(rows);
    *out = dup_string(text);
    return *out != nullptr ? EMEND_OK : EMEND_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

emend_status emend_engine_explain(const emend_engine* engine, const char* utf8_text,
                                  const char* word, int occurrence, char** out, char* errbuf,
                                  size_t errbuf_len) {
  if (engine == nullptr || utf8_text == nullptr || word == nullptr || out == nullptr) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  *out = nullptr;
  if (*utf8_text == '\0') {
    put_error(errbuf, errbuf_len, "empty text");
    return EMEND_ERR_EMPTY_INPUT;
  }
  if (occurrence < 1) {
    put_error(errbuf, errbuf_len, "occurrence must be >= 1");
    return EMEND_ERR_INVALID_ARG;
  }
  try {
    const SourceDocument doc = make_document("explain", utf8_text);
    const std::string text = engine->impl.explain(doc, word, occurrence);
    *out = dup_string(text);
    return *out != nullptr ? EMEND_OK : EMEND_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

emend_status emend_engine_explain_span(const emend_engine* engine, const char* utf8_text,
                                       size_t begin, size_t end, char** out, char* errbuf,
                                       size_t errbuf_len) {
  if (engine == nullptr || utf8_text == nullptr || out == nullptr) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  *out = nullptr;
  if (*utf8_text == '\0') {
    put_error(errbuf, errbuf_len, "empty text");
    return EMEND_ERR_EMPTY_INPUT;
  }
  if (end <= begin) {
    put_error(errbuf, errbuf_len, "span end must be greater than begin");
    return EMEND_ERR_INVALID_ARG;
  }
  try {
    const SourceDocument doc = make_document("explain", utf8_text);
    const std::string text = engine->impl.explain_span(doc, begin, end);
    *out = dup_string(text);
    return *out != nullptr ? EMEND_OK : EMEND_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

emend_status emend_engine_info(const emend_engine* engine, char** out, char* errbuf,
                               size_t errbuf_len) {
  if (engine == nullptr || out == nullptr) {
    put_error(errbuf, errbuf_len, "null argument");
    return EMEND_ERR_INVALID_ARG;
  }
  try {
    *out = dup_string(engine->impl.resource_summary());
    return *out != nullptr ? EMEND_OK : EMEND_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return EMEND_ERR_INTERNAL;
  }
}

void emend_string_free(char* s) { delete[] s; }

const char* emend_version(void) { return "0.1.0"; }

const char* emend_status_name(emend_status status) {
  switch (status) {
    case EMEND_OK: return "ok";
    case EMEND_ERR_INVALID_ARG: return "invalid argument";
    case EMEND_ERR_IO: return "i/o error";
    case EMEND_ERR_PARSE: return "parse error";
    case EMEND_ERR_EMPTY_INPUT: return "empty input";
    case EMEND_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

}  // extern "C"
