// emend command line front end. Talks to the engine exclusively through the
// C interface of libemend.
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "emend.h"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string data_dir;
  std::string lexicon;
  std::string contractions;
  std::string rules;
  std::string syntax_rules;
  bool paper_faithful = false;
  bool keep_modern_contractions = false;
  int variant_depth = 2;
  int subcat_window = 3;
  int hypothesis_cap = 64;
  int jobs = 1;
  std::string format = "text";
  std::string output_dir;
  std::vector<std::string> inputs;
  std::string word;
  std::string span;
  int occurrence = 1;
  bool verbose = false;
};

struct InputDoc {
  std::string path;
  std::string id;
  std::string author;
  int year = -1;
  std::string text;
};

std::string default_data_dir() {
  const char* env = std::getenv("EMEND_DATA_DIR");
  return env != nullptr ? env : "data";
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  *out = os.str();
  return true;
}

// Sidecar metadata: <input>.meta with id=/author=/year= lines.
void read_sidecar(InputDoc* doc) {
  std::string meta;
  if (!read_file(doc->path + ".meta", &meta)) return;
  std::istringstream in(meta);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "id" && !value.empty()) doc->id = value;
    if (key == "author") doc->author = value;
    if (key == "year") {
      try {
        doc->year = std::stoi(value);
      } catch (...) {
        std::cerr << "warning: bad year '" << value << "' in " << doc->path << ".meta\n";
      }
    }
  }
}

// Expands files and directories (non-recursive *.txt scan) into documents.
int collect_inputs(const std::vector<std::string>& inputs, std::vector<InputDoc>* docs) {
  std::vector<std::string> paths;
  for (const std::string& input : inputs) {
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(input, ec)) {
        if (entry.path().extension() == ".txt") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    } else if (fs::exists(input, ec)) {
      paths.push_back(input);
    } else {
      std::cerr << "error: input does not exist: " << input << "\n";
      return 1;
    }
  }
  for (const std::string& path : paths) {
    InputDoc doc;
    doc.path = path;
    doc.id = fs::path(path).stem().string();
    if (!read_file(path, &doc.text)) {
      std::cerr << "error: cannot read " << path << "\n";
      return 1;
    }
    read_sidecar(&doc);
    docs->push_back(std::move(doc));
  }
  return 0;
}

// Atomic per-document write: temp file in the target directory, then rename.
bool write_atomic(const fs::path& target, const std::string& content) {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out) return false;
  }
  fs::rename(tmp, target, ec);
  return !ec;
}

class EngineHandle {
 public:
  EngineHandle() = default;
  ~EngineHandle() { emend_engine_destroy(engine_); }
  EngineHandle(const EngineHandle&) = delete;
  EngineHandle& operator=(const EngineHandle&) = delete;

  bool open(const Options& opt) {
    emend_options copts;
    emend_options_init(&copts);
    copts.paper_faithful = opt.paper_faithful ? 1 : 0;
    copts.keep_modern_contractions = opt.keep_modern_contractions ? 1 : 0;
    copts.variant_depth = opt.variant_depth;
    copts.subcat_window = opt.subcat_window;
    copts.hypothesis_cap = opt.hypothesis_cap;
    const std::string lexicon =
        !opt.lexicon.empty() ? opt.lexicon : opt.data_dir + "/lexicon.tsv";
    const std::string contractions =
        !opt.contractions.empty() ? opt.contractions : opt.data_dir + "/contractions.tsv";
    const std::string rules = !opt.rules.empty() ? opt.rules : opt.data_dir + "/morph_rules.tsv";
    const std::string syntax =
        !opt.syntax_rules.empty() ? opt.syntax_rules : opt.data_dir + "/syntax_rules.tsv";
    char errbuf[512];
    const emend_status status =
        emend_engine_create(lexicon.c_str(), contractions.c_str(), rules.c_str(), syntax.c_str(),
                            &copts, &engine_, errbuf, sizeof errbuf);
    if (status != EMEND_OK) {
      std::cerr << "error: " << emend_status_name(status) << ": " << errbuf << "\n";
      return false;
    }
    if (opt.verbose) {
      char* info = nullptr;
      if (emend_engine_info(engine_, &info, errbuf, sizeof errbuf) == EMEND_OK) {
        std::cerr << info;
        emend_string_free(info);
      }
    }
    return true;
  }

  const emend_engine* get() const { return engine_; }

 private:
  emend_engine* engine_ = nullptr;
};

struct AnnotatedHandle {
  emend_doc* doc = nullptr;
  ~AnnotatedHandle() { emend_doc_destroy(doc); }
};

// Annotates docs [first, last) with `jobs` worker threads; results land in
// order. The engine is immutable, so concurrent annotate calls are safe.
int annotate_all(const EngineHandle& engine, const std::vector<InputDoc>& docs, int jobs,
                 std::vector<emend_doc*>* out, size_t* warnings) {
  out->assign(docs.size(), nullptr);
  std::atomic<size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      const InputDoc& d = docs[i];
      if (d.text.empty()) {
        std::cerr << "warning: skipping empty document " << d.path << "\n";
        continue;
      }
      char errbuf[512];
      emend_doc* result = nullptr;
      const emend_status status =
          emend_engine_annotate(engine.get(), d.id.c_str(),
                                d.author.empty() ? nullptr : d.author.c_str(), d.year,
                                d.text.c_str(), &result, errbuf, sizeof errbuf);
      if (status != EMEND_OK) {
        std::cerr << "error: " << d.path << ": " << errbuf << "\n";
        failures.fetch_add(1);
        continue;
      }
      (*out)[i] = result;
    }
  };
  const int n = std::max(1, jobs);
  std::vector<std::thread> threads;
  for (int i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  *warnings = 0;
  for (emend_doc* d : *out) {
    if (d != nullptr) *warnings += emend_doc_warning_count(d);
  }
  return failures.load() == 0 ? 0 : 1;
}

void report_warnings(size_t warnings) {
  if (warnings > 0) std::cerr << "warnings: " << warnings << "\n";
}

int cmd_annotate(const Options& opt) {
  EngineHandle engine;
  if (!engine.open(opt)) return 1;
  std::vector<InputDoc> docs;
  if (collect_inputs(opt.inputs, &docs) != 0) return 1;
  if (docs.empty()) std::cerr << "warning: no documents to process\n";
  std::vector<emend_doc*> annotated;
  size_t warnings = 0;
  const int rc = annotate_all(engine, docs, opt.jobs, &annotated, &warnings);
  int write_rc = 0;
  for (size_t i = 0; i < docs.size(); ++i) {
    AnnotatedHandle h{annotated[i]};
    if (h.doc == nullptr) continue;
    const fs::path dir = opt.output_dir.empty() ? fs::path(".") : fs::path(opt.output_dir);
    if (!write_atomic(dir / (docs[i].id + ".ann.tsv"), emend_doc_records(h.doc)) ||
        !write_atomic(dir / (docs[i].id + ".diag.tsv"), emend_doc_diagnostics(h.doc))) {
      std::cerr << "error: cannot write outputs for " << docs[i].id << "\n";
      write_rc = 1;
    }
  }
  std::cerr << "processed " << docs.size() << " document(s)\n";
  report_warnings(warnings);
  return rc != 0 ? rc : write_rc;
}

int cmd_normalize(const Options& opt) {
  EngineHandle engine;
  if (!engine.open(opt)) return 1;
  std::vector<InputDoc> docs;
  if (collect_inputs(opt.inputs, &docs) != 0) return 1;
  if (docs.empty()) std::cerr << "warning: no documents to process\n";
  std::vector<emend_doc*> annotated;
  size_t warnings = 0;
  const int rc = annotate_all(engine, docs, opt.jobs, &annotated, &warnings);
  int write_rc = 0;
  for (size_t i = 0; i < docs.size(); ++i) {
    AnnotatedHandle h{annotated[i]};
    if (h.doc == nullptr) continue;
    const fs::path dir = opt.output_dir.empty() ? fs::path(".") : fs::path(opt.output_dir);
    if (!write_atomic(dir / (docs[i].id + ".modern.txt"), emend_doc_modern_text(h.doc)) ||
        !write_atomic(dir / (docs[i].id + ".align.tsv"), emend_doc_alignment(h.doc))) {
      std::cerr << "error: cannot write outputs for " << docs[i].id << "\n";
      write_rc = 1;
    }
  }
  std::cerr << "processed " << docs.size() << " document(s)\n";
  report_warnings(warnings);
  return rc != 0 ? rc : write_rc;
}

int cmd_stats(const Options& opt) {
  EngineHandle engine;
  if (!engine.open(opt)) return 1;
  std::vector<InputDoc> docs;
  if (collect_inputs(opt.inputs, &docs) != 0) return 1;
  std::vector<emend_doc*> annotated;
  size_t warnings = 0;
  const int rc = annotate_all(engine, docs, opt.jobs, &annotated, &warnings);
  std::vector<AnnotatedHandle> holders(annotated.size());
  std::vector<const emend_doc*> present;
  for (size_t i = 0; i < annotated.size(); ++i) {
    holders[i].doc = annotated[i];
    if (annotated[i] != nullptr) present.push_back(annotated[i]);
  }
  char errbuf[512];
  char* report = nullptr;
  const emend_status status =
      emend_stats_render(present.data(), present.size(), opt.format == "csv" ? 1 : 0, &report,
                         errbuf, sizeof errbuf);
  if (status != EMEND_OK) {
    std::cerr << "error: " << errbuf << "\n";
    return 1;
  }
  if (opt.output_dir.empty()) {
    std::cout << report;
  } else {
    const fs::path target = fs::path(opt.output_dir) /
                            (opt.format == "csv" ? "stats.csv" : "stats.txt");
    if (!write_atomic(target, report)) {
      std::cerr << "error: cannot write " << target << "\n";
      emend_string_free(report);
      return 1;
    }
  }
  emend_string_free(report);
  report_warnings(warnings);
  return rc;
}

int cmd_explain(const Options& opt) {
  if (opt.word.empty() && opt.span.empty()) {
    std::cerr << "error: explain needs --word or --span\n";
    return 1;
  }
  EngineHandle engine;
  if (!engine.open(opt)) return 1;
  std::vector<InputDoc> docs;
  if (collect_inputs(opt.inputs, &docs) != 0) return 1;
  if (docs.size() != 1) {
    std::cerr << "error: explain takes exactly one input file\n";
    return 1;
  }
  char errbuf[512];
  char* trace = nullptr;
  emend_status status = EMEND_ERR_INVALID_ARG;
  if (!opt.span.empty()) {
    const auto dash = opt.span.find('-');
    size_t begin = 0, end = 0;
    try {
      begin = std::stoul(opt.span.substr(0, dash));
      end = dash == std::string::npos ? begin + 1 : std::stoul(opt.span.substr(dash + 1));
    } catch (...) {
      std::cerr << "error: --span wants BEGIN-END codepoint indices\n";
      return 1;
    }
    status = emend_engine_explain_span(engine.get(), docs[0].text.c_str(), begin, end, &trace,
                                       errbuf, sizeof errbuf);
  } else {
    status = emend_engine_explain(engine.get(), docs[0].text.c_str(), opt.word.c_str(),
                                  opt.occurrence, &trace, errbuf, sizeof errbuf);
  }
  if (status != EMEND_OK) {
    std::cerr << "error: " << errbuf << "\n";
    return 1;
  }
  std::cout << trace;
  emend_string_free(trace);
  return 0;
}

void add_common(CLI::App* cmd, Options* opt, bool with_jobs = true) {
  cmd->add_option("--data-dir", opt->data_dir, "directory holding the resource files")
      ->capture_default_str();
  cmd->add_option("--lexicon", opt->lexicon, "lexicon file (default <data-dir>/lexicon.tsv)");
  cmd->add_option("--contractions", opt->contractions,
                  "contraction table (default <data-dir>/contractions.tsv)");
  cmd->add_option("--rules", opt->rules,
                  "morphological rule file (default <data-dir>/morph_rules.tsv)");
  cmd->add_option("--syntax-rules", opt->syntax_rules,
                  "syntax rule file (default <data-dir>/syntax_rules.tsv)");
  cmd->add_flag("--paper-faithful", opt->paper_faithful,
                "spell plural genitives of s-final nouns as wives's instead of wives'");
  cmd->add_flag("--keep-modern-contractions", opt->keep_modern_contractions,
                "leave contractions that are still standard (don't, can't, ...) unexpanded");
  cmd->add_option("--variant-depth", opt->variant_depth,
                  "chained spelling-variant edits, 0..4")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
  cmd->add_option("--subcat-window", opt->subcat_window,
                  "right window for verb collocates, 1..10")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  cmd->add_option("--hypothesis-cap", opt->hypothesis_cap, "per-token hypothesis bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("-v,--verbose", opt->verbose, "print the resource summary on startup");
  if (with_jobs) {
    cmd->add_option("--jobs", opt->jobs, "parallel document workers")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  opt.data_dir = default_data_dir();

  CLI::App app{"17th-century English apostrophe analysis and modernization"};
  app.require_subcommand(1);
  app.set_config("--config", "", "configuration file (ini format); flags override it");
  app.footer("Option precedence: command-line flags, then --config file, then defaults.");

  CLI::App* annotate = app.add_subcommand("annotate", "write annotation records per document");
  add_common(annotate, &opt);
  annotate->add_option("-o,--output", opt.output_dir, "output directory (default .)");
  annotate->add_option("inputs", opt.inputs, "text files or directories")->required();

  CLI::App* normalize =
      app.add_subcommand("normalize", "write modernized text and alignment sidecars");
  add_common(normalize, &opt);
  normalize->add_option("-o,--output", opt.output_dir, "output directory (default .)");
  normalize->add_option("inputs", opt.inputs, "text files or directories")->required();

  CLI::App* stats = app.add_subcommand("stats", "apostrophe-phenomenon statistics report");
  add_common(stats, &opt);
  stats->add_option("--format", opt.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  stats->add_option("-o,--output", opt.output_dir, "write the report here instead of stdout");
  stats->add_option("inputs", opt.inputs, "text files or directories")->required();

  CLI::App* explain =
      app.add_subcommand("explain", "hypothesis/validation trace for one token occurrence");
  add_common(explain, &opt, /*with_jobs=*/false);
  CLI::Option* word_opt = explain->add_option("--word", opt.word, "token surface to explain");
  CLI::Option* span_opt =
      explain->add_option("--span", opt.span, "codepoint span BEGIN-END instead of a word");
  word_opt->excludes(span_opt);
  explain->add_option("--occurrence", opt.occurrence, "1-based occurrence index")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  explain->add_option("inputs", opt.inputs, "one text file")->required();

  CLI11_PARSE(app, argc, argv);

  if (annotate->parsed()) return cmd_annotate(opt);
  if (normalize->parsed()) return cmd_normalize(opt);
  if (stats->parsed()) return cmd_stats(opt);
  if (explain->parsed()) return cmd_explain(opt);
  return 1;
}
