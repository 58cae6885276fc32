#include "emend/lexicon.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "emend/utf8.hpp"

namespace emend {

const char* pos_name(Pos pos) {
  switch (pos) {
    case Pos::N: return "N";
    case Pos::V: return "V";
    case Pos::ADJ: return "ADJ";
    case Pos::ADV: return "ADV";
    case Pos::PRO: return "PRO";
    case Pos::DET: return "DET";
    case Pos::CONJ: return "CONJ";
    case Pos::PREP: return "PREP";
    case Pos::INTJ: return "INTJ";
  }
  return "?";
}

Pos pos_from_string(const std::string& s) {
  static const std::array<Pos, 9> all = {Pos::N,   Pos::V,    Pos::ADJ,  Pos::ADV, Pos::PRO,
                                         Pos::DET, Pos::CONJ, Pos::PREP, Pos::INTJ};
  for (Pos p : all) {
    if (s == pos_name(p)) return p;
  }
  throw std::invalid_argument("unknown part of speech '" + s + "'");
}

void Features::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool Features::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Features::get(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::string() : it->second;
}

std::string Features::render() const {
  static const std::array<const char*, 3> front = {"Tense", "Pers", "Nb"};
  std::string out;
  auto append = [&out](const std::string& k, const std::string& v) {
    if (!out.empty()) out += '+';
    out += k;
    if (!v.empty()) {
      out += '=';
      out += v;
    }
  };
  for (const char* k : front) {
    auto it = values_.find(k);
    if (it != values_.end()) append(it->first, it->second);
  }
  for (const auto& [k, v] : values_) {
    bool in_front = false;
    for (const char* f : front) {
      if (k == f) in_front = true;
    }
    if (!in_front) append(k, v);
  }
  return out;
}

std::string Features::render_with(Pos pos) const {
  std::string feats = render();
  std::string out = pos_name(pos);
  if (!feats.empty()) {
    out += '+';
    out += feats;
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& name, std::size_t lineno, const std::string& what) {
  std::ostringstream os;
  os << name << ":" << lineno << ": " << what;
  throw LoadError(os.str());
}

// Parses "feature,feature,..." where subcat=a,b,c consumes trailing bare items.
void parse_features(const std::string& field, const std::string& name, std::size_t lineno,
                    Features* features, std::vector<std::string>* subcat) {
  if (trim(field).empty()) return;
  bool in_subcat = false;
  for (const std::string& raw : split(field, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) fail(name, lineno, "empty feature item");
    auto eq = item.find('=');
    if (eq != std::string::npos) {
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "subcat") {
        if (subcat == nullptr) fail(name, lineno, "subcat not allowed here");
        in_subcat = true;
        if (!value.empty()) subcat->push_back(fold_case_utf8(value));
      } else {
        in_subcat = false;
        features->set(key, value);
      }
    } else if (in_subcat) {
      subcat->push_back(fold_case_utf8(item));
    } else {
      features->set(item);
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

void Lexicon::parse_lexicon(const std::string& text, const std::string& name) {
  std::set<std::string> seen;
  std::size_t lineno = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 3 || cols.size() > 4) {
      fail(name, lineno, "expected form<TAB>lemma<TAB>pos[<TAB>features], got " +
                             std::to_string(cols.size()) + " fields");
    }
    LexEntry entry;
    entry.form = fold_case_utf8(trim(cols[0]));
    entry.lemma = fold_case_utf8(trim(cols[1]));
    if (entry.form.empty() || entry.lemma.empty()) fail(name, lineno, "empty form or lemma");
    try {
      entry.pos = pos_from_string(trim(cols[2]));
    } catch (const std::invalid_argument& e) {
      fail(name, lineno, e.what());
    }
    if (cols.size() == 4) parse_features(cols[3], name, lineno, &entry.features, &entry.subcat);

    const std::string key =
        entry.form + "\x1f" + entry.lemma + "\x1f" + pos_name(entry.pos) + "\x1f" +
        entry.features.render();
    if (!seen.insert(key).second) {
      fail(name, lineno, "duplicate entry for form '" + entry.form + "'");
    }
    entries_[entry.form].push_back(std::move(entry));
    ++total_entries_;
  }
}

void Lexicon::parse_contractions(const std::string& text, const std::string& name) {
  std::size_t lineno = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 4 || cols.size() > 5) {
      fail(name, lineno,
           "expected short_form<TAB>expansion<TAB>keep|expand<TAB>source[<TAB>note]");
    }
    ContractionEntry entry;
    entry.short_form = fold_case_utf8(trim(cols[0]));
    if (entry.short_form.empty()) fail(name, lineno, "empty short form");
    if (entry.short_form.find('\'') == std::string::npos) {
      fail(name, lineno, "short form '" + entry.short_form + "' has no apostrophe");
    }
    for (const std::string& piece : split(cols[1], '|')) {
      const std::vector<std::string> sub = split(piece, ':');
      if (sub.size() < 3 || sub.size() > 4) {
        fail(name, lineno, "expansion element needs surface:lemma:POS[:features]");
      }
      ContractionToken tok;
      tok.surface = trim(sub[0]);
      tok.lemma = fold_case_utf8(trim(sub[1]));
      if (tok.surface.empty() || tok.lemma.empty()) fail(name, lineno, "empty expansion element");
      try {
        tok.pos = pos_from_string(trim(sub[2]));
      } catch (const std::invalid_argument& e) {
        fail(name, lineno, e.what());
      }
      if (sub.size() == 4) parse_features(sub[3], name, lineno, &tok.features, nullptr);
      entry.expansion.push_back(std::move(tok));
    }
    if (entry.expansion.empty()) fail(name, lineno, "empty expansion");
    const std::string keep = trim(cols[2]);
    if (keep == "keep") {
      entry.keep_in_modern = true;
    } else if (keep == "expand") {
      entry.keep_in_modern = false;
    } else {
      fail(name, lineno, "third field must be 'keep' or 'expand', got '" + keep + "'");
    }
    const std::string source = trim(cols[3]);
    if (source == "Miege") {
      entry.source = ContractionSource::Miege;
    } else if (source == "Corpus") {
      entry.source = ContractionSource::Corpus;
    } else if (source == "Editor") {
      entry.source = ContractionSource::Editor;
    } else {
      fail(name, lineno, "unknown source '" + source + "'");
    }
    if (cols.size() == 5) entry.note = trim(cols[4]);
    if (contraction_index_.count(entry.short_form)) {
      fail(name, lineno, "duplicate contraction '" + entry.short_form + "'");
    }
    contraction_index_[entry.short_form] = contractions_.size();
    contractions_.push_back(std::move(entry));
  }
}

void Lexicon::build_index() {
  by_lemma_.clear();
  for (const auto& [form, entries] : entries_) {
    for (const LexEntry& e : entries) by_lemma_[e.lemma].push_back(&e);
  }
  // every PT/PP verb form must be backed by its lemma's base form
  for (const auto& [form, entries] : entries_) {
    for (const LexEntry& e : entries) {
      if (e.pos != Pos::V) continue;
      const std::string tense = e.features.get("Tense");
      if (tense != "PT" && tense != "PP") continue;
      bool base_present = false;
      auto it = entries_.find(e.lemma);
      if (it != entries_.end()) {
        for (const LexEntry& base : it->second) {
          if (base.pos == Pos::V) base_present = true;
        }
      }
      if (!base_present) {
        throw LoadError("verb form '" + e.form + "' has no base-form entry for lemma '" +
                        e.lemma + "'");
      }
    }
  }
}

Lexicon Lexicon::load(const std::string& lexicon_path, const std::string& contractions_path) {
  Lexicon lex;
  lex.parse_lexicon(read_file(lexicon_path), lexicon_path);
  lex.parse_contractions(read_file(contractions_path), contractions_path);
  lex.build_index();
  return lex;
}

Lexicon Lexicon::load_from_strings(const std::string& lexicon_text,
                                   const std::string& contractions_text,
                                   const std::string& lexicon_name,
                                   const std::string& contractions_name) {
  Lexicon lex;
  lex.parse_lexicon(lexicon_text, lexicon_name);
  lex.parse_contractions(contractions_text, contractions_name);
  lex.build_index();
  return lex;
}

const LexEntry* Lexicon::find_verb_past(const std::string& lemma) const {
  auto it = by_lemma_.find(fold_case_utf8(lemma));
  if (it == by_lemma_.end()) return nullptr;
  const LexEntry* best = nullptr;
  for (const LexEntry* e : it->second) {
    if (e->pos != Pos::V) continue;
    const std::string tense = e->features.get("Tense");
    if (tense == "PT" || tense == "PP") {
      if (best == nullptr || e->form < best->form) best = e;
    }
  }
  return best;
}

const LexEntry* Lexicon::find_noun_plural(const std::string& lemma) const {
  auto it = by_lemma_.find(fold_case_utf8(lemma));
  if (it == by_lemma_.end()) return nullptr;
  const LexEntry* best = nullptr;
  for (const LexEntry* e : it->second) {
    if (e->pos == Pos::N && e->features.get("Nb") == "p") {
      if (best == nullptr || e->form < best->form) best = e;
    }
  }
  return best;
}

const std::vector<LexEntry>& Lexicon::lookup(const std::string& form) const {
  static const std::vector<LexEntry> empty;
  auto it = entries_.find(fold_case_utf8(form));
  return it == entries_.end() ? empty : it->second;
}

const ContractionEntry* Lexicon::lookup_contraction(const std::string& cluster) const {
  auto it = contraction_index_.find(fold_case_utf8(cluster));
  return it == contraction_index_.end() ? nullptr : &contractions_[it->second];
}

std::map<std::string, std::size_t> Lexicon::entry_counts_by_pos() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& [form, entries] : entries_) {
    for (const LexEntry& e : entries) counts[pos_name(e.pos)]++;
  }
  return counts;
}

std::vector<std::string> Lexicon::verb_lemmas() const {
  std::set<std::string> lemmas;
  for (const auto& [form, entries] : entries_) {
    for (const LexEntry& e : entries) {
      if (e.pos == Pos::V) lemmas.insert(e.lemma);
    }
  }
  return {lemmas.begin(), lemmas.end()};
}

}  // namespace emend
