#include "emend/morph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace emend {

const char* family_name(Family family) {
  switch (family) {
    case Family::Lexical: return "lexical";
    case Family::Contraction: return "contraction";
    case Family::Elision: return "elision";
    case Family::TPreterit: return "t_preterit";
    case Family::Genitive: return "genitive";
    case Family::GenitiveBare: return "genitive_bare";
    case Family::Interlingual: return "interlingual";
    case Family::PluralNoun: return "plural_noun";
  }
  return "?";
}

const char* status_name(AnalysisStatus status) {
  switch (status) {
    case AnalysisStatus::Hypothesis: return "Hypothesis";
    case AnalysisStatus::Validated: return "Validated";
    case AnalysisStatus::Invalidated: return "Invalidated";
  }
  return "?";
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
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& name, std::size_t lineno, const std::string& what) {
  std::ostringstream os;
  os << name << ":" << lineno << ": " << what;
  throw LoadError(os.str());
}

MorphCondition parse_condition_atom(std::string atom, const std::string& name,
                                    std::size_t lineno) {
  MorphCondition cond;
  if (atom.rfind("stem:", 0) == 0) {
    cond.on_stem = true;
    atom = atom.substr(5);
  }
  if (atom == "any") {
    cond.kind = MorphCondition::Kind::Any;
  } else if (atom == "doubledFinal") {
    cond.kind = MorphCondition::Kind::DoubledFinal;
  } else if (atom == "endsVowel") {
    cond.kind = MorphCondition::Kind::EndsVowel;
  } else if (atom.rfind("prefix=", 0) == 0) {
    cond.kind = MorphCondition::Kind::Prefix;
    cond.text = atom.substr(7);
  } else if (atom.rfind("suffix=", 0) == 0) {
    cond.kind = MorphCondition::Kind::Suffix;
    cond.text = atom.substr(7);
  } else if (atom.rfind("contains=", 0) == 0) {
    cond.kind = MorphCondition::Kind::Contains;
    cond.text = atom.substr(9);
  } else if (atom.rfind("endsIn=", 0) == 0) {
    cond.kind = MorphCondition::Kind::EndsIn;
    cond.ends = split(atom.substr(7), ',');
  } else {
    fail(name, lineno, "unknown condition atom '" + atom + "'");
  }
  return cond;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

bool condition_holds(const MorphCondition& cond, const std::string& folded) {
  switch (cond.kind) {
    case MorphCondition::Kind::Any:
      return true;
    case MorphCondition::Kind::Prefix:
      return starts_with(folded, cond.text);
    case MorphCondition::Kind::Suffix:
      return ends_with(folded, cond.text);
    case MorphCondition::Kind::Contains:
      return folded.find(cond.text) != std::string::npos;
    case MorphCondition::Kind::DoubledFinal:
      return folded.size() >= 2 && folded[folded.size() - 1] == folded[folded.size() - 2];
    case MorphCondition::Kind::EndsVowel: {
      if (folded.empty()) return false;
      const char c = folded.back();
      return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    }
    case MorphCondition::Kind::EndsIn:
      for (const std::string& e : cond.ends) {
        if (ends_with(folded, e)) return true;
      }
      return false;
  }
  return false;
}

// All single applications of the transform, ordered by position.
std::vector<std::string> apply_transform(const MorphRule& rule, const std::string& folded) {
  std::vector<std::string> out;
  switch (rule.transform) {
    case TransformKind::None:
      out.push_back(folded);
      break;
    case TransformKind::Append:
      out.push_back(folded + rule.arg_a);
      break;
    case TransformKind::StripSuffix:
      if (ends_with(folded, rule.arg_a) && folded.size() > rule.arg_a.size()) {
        out.push_back(folded.substr(0, folded.size() - rule.arg_a.size()));
      }
      break;
    case TransformKind::SubPrefix:
      if (starts_with(folded, rule.arg_a)) {
        out.push_back(rule.arg_b + folded.substr(rule.arg_a.size()));
      }
      break;
    case TransformKind::SubSuffix:
      if (ends_with(folded, rule.arg_a)) {
        out.push_back(folded.substr(0, folded.size() - rule.arg_a.size()) + rule.arg_b);
      }
      break;
    case TransformKind::SubChar: {
      const char from = rule.arg_a.empty() ? '\0' : rule.arg_a[0];
      const char to = rule.arg_b.empty() ? '\0' : rule.arg_b[0];
      for (std::size_t i = 0; i < folded.size(); ++i) {
        if (folded[i] == from) {
          std::string v = folded;
          v[i] = to;
          out.push_back(std::move(v));
        }
      }
      break;
    }
    case TransformKind::DoubleFinal:
      if (!folded.empty()) out.push_back(folded + folded.back());
      break;
    case TransformKind::UndoubleFinal:
      if (folded.size() >= 2 && folded[folded.size() - 1] == folded[folded.size() - 2]) {
        out.push_back(folded.substr(0, folded.size() - 1));
      }
      break;
  }
  // transforms never yield an empty string
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

// Restores the source token's initial capital on a lexicon-cased form.
std::string restore_case(const std::string& source_surface, const std::string& modern) {
  const std::u32string src = utf8_decode(source_surface);
  bool upper = false;
  for (char32_t c : src) {
    if (is_letter(c)) {
      upper = is_upper(c);
      break;
    }
  }
  if (!upper) return modern;
  std::u32string out = utf8_decode(modern);
  for (auto& c : out) {
    if (is_letter(c)) {
      c = to_upper(c);
      break;
    }
  }
  return utf8_encode(out);
}

}  // namespace

MorphRuleSet MorphRuleSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return load_from_string(os.str(), path);
}

MorphRuleSet MorphRuleSet::load_from_string(const std::string& text, const std::string& name) {
  MorphRuleSet set;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 5) {
      fail(name, lineno, "expected id<TAB>tier<TAB>condition<TAB>transform<TAB>emit");
    }
    MorphRule rule;
    rule.id = trim(cols[0]);
    if (rule.id.empty()) fail(name, lineno, "empty rule id");
    if (!ids.insert(rule.id).second) fail(name, lineno, "duplicate rule id '" + rule.id + "'");
    try {
      rule.tier = std::stoi(trim(cols[1]));
    } catch (...) {
      fail(name, lineno, "tier must be an integer");
    }
    if (rule.tier < 0) fail(name, lineno, "tier must be >= 0");
    for (const std::string& atom : split(trim(cols[2]), ';')) {
      rule.conditions.push_back(parse_condition_atom(trim(atom), name, lineno));
    }
    const std::vector<std::string> tparts = split(trim(cols[3]), ':');
    const std::string& tkind = tparts[0];
    auto want_args = [&](std::size_t n) {
      if (tparts.size() != n + 1) fail(name, lineno, "transform '" + tkind + "' arity");
    };
    if (tkind == "none") {
      want_args(0);
      rule.transform = TransformKind::None;
    } else if (tkind == "append") {
      want_args(1);
      rule.transform = TransformKind::Append;
      rule.arg_a = tparts[1];
    } else if (tkind == "strip_suffix") {
      want_args(1);
      rule.transform = TransformKind::StripSuffix;
      rule.arg_a = tparts[1];
    } else if (tkind == "sub_prefix") {
      want_args(2);
      rule.transform = TransformKind::SubPrefix;
      rule.arg_a = tparts[1];
      rule.arg_b = tparts[2];
    } else if (tkind == "sub_suffix") {
      want_args(2);
      rule.transform = TransformKind::SubSuffix;
      rule.arg_a = tparts[1];
      rule.arg_b = tparts[2];
    } else if (tkind == "sub_char") {
      want_args(2);
      rule.transform = TransformKind::SubChar;
      rule.arg_a = tparts[1];
      rule.arg_b = tparts[2];
    } else if (tkind == "double_final") {
      want_args(0);
      rule.transform = TransformKind::DoubleFinal;
    } else if (tkind == "undouble_final") {
      want_args(0);
      rule.transform = TransformKind::UndoubleFinal;
    } else {
      fail(name, lineno, "unknown transform '" + tkind + "'");
    }
    const std::string ekind = trim(cols[4]);
    if (ekind == "verb_past") {
      rule.emit = EmitKind::VerbPast;
    } else if (ekind == "verb_past_lemma_e") {
      rule.emit = EmitKind::VerbPastLemmaE;
    } else if (ekind == "plural_of_noun") {
      rule.emit = EmitKind::PluralOfNoun;
    } else if (ekind == "genitive") {
      rule.emit = EmitKind::Genitive;
    } else if (ekind == "genitive_bare") {
      rule.emit = EmitKind::GenitiveBare;
    } else if (ekind == "interlingual") {
      rule.emit = EmitKind::Interlingual;
    } else if (ekind == "t_preterit") {
      rule.emit = EmitKind::TPreterit;
    } else if (ekind == "variant") {
      rule.emit = EmitKind::Variant;
    } else {
      fail(name, lineno, "unknown emit kind '" + ekind + "'");
    }
    set.rules_.push_back(std::move(rule));
  }
  std::stable_sort(set.rules_.begin(), set.rules_.end(),
                   [](const MorphRule& a, const MorphRule& b) {
                     if (a.tier != b.tier) return a.tier < b.tier;
                     return a.id < b.id;
                   });
  return set;
}

std::vector<const MorphRule*> MorphRuleSet::rules_for(EmitKind kind) const {
  std::vector<const MorphRule*> out;
  for (const MorphRule& r : rules_) {
    if (r.emit == kind) out.push_back(&r);
  }
  return out;
}

bool stem_supports_t_preterit(const std::string& stem) {
  const std::string s = fold_case_utf8(stem);
  return ends_with(s, "p") || ends_with(s, "k") || ends_with(s, "x") || ends_with(s, "ss") ||
         ends_with(s, "sh");
}

std::string modern_past_of(const Lexicon& lexicon, const std::string& lemma) {
  if (const LexEntry* past = lexicon.find_verb_past(lemma)) return past->form;
  const std::string folded = fold_case_utf8(lemma);
  return ends_with(folded, "e") ? folded + "d" : folded + "ed";
}

// ---------------------------------------------------------------------------
// Hypothesis generation

struct MorphEngine::Gen {
  const MorphEngine& eng;
  std::string token_surface;  // for case restoration
  std::vector<Analysis> analyses;
  std::vector<CascadeAttempt> attempts;
  std::set<std::string> variant_seen;
  bool cap_exceeded = false;

  explicit Gen(const MorphEngine& e) : eng(e) {}

  bool full() {
    if (analyses.size() >= static_cast<std::size_t>(eng.config_.hypothesis_cap)) {
      cap_exceeded = true;
      return true;
    }
    return false;
  }

  void note(int tier, const std::string& rule, const std::string& candidate,
            const std::string& outcome) {
    attempts.push_back({tier, rule, candidate, outcome});
  }

  void emit(Analysis a) {
    if (full()) return;
    analyses.push_back(std::move(a));
  }

  int tier_for(int base_tier, int edits) const { return edits == 0 ? base_tier : 1 + edits; }

  // Direct dictionary hit on `word` (after `edits` variant edits).
  void lexical(const std::string& word, const std::string& surface_cased, int edits,
               const std::vector<std::string>& trace) {
    const auto& entries = eng.lexicon_.lookup(word);
    const int tier = tier_for(0, edits);
    if (entries.empty()) {
      note(tier, "lexicon", word, "no lexicon entry");
      return;
    }
    for (const LexEntry& e : entries) {
      Analysis a;
      a.surface = surface_cased;
      a.lemma = e.lemma;
      a.pos = e.pos;
      a.features = e.features;
      a.modern_form = edits == 0 ? surface_cased : restore_case(token_surface, word);
      a.rule_trace = trace;
      a.tier = tier;
      a.family = Family::Lexical;
      emit(std::move(a));
      note(tier, "lexicon", word, "hypothesis " + e.features.render_with(e.pos));
    }
  }

  // ed/ted/sed suffixation plus mute-e restoration on an elision stem.
  void elision_rules(const std::string& stem, const std::string& stem_cased, int edits,
                     const std::vector<std::string>& trace) {
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::VerbPast)) {
      if (!eng.rule_applies(*rule, stem)) continue;
      for (const std::string& cand : apply_transform(*rule, stem)) {
        const int tier = tier_for(rule->tier, edits);
        bool hit = false;
        for (const LexEntry& e : eng.lexicon_.lookup(cand)) {
          const std::string tense = e.features.get("Tense");
          if (e.pos != Pos::V || (tense != "PT" && tense != "PP")) continue;
          hit = true;
          Analysis a;
          a.surface = stem_cased;
          a.lemma = e.lemma;
          a.pos = Pos::V;
          a.features = e.features;
          a.modern_form = restore_case(token_surface, e.form);
          a.rule_trace = trace;
          a.rule_trace.push_back(rule->id);
          a.tier = tier;
          a.family = Family::Elision;
          emit(std::move(a));
        }
        note(tier, rule->id, cand,
             hit ? "hypothesis" : "candidate is not a past/participle verb in the lexicon");
      }
    }
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::VerbPastLemmaE)) {
      if (!eng.rule_applies(*rule, stem)) continue;
      for (const std::string& lemma_cand : apply_transform(*rule, stem)) {
        const int tier = tier_for(rule->tier, edits);
        bool is_verb = false;
        for (const LexEntry& e : eng.lexicon_.lookup(lemma_cand)) {
          if (e.pos == Pos::V && e.lemma == lemma_cand) is_verb = true;
        }
        if (!is_verb) {
          note(tier, rule->id, lemma_cand, "restored lemma is not a lexicon verb");
          continue;
        }
        const std::string modern = modern_past_of(eng.lexicon_, lemma_cand);
        for (const char* tense : {"PP", "PT"}) {
          Analysis a;
          a.surface = stem_cased;
          a.lemma = lemma_cand;
          a.pos = Pos::V;
          a.features.set("Tense", tense);
          a.modern_form = restore_case(token_surface, modern);
          a.rule_trace = trace;
          a.rule_trace.push_back(rule->id);
          a.tier = tier;
          a.family = Family::Elision;
          emit(std::move(a));
        }
        note(tier, rule->id, lemma_cand, "hypothesis (mute e restored)");
      }
    }
  }

  // -es plural reading of a bare stem (profes -> prof + es).
  void plural_rules(const std::string& word, const std::string& surface_cased, int edits,
                    const std::vector<std::string>& trace) {
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::PluralOfNoun)) {
      if (!eng.rule_applies(*rule, word)) continue;
      for (const std::string& stem : apply_transform(*rule, word)) {
        const int tier = tier_for(rule->tier, edits);
        bool hit = false;
        for (const LexEntry& e : eng.lexicon_.lookup(stem)) {
          if (e.pos != Pos::N || e.features.get("Nb") == "p") continue;
          hit = true;
          Analysis a;
          a.surface = surface_cased;
          a.lemma = e.lemma;
          a.pos = Pos::N;
          a.features = e.features;
          a.features.set("Nb", "p");
          const LexEntry* plural = eng.lexicon_.find_noun_plural(e.lemma);
          a.modern_form =
              restore_case(token_surface, plural != nullptr ? plural->form : stem + "s");
          a.rule_trace = trace;
          a.rule_trace.push_back(rule->id);
          a.tier = tier;
          a.family = Family::PluralNoun;
          emit(std::move(a));
        }
        note(tier, rule->id, stem, hit ? "hypothesis" : "stem is not a singular lexicon noun");
      }
    }
  }

  void genitive_rules(const std::string& word, const std::string& surface_cased) {
    // marked or omitted genitive: strip 's / s / trailing ' and look the stem up
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::Genitive)) {
      if (!eng.rule_applies(*rule, word)) continue;
      for (const std::string& stem : apply_transform(*rule, word)) {
        bool hit = false;
        for (const LexEntry& e : eng.lexicon_.lookup(stem)) {
          if (e.pos != Pos::N && e.pos != Pos::PRO) continue;
          // only nouns form the genitive with the marker omitted; pronoun
          // genitives (another's) always carry the apostrophe
          if (word.find('\'') == std::string::npos && e.pos != Pos::N) continue;
          if (ends_with(word, "s'") && e.features.get("Nb") != "p") continue;
          hit = true;
          Analysis a;
          a.surface = surface_cased;
          a.lemma = e.lemma;
          a.pos = e.pos;
          a.features = e.features;
          a.features.set("gen_sax");
          if (word.find('\'') != std::string::npos) {
            a.modern_form = surface_cased;  // already correctly apostrophized
          } else {
            // reinsert the apostrophe before the final s of the surface
            const std::u32string src = utf8_decode(surface_cased);
            a.modern_form = utf8_encode(src.substr(0, src.size() - 1)) + "'s";
          }
          a.rule_trace.push_back(rule->id);
          a.tier = rule->tier;
          a.family = Family::Genitive;
          emit(std::move(a));
        }
        note(rule->tier, rule->id, stem,
             hit ? "hypothesis" : "stem is not a lexicon noun or pronoun");
      }
    }
    // plural noun in -s doubling as an unmarked genitive (wives)
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::GenitiveBare)) {
      if (!eng.rule_applies(*rule, word)) continue;
      bool hit = false;
      for (const LexEntry& e : eng.lexicon_.lookup(word)) {
        if (e.pos != Pos::N || e.features.get("Nb") != "p") continue;
        hit = true;
        Analysis a;
        a.surface = surface_cased;
        a.lemma = e.lemma;
        a.pos = Pos::N;
        a.features = e.features;
        a.features.set("gen_sax");
        a.modern_form = surface_cased + (eng.config_.paper_faithful ? "'s" : "'");
        a.rule_trace.push_back(rule->id);
        a.tier = rule->tier;
        a.family = Family::GenitiveBare;
        emit(std::move(a));
      }
      note(rule->tier, rule->id, word,
           hit ? "hypothesis (needs conjunction context)" : "surface is not a plural lexicon noun");
    }
  }

  void interlingual_rules(const std::string& word, const std::string& surface_cased) {
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::Interlingual)) {
      if (!eng.rule_applies(*rule, word)) continue;
      for (const std::string& stem : apply_transform(*rule, word)) {
        if (!eng.stem_condition_holds(*rule, stem)) {
          note(rule->tier, rule->id, stem, "stem does not end in a vowel");
          continue;
        }
        bool hit = false;
        for (const LexEntry& e : eng.lexicon_.lookup(stem)) {
          if (e.pos != Pos::N || !e.features.has("Foreign")) continue;
          hit = true;
          Analysis a;
          a.surface = surface_cased;
          a.lemma = e.lemma;
          a.pos = Pos::N;
          a.features = e.features;
          a.features.set("Nb", "p");
          // delete the apostrophe and concatenate the s
          const std::u32string src = utf8_decode(surface_cased);
          a.modern_form = utf8_encode(src.substr(0, src.size() - 2)) + "s";
          a.rule_trace.push_back(rule->id);
          a.tier = rule->tier;
          a.family = Family::Interlingual;
          emit(std::move(a));
        }
        note(rule->tier, rule->id, stem,
             hit ? "hypothesis" : "stem is not flagged Foreign in the lexicon");
      }
    }
  }

  void t_preterit_rules(const std::string& word, const std::string& surface_cased) {
    for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::TPreterit)) {
      if (!eng.rule_applies(*rule, word)) continue;
      for (const std::string& stripped : apply_transform(*rule, word)) {
        // the stem itself, plus single consonant adjustments from the variant table
        std::vector<std::pair<std::string, std::vector<std::string>>> stems;
        stems.emplace_back(stripped, std::vector<std::string>{});
        for (const MorphRule* var : eng.rules_.rules_for(EmitKind::Variant)) {
          if (!eng.rule_applies(*var, stripped)) continue;
          for (const std::string& adj : apply_transform(*var, stripped)) {
            stems.emplace_back(adj, std::vector<std::string>{var->id});
          }
        }
        bool hit = false;
        for (const auto& [stem, via] : stems) {
          if (!eng.stem_condition_holds(*rule, stem)) continue;
          bool is_verb = false;
          for (const LexEntry& e : eng.lexicon_.lookup(stem)) {
            if (e.pos == Pos::V && e.lemma == stem) is_verb = true;
          }
          if (!is_verb) continue;
          hit = true;
          const std::string modern = modern_past_of(eng.lexicon_, stem);
          for (const char* tense : {"PP", "PT"}) {
            Analysis a;
            a.surface = surface_cased;
            a.lemma = stem;
            a.pos = Pos::V;
            a.features.set("Tense", tense);
            a.modern_form = restore_case(token_surface, modern);
            a.rule_trace.push_back(rule->id);
            for (const std::string& v : via) a.rule_trace.push_back(v);
            a.tier = rule->tier;
            a.family = Family::TPreterit;
            emit(std::move(a));
          }
          if (!via.empty()) break;  // first adjusted stem only
        }
        note(rule->tier, rule->id, stripped,
             hit ? "hypothesis" : "stem is not a p/k/x/ss/sh lexicon verb");
      }
    }
  }

  // Breadth-first variant expansion; each variant re-attempts lexicon lookup
  // and, for elision stems, the ed/ted/sed rules. `segment_cased` is the
  // source segment the analyses report as their surface.
  void variants(const std::string& word, const std::string& segment_cased, bool elision_stem) {
    const int max_edits = eng.config_.variant_depth;
    if (max_edits < 1) return;
    variant_seen.insert(word);
    std::vector<std::pair<std::string, std::vector<std::string>>> frontier = {{word, {}}};
    for (int edits = 1; edits <= max_edits && !frontier.empty(); ++edits) {
      std::vector<std::pair<std::string, std::vector<std::string>>> next;
      for (const auto& [cur, trace] : frontier) {
        for (const MorphRule* rule : eng.rules_.rules_for(EmitKind::Variant)) {
          if (!eng.rule_applies(*rule, cur)) continue;
          for (const std::string& var : apply_transform(*rule, cur)) {
            if (!variant_seen.insert(var).second) continue;
            std::vector<std::string> vtrace = trace;
            vtrace.push_back(rule->id);
            note(1 + edits, rule->id, var, "variant");
            lexical(var, segment_cased, edits, vtrace);
            if (elision_stem) elision_rules(var, segment_cased, edits, vtrace);
            if (full()) return;
            next.emplace_back(var, std::move(vtrace));
          }
        }
      }
      frontier = std::move(next);
    }
  }
};

bool MorphEngine::rule_applies(const MorphRule& rule, const std::string& folded) const {
  for (const MorphCondition& cond : rule.conditions) {
    if (cond.on_stem) continue;  // checked after the transform
    if (!condition_holds(cond, folded)) return false;
  }
  return true;
}

bool MorphEngine::stem_condition_holds(const MorphRule& rule, const std::string& stem) const {
  for (const MorphCondition& cond : rule.conditions) {
    if (!cond.on_stem) continue;
    if (!condition_holds(cond, stem)) return false;
  }
  return true;
}

namespace {

std::string trace_key(const std::vector<std::string>& trace) {
  std::string out;
  for (const std::string& t : trace) {
    out += t;
    out += '>';
  }
  return out;
}

// Deterministic ordering plus de-duplication of equivalent hypotheses:
// ascending tier, then rule trace, lemma, features.
void finalize(std::vector<Analysis>& analyses) {
  std::stable_sort(analyses.begin(), analyses.end(), [](const Analysis& a, const Analysis& b) {
    if (a.tier != b.tier) return a.tier < b.tier;
    const std::string ta = trace_key(a.rule_trace), tb = trace_key(b.rule_trace);
    if (ta != tb) return ta < tb;
    if (a.expansion_index != b.expansion_index) return a.expansion_index < b.expansion_index;
    if (a.lemma != b.lemma) return a.lemma < b.lemma;
    const std::string fa = a.features.render_with(a.pos), fb = b.features.render_with(b.pos);
    if (fa != fb) return fa < fb;
    return a.modern_form < b.modern_form;
  });
  std::set<std::string> seen;
  std::vector<Analysis> unique;
  for (Analysis& a : analyses) {
    std::string key = std::string(family_name(a.family)) + "\x1f" + a.surface + "\x1f" + a.lemma +
                      "\x1f" + a.features.render_with(a.pos) + "\x1f" + a.modern_form;
    if (seen.insert(key).second) unique.push_back(std::move(a));
  }
  analyses = std::move(unique);
}

}  // namespace

std::vector<Analysis> MorphEngine::hypothesize_elided_verb(const std::string& stem) const {
  Gen gen(*this);
  gen.token_surface = stem;
  gen.elision_rules(fold_case_utf8(stem), stem, 0, {});
  finalize(gen.analyses);
  return gen.analyses;
}

std::vector<Analysis> MorphEngine::hypothesize_orthographic_variant(const std::string& surface,
                                                                    int depth) const {
  RunConfig cfg = config_;
  cfg.variant_depth = depth;
  MorphEngine scoped(lexicon_, rules_, cfg);
  Gen gen(scoped);
  gen.token_surface = surface;
  const std::string folded = fold_case_utf8(surface);
  gen.lexical(folded, surface, 0, {});
  gen.variants(folded, surface, /*elision_stem=*/true);
  finalize(gen.analyses);
  return gen.analyses;
}

std::vector<Analysis> MorphEngine::hypothesize_genitive(const std::string& surface) const {
  Gen gen(*this);
  gen.token_surface = surface;
  const std::string folded = fold_case_utf8(surface);
  const std::size_t apostrophes = std::count(folded.begin(), folded.end(), '\'');
  const bool marked = ends_with(folded, "'s") || ends_with(folded, "s'");
  if (apostrophes > 1 || (apostrophes == 1 && !marked)) return {};
  gen.genitive_rules(folded, surface);
  finalize(gen.analyses);
  return gen.analyses;
}

std::vector<Analysis> MorphEngine::hypothesize_interlingual_plural(
    const std::string& surface) const {
  Gen gen(*this);
  gen.token_surface = surface;
  const std::string folded = fold_case_utf8(surface);
  if (!ends_with(folded, "'s")) return {};
  gen.interlingual_rules(folded, surface);
  finalize(gen.analyses);
  return gen.analyses;
}

CascadeResult MorphEngine::run_cascade(const Token& token) const {
  CascadeResult result;
  if (token.kind != TokenKind::WordCluster) return result;

  Gen gen(*this);
  gen.token_surface = token.surface;
  const std::string folded = fold_case_utf8(token.surface);
  const std::size_t n_apostrophes = token.apostrophe_offsets.size();

  // tier 0: contraction table, then the dictionary itself
  if (const ContractionEntry* entry = lexicon_.lookup_contraction(folded)) {
    std::string joined;
    for (const ContractionToken& t : entry->expansion) {
      if (!joined.empty()) joined += ' ';
      joined += t.surface;
    }
    const bool keep = config_.keep_modern_contractions && entry->keep_in_modern;
    const std::string modern =
        keep ? token.surface : restore_case(token.surface, joined);
    int index = 0;
    for (const ContractionToken& t : entry->expansion) {
      Analysis a;
      a.surface = t.surface;
      a.lemma = t.lemma;
      a.pos = t.pos;
      a.features = t.features;
      a.modern_form = modern;
      a.tier = 0;
      a.family = Family::Contraction;
      a.expansion_index = index++;
      gen.emit(std::move(a));
    }
    gen.note(0, "contractions", folded, "contraction '" + entry->short_form + "'");
  } else {
    gen.note(0, "contractions", folded, "no contraction entry");
  }
  gen.lexical(folded, token.surface, 0, {});
  const bool has_tier0_lexical = !lexicon_.lookup(folded).empty();

  // structural dispatch on the apostrophe shape
  const bool tail_dt = n_apostrophes == 1 && folded.size() >= 3 &&
                       folded[folded.size() - 2] == '\'' &&
                       (folded.back() == 'd' || folded.back() == 't');
  const bool tail_s = n_apostrophes == 1 && ends_with(folded, "'s") && folded.size() >= 3;
  const bool tail_s_apos = n_apostrophes == 1 && ends_with(folded, "s'") && folded.size() >= 3;

  if (tail_dt) {
    const std::string stem = folded.substr(0, folded.size() - 2);
    const std::u32string src = utf8_decode(token.surface);
    const std::string stem_cased = utf8_encode(src.substr(0, src.size() - 2));
    gen.lexical(stem, stem_cased, 0, {});
    gen.elision_rules(stem, stem_cased, 0, {});
    gen.plural_rules(stem, stem_cased, 0, {});
    gen.variants(stem, stem_cased, /*elision_stem=*/true);
  } else if (tail_s) {
    gen.genitive_rules(folded, token.surface);
    gen.interlingual_rules(folded, token.surface);
  } else if (tail_s_apos) {
    gen.genitive_rules(folded, token.surface);
  } else if (n_apostrophes == 0) {
    gen.plural_rules(folded, token.surface, 0, {});
    if (!has_tier0_lexical) gen.t_preterit_rules(folded, token.surface);
    gen.genitive_rules(folded, token.surface);
    gen.variants(folded, token.surface, /*elision_stem=*/false);
  }
  // other apostrophe shapes have no structural reading; the token will be
  // reported UNKNOWN / unresolved unless the contraction table matched

  result.generated = gen.analyses.size();
  result.cap_exceeded = gen.cap_exceeded;
  finalize(gen.analyses);
  for (Analysis& a : gen.analyses) {
    a.token_begin = 0;  // caller rebases onto real token indices
    a.token_end = 1;
  }
  result.analyses = std::move(gen.analyses);
  result.attempts = std::move(gen.attempts);
  return result;
}

}  // namespace emend
