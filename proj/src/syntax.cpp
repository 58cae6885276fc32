#include "emend/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace emend {

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

SyntaxCond parse_cond(const std::string& atom, const std::string& name, std::size_t lineno) {
  SyntaxCond cond;
  auto eq = atom.find('=');
  if (eq == std::string::npos) fail(name, lineno, "condition '" + atom + "' needs key=value");
  const std::string key = atom.substr(0, eq);
  cond.values = split(atom.substr(eq + 1), '|');
  if (key == "hyp") {
    cond.kind = SyntaxCond::Kind::Hyp;
  } else if (key == "val") {
    cond.kind = SyntaxCond::Kind::Val;
  } else if (key == "pos") {
    cond.kind = SyntaxCond::Kind::PosIs;
  } else if (key == "nopos") {
    cond.kind = SyntaxCond::Kind::NoPos;
  } else if (key == "not") {
    cond.kind = SyntaxCond::Kind::NotFeature;
  } else if (key == "lemma") {
    cond.kind = SyntaxCond::Kind::Lemma;
  } else if (key == "lit") {
    cond.kind = SyntaxCond::Kind::Lit;
  } else {
    fail(name, lineno, "unknown condition key '" + key + "'");
  }
  return cond;
}

}  // namespace

SyntaxRuleSet SyntaxRuleSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return load_from_string(os.str(), path);
}

SyntaxRuleSet SyntaxRuleSet::load_from_string(const std::string& text, const std::string& name) {
  SyntaxRuleSet set;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 4) fail(name, lineno, "expected id<TAB>pattern<TAB>action<TAB>param");
    SyntaxRule rule;
    rule.id = trim(cols[0]);
    if (rule.id.empty()) fail(name, lineno, "empty rule id");
    if (!ids.insert(rule.id).second) fail(name, lineno, "duplicate rule id '" + rule.id + "'");

    bool have_head = false;
    for (std::string spec : split(trim(cols[1]), ' ')) {
      spec = trim(spec);
      if (spec.empty()) continue;
      SyntaxSlot slot;
      if (spec[0] == '*') {
        slot.head = true;
        if (have_head) fail(name, lineno, "pattern has two head slots");
        have_head = true;
        spec = spec.substr(1);
      }
      if (spec.size() < 2 || spec.front() != '[' || spec.back() != ']') {
        fail(name, lineno, "slot '" + spec + "' must be [cond;cond;...]");
      }
      for (const std::string& atom : split(spec.substr(1, spec.size() - 2), ';')) {
        slot.conds.push_back(parse_cond(trim(atom), name, lineno));
      }
      rule.slots.push_back(std::move(slot));
    }
    if (rule.slots.empty()) fail(name, lineno, "pattern has no slots");
    if (!have_head) fail(name, lineno, "pattern has no head slot (prefix one with '*')");

    const std::string action = trim(cols[2]);
    if (action == "expand_contraction") {
      rule.action = SyntaxAction::ExpandContraction;
    } else if (action == "confirm_elision") {
      rule.action = SyntaxAction::ConfirmElision;
    } else if (action == "confirm_t_preterit") {
      rule.action = SyntaxAction::ConfirmTPreterit;
    } else if (action == "validate_genitive") {
      rule.action = SyntaxAction::ValidateGenitive;
    } else if (action == "validate_genitive_conj") {
      rule.action = SyntaxAction::ValidateGenitiveConj;
    } else if (action == "validate_interlingual") {
      rule.action = SyntaxAction::ValidateInterlingual;
    } else if (action == "disambiguate_noun_verb") {
      rule.action = SyntaxAction::DisambiguateNounVerb;
    } else {
      fail(name, lineno, "unknown action '" + action + "'");
    }

    const std::string param = trim(cols[3]);
    if (param.rfind("window=", 0) == 0) {
      const std::string value = param.substr(7);
      if (value != "default") {
        try {
          rule.window = std::stoi(value);
        } catch (...) {
          fail(name, lineno, "window must be an integer or 'default'");
        }
      }
    } else if (param != "-" && !param.empty()) {
      fail(name, lineno, "unknown param '" + param + "'");
    }
    set.rules_.push_back(std::move(rule));
  }
  return set;
}

// ---------------------------------------------------------------------------

struct SyntaxEngine::Pass {
  const SyntaxEngine& eng;
  const std::vector<Token>& tokens;
  std::vector<Analysis>& analyses;
  std::vector<Diagnostic>& diagnostics;
  std::vector<std::vector<std::size_t>> by_token;

  Pass(const SyntaxEngine& e, const std::vector<Token>& t, std::vector<Analysis>& a,
       std::vector<Diagnostic>& d)
      : eng(e), tokens(t), analyses(a), diagnostics(d) {
    by_token.resize(tokens.size());
    for (std::size_t i = 0; i < analyses.size(); ++i) {
      for (std::size_t t2 = analyses[i].token_begin; t2 < analyses[i].token_end; ++t2) {
        by_token[t2].push_back(i);
      }
    }
  }

  bool covered_by_validated(std::size_t tok) const {
    for (std::size_t i : by_token[tok]) {
      if (analyses[i].status == AnalysisStatus::Validated) return true;
    }
    return false;
  }

  bool family_matches(const Analysis& a, const std::vector<std::string>& names) const {
    for (const std::string& n : names) {
      if (n == family_name(a.family)) return true;
    }
    return false;
  }

  bool slot_matches(const SyntaxSlot& slot, std::size_t tok) const {
    if (tokens[tok].kind != TokenKind::WordCluster) return false;
    // pos= and not= are evaluated jointly: some non-invalidated analysis must
    // carry the POS and lack the excluded feature
    std::vector<std::string> pos_values;
    std::vector<std::string> not_features;
    for (const SyntaxCond& cond : slot.conds) {
      switch (cond.kind) {
        case SyntaxCond::Kind::PosIs:
          pos_values = cond.values;
          break;
        case SyntaxCond::Kind::NotFeature:
          not_features = cond.values;
          break;
        default:
          break;
      }
    }
    for (const SyntaxCond& cond : slot.conds) {
      switch (cond.kind) {
        case SyntaxCond::Kind::Hyp: {
          bool found = false;
          for (std::size_t i : by_token[tok]) {
            const Analysis& a = analyses[i];
            if (a.status == AnalysisStatus::Hypothesis && family_matches(a, cond.values)) {
              found = true;
            }
          }
          if (!found) return false;
          break;
        }
        case SyntaxCond::Kind::Val: {
          bool found = false;
          for (std::size_t i : by_token[tok]) {
            const Analysis& a = analyses[i];
            if (a.status == AnalysisStatus::Validated && family_matches(a, cond.values)) {
              found = true;
            }
          }
          if (!found) return false;
          break;
        }
        case SyntaxCond::Kind::PosIs: {
          bool found = false;
          for (std::size_t i : by_token[tok]) {
            const Analysis& a = analyses[i];
            if (a.status == AnalysisStatus::Invalidated) continue;
            bool pos_ok = false;
            for (const std::string& p : cond.values) {
              if (p == pos_name(a.pos)) pos_ok = true;
            }
            if (!pos_ok) continue;
            bool excluded = false;
            for (const std::string& f : not_features) {
              if (a.features.has(f)) excluded = true;
            }
            if (!excluded) found = true;
          }
          if (!found) return false;
          break;
        }
        case SyntaxCond::Kind::NoPos: {
          for (std::size_t i : by_token[tok]) {
            const Analysis& a = analyses[i];
            if (a.status == AnalysisStatus::Invalidated) continue;
            for (const std::string& p : cond.values) {
              if (p == pos_name(a.pos)) return false;
            }
          }
          break;
        }
        case SyntaxCond::Kind::NotFeature:
          break;  // handled with PosIs
        case SyntaxCond::Kind::Lemma: {
          bool found = false;
          for (std::size_t i : by_token[tok]) {
            const Analysis& a = analyses[i];
            if (a.status == AnalysisStatus::Invalidated) continue;
            for (const std::string& l : cond.values) {
              if (a.lemma == l) found = true;
            }
          }
          if (!found) return false;
          break;
        }
        case SyntaxCond::Kind::Lit: {
          const std::string folded = fold_case_utf8(tokens[tok].surface);
          bool found = false;
          for (const std::string& l : cond.values) {
            if (folded == l) found = true;
          }
          if (!found) return false;
          break;
        }
      }
    }
    return true;
  }

  bool rule_matches_at(const SyntaxRule& rule, std::size_t start, std::size_t* head_out) const {
    if (start + rule.slots.size() > tokens.size()) return false;
    std::size_t head = start;
    for (std::size_t j = 0; j < rule.slots.size(); ++j) {
      if (!slot_matches(rule.slots[j], start + j)) return false;
      if (rule.slots[j].head) head = start + j;
    }
    if (covered_by_validated(head)) return false;
    *head_out = head;
    return true;
  }

  void validate(std::size_t i, const std::string& rule_id) {
    analyses[i].status = AnalysisStatus::Validated;
    analyses[i].note = "validated_by=" + rule_id;
  }

  void invalidate(std::size_t i, const std::string& rule_id) {
    analyses[i].status = AnalysisStatus::Invalidated;
    analyses[i].note = "invalidated_by=" + rule_id;
  }

  // First non-invalidated analysis of `tok` in one of the families, in the
  // deterministic per-token order the cascade produced.
  std::optional<std::size_t> first_of(std::size_t tok, std::initializer_list<Family> families,
                                      AnalysisStatus status = AnalysisStatus::Hypothesis) const {
    for (std::size_t i : by_token[tok]) {
      const Analysis& a = analyses[i];
      if (a.status != status) continue;
      for (Family f : families) {
        if (a.family == f) return i;
      }
    }
    return std::nullopt;
  }

  bool has_plain_noun_after(std::size_t tok) const {
    const std::size_t next = tok + 1;
    if (next >= tokens.size() || tokens[next].kind != TokenKind::WordCluster) return false;
    for (std::size_t i : by_token[next]) {
      const Analysis& a = analyses[i];
      if (a.status == AnalysisStatus::Invalidated) continue;
      if (a.pos == Pos::N && !a.features.has("gen_sax")) return true;
    }
    return false;
  }

  void apply(const SyntaxRule& rule, std::size_t start, std::size_t head) {
    switch (rule.action) {
      case SyntaxAction::ExpandContraction: {
        for (std::size_t i : by_token[head]) {
          if (analyses[i].family == Family::Contraction &&
              analyses[i].status == AnalysisStatus::Hypothesis) {
            validate(i, rule.id);
          }
        }
        break;
      }
      case SyntaxAction::ConfirmElision: {
        auto best = first_of(head, {Family::Elision});
        if (!best) break;
        validate(*best, rule.id);
        for (std::size_t i : by_token[head]) {
          if (i == *best) continue;
          if (analyses[i].family != Family::Elision &&
              analyses[i].status == AnalysisStatus::Hypothesis) {
            invalidate(i, rule.id);
          }
        }
        break;
      }
      case SyntaxAction::ConfirmTPreterit: {
        if (auto best = first_of(head, {Family::TPreterit})) validate(*best, rule.id);
        break;
      }
      case SyntaxAction::ValidateGenitive: {
        if (auto best = first_of(head, {Family::Genitive})) validate(*best, rule.id);
        break;
      }
      case SyntaxAction::ValidateGenitiveConj: {
        if (auto best = first_of(head, {Family::GenitiveBare, Family::Genitive})) {
          validate(*best, rule.id);
        }
        break;
      }
      case SyntaxAction::ValidateInterlingual: {
        if (auto best = first_of(head, {Family::Interlingual})) validate(*best, rule.id);
        break;
      }
      case SyntaxAction::DisambiguateNounVerb: {
        disambiguate(rule, head);
        break;
      }
    }
  }

  // The verb reading survives only when one of its subcategorization
  // collocates occurs in the right window; otherwise the genitive reading is
  // preferred when its noun-after pattern matches. Neither: both stay
  // hypotheses and the conflict is reported.
  void disambiguate(const SyntaxRule& rule, std::size_t head) {
    std::set<std::string> collocates;
    for (const LexEntry& e : eng.lexicon_.lookup(tokens[head].surface)) {
      if (e.pos != Pos::V) continue;
      collocates.insert(e.subcat.begin(), e.subcat.end());
    }
    const int window = rule.window > 0 ? rule.window : eng.config_.subcat_window;
    bool collocate_found = false;
    int seen = 0;
    for (std::size_t t = head + 1; t < tokens.size() && seen < window; ++t) {
      const Token& tok = tokens[t];
      if (tok.kind == TokenKind::Punct &&
          (tok.surface == "." || tok.surface == "!" || tok.surface == "?")) {
        break;
      }
      if (tok.kind != TokenKind::WordCluster) continue;
      ++seen;
      for (std::size_t i : by_token[t]) {
        const Analysis& a = analyses[i];
        if (a.status == AnalysisStatus::Invalidated) continue;
        if (collocates.count(a.lemma)) collocate_found = true;
      }
    }

    if (collocate_found) {
      bool validated = false;
      for (std::size_t i : by_token[head]) {
        Analysis& a = analyses[i];
        if (a.status != AnalysisStatus::Hypothesis) continue;
        if (a.family == Family::Lexical && a.pos == Pos::V && !validated) {
          validate(i, rule.id);
          validated = true;
        } else if (a.family == Family::Genitive || a.family == Family::GenitiveBare) {
          invalidate(i, rule.id);
        }
      }
      return;
    }
    if (has_plain_noun_after(head)) {
      bool validated = false;
      for (std::size_t i : by_token[head]) {
        Analysis& a = analyses[i];
        if (a.status != AnalysisStatus::Hypothesis) continue;
        if (a.family == Family::Genitive && !validated) {
          validate(i, rule.id);
          validated = true;
        } else if (a.family == Family::Lexical && a.pos == Pos::V) {
          invalidate(i, rule.id);
        }
      }
      return;
    }
    diagnostics.push_back({head, tokens[head].begin, tokens[head].end, "ambiguous",
                           "verb and genitive readings of '" + tokens[head].surface +
                               "' cannot be separated: no subcat collocate within " +
                               std::to_string(window) + " tokens and no following noun"});
  }
};

void SyntaxEngine::run(const std::vector<Token>& tokens, std::vector<Analysis>& analyses,
                       std::vector<Diagnostic>& diagnostics, ScanDirection dir) const {
  Pass pass(*this, tokens, analyses, diagnostics);
  for (const SyntaxRule& rule : rules_.rules()) {
    // collect candidate matches, then resolve overlaps leftmost-longest so
    // the outcome is independent of the scan direction
    struct Match {
      std::size_t start, len, head;
    };
    std::vector<Match> matches;
    const std::size_t n = tokens.size();
    if (dir == ScanDirection::LeftToRight) {
      for (std::size_t s = 0; s < n; ++s) {
        std::size_t head = 0;
        if (pass.rule_matches_at(rule, s, &head)) matches.push_back({s, rule.slots.size(), head});
      }
    } else {
      for (std::size_t s = n; s-- > 0;) {
        std::size_t head = 0;
        if (pass.rule_matches_at(rule, s, &head)) matches.push_back({s, rule.slots.size(), head});
      }
    }
    std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.len > b.len;
    });
    std::size_t next_free = 0;
    for (const Match& m : matches) {
      if (m.start < next_free) continue;
      std::size_t head = 0;
      if (!pass.rule_matches_at(rule, m.start, &head)) continue;  // an earlier apply changed it
      pass.apply(rule, m.start, head);
      next_free = m.start + m.len;
    }
  }
}

}  // namespace emend
