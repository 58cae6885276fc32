#include "emend/normalize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace emend {

Engine::Engine(Lexicon lexicon, MorphRuleSet morph_rules, SyntaxRuleSet syntax_rules,
               RunConfig config)
    : lexicon_(std::move(lexicon)),
      morph_rules_(std::move(morph_rules)),
      syntax_rules_(std::move(syntax_rules)),
      config_(config),
      morph_(lexicon_, morph_rules_, config_),
      syntax_(lexicon_, syntax_rules_, config_) {
  config_.validate();
}

namespace {

bool covered_by_validated(const std::vector<Analysis>& analyses, std::size_t tok,
                          const Analysis** first = nullptr) {
  for (const Analysis& a : analyses) {
    if (a.status != AnalysisStatus::Validated) continue;
    if (a.token_begin <= tok && tok < a.token_end) {
      if (first != nullptr) {
        *first = &a;
        return true;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

void Engine::select(const std::vector<Token>& tokens, std::vector<Analysis>& analyses,
                    std::vector<Diagnostic>& diagnostics) const {
  // indexes per token, in cascade order
  std::vector<std::vector<std::size_t>> by_token(tokens.size());
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    for (std::size_t t = analyses[i].token_begin; t < analyses[i].token_end; ++t) {
      by_token[t].push_back(i);
    }
  }
  std::set<std::size_t> contested;
  for (const Diagnostic& d : diagnostics) {
    if (d.kind == "ambiguous") contested.insert(d.token_index);
  }

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].kind != TokenKind::WordCluster) continue;
    if (covered_by_validated(analyses, t)) continue;
    if (by_token[t].empty()) {
      diagnostics.push_back({t, tokens[t].begin, tokens[t].end, "UNKNOWN",
                             "no lexicon entry and no rule tier produced an analysis for '" +
                                 tokens[t].surface + "'"});
      continue;
    }
    if (contested.count(t)) continue;  // the conflict diagnostic already covers it
    // context-free families may be picked directly; context-dependent ones
    // (genitive, interlingual, bare plurals) stay hypotheses unless a syntax
    // rule confirmed them
    bool validated = false;
    for (std::size_t i : by_token[t]) {
      Analysis& a = analyses[i];
      if (a.status != AnalysisStatus::Hypothesis) continue;
      if (a.family == Family::Lexical || a.family == Family::PluralNoun) {
        a.status = AnalysisStatus::Validated;
        a.note = "validated_by=selection";
        validated = true;
        break;
      }
    }
    if (!validated) {
      std::set<std::string> families;
      for (std::size_t i : by_token[t]) {
        if (analyses[i].status == AnalysisStatus::Hypothesis) {
          families.insert(family_name(analyses[i].family));
        }
      }
      std::string joined;
      for (const std::string& f : families) {
        if (!joined.empty()) joined += ", ";
        joined += f;
      }
      diagnostics.push_back({t, tokens[t].begin, tokens[t].end, "unconfirmed",
                             "hypotheses (" + joined + ") for '" + tokens[t].surface +
                                 "' were not confirmed by any syntax rule"});
    }
  }

  // apostrophe accounting: every apostrophe is either inside a validated
  // apostrophe-consuming reading or reported, never dropped silently
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].apostrophe_offsets.empty()) continue;
    const Analysis* first = nullptr;
    bool accounted = false;
    if (covered_by_validated(analyses, t, &first)) {
      switch (first->family) {
        case Family::Contraction:
        case Family::Elision:
        case Family::Genitive:
        case Family::GenitiveBare:
        case Family::Interlingual:
          accounted = true;
          break;
        case Family::Lexical:
          // a dictionary form that itself contains an apostrophe
          accounted = first->surface.find('\'') != std::string::npos;
          break;
        default:
          break;
      }
    }
    if (!accounted) {
      diagnostics.push_back({t, tokens[t].begin, tokens[t].end, "unresolved_apostrophe",
                             std::to_string(tokens[t].apostrophe_offsets.size()) +
                                 " apostrophe(s) in '" + tokens[t].surface +
                                 "' are not part of any validated reading"});
    }
  }

  std::sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.token_index != b.token_index) return a.token_index < b.token_index;
    return a.kind < b.kind;
  });
}

AnnotatedDocument Engine::annotate(const SourceDocument& doc, ScanDirection dir) const {
  AnnotatedDocument out;
  out.doc = doc;
  out.tokens = tokenize(doc);
  for (std::size_t t = 0; t < out.tokens.size(); ++t) {
    const Token& tok = out.tokens[t];
    if (tok.kind != TokenKind::WordCluster) continue;
    CascadeResult cascade = morph_.run_cascade(tok);
    if (cascade.cap_exceeded) {
      out.diagnostics.push_back(
          {t, tok.begin, tok.end, "hypothesis_cap",
           "hypothesis cap (" + std::to_string(config_.hypothesis_cap) + ") exceeded for '" +
               tok.surface + "'; generation stopped deterministically"});
    }
    for (Analysis& a : cascade.analyses) {
      a.token_begin = t;
      a.token_end = t + 1;
      out.analyses.push_back(std::move(a));
    }
  }
  syntax_.run(out.tokens, out.analyses, out.diagnostics, dir);
  select(out.tokens, out.analyses, out.diagnostics);
  return out;
}

NormalizeResult Engine::normalize(const AnnotatedDocument& annotated) const {
  NormalizeResult result;
  std::u32string out;
  const std::u32string& src = annotated.doc.text;
  std::size_t pos = 0;
  auto emit = [&](std::size_t sb, std::size_t se, const std::u32string& piece) {
    if (sb == se && piece.empty()) return;
    AlignPair pair;
    pair.src_begin = sb;
    pair.src_end = se;
    pair.out_begin = out.size();
    out += piece;
    pair.out_end = out.size();
    result.alignment.push_back(pair);
  };
  for (std::size_t t = 0; t < annotated.tokens.size(); ++t) {
    const Token& tok = annotated.tokens[t];
    emit(pos, tok.begin, src.substr(pos, tok.begin - pos));
    const Analysis* first = nullptr;
    if (covered_by_validated(annotated.analyses, t, &first) && !first->modern_form.empty()) {
      emit(tok.begin, tok.end, utf8_decode(first->modern_form));
    } else {
      // untouched or unresolved tokens are preserved verbatim
      emit(tok.begin, tok.end, src.substr(tok.begin, tok.end - tok.begin));
    }
    pos = tok.end;
  }
  emit(pos, src.size(), src.substr(pos));
  result.modern_text = utf8_encode(out);
  return result;
}

std::string Engine::normalize_text(const std::string& text) const {
  const SourceDocument doc = make_document("adhoc", text);
  return normalize(annotate(doc)).modern_text;
}

namespace {

std::string span_string(std::size_t b, std::size_t e) {
  return std::to_string(b) + "-" + std::to_string(e);
}

std::string trace_string(const std::vector<std::string>& trace) {
  std::string out;
  for (const std::string& t : trace) {
    if (!out.empty()) out += '>';
    out += t;
  }
  return out;
}

}  // namespace

std::string render_records(const AnnotatedDocument& annotated) {
  // stable order: token span, then status (validated first), tier, trace
  std::vector<const Analysis*> ordered;
  ordered.reserve(annotated.analyses.size());
  for (const Analysis& a : annotated.analyses) ordered.push_back(&a);
  auto status_rank = [](AnalysisStatus s) {
    switch (s) {
      case AnalysisStatus::Validated: return 0;
      case AnalysisStatus::Invalidated: return 1;
      case AnalysisStatus::Hypothesis: return 2;
    }
    return 3;
  };
  std::stable_sort(ordered.begin(), ordered.end(), [&](const Analysis* a, const Analysis* b) {
    if (a->token_begin != b->token_begin) return a->token_begin < b->token_begin;
    if (a->status != b->status) return status_rank(a->status) < status_rank(b->status);
    if (a->expansion_index != b->expansion_index) return a->expansion_index < b->expansion_index;
    if (a->tier != b->tier) return a->tier < b->tier;
    return trace_string(a->rule_trace) < trace_string(b->rule_trace);
  });
  std::ostringstream os;
  for (const Analysis* a : ordered) {
    const Token& tok = annotated.tokens[a->token_begin];
    const std::size_t end_cp = annotated.tokens[a->token_end - 1].end;
    os << annotated.doc.id << '\t' << span_string(tok.begin, end_cp) << '\t' << a->surface << '\t'
       << a->lemma << '\t' << a->features.render_with(a->pos) << '\t' << a->modern_form << '\t'
       << status_name(a->status) << '\t' << a->tier << '\t' << trace_string(a->rule_trace) << '\t'
       << a->note << '\n';
  }
  return os.str();
}

std::string render_diagnostics(const AnnotatedDocument& annotated) {
  std::ostringstream os;
  for (const Diagnostic& d : annotated.diagnostics) {
    os << annotated.doc.id << '\t' << span_string(d.begin, d.end) << '\t'
       << annotated.tokens[d.token_index].surface << '\t' << d.kind << '\t' << d.message << '\n';
  }
  return os.str();
}

std::string render_alignment(const NormalizeResult& result) {
  std::ostringstream os;
  for (const AlignPair& p : result.alignment) {
    os << p.src_begin << '\t' << p.src_end << '\t' << p.out_begin << '\t' << p.out_end << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::string Engine::explain(const SourceDocument& doc, const std::string& word,
                            int occurrence) const {
  const std::vector<Token> tokens = tokenize(doc);
  const std::string target = fold_case_utf8(word);
  std::size_t index = tokens.size();
  int seen = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (fold_case_utf8(tokens[t].surface) == target) {
      if (++seen == occurrence) {
        index = t;
        break;
      }
    }
  }
  if (index == tokens.size()) {
    std::ostringstream os;
    os << "no occurrence " << occurrence << " of '" << word << "' in document '" << doc.id
       << "'\n";
    return os.str();
  }
  return explain_token(doc, tokens, index);
}

std::string Engine::explain_span(const SourceDocument& doc, std::size_t begin,
                                 std::size_t end) const {
  const std::vector<Token> tokens = tokenize(doc);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].begin < end && begin < tokens[t].end) return explain_token(doc, tokens, t);
  }
  std::ostringstream os;
  os << "no token overlaps span " << begin << "-" << end << " in document '" << doc.id << "'\n";
  return os.str();
}

std::string Engine::explain_token(const SourceDocument& doc, const std::vector<Token>& tokens,
                                  std::size_t index) const {
  std::ostringstream os;
  const Token& tok = tokens[index];
  os << "token '" << tok.surface << "' [" << doc.id << " " << span_string(tok.begin, tok.end)
     << "]";
  if (!tok.apostrophe_offsets.empty()) {
    os << " apostrophes at";
    for (const auto& [off, orig] : tok.apostrophe_offsets) os << ' ' << off;
  }
  os << '\n';

  const CascadeResult cascade = morph_.run_cascade(tok);
  int last_tier = -1;
  for (const CascadeAttempt& at : cascade.attempts) {
    if (at.tier != last_tier) {
      os << "tier " << at.tier << ":\n";
      last_tier = at.tier;
    }
    os << "  " << at.rule_id << " '" << at.candidate << "' -> " << at.outcome << '\n';
  }
  if (cascade.attempts.empty()) os << "  (token kind produces no analyses)\n";

  // full-document pass so context rules fire exactly as in annotate()
  const AnnotatedDocument annotated = annotate(doc);
  os << "analyses:\n";
  bool any = false;
  for (const Analysis& a : annotated.analyses) {
    if (a.token_begin > index || a.token_end <= index) continue;
    any = true;
    os << "  " << status_name(a.status) << " " << a.surface << "," << a.lemma << ","
       << a.features.render_with(a.pos) << " modern='" << a.modern_form << "' tier=" << a.tier;
    if (!a.rule_trace.empty()) os << " trace=" << trace_string(a.rule_trace);
    if (!a.note.empty()) os << " " << a.note;
    os << '\n';
  }
  if (!any) os << "  (none)\n";
  for (const Diagnostic& d : annotated.diagnostics) {
    if (d.token_index == index) os << "diagnostic: " << d.kind << ": " << d.message << '\n';
  }
  return os.str();
}

std::string Engine::resource_summary() const {
  std::ostringstream os;
  os << "lexicon entries: " << lexicon_.size() << "\n";
  for (const auto& [pos, count] : lexicon_.entry_counts_by_pos()) {
    os << "  " << pos << ": " << count << "\n";
  }
  os << "contractions: " << lexicon_.contractions().size() << "\n";
  os << "morph rules: " << morph_rules_.rules().size() << "\n";
  os << "syntax rules: " << syntax_rules_.rules().size() << "\n";
  return os.str();
}

}  // namespace emend
