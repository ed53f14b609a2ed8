// Copyright 2026 The Guidegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "guidegraph/enrich/concepts.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "guidegraph/base/util.h"

namespace guidegraph::enrich {
namespace {

std::string LinePath(size_t line) { return "line " + std::to_string(line); }

// Non-empty, non-comment rows split on tabs, with their 1-based line number.
std::vector<std::pair<size_t, std::vector<std::string>>> TsvRows(std::string_view tsv) {
  std::vector<std::pair<size_t, std::vector<std::string>>> rows;
  std::vector<std::string> lines = Split(tsv, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    rows.push_back({i + 1, Split(line, '\t')});
  }
  return rows;
}

Scheme SchemeField(const std::string &s, size_t line) {
  std::optional<Scheme> scheme = graph::ParseScheme(Trim(s));
  if (!scheme) throw SchemaViolation(LinePath(line), "unknown scheme '" + s + "'");
  return *scheme;
}

size_t SizeField(const std::string &s, size_t line) {
  size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw SchemaViolation(LinePath(line), "bad offset '" + s + "'");
  }
  return v;
}

bool BoundaryBefore(std::string_view text, size_t pos, char first) {
  return pos == 0 || !IsWordChar(text[pos - 1]) || !IsWordChar(first);
}

bool BoundaryAfter(std::string_view text, size_t pos, char last) {
  return pos == text.size() || !IsWordChar(text[pos]) || !IsWordChar(last);
}

std::set<std::string> Trigrams(std::string_view s) {
  std::string padded = "\x01\x01" + AsciiLower(s) + "\x01\x01";
  std::set<std::string> grams;
  for (size_t i = 0; i + 3 <= padded.size(); ++i) grams.insert(padded.substr(i, 3));
  return grams;
}

std::string PreferredName(const Lexicon &lexicon, Scheme scheme, const std::string &code,
                          const std::string &fallback) {
  const LexiconEntry *e = lexicon.Find(scheme, code);
  return e ? e->preferred_name : fallback;
}

}  // namespace

const LexiconEntry *Lexicon::Find(Scheme scheme, std::string_view code) const {
  for (const LexiconEntry &e : entries) {
    if (e.scheme == scheme && e.code == code) return &e;
  }
  return nullptr;
}

Lexicon ParseLexicon(std::string_view tsv) {
  Lexicon lexicon;
  std::set<std::pair<Scheme, std::string>> seen;
  for (const auto &[line, f] : TsvRows(tsv)) {
    if (f.size() < 3 || f.size() > 4) {
      throw SchemaViolation(LinePath(line), "expected 3 or 4 tab-separated fields");
    }
    LexiconEntry e;
    e.code = std::string(Trim(f[0]));
    e.scheme = SchemeField(f[1], line);
    e.preferred_name = std::string(Trim(f[2]));
    if (e.code.empty()) throw SchemaViolation(LinePath(line), "empty code");
    if (e.preferred_name.empty()) throw SchemaViolation(LinePath(line), "empty name");
    if (f.size() == 4) {
      for (const std::string &syn : Split(f[3], '|')) {
        if (!Trim(syn).empty()) e.synonyms.emplace_back(Trim(syn));
      }
    }
    if (!seen.insert({e.scheme, e.code}).second) {
      throw SchemaViolation(LinePath(line), "duplicate code " + e.code);
    }
    lexicon.entries.push_back(std::move(e));
  }
  return lexicon;
}

Overrides ParseOverrides(std::string_view tsv) {
  Overrides out;
  for (const auto &[line, f] : TsvRows(tsv)) {
    if (f.size() != 3) throw SchemaViolation(LinePath(line), "expected 3 fields");
    std::string surface = AsciiLower(Trim(f[0]));
    std::string code(Trim(f[1]));
    if (surface.empty() || code.empty()) {
      throw SchemaViolation(LinePath(line), "empty surface or code");
    }
    out.insert({surface, {code, SchemeField(f[2], line)}});
  }
  return out;
}

AbbreviationTable ParseAbbreviations(std::string_view tsv) {
  AbbreviationTable out;
  for (const auto &[line, f] : TsvRows(tsv)) {
    if (f.size() != 2 || Trim(f[0]).empty() || Trim(f[1]).empty()) {
      throw SchemaViolation(LinePath(line), "expected short<TAB>expansion");
    }
    out[std::string(Trim(f[0]))] = std::string(Trim(f[1]));
  }
  return out;
}

AbbreviationTable DefaultAbbreviations() {
  return {{"CT", "computed tomography"},
          {"MRI", "magnetic resonance imaging"},
          {"RT", "radiation therapy"}};
}

std::pair<size_t, size_t> OffsetMap::ToOriginal(size_t start, size_t end) const {
  if (segments_.empty()) return {start, end};
  auto map_point = [&](size_t pos, bool is_end) -> size_t {
    for (const Segment &s : segments_) {
      bool inside = is_end ? (pos > s.expanded_start && pos <= s.expanded_end)
                           : (pos >= s.expanded_start && pos < s.expanded_end);
      if (!inside) continue;
      if (s.replaced) return is_end ? s.original_end : s.original_start;
      return s.original_start + (pos - s.expanded_start);
    }
    return is_end || pos > 0 ? segments_.back().original_end : 0;
  };
  size_t a = map_point(start, false);
  size_t b = start == end ? a : map_point(end, true);
  return {a, b};
}

Expansion ExpandAbbreviations(std::string_view text, const AbbreviationTable &table) {
  Expansion out;
  std::vector<OffsetMap::Segment> segments;
  size_t literal_start = 0;
  auto flush_literal = [&](size_t until) {
    if (until <= literal_start) return;
    size_t at = out.text.size();
    out.text.append(text.substr(literal_start, until - literal_start));
    segments.push_back({at, out.text.size(), literal_start, until, false});
  };
  for (size_t i = 0; i < text.size();) {
    if (!IsWordChar(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && IsWordChar(text[j])) ++j;
    auto it = table.find(std::string(text.substr(i, j - i)));
    if (it != table.end()) {
      flush_literal(i);
      size_t at = out.text.size();
      out.text += it->second;
      segments.push_back({at, out.text.size(), i, j, true});
      literal_start = j;
    }
    i = j;
  }
  flush_literal(text.size());
  out.offsets = OffsetMap(std::move(segments));
  return out;
}

std::vector<EntitySpan> ExtractEntities(std::string_view expanded, const Lexicon &lexicon,
                                        const Overrides &overrides) {
  std::set<std::string> surfaces;
  for (const LexiconEntry &e : lexicon.entries) {
    surfaces.insert(AsciiLower(e.preferred_name));
    for (const std::string &s : e.synonyms) surfaces.insert(AsciiLower(s));
  }
  for (const auto &[surface, unused] : overrides) surfaces.insert(surface);

  std::string lower = AsciiLower(expanded);
  std::vector<std::pair<size_t, size_t>> candidates;  // (start, length)
  for (const std::string &s : surfaces) {
    if (s.empty()) continue;
    for (size_t pos = lower.find(s); pos != std::string::npos; pos = lower.find(s, pos + 1)) {
      if (BoundaryBefore(lower, pos, s.front()) &&
          BoundaryAfter(lower, pos + s.size(), s.back())) {
        candidates.push_back({pos, s.size()});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto &a, const auto &b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::pair<size_t, size_t>> chosen;
  for (const auto &[start, len] : candidates) {
    bool clash = false;
    for (const auto &[cs, clen] : chosen) {
      if (start < cs + clen && cs < start + len) {
        clash = true;
        break;
      }
    }
    if (!clash) chosen.push_back({start, len});
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<EntitySpan> out;
  for (const auto &[start, len] : chosen) {
    out.push_back({std::string(expanded.substr(start, len)), start, start + len});
  }
  return out;
}

double TrigramJaccard(std::string_view a, std::string_view b) {
  std::set<std::string> ga = Trigrams(a), gb = Trigrams(b);
  size_t common = 0;
  for (const std::string &g : ga) common += gb.count(g);
  size_t total = ga.size() + gb.size() - common;
  return total == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(total);
}

std::optional<ConceptMapping> LinkEntity(const EntitySpan &mention, const Lexicon &lexicon,
                                         const Overrides &overrides,
                                         const LinkOptions &options) {
  std::string key = AsciiLower(mention.text);
  auto [lo, hi] = overrides.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    const Override &o = it->second;
    if (options.scheme && o.scheme != *options.scheme) continue;
    return ConceptMapping{mention.text, mention.start, mention.end, o.code, o.scheme,
                          PreferredName(lexicon, o.scheme, o.code, mention.text),
                          1.0, graph::MappingSource::kOverride};
  }

  const LexiconEntry *best = nullptr;
  double best_score = -1;
  for (const LexiconEntry &e : lexicon.entries) {
    if (options.scheme && e.scheme != *options.scheme) continue;
    double score = TrigramJaccard(mention.text, e.preferred_name);
    for (const std::string &s : e.synonyms)
      score = std::max(score, TrigramJaccard(mention.text, s));
    bool better =
        score > best_score ||
        (score == best_score && std::tie(e.code, e.scheme) < std::tie(best->code, best->scheme));
    if (better) {
      best = &e;
      best_score = score;
    }
  }
  if (!best || best_score < options.threshold) return std::nullopt;
  return ConceptMapping{mention.text, mention.start, mention.end, best->code, best->scheme,
                        best->preferred_name, best_score, graph::MappingSource::kLexicon};
}

std::optional<ConceptMapping> RemoteLookup(const EntitySpan &mention, ThesaurusClient &client) {
  std::vector<RemoteConcept> found = client.Search(mention.text);
  if (found.empty()) return std::nullopt;
  const RemoteConcept &first = found.front();
  return ConceptMapping{mention.text, mention.start, mention.end, first.code, client.scheme(),
                        first.name.empty() ? mention.text : first.name, 1.0,
                        graph::MappingSource::kRemote};
}

std::vector<GoldMapping> ParseGold(std::string_view tsv) {
  std::vector<GoldMapping> out;
  for (const auto &[line, f] : TsvRows(tsv)) {
    if (f.size() != 5) {
      throw SchemaViolation(LinePath(line), "expected node<TAB>start<TAB>end<TAB>scheme<TAB>code");
    }
    out.push_back({f[0], SizeField(f[1], line), SizeField(f[2], line), SchemeField(f[3], line),
                   std::string(Trim(f[4]))});
  }
  return out;
}

void ScoreAgainstGold(const graph::GuidelineGraph &g, const std::vector<GoldMapping> &gold,
                      ConceptReport &report) {
  std::map<std::tuple<std::string, size_t, size_t, Scheme>, std::string> index;
  for (const GoldMapping &m : gold) index[{m.node_id, m.start, m.end, m.scheme}] = m.code;
  for (const auto &[id, a] : g.annotations) {
    if (!a.concepts) continue;
    for (const ConceptMapping &c : *a.concepts) {
      auto it = index.find({id, c.start, c.end, c.scheme});
      if (it == index.end()) continue;
      SchemeCounts &counts = report.schemes[c.scheme];
      ++counts.judged;
      if (it->second != c.code) ++counts.incorrect;
    }
  }
}

std::string FormatReport(const ConceptReport &report) {
  std::ostringstream out;
  out << "scheme\tmapped\tincorrect\tunmapped\tjudged\n";
  for (const auto &[scheme, c] : report.schemes) {
    out << graph::SchemeName(scheme) << '\t' << c.mapped << '\t' << c.incorrect << '\t'
        << c.unmapped << '\t' << c.judged << '\n';
  }
  return out.str();
}

graph::GuidelineGraph AnnotateConcepts(graph::GuidelineGraph g, const ConceptResources &resources,
                                       const ConceptOptions &options, ConceptReport *report) {
  ConceptReport local;
  ConceptReport &rep = report ? *report : local;
  for (Scheme s : options.schemes) rep.schemes[s];

  struct Pending {
    size_t node;
    EntitySpan mention;  // span already in original offsets
    size_t query;
  };
  std::vector<std::vector<ConceptMapping>> found(g.nodes.size());
  std::vector<Pending> pending;
  std::vector<std::string> queries;
  std::map<std::string, size_t> query_index;

  LinkOptions link;
  link.threshold = options.threshold;
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    std::string content = graph::JoinedContent(g.nodes[n]);
    Expansion exp = ExpandAbbreviations(content, resources.abbreviations);
    for (const EntitySpan &m : ExtractEntities(exp.text, resources.lexicon, resources.overrides)) {
      ++rep.mentions;
      auto [start, end] = exp.offsets.ToOriginal(m.start, m.end);
      EntitySpan original{m.text, start, end};
      for (Scheme s : options.schemes) {
        link.scheme = s;
        std::optional<ConceptMapping> c =
            LinkEntity(original, resources.lexicon, resources.overrides, link);
        if (c) {
          found[n].push_back(std::move(*c));
          ++rep.schemes[s].mapped;
        } else if (options.client && options.client->scheme() == s) {
          auto [it, inserted] = query_index.insert({m.text, queries.size()});
          if (inserted) queries.push_back(m.text);
          pending.push_back({n, original, it->second});
        } else {
          ++rep.schemes[s].unmapped;
        }
      }
    }
  }

  // Remote lookups, one per distinct query, at most max_in_flight at a time.
  struct Outcome {
    std::optional<ConceptMapping> mapping;
    std::optional<RemoteError> error;
  };
  std::vector<Outcome> outcomes(queries.size());
  if (!queries.empty()) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t q; (q = next++) < queries.size();) {
        for (int attempt = 0;; ++attempt) {
          try {
            outcomes[q].mapping = RemoteLookup({queries[q], 0, 0}, *options.client);
            outcomes[q].error.reset();
            break;
          } catch (const RemoteError &e) {
            outcomes[q].error = e;
            if (!e.retryable() || attempt >= options.max_retries) break;
            std::this_thread::sleep_for(
                std::chrono::milliseconds(options.retry_backoff_ms << attempt));
          }
        }
      }
    };
    size_t threads = std::min<size_t>(std::max(1, options.max_in_flight), queries.size());
    std::vector<std::thread> pool;
    for (size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool) t.join();
    rep.remote_queries += static_cast<int>(queries.size());
  }

  std::erase_if(g.warnings,
                [](const graph::Warning &w) { return w.kind == "remote_lookup_failed"; });
  std::vector<bool> warned(queries.size(), false);
  for (const Pending &p : pending) {
    const Outcome &o = outcomes[p.query];
    Scheme s = options.client->scheme();
    if (o.error) {
      if (options.strict) throw *o.error;
      if (!warned[p.query]) {
        warned[p.query] = true;
        ++rep.remote_failures;
        g.warnings.push_back({g.nodes[p.node].page_index, "remote_lookup_failed",
                              queries[p.query] + ": " + o.error->cause()});
      }
      ++rep.schemes[s].unmapped;
    } else if (o.mapping) {
      ConceptMapping c = *o.mapping;
      c.start = p.mention.start;
      c.end = p.mention.end;
      found[p.node].push_back(std::move(c));
      ++rep.schemes[s].mapped;
    } else {
      ++rep.schemes[s].unmapped;
    }
  }

  for (size_t n = 0; n < g.nodes.size(); ++n) {
    std::vector<ConceptMapping> &list = found[n];
    std::sort(list.begin(), list.end(), [](const ConceptMapping &a, const ConceptMapping &b) {
      return std::tie(a.start, a.end, a.scheme, a.code) <
             std::tie(b.start, b.end, b.scheme, b.code);
    });
    const std::string &id = g.nodes[n].id;
    if (list.empty()) {
      auto it = g.annotations.find(id);
      if (it == g.annotations.end()) continue;
      it->second.concepts.reset();
      if (it->second.empty()) g.annotations.erase(it);
    } else {
      g.annotations[id].concepts = std::move(list);
    }
  }
  return g;
}

}  // namespace guidegraph::enrich
